// Copyright 2026 The mpteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force density-matrix engine over a truncated occupation-number space.
// Nothing here consults the closed forms in analytics.hpp; the two halves are
// compared against each other in the equivalence suite.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mpteleport/core_model.hpp"

namespace mpt::oracle {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class ModeKind { Polarization, TwoLevel, Fock };

/// Local basis: Polarization {0: vac, 1: H, 2: V}; TwoLevel {0, 1}; Fock {0 .. dim-1}.
struct Mode {
  ModeKind kind;
  int dim;

  static Mode polarization() { return {ModeKind::Polarization, 3}; }
  static Mode two_level() { return {ModeKind::TwoLevel, 2}; }
  static Mode fock(int dim);

  bool operator==(const Mode&) const = default;
};

inline constexpr int kVac = 0;
inline constexpr int kH = 1;
inline constexpr int kV = 2;

/// Ordered tensor product of modes. Mode 0 is the most significant digit of
/// a flat basis index.
class ModeSpace {
 public:
  ModeSpace() = default;
  explicit ModeSpace(std::vector<Mode> modes);

  static ModeSpace polarization(int n_modes);

  ModeSpace operator+(const ModeSpace& rhs) const;
  bool operator==(const ModeSpace&) const = default;

  std::size_t size() const { return modes_.size(); }
  const Mode& operator[](std::size_t i) const { return modes_[i]; }
  Index dim() const { return dim_; }
  /// Distance in flat index between consecutive values of mode i.
  Index stride(std::size_t i) const { return strides_[i]; }
  int digit(Index flat, std::size_t mode) const {
    return static_cast<int>((flat / strides_[mode]) % modes_[mode].dim);
  }

 private:
  std::vector<Mode> modes_;
  std::vector<Index> strides_;
  Index dim_ = 1;
};

class PureState {
 public:
  PureState(ModeSpace space, CVector amplitudes);

  const ModeSpace& space() const { return space_; }
  const CVector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  ModeSpace space_;
  CVector amps_;
};

PureState tensor_product(const PureState& lhs, const PureState& rhs);

class DensityMatrix {
 public:
  DensityMatrix(ModeSpace space, CMatrix entries);
  static DensityMatrix from_pure(const PureState& psi);

  const ModeSpace& space() const { return space_; }
  const CMatrix& matrix() const { return rho_; }
  double trace() const { return rho_.trace().real(); }
  DensityMatrix normalized() const;
  /// max |rho - rho^dagger| entrywise.
  double hermiticity_error() const;
  double min_eigenvalue() const;

 private:
  ModeSpace space_;
  CMatrix rho_;
};

// -- state preparation -------------------------------------------------------

PureState make_multiphoton_qubit(const BlochQubit& q, const MultiphotonSpec& spec);

/// P(n >= dim) for n ~ Poisson(mean).
double poisson_tail(double mean, int dim);

/// Smallest dim whose Poisson(alpha^2) tail beyond dim - 1 is below tail_tol.
int fock_truncation(double alpha, double tail_tol = 1e-12);

/// Coherent-state amplitudes e^{-|z|^2/2} z^n / sqrt(n!), n < dim (unnormalized tail).
CVector coherent_amplitudes(Complex z, int dim);

/// Mode that carries the carrier qubit. fock_dim is used only for coherent carriers.
Mode carrier_mode(const CarrierSpec& carrier, int fock_dim);

/// (|H>^N |C0> + |V>^N |C1>)/sqrt2 over N polarization modes plus one carrier
/// mode. fock_dim <= 0 selects fock_truncation(alpha).
PureState make_hybrid_state(const MultiphotonSpec& spec, const CarrierSpec& carrier,
                            int fock_dim = 0);

// -- channels ----------------------------------------------------------------

/// Kraus set of the photon-loss channel with amplitude transmittance t.
std::vector<CMatrix> loss_kraus(const Mode& mode, double t);

/// max |sum K^dagger K - 1| entrywise.
double kraus_completeness_error(std::span<const CMatrix> kraus);

/// (1 (x) op (x) 1) * m, with op acting on one mode of the row index.
CMatrix apply_on_mode(const CMatrix& op, const ModeSpace& space, std::size_t mode,
                      const CMatrix& m);

DensityMatrix apply_kraus(const DensityMatrix& rho, std::size_t mode,
                          std::span<const CMatrix> kraus);

DensityMatrix apply_loss(const DensityMatrix& rho, std::size_t mode, double t);

// -- measures ----------------------------------------------------------------

/// <psi|rho|psi>, clamped to [0, 1].
double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi);

/// Transposes the row/column digits of the listed modes.
template <typename Derived>
CMatrix partial_transpose(const Eigen::MatrixBase<Derived>& rho, const ModeSpace& space,
                          std::span<const std::size_t> modes);

CMatrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> modes);

/// Sum of |lambda| over negative eigenvalues of the partial transpose;
/// eigenvalues with |lambda| < 1e-12 count as zero.
double negativity(const DensityMatrix& rho, std::span<const std::size_t> modes);

template <typename DerivedA, typename DerivedB>
double trace_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b);

/// P rho P, where P keeps the basis states whose digits satisfy keep.
DensityMatrix restrict_to(const DensityMatrix& rho,
                          const std::function<bool(const ModeSpace&, Index)>& keep);

// -- Bell-state measurement --------------------------------------------------

/// |B_i^N> over 2N polarization modes (input modes first). Index 1..4:
/// B_{1,2} = (HH +- VV)/sqrt2, B_{3,4} = (HV +- VH)/sqrt2 in the N-photon logical basis.
PureState bell_state(int n_photons, int bell_index);

struct BellBranch {
  DensityMatrix carrier;  // unnormalized
  double weight;          // trace of carrier, the outcome probability
  DensityMatrix normalized() const { return carrier.normalized(); }
};

/// <B_i| (|psi_in><psi_in| (x) rho_channel) |B_i> contracted over the 2N
/// sender modes. The joint density matrix is never formed.
BellBranch bell_project(const PureState& input, const DensityMatrix& channel, int bell_index);

/// Ideal teleported carrier state for Bell outcome i with no correction:
/// 1: aC0+bC1, 2: aC0-bC1, 3: aC1+bC0, 4: aC1-bC0, with C0/C1 the (lossy)
/// carrier basis states (|+-t_C alpha> for coherent carriers). Normalized.
PureState branch_target(const CarrierSpec& carrier, double t_c, const BlochQubit& q,
                        int bell_index, int fock_dim = 0);

/// BSM identification probability q_i: 1 - 2^{1-N} for odd i, 1 for even i.
double bsm_identification_probability(int n_photons, int bell_index);

double min_hermitian_eigenvalue(const CMatrix& m);

// -- template definitions ----------------------------------------------------

template <typename Derived>
CMatrix partial_transpose(const Eigen::MatrixBase<Derived>& rho, const ModeSpace& space,
                          std::span<const std::size_t> modes) {
  const Index dim = space.dim();
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("partial_transpose: matrix does not match mode space");
  }
  std::vector<Index> selected(static_cast<std::size_t>(dim), 0);
  for (std::size_t m : modes) {
    if (m >= space.size()) throw std::invalid_argument("partial_transpose: invalid mode index");
  }
  for (Index i = 0; i < dim; ++i) {
    Index part = 0;
    for (std::size_t m : modes) part += space.digit(i, m) * space.stride(m);
    selected[static_cast<std::size_t>(i)] = part;
  }
  CMatrix out(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    const Index sj = selected[static_cast<std::size_t>(j)];
    for (Index i = 0; i < dim; ++i) {
      const Index si = selected[static_cast<std::size_t>(i)];
      out(i - si + sj, j - sj + si) = rho(i, j);
    }
  }
  return out;
}

template <typename DerivedA, typename DerivedB>
double trace_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  const CMatrix diff = a - b;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(diff, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("trace_distance: eigensolver failed");
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace mpt::oracle
