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

#include "mpteleport/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpt::oracle {

namespace {

Index pow3(int n) {
  Index p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

// Flat index of |X>^{(x)N} over N polarization modes.
Index uniform_polarization_index(int n, int pol) { return pol * (pow3(n) - 1) / 2; }

void require_transmittance(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("transmittance must lie in [0, 1], got " + std::to_string(t));
  }
}

}  // namespace

Mode Mode::fock(int dim) {
  if (dim < 2) throw std::invalid_argument("Fock mode needs dimension >= 2");
  return {ModeKind::Fock, dim};
}

ModeSpace::ModeSpace(std::vector<Mode> modes) : modes_(std::move(modes)) {
  strides_.assign(modes_.size(), 1);
  dim_ = 1;
  for (std::size_t i = modes_.size(); i-- > 0;) {
    if (modes_[i].dim < 2) throw std::invalid_argument("mode dimension must be >= 2");
    strides_[i] = dim_;
    dim_ *= modes_[i].dim;
  }
}

ModeSpace ModeSpace::polarization(int n_modes) {
  return ModeSpace(std::vector<Mode>(static_cast<std::size_t>(n_modes), Mode::polarization()));
}

ModeSpace ModeSpace::operator+(const ModeSpace& rhs) const {
  std::vector<Mode> all = modes_;
  all.insert(all.end(), rhs.modes_.begin(), rhs.modes_.end());
  return ModeSpace(std::move(all));
}

PureState::PureState(ModeSpace space, CVector amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
  if (amps_.size() != space_.dim()) throw std::invalid_argument("state vector does not match mode space");
}

PureState tensor_product(const PureState& lhs, const PureState& rhs) {
  const CVector& a = lhs.amplitudes();
  const CVector& b = rhs.amplitudes();
  CVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return PureState(lhs.space() + rhs.space(), std::move(out));
}

DensityMatrix::DensityMatrix(ModeSpace space, CMatrix entries)
    : space_(std::move(space)), rho_(std::move(entries)) {
  if (rho_.rows() != space_.dim() || rho_.cols() != space_.dim()) {
    throw std::invalid_argument("density matrix does not match mode space");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace();
  if (!(tr > 0.0)) throw std::domain_error("cannot normalize a density matrix with zero trace");
  return DensityMatrix(space_, rho_ / tr);
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const { return min_hermitian_eigenvalue(rho_); }

double min_hermitian_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

PureState make_multiphoton_qubit(const BlochQubit& q, const MultiphotonSpec& spec) {
  const auto [a, b] = bloch_amplitudes(q);
  const int n = spec.n_photons;
  ModeSpace space = ModeSpace::polarization(n);
  CVector amps = CVector::Zero(space.dim());
  amps(uniform_polarization_index(n, kH)) = a;
  amps(uniform_polarization_index(n, kV)) = b;
  return PureState(std::move(space), std::move(amps));
}

double poisson_tail(double mean, int dim) {
  if (dim <= 0) return 1.0;
  // Sum the tail directly; 1 - head would lose the small values we care about.
  double log_p = -mean + dim * std::log(mean) - std::lgamma(dim + 1.0);
  double term = mean > 0.0 ? std::exp(log_p) : 0.0;
  double tail = 0.0;
  for (int n = dim; n < dim + 2000 && term > 0.0; ++n) {
    tail += term;
    if (term < tail * 1e-18 && n > mean) break;
    term *= mean / (n + 1);
  }
  return tail;
}

int fock_truncation(double alpha, double tail_tol) {
  const double mean = alpha * alpha;
  int dim = 2;
  while (poisson_tail(mean, dim) >= tail_tol) ++dim;
  return dim;
}

CVector coherent_amplitudes(Complex z, int dim) {
  CVector amps(dim);
  Complex c = std::exp(-0.5 * std::norm(z));
  for (int n = 0; n < dim; ++n) {
    amps(n) = c;
    c *= z / std::sqrt(static_cast<double>(n + 1));
  }
  return amps;
}

Mode carrier_mode(const CarrierSpec& carrier, int fock_dim) {
  switch (carrier.kind()) {
    case CarrierKind::PSP: return Mode::polarization();
    case CarrierKind::VSP: return Mode::two_level();
    case CarrierKind::CoherentState:
      return Mode::fock(fock_dim > 0 ? fock_dim : fock_truncation(carrier.alpha()));
  }
  throw std::logic_error("unknown carrier kind");
}

namespace {

// Carrier basis vectors |C0>, |C1> inside the carrier mode, for a coherent
// amplitude already scaled by the carrier transmittance.
std::pair<CVector, CVector> carrier_basis(const CarrierSpec& carrier, double scaled_alpha,
                                          const Mode& mode) {
  CVector c0 = CVector::Zero(mode.dim);
  CVector c1 = CVector::Zero(mode.dim);
  switch (carrier.kind()) {
    case CarrierKind::PSP:
      c0(kH) = 1.0;
      c1(kV) = 1.0;
      break;
    case CarrierKind::VSP:
      c0(0) = 1.0;
      c1(1) = 1.0;
      break;
    case CarrierKind::CoherentState:
      c0 = coherent_amplitudes(scaled_alpha, mode.dim);
      c1 = coherent_amplitudes(-scaled_alpha, mode.dim);
      break;
  }
  return {c0, c1};
}

}  // namespace

PureState make_hybrid_state(const MultiphotonSpec& spec, const CarrierSpec& carrier, int fock_dim) {
  const Mode cmode = carrier_mode(carrier, fock_dim);
  if (carrier.is_coherent()) {
    const double tail = poisson_tail(carrier.alpha() * carrier.alpha(), cmode.dim);
    if (tail >= 1e-12) {
      throw std::domain_error("Fock truncation " + std::to_string(cmode.dim) +
                              " leaves tail " + std::to_string(tail) + "; use at least " +
                              std::to_string(fock_truncation(carrier.alpha())));
    }
  }
  const int n = spec.n_photons;
  ModeSpace space = ModeSpace::polarization(n) + ModeSpace({cmode});
  const auto [c0, c1] = carrier_basis(carrier, carrier.is_coherent() ? carrier.alpha() : 0.0, cmode);

  CVector amps = CVector::Zero(space.dim());
  const Index dc = cmode.dim;
  amps.segment(uniform_polarization_index(n, kH) * dc, dc) = c0;
  amps.segment(uniform_polarization_index(n, kV) * dc, dc) = c1;
  amps.normalize();
  return PureState(std::move(space), std::move(amps));
}

std::vector<CMatrix> loss_kraus(const Mode& mode, double t) {
  require_transmittance(t);
  const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
  const int d = mode.dim;
  std::vector<CMatrix> ops;
  switch (mode.kind) {
    case ModeKind::Polarization: {
      CMatrix k0 = CMatrix::Zero(3, 3);
      k0(kVac, kVac) = 1.0;
      k0(kH, kH) = t;
      k0(kV, kV) = t;
      CMatrix k1 = CMatrix::Zero(3, 3);
      k1(kVac, kH) = r;
      CMatrix k2 = CMatrix::Zero(3, 3);
      k2(kVac, kV) = r;
      ops = {k0, k1, k2};
      break;
    }
    case ModeKind::TwoLevel: {
      CMatrix k0 = CMatrix::Zero(2, 2);
      k0(0, 0) = 1.0;
      k0(1, 1) = t;
      CMatrix k1 = CMatrix::Zero(2, 2);
      k1(0, 1) = r;
      ops = {k0, k1};
      break;
    }
    case ModeKind::Fock: {
      // <n-k| K_k |n> = sqrt(C(n, k)) t^{n-k} r^k
      for (int k = 0; k < d; ++k) {
        CMatrix kk = CMatrix::Zero(d, d);
        double binom = 1.0;  // C(n, k), starting at n = k
        for (int n = k; n < d; ++n) {
          if (n > k) binom = binom * n / (n - k);
          kk(n - k, n) = std::sqrt(binom) * std::pow(t, n - k) * std::pow(r, k);
        }
        ops.push_back(std::move(kk));
      }
      break;
    }
  }
  return ops;
}

double kraus_completeness_error(std::span<const CMatrix> kraus) {
  if (kraus.empty()) return 1.0;
  CMatrix sum = CMatrix::Zero(kraus.front().rows(), kraus.front().cols());
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - CMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

CMatrix apply_on_mode(const CMatrix& op, const ModeSpace& space, std::size_t mode,
                      const CMatrix& m) {
  if (mode >= space.size()) throw std::out_of_range("invalid mode index " + std::to_string(mode));
  const Index d = space[mode].dim;
  if (op.rows() != d || op.cols() != d) throw std::invalid_argument("operator does not match mode");
  if (m.rows() != space.dim()) throw std::invalid_argument("matrix does not match mode space");
  const Index inner = space.stride(mode);
  const Index outer = space.dim() / (inner * d);
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const Complex c = op(i, j);
      if (c == Complex(0.0)) continue;
      for (Index l = 0; l < outer; ++l) {
        out.middleRows(l * d * inner + i * inner, inner).noalias() +=
            c * m.middleRows(l * d * inner + j * inner, inner);
      }
    }
  }
  return out;
}

DensityMatrix apply_kraus(const DensityMatrix& rho, std::size_t mode,
                          std::span<const CMatrix> kraus) {
  const ModeSpace& space = rho.space();
  if (mode >= space.size()) throw std::out_of_range("invalid mode index " + std::to_string(mode));
  const Index d = space[mode].dim;
  const Index inner = space.stride(mode);
  const Index outer = space.dim() / (inner * d);
  const CMatrix& in = rho.matrix();
  CMatrix out = CMatrix::Zero(space.dim(), space.dim());

  struct Entry {
    Index row;
    Index col;
    Complex value;
  };
  // sum_K (1 (x) K (x) 1) rho (1 (x) K (x) 1)^dagger, visiting only the
  // nonzero entries of each K.
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("Kraus operator does not match mode");
    std::vector<Entry> nz;
    for (Index j = 0; j < d; ++j) {
      for (Index i = 0; i < d; ++i) {
        if (k(i, j) != Complex(0.0)) nz.push_back({i, j, k(i, j)});
      }
    }
    for (const auto& a : nz) {
      for (const auto& b : nz) {
        const Complex coef = a.value * std::conj(b.value);
        for (Index lo = 0; lo < outer; ++lo) {
          for (Index lo2 = 0; lo2 < outer; ++lo2) {
            out.block(lo * d * inner + a.row * inner, lo2 * d * inner + b.row * inner, inner, inner) +=
                coef * in.block(lo * d * inner + a.col * inner, lo2 * d * inner + b.col * inner, inner, inner);
          }
        }
      }
    }
  }
  return DensityMatrix(space, std::move(out));
}

DensityMatrix apply_loss(const DensityMatrix& rho, std::size_t mode, double t) {
  if (mode >= rho.space().size()) {
    throw std::out_of_range("invalid mode index " + std::to_string(mode));
  }
  const auto kraus = loss_kraus(rho.space()[mode], t);
  return apply_kraus(rho, mode, kraus);
}

double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi) {
  if (!(rho.space() == psi.space())) throw std::invalid_argument("fidelity: mode spaces differ");
  const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  if (std::abs(f.imag()) > 1e-10) throw std::domain_error("fidelity: density matrix is not Hermitian");
  return std::clamp(f.real(), 0.0, 1.0);
}

CMatrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> modes) {
  return partial_transpose(rho.matrix(), rho.space(), modes);
}

double negativity(const DensityMatrix& rho, std::span<const std::size_t> modes) {
  const CMatrix pt = partial_transpose(rho, modes);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(pt, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("negativity: eigensolver failed (dim " + std::to_string(pt.rows()) +
                             ", info " + std::to_string(static_cast<int>(solver.info())) + ")");
  }
  double sum = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < -1e-12) sum -= lambda;
  }
  return sum;
}

DensityMatrix restrict_to(const DensityMatrix& rho,
                          const std::function<bool(const ModeSpace&, Index)>& keep) {
  const Index dim = rho.space().dim();
  Eigen::VectorXd mask(dim);
  for (Index i = 0; i < dim; ++i) mask(i) = keep(rho.space(), i) ? 1.0 : 0.0;
  CMatrix out = mask.asDiagonal() * rho.matrix() * mask.asDiagonal();
  return DensityMatrix(rho.space(), std::move(out));
}

PureState bell_state(int n_photons, int bell_index) {
  if (n_photons < 1) throw std::domain_error("photon number must be >= 1");
  if (bell_index < 1 || bell_index > 4) throw std::out_of_range("Bell index must be in 1..4");
  const Index half = pow3(n_photons);
  const Index h = uniform_polarization_index(n_photons, kH);
  const Index v = uniform_polarization_index(n_photons, kV);
  const double sign = (bell_index % 2 == 1) ? 1.0 : -1.0;
  const double s = 1.0 / std::sqrt(2.0);
  ModeSpace space = ModeSpace::polarization(2 * n_photons);
  CVector amps = CVector::Zero(space.dim());
  if (bell_index <= 2) {
    amps(h * half + h) = s;
    amps(v * half + v) = sign * s;
  } else {
    amps(h * half + v) = s;
    amps(v * half + h) = sign * s;
  }
  return PureState(std::move(space), std::move(amps));
}

BellBranch bell_project(const PureState& input, const DensityMatrix& channel, int bell_index) {
  const ModeSpace& in_space = input.space();
  const int n = static_cast<int>(in_space.size());
  if (n < 1 || !(in_space == ModeSpace::polarization(n))) {
    throw std::invalid_argument("bell_project: input must live on polarization modes");
  }
  const ModeSpace& ch_space = channel.space();
  if (ch_space.size() != in_space.size() + 1) {
    throw std::invalid_argument("bell_project: channel must have N multiphoton modes plus a carrier");
  }
  for (std::size_t m = 0; m < in_space.size(); ++m) {
    if (!(ch_space[m] == Mode::polarization())) {
      throw std::invalid_argument("bell_project: channel multiphoton modes must be polarization modes");
    }
  }
  const PureState bell = bell_state(n, bell_index);
  const Index ds = in_space.dim();
  const Index dc = ch_space[ch_space.size() - 1].dim;

  // c[s'] = sum_s conj(B[s, s']) psi[s]
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      bmat(bell.amplitudes().data(), ds, ds);
  const CVector c = bmat.adjoint() * input.amplitudes();

  const CMatrix& rho = channel.matrix();
  // Ket side: X = (c^T (x) 1_R) rho
  CMatrix ket = CMatrix::Zero(dc, rho.cols());
  for (Index s = 0; s < ds; ++s) {
    if (c(s) == Complex(0.0)) continue;
    ket.noalias() += c(s) * rho.middleRows(s * dc, dc);
  }
  // Bra side: X (c^T (x) 1_R)^dagger
  CMatrix out = CMatrix::Zero(dc, dc);
  for (Index s = 0; s < ds; ++s) {
    if (c(s) == Complex(0.0)) continue;
    out.noalias() += std::conj(c(s)) * ket.middleCols(s * dc, dc);
  }
  out = 0.5 * (out + out.adjoint()).eval();
  const double weight = out.trace().real();
  return BellBranch{DensityMatrix(ModeSpace({ch_space[ch_space.size() - 1]}), std::move(out)), weight};
}

PureState branch_target(const CarrierSpec& carrier, double t_c, const BlochQubit& q,
                        int bell_index, int fock_dim) {
  if (bell_index < 1 || bell_index > 4) throw std::out_of_range("Bell index must be in 1..4");
  require_transmittance(t_c);
  const Mode mode = carrier_mode(carrier, fock_dim);
  const double scaled = carrier.is_coherent() ? t_c * carrier.alpha() : 0.0;
  const auto [c0, c1] = carrier_basis(carrier, scaled, mode);
  const auto [a, b] = bloch_amplitudes(q);
  const double sign = (bell_index % 2 == 1) ? 1.0 : -1.0;
  CVector v = bell_index <= 2 ? CVector(a * c0 + sign * b * c1) : CVector(a * c1 + sign * b * c0);
  const double nrm = v.norm();
  if (!(nrm > 0.0)) throw std::domain_error("branch target has zero norm");
  return PureState(ModeSpace({mode}), v / nrm);
}

double bsm_identification_probability(int n_photons, int bell_index) {
  if (bell_index < 1 || bell_index > 4) throw std::out_of_range("Bell index must be in 1..4");
  if (bell_index % 2 == 0) return 1.0;
  return 1.0 - std::ldexp(1.0, 1 - n_photons);
}

}  // namespace mpt::oracle
