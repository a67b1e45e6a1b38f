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

// Closed-form fidelities, negativities and success probabilities for
// teleporting an N-photon qubit a|H>^N + b|V>^N onto a carrier qubit through
// a hybrid entangled channel with loss t_M (multiphoton side) and t_C
// (carrier side).

#include <Eigen/Dense>

#include <optional>

#include "mpteleport/core_model.hpp"
#include "mpteleport/numerics.hpp"

namespace mpt::analytics {

enum class Branch { Plus, Minus };

/// Matrix elements of the lossy hybrid state inside the sector where no
/// multiphoton-side photon is lost, normalized to unit trace and written in
/// the carrier basis {|C0>, |C1>} plus the carrier vacuum.
///
///   coherent: populations 1/2, 1/2; coherence e^{-2 alpha^2 r_C^2} / 2
///   PSP:      populations t_C^2/2, t_C^2/2; coherence t_C^2/2; vacuum r_C^2
///   VSP:      populations 1/2, t_C^2/2; coherence t_C/2; vacuum r_C^2/2
struct HybridChannelClosedForm {
  CarrierSpec carrier;
  int n_photons;
  double t_m;
  double t_c;
  /// t_M^{2N}: probability that no multiphoton-side photon is lost.
  double no_loss_weight;
  /// <H^N C0| sigma |H^N C0>
  double population_h;
  /// <V^N C1| sigma |V^N C1>
  double population_v;
  /// <H^N C0| sigma |V^N C1>, real and non-negative.
  double coherence;
  /// Weight on the carrier vacuum from carrier loss.
  double vacuum_weight;

  static HybridChannelClosedForm make(const CarrierSpec& carrier, int n_photons, double t_m,
                                      double t_c);
};

/// (1 - eta)^N
double fidelity_direct(int n_photons, double eta);

struct NegativityValue {
  double value;
  /// t_C alpha = 0: the carrier collapses to vacuum and the state is a product.
  bool product_state;
};

/// The printed closed form
///   t_M^{2N} / (4 sqrt(1 - e^{-4 t_C^2 alpha^2}))
///     * [sqrt(1 - 2(2e^{-4 t_C^2 alpha^2} - 1) e^{-2 r_C^2 alpha^2} + e^{-4 r_C^2 alpha^2})
///        + e^{-2 r_C^2 alpha^2} - 1].
/// Equals 1/2 at t_M = t_C = 1 for every alpha.
NegativityValue negativity_mc(int n_photons, double t_m, double t_c, double alpha);

/// Negativity from exact diagonalisation of the partially transposed 2x2
/// no-loss block: t_M^{2N}/4 [sqrt(1 - 2(2S^2 - 1)c + c^2) + c - 1] with
/// S = e^{-2 t_C^2 alpha^2}, c = e^{-2 r_C^2 alpha^2}. negativity_mc is this
/// divided by sqrt(1 - S^2); the two agree only as S -> 0.
NegativityValue negativity_mc_exact(int n_photons, double t_m, double t_c, double alpha);

/// (1/2) t_M^{2N} t_C^2, shared by the PSP and VSP hybrid states.
double negativity_discrete(int n_photons, double t_m, double t_c);

/// Fidelity of the coherent-state output for outcome class + or - against
/// N_pm (a|t_C alpha> +- b|-t_C alpha>).
double teleport_fidelity_cs(double t_c, double alpha, const BlochQubit& q, Branch branch);

/// teleport_fidelity_cs with the t_C- and alpha-dependent exponentials
/// hoisted out, for repeated evaluation over quadrature nodes.
class CsFidelityKernel {
 public:
  CsFidelityKernel(double t_c, double alpha);
  double operator()(const BlochQubit& q, Branch branch = Branch::Plus) const;

 private:
  double overlap_;          // S = e^{-2 t_C^2 alpha^2}
  double input_overlap_;    // e^{-2 alpha^2}
  double coherence_;        // e^{-2 alpha^2 r_C^2}
};

double teleport_fidelity_psp(double t_c);

/// |a|^4 + |a|^2|b|^2 (1 + t_C) + |b|^4 t_C^2, exactly as printed. This is
/// the form behind the reference VSP threshold and crossover numbers.
double teleport_fidelity_vsp(double t_c, const BlochQubit& q);

/// VSP output for outcome 1: (|a|^2 + |b|^2 r_C^2)|0><0| + |b|^2 t_C^2 |1><1|
/// + t_C (a b* |0><1| + h.c.).
Eigen::Matrix2cd vsp_output_state(double t_c, const BlochQubit& q);

/// <psi_t| rho_out |psi_t> evaluated from vsp_output_state, i.e.
/// |a|^4 + |a|^2|b|^2 (1 + 2 t_C - t_C^2) + |b|^4 t_C^2. Differs from
/// teleport_fidelity_vsp by |a|^2|b|^2 t_C (1 - t_C).
double teleport_fidelity_vsp_output_state(double t_c, const BlochQubit& q);

/// Coherent-state output for outcome class +/- in the non-orthogonal basis
/// {|t_C alpha>, |-t_C alpha>}: rho = sum_ij R_ij |C_i><C_j|, trace-normalized.
Eigen::Matrix2cd cs_output_coefficients(double t_c, double alpha, const BlochQubit& q, Branch branch);

struct AverageFidelity {
  double value;
  /// |value(rule) - value(rule doubled)|
  double doubling_delta;
  bool converged;
};

/// Bloch-sphere average of the per-input fidelity (branch + for CS and VSP).
/// The convergence flag compares against the doubled rule at 1e-12.
AverageFidelity average_fidelity(const CarrierSpec& carrier, double t_c,
                                 const numerics::QuadratureRule& rule);

/// Same value without the doubling check.
double average_fidelity_value(const CarrierSpec& carrier, double t_c,
                              const numerics::QuadratureRule& rule);

/// t^2/3 + t/6 + 1/2
double average_fidelity_vsp_closed_form(double t_c);

enum class Provenance { Exact, PrintedForm, OrthonormalLimit };

struct ClassicalLimit {
  double value;
  Provenance provenance;
};

/// PSP/VSP: 2/3. Coherent: the printed expression in S = e^{-2 t_C^2 alpha^2},
/// which does not reduce to 2/3 as S -> 0 when read literally; for S < 1e-8
/// the orthonormal value 2/3 is returned instead.
ClassicalLimit classical_limit(const CarrierSpec& carrier, double t_c);

/// t_M^{2N} (1 - 2^{-N})
double success_probability(int n_photons, double t_m);

/// t_M^{2N} [(1 - 2^{-N}) - e^{-2 alpha^2} 2^{-N} (ab* + a*b)]
double success_probability_cs(int n_photons, double t_m, double alpha, const BlochQubit& q);

/// floor(log2(1 + 1/eta_M)); std::nullopt when eta_M = 0 (P grows with N forever).
std::optional<int> optimal_photon_number(double eta_m);

/// Clamp x into [0, 1] if it is within 1e-12 of the interval; otherwise throw.
double clamp_probability(double x, const char* what);

}  // namespace mpt::analytics
