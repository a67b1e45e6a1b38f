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

#include "mpteleport/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mpt::analytics {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

void require_photons(int n) {
  if (n < 1) throw std::domain_error("photon number must be >= 1");
}

double sign_of(Branch branch) { return branch == Branch::Plus ? 1.0 : -1.0; }

// ab* + a*b
double real_cross(const BlochQubit& q) {
  const auto [a, b] = bloch_amplitudes(q);
  return 2.0 * (a * std::conj(b)).real();
}

}  // namespace

double clamp_probability(double x, const char* what) {
  constexpr double kSlack = 1e-12;
  if (!(x >= -kSlack && x <= 1.0 + kSlack)) {
    throw std::domain_error(std::string(what) + " outside [0, 1]: " + std::to_string(x));
  }
  return std::clamp(x, 0.0, 1.0);
}

HybridChannelClosedForm HybridChannelClosedForm::make(const CarrierSpec& carrier, int n_photons,
                                                      double t_m, double t_c) {
  require_photons(n_photons);
  require_unit(t_m, "t_M");
  require_unit(t_c, "t_C");
  const double r2 = 1.0 - t_c * t_c;
  HybridChannelClosedForm form{carrier, n_photons, t_m, t_c,
                               std::pow(t_m, 2 * n_photons), 0.0, 0.0, 0.0, 0.0};
  switch (carrier.kind()) {
    case CarrierKind::CoherentState: {
      const double a2 = carrier.alpha() * carrier.alpha();
      form.population_h = 0.5;
      form.population_v = 0.5;
      form.coherence = 0.5 * std::exp(-2.0 * a2 * r2);
      break;
    }
    case CarrierKind::PSP:
      form.population_h = 0.5 * t_c * t_c;
      form.population_v = 0.5 * t_c * t_c;
      form.coherence = 0.5 * t_c * t_c;
      form.vacuum_weight = r2;
      break;
    case CarrierKind::VSP:
      form.population_h = 0.5;
      form.population_v = 0.5 * t_c * t_c;
      form.coherence = 0.5 * t_c;
      form.vacuum_weight = 0.5 * r2;
      break;
  }
  return form;
}

double fidelity_direct(int n_photons, double eta) {
  require_photons(n_photons);
  require_unit(eta, "eta");
  return std::pow(1.0 - eta, n_photons);
}

NegativityValue negativity_mc(int n_photons, double t_m, double t_c, double alpha) {
  require_photons(n_photons);
  require_unit(t_m, "t_M");
  require_unit(t_c, "t_C");
  if (!(alpha >= 0.0)) throw std::domain_error("alpha must be non-negative");
  const double a2 = alpha * alpha;
  const double tc2a2 = t_c * t_c * a2;
  if (tc2a2 == 0.0) return {0.0, true};
  const double rc2a2 = (1.0 - t_c * t_c) * a2;
  const double e_t = std::exp(-4.0 * tc2a2);
  const double e_r = std::exp(-2.0 * rc2a2);
  const double root = std::sqrt(1.0 - 2.0 * (2.0 * e_t - 1.0) * e_r + e_r * e_r);
  // 1 - e^{-4 t^2 a^2} via expm1 keeps precision for small t_C alpha.
  const double denom = 4.0 * std::sqrt(-std::expm1(-4.0 * tc2a2));
  const double value = std::pow(t_m, 2 * n_photons) / denom * (root + e_r - 1.0);
  return {std::max(0.0, value), false};
}

NegativityValue negativity_mc_exact(int n_photons, double t_m, double t_c, double alpha) {
  const NegativityValue printed = negativity_mc(n_photons, t_m, t_c, alpha);
  if (printed.product_state) return printed;
  const double overlap_sq = std::exp(-4.0 * t_c * t_c * alpha * alpha);
  return {printed.value * std::sqrt(1.0 - overlap_sq), false};
}

double negativity_discrete(int n_photons, double t_m, double t_c) {
  require_photons(n_photons);
  require_unit(t_m, "t_M");
  require_unit(t_c, "t_C");
  return 0.5 * std::pow(t_m, 2 * n_photons) * t_c * t_c;
}

CsFidelityKernel::CsFidelityKernel(double t_c, double alpha) {
  require_unit(t_c, "t_C");
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
  const double a2 = alpha * alpha;
  overlap_ = std::exp(-2.0 * t_c * t_c * a2);
  input_overlap_ = std::exp(-2.0 * a2);
  coherence_ = std::exp(-2.0 * a2 * (1.0 - t_c * t_c));
}

double CsFidelityKernel::operator()(const BlochQubit& q, Branch branch) const {
  const auto [a, b] = bloch_amplitudes(q);
  const double s = sign_of(branch);
  const double S = overlap_;
  const double cross = 2.0 * (a * std::conj(b)).real();
  const double m = 1.0 / (1.0 + s * input_overlap_ * cross);
  const double n2 = 1.0 / (1.0 + s * cross * S);
  const double a2 = std::norm(a);
  const double b2 = std::norm(b);
  const double bracket = a2 * std::norm(a + s * b * S) + b2 * std::norm(a * S + s * b) +
                         s * 2.0 * coherence_ *
                             (a * std::conj(b) * (std::conj(a) + s * std::conj(b) * S) * (a * S + s * b)).real();
  return clamp_probability(m * n2 * bracket, "coherent-state fidelity");
}

double teleport_fidelity_cs(double t_c, double alpha, const BlochQubit& q, Branch branch) {
  return CsFidelityKernel(t_c, alpha)(q, branch);
}

double teleport_fidelity_psp(double t_c) {
  require_unit(t_c, "t_C");
  return t_c * t_c;
}

double teleport_fidelity_vsp(double t_c, const BlochQubit& q) {
  require_unit(t_c, "t_C");
  const auto [a, b] = bloch_amplitudes(q);
  const double a2 = std::norm(a);
  const double b2 = std::norm(b);
  return clamp_probability(a2 * a2 + a2 * b2 * (1.0 + t_c) + b2 * b2 * t_c * t_c, "VSP fidelity");
}

Eigen::Matrix2cd vsp_output_state(double t_c, const BlochQubit& q) {
  require_unit(t_c, "t_C");
  const auto [a, b] = bloch_amplitudes(q);
  const double a2 = std::norm(a);
  const double b2 = std::norm(b);
  Eigen::Matrix2cd rho;
  rho(0, 0) = a2 + b2 * (1.0 - t_c * t_c);
  rho(1, 1) = b2 * t_c * t_c;
  rho(0, 1) = a * std::conj(b) * t_c;
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

double teleport_fidelity_vsp_output_state(double t_c, const BlochQubit& q) {
  const auto [a, b] = bloch_amplitudes(q);
  const Eigen::Vector2cd psi(a, b);
  return clamp_probability(psi.dot(vsp_output_state(t_c, q) * psi).real(), "VSP fidelity");
}

Eigen::Matrix2cd cs_output_coefficients(double t_c, double alpha, const BlochQubit& q,
                                        Branch branch) {
  require_unit(t_c, "t_C");
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
  const auto [a, b] = bloch_amplitudes(q);
  const double a2 = alpha * alpha;
  const double s = sign_of(branch);
  const double m = 1.0 / (1.0 + s * std::exp(-2.0 * a2) * real_cross(q));
  const double coh = s * std::exp(-2.0 * a2 * (1.0 - t_c * t_c));
  Eigen::Matrix2cd r;
  r(0, 0) = m * std::norm(a);
  r(1, 1) = m * std::norm(b);
  r(0, 1) = m * coh * a * std::conj(b);
  r(1, 0) = std::conj(r(0, 1));
  return r;
}

double average_fidelity_value(const CarrierSpec& carrier, double t_c,
                              const numerics::QuadratureRule& rule) {
  switch (carrier.kind()) {
    case CarrierKind::PSP: {
      const double f = teleport_fidelity_psp(t_c);
      return numerics::sphere_average([f](const BlochQubit&) { return f; }, rule);
    }
    case CarrierKind::VSP:
      return numerics::sphere_average(
          [t_c](const BlochQubit& q) { return teleport_fidelity_vsp(t_c, q); }, rule);
    case CarrierKind::CoherentState: {
      const CsFidelityKernel kernel(t_c, carrier.alpha());
      return numerics::sphere_average([&kernel](const BlochQubit& q) { return kernel(q); }, rule);
    }
  }
  throw std::logic_error("unknown carrier kind");
}

AverageFidelity average_fidelity(const CarrierSpec& carrier, double t_c,
                                 const numerics::QuadratureRule& rule) {
  const double value = average_fidelity_value(carrier, t_c, rule);
  const double refined = average_fidelity_value(carrier, t_c, rule.doubled());
  const double delta = std::abs(refined - value);
  return {value, delta, delta < 1e-12};
}

double average_fidelity_vsp_closed_form(double t_c) {
  require_unit(t_c, "t_C");
  return t_c * t_c / 3.0 + t_c / 6.0 + 0.5;
}

ClassicalLimit classical_limit(const CarrierSpec& carrier, double t_c) {
  require_unit(t_c, "t_C");
  if (!carrier.is_coherent()) return {2.0 / 3.0, Provenance::Exact};
  const double S = coherent_overlap(carrier.alpha(), t_c);
  if (S < 1e-8) return {2.0 / 3.0, Provenance::OrthonormalLimit};
  if (S >= 1.0) throw std::domain_error("classical limit undefined for S = 1 (t_C alpha = 0)");
  const double S2 = S * S;
  const double prefactor = (S + 3.0 * S2 - (S2 * S2 - 1.0)) / (4.0 * S2 * S);
  return {prefactor * std::asinh(S / std::sqrt(1.0 - S2)), Provenance::PrintedForm};
}

double success_probability(int n_photons, double t_m) {
  require_photons(n_photons);
  require_unit(t_m, "t_M");
  return std::pow(t_m, 2 * n_photons) * (1.0 - std::ldexp(1.0, -n_photons));
}

double success_probability_cs(int n_photons, double t_m, double alpha, const BlochQubit& q) {
  require_photons(n_photons);
  require_unit(t_m, "t_M");
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
  const double inv = std::ldexp(1.0, -n_photons);
  const double value = std::pow(t_m, 2 * n_photons) *
                       ((1.0 - inv) - std::exp(-2.0 * alpha * alpha) * inv * real_cross(q));
  return clamp_probability(value, "success probability");
}

std::optional<int> optimal_photon_number(double eta_m) {
  if (!(eta_m >= 0.0 && eta_m <= 1.0)) throw std::domain_error("eta_M must lie in [0, 1]");
  if (eta_m == 0.0) return std::nullopt;
  const double x = 1.0 + 1.0 / eta_m;
  int k = static_cast<int>(std::floor(std::log2(x)));
  // Guard the floor against log2 rounding at exact powers of two.
  while (std::ldexp(1.0, k + 1) <= x) ++k;
  while (k > 1 && std::ldexp(1.0, k) > x) --k;
  return std::max(k, 1);
}

}  // namespace mpt::analytics
