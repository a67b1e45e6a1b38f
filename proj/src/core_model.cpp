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

#include "mpteleport/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mpt {

namespace {

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

}  // namespace

BlochQubit::BlochQubit(double theta, double phi) : theta_(theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("theta must lie in [0, pi], got " + std::to_string(theta));
  }
  if (!std::isfinite(phi)) throw std::domain_error("phi must be finite");
  phi_ = std::fmod(phi, 2.0 * kPi);
  if (phi_ < 0.0) phi_ += 2.0 * kPi;
}

BlochQubit BlochQubit::swapped() const { return BlochQubit(kPi - theta_, -phi_); }

std::pair<Complex, Complex> bloch_amplitudes(const BlochQubit& q) {
  const double half = 0.5 * q.theta();
  return {std::polar(std::cos(half), 0.5 * q.phi()), std::polar(std::sin(half), -0.5 * q.phi())};
}

LossParams LossParams::from_transmittance(double t_m, double t_c) {
  require_unit_interval(t_m, "t_M");
  require_unit_interval(t_c, "t_C");
  return LossParams(t_m, t_c);
}

LossParams LossParams::from_loss_rate(double eta_m, double eta_c) {
  return LossParams(transmittance_from_loss_rate(eta_m), transmittance_from_loss_rate(eta_c));
}

double LossParams::r_m() const { return std::sqrt(eta_m()); }
double LossParams::r_c() const { return std::sqrt(eta_c()); }

double loss_rate_from_transmittance(double t) {
  require_unit_interval(t, "transmittance");
  return 1.0 - t * t;
}

double transmittance_from_loss_rate(double eta) {
  require_unit_interval(eta, "loss rate");
  return std::sqrt(1.0 - eta);
}

CarrierSpec CarrierSpec::coherent(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("coherent amplitude must be positive, got " + std::to_string(alpha));
  }
  return CarrierSpec(CarrierKind::CoherentState, alpha);
}

double CarrierSpec::alpha() const {
  if (!alpha_) throw std::logic_error("carrier has no coherent amplitude");
  return *alpha_;
}

const char* to_string(CarrierKind kind) {
  switch (kind) {
    case CarrierKind::CoherentState: return "cs";
    case CarrierKind::PSP: return "psp";
    case CarrierKind::VSP: return "vsp";
  }
  return "?";
}

MultiphotonSpec::MultiphotonSpec(int n) : n_photons(n) {
  if (n < 1) throw std::domain_error("photon number must be >= 1");
}

double time_to_transmittance(const LossSchedule& schedule) {
  if (!(schedule.gamma >= 0.0) || !(schedule.tau >= 0.0)) {
    throw std::domain_error("decay constant and elapsed time must be non-negative");
  }
  return std::exp(-0.5 * schedule.gamma * schedule.tau);
}

double coherent_overlap(double alpha, double t_c) {
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
  require_unit_interval(t_c, "t_C");
  return std::exp(-2.0 * t_c * t_c * alpha * alpha);
}

}  // namespace mpt
