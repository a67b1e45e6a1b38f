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

#include <complex>
#include <optional>
#include <utility>

namespace mpt {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Pure input qubit on the Bloch sphere.
///
/// Amplitudes follow a = cos(theta/2) e^{i phi/2}, b = sin(theta/2) e^{-i phi/2}.
/// phi is wrapped into [0, 2pi); theta outside [0, pi] is rejected.
class BlochQubit {
 public:
  BlochQubit(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// The qubit with a and b exchanged (theta -> pi - theta, phi -> -phi).
  BlochQubit swapped() const;

 private:
  double theta_;
  double phi_;
};

std::pair<Complex, Complex> bloch_amplitudes(const BlochQubit& q);

/// Amplitude transmittances of the multiphoton side and the carrier side.
class LossParams {
 public:
  static LossParams from_transmittance(double t_m, double t_c);
  static LossParams from_loss_rate(double eta_m, double eta_c);

  double t_m() const { return t_m_; }
  double t_c() const { return t_c_; }
  double eta_m() const { return 1.0 - t_m_ * t_m_; }
  double eta_c() const { return 1.0 - t_c_ * t_c_; }
  double r_m() const;
  double r_c() const;

 private:
  LossParams(double t_m, double t_c) : t_m_(t_m), t_c_(t_c) {}
  double t_m_;
  double t_c_;
};

double loss_rate_from_transmittance(double t);
double transmittance_from_loss_rate(double eta);

enum class CarrierKind { CoherentState, PSP, VSP };

class CarrierSpec {
 public:
  static CarrierSpec coherent(double alpha);
  static CarrierSpec psp() { return CarrierSpec(CarrierKind::PSP, std::nullopt); }
  static CarrierSpec vsp() { return CarrierSpec(CarrierKind::VSP, std::nullopt); }

  CarrierKind kind() const { return kind_; }
  bool is_coherent() const { return kind_ == CarrierKind::CoherentState; }
  /// Throws std::logic_error for discrete carriers.
  double alpha() const;

 private:
  CarrierSpec(CarrierKind kind, std::optional<double> alpha) : kind_(kind), alpha_(alpha) {}
  CarrierKind kind_;
  std::optional<double> alpha_;
};

const char* to_string(CarrierKind kind);

struct MultiphotonSpec {
  explicit MultiphotonSpec(int n);
  int n_photons;
};

struct LossSchedule {
  double gamma;
  double tau;
};

/// t = exp(-gamma tau / 2).
double time_to_transmittance(const LossSchedule& schedule);

/// Overlap <t_C alpha | -t_C alpha> = exp(-2 t_C^2 alpha^2).
double coherent_overlap(double alpha, double t_c);

}  // namespace mpt
