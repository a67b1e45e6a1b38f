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


#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "mpteleport/fock_oracle.hpp"

using Catch::Matchers::WithinAbs;
using mpt::BlochQubit;
using mpt::CarrierSpec;
using mpt::Complex;
using mpt::kPi;
using mpt::MultiphotonSpec;
using namespace mpt::oracle;

namespace {

// Coherent amplitudes written out from lgamma, separate from the library's recurrence.
CVector coherent_ket(double x, int dim) {
  CVector v(dim);
  for (int n = 0; n < dim; ++n) {
    const double mag = n == 0 ? 1.0 : std::exp(n * std::log(std::abs(x)) - 0.5 * std::lgamma(n + 1.0));
    v(n) = std::exp(-0.5 * x * x) * mag * ((x < 0 && n % 2) ? -1.0 : 1.0);
  }
  return v;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix lossy_hybrid(int n, const CarrierSpec& carrier, double t_m, double t_c, int fock_dim = 24) {
  DensityMatrix rho = DensityMatrix::from_pure(make_hybrid_state(MultiphotonSpec(n), carrier, fock_dim));
  for (int m = 0; m < n; ++m) rho = apply_loss(rho, static_cast<std::size_t>(m), t_m);
  return apply_loss(rho, static_cast<std::size_t>(n), t_c);
}

}  // namespace

TEST_CASE("mode space digits and strides", "[fock_oracle]") {
  const ModeSpace space = ModeSpace::polarization(2) + ModeSpace({Mode::fock(5)});
  CHECK(space.dim() == 45);
  CHECK(space.stride(0) == 15);
  CHECK(space.stride(2) == 1);
  CHECK(space.digit(15 * kV + 5 * kH + 3, 0) == kV);
  CHECK(space.digit(15 * kV + 5 * kH + 3, 1) == kH);
  CHECK(space.digit(15 * kV + 5 * kH + 3, 2) == 3);
}

TEST_CASE("multiphoton qubit", "[fock_oracle]") {
  const PureState hhh = make_multiphoton_qubit(BlochQubit(0.0, 0.0), MultiphotonSpec(3));
  CHECK(std::abs(hhh.amplitudes()(9 * kH + 3 * kH + kH) - 1.0) < 1e-15);
  CHECK_THAT(hhh.norm(), WithinAbs(1.0, 1e-15));

  const PureState ghz = make_multiphoton_qubit(BlochQubit(kPi / 2, 0.0), MultiphotonSpec(2));
  CHECK_THAT(ghz.amplitudes()(3 * kH + kH).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(ghz.amplitudes()(3 * kV + kV).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(ghz.amplitudes().squaredNorm(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("hybrid states", "[fock_oracle]") {
  const PureState vsp = make_hybrid_state(MultiphotonSpec(1), CarrierSpec::vsp());
  REQUIRE(vsp.space().dim() == 6);
  CHECK_THAT(vsp.amplitudes()(2 * kH + 0).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(vsp.amplitudes()(2 * kV + 1).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(vsp.amplitudes().squaredNorm(), WithinAbs(1.0, 1e-15));

  // N = 2 with a PSP carrier is a three-mode GHZ state
  const PureState psp = make_hybrid_state(MultiphotonSpec(2), CarrierSpec::psp());
  CHECK_THAT(psp.amplitudes()(9 * kH + 3 * kH + kH).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(psp.amplitudes()(9 * kV + 3 * kV + kV).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));

  const PureState cs = make_hybrid_state(MultiphotonSpec(1), CarrierSpec::coherent(1.2), 24);
  const CVector plus = coherent_ket(1.2, 24), minus = coherent_ket(-1.2, 24);
  const double renorm = 1.0 / std::sqrt(0.5 * (plus.squaredNorm() + minus.squaredNorm()));
  CHECK((cs.amplitudes().segment(24 * kH, 24) - renorm * plus / std::sqrt(2.0)).norm() < 1e-14);
  CHECK((cs.amplitudes().segment(24 * kV, 24) - renorm * minus / std::sqrt(2.0)).norm() < 1e-14);
}

TEST_CASE("fock truncation", "[fock_oracle]") {
  CHECK(fock_truncation(1.6) <= 24);
  CHECK(poisson_tail(1.6 * 1.6, fock_truncation(1.6)) < 1e-12);
  CHECK(poisson_tail(1.6 * 1.6, fock_truncation(1.6) - 1) >= 1e-12);
  CHECK_THROWS(make_hybrid_state(MultiphotonSpec(1), CarrierSpec::coherent(1.6), 8));
}

TEST_CASE("kraus sets are complete", "[fock_oracle][property]") {
  for (double t : {0.0, 0.3, 0.77, 1.0}) {
    CHECK(kraus_completeness_error(loss_kraus(Mode::polarization(), t)) < 1e-12);
    CHECK(kraus_completeness_error(loss_kraus(Mode::two_level(), t)) < 1e-12);
    CHECK(kraus_completeness_error(loss_kraus(Mode::fock(24), t)) < 1e-12);
  }
}

TEST_CASE("single photon decays under amplitude damping", "[fock_oracle]") {
  const ModeSpace space({Mode::two_level()});
  CMatrix one = CMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const double t = 0.8;
  const DensityMatrix out = apply_loss(DensityMatrix(space, one), 0, t);
  CHECK_THAT(out.matrix()(1, 1).real(), WithinAbs(t * t, 1e-15));
  CHECK_THAT(out.matrix()(0, 0).real(), WithinAbs(1 - t * t, 1e-15));
  CHECK(std::abs(out.matrix()(0, 1)) < 1e-15);
}

TEST_CASE("unit transmittance is the identity channel", "[fock_oracle]") {
  const DensityMatrix rho = DensityMatrix::from_pure(make_hybrid_state(MultiphotonSpec(2), CarrierSpec::vsp()));
  for (std::size_t m = 0; m < 3; ++m) CHECK((apply_loss(rho, m, 1.0).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("coherent state through loss stays coherent with amplitude t alpha", "[fock_oracle]") {
  const int dim = 24;
  const ModeSpace space({Mode::fock(dim)});
  const CVector in = coherent_ket(1.2, dim);
  const DensityMatrix out = apply_loss(DensityMatrix(space, in * in.adjoint()), 0, 0.9);
  const CVector expect = coherent_ket(0.9 * 1.2, dim);
  CHECK((out.matrix() - expect * expect.adjoint()).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("loss on distinct modes commutes and preserves trace", "[fock_oracle][property]") {
  const DensityMatrix rho = DensityMatrix::from_pure(make_hybrid_state(MultiphotonSpec(2), CarrierSpec::coherent(0.8), 0));
  const DensityMatrix ab = apply_loss(apply_loss(apply_loss(rho, 0, 0.7), 1, 0.6), 2, 0.5);
  const DensityMatrix ba = apply_loss(apply_loss(apply_loss(rho, 2, 0.5), 1, 0.6), 0, 0.7);
  CHECK((ab.matrix() - ba.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THAT(ab.trace(), WithinAbs(rho.trace(), 1e-12));
  CHECK(ab.hermiticity_error() < 1e-14);
  CHECK(ab.min_eigenvalue() > -1e-12);
}

TEST_CASE("apply_kraus matches the full-space sandwich", "[fock_oracle]") {
  // Independent path: embed each Kraus operator with Kronecker products.
  const DensityMatrix rho = DensityMatrix::from_pure(make_hybrid_state(MultiphotonSpec(1), CarrierSpec::psp()));
  const auto kraus = loss_kraus(Mode::polarization(), 0.6);
  for (std::size_t mode = 0; mode < 2; ++mode) {
    CMatrix expect = CMatrix::Zero(9, 9);
    for (const auto& k : kraus) {
      const CMatrix full = mode == 0 ? kron(k, CMatrix::Identity(3, 3)) : kron(CMatrix::Identity(3, 3), k);
      expect += full * rho.matrix() * full.adjoint();
    }
    CHECK((apply_kraus(rho, mode, kraus).matrix() - expect).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("fidelity with a pure state", "[fock_oracle]") {
  const PureState psi = make_hybrid_state(MultiphotonSpec(1), CarrierSpec::psp());
  CHECK_THAT(fidelity_with_pure(DensityMatrix::from_pure(psi), psi), WithinAbs(1.0, 1e-15));
  const PureState other = make_multiphoton_qubit(BlochQubit(0.0, 0.0), MultiphotonSpec(2));
  CVector orth = CVector::Zero(9);
  orth(3 * kH + kV) = 1.0;
  CHECK(fidelity_with_pure(DensityMatrix::from_pure(PureState(other.space(), orth)), other) < 1e-15);
}

TEST_CASE("direct transmission fidelity is t^2N", "[fock_oracle]") {
  const double t = 0.95;
  const PureState psi = make_multiphoton_qubit(BlochQubit(1.0, 0.4), MultiphotonSpec(3));
  DensityMatrix rho = DensityMatrix::from_pure(psi);
  for (std::size_t m = 0; m < 3; ++m) rho = apply_loss(rho, m, t);
  CHECK_THAT(fidelity_with_pure(rho, psi), WithinAbs(0.735092, 1e-6));
  CHECK_THAT(fidelity_with_pure(rho, psi), WithinAbs(std::pow(t, 6), 1e-12));
}

TEST_CASE("loss term is orthogonal to the input", "[fock_oracle][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ph(0.0, 2 * kPi);
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= 10; ++k) {
      const double t = 0.1 * k;
      const PureState psi = make_multiphoton_qubit(BlochQubit(std::acos(u(rng)), ph(rng)), MultiphotonSpec(n));
      DensityMatrix rho = DensityMatrix::from_pure(psi);
      for (int m = 0; m < n; ++m) rho = apply_loss(rho, static_cast<std::size_t>(m), t);
      REQUIRE_THAT(fidelity_with_pure(rho, psi), WithinAbs(std::pow(t, 2 * n), 1e-12));
    }
  }
}

TEST_CASE("partial transpose of a bell pair", "[fock_oracle]") {
  const ModeSpace space({Mode::two_level(), Mode::two_level()});
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const DensityMatrix rho = DensityMatrix::from_pure(PureState(space, bell));
  const std::vector<std::size_t> second{1};
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(partial_transpose(rho, second));
  const auto ev = eig.eigenvalues();
  CHECK_THAT(ev(0), WithinAbs(-0.5, 1e-15));
  CHECK_THAT(ev(1), WithinAbs(0.5, 1e-15));
  CHECK_THAT(ev(3), WithinAbs(0.5, 1e-15));
  CHECK_THAT(negativity(rho, second), WithinAbs(0.5, 1e-15));
}

TEST_CASE("product states have positive partial transpose", "[fock_oracle]") {
  const ModeSpace space({Mode::two_level(), Mode::fock(4)});
  CVector a(2), b(4);
  a << 0.6, Complex(0, 0.8);
  b << 0.5, 0.5, Complex(0.5, 0), Complex(0, 0.5);
  CVector ab(8);
  for (int i = 0; i < 2; ++i) ab.segment(4 * i, 4) = a(i) * b;
  const DensityMatrix rho = DensityMatrix::from_pure(PureState(space, ab));
  const std::vector<std::size_t> second{1};
  CHECK(min_hermitian_eigenvalue(partial_transpose(rho, second)) >= -1e-12);
  CHECK(negativity(rho, second) == 0.0);
}

TEST_CASE("negativity of the lossy discrete hybrid state", "[fock_oracle]") {
  const std::vector<std::size_t> carrier{2};
  const DensityMatrix rho = lossy_hybrid(2, CarrierSpec::psp(), 0.9, 0.8);
  CHECK_THAT(negativity(rho, carrier), WithinAbs(0.5 * std::pow(0.9, 4) * 0.64, 1e-12));
  CHECK_THAT(negativity(rho, carrier), WithinAbs(0.209952, 1e-6));
  const DensityMatrix vsp = lossy_hybrid(2, CarrierSpec::vsp(), 0.9, 0.8);
  CHECK_THAT(negativity(vsp, carrier), WithinAbs(0.209952, 1e-6));
}

TEST_CASE("negativity of the lossless coherent hybrid state", "[fock_oracle]") {
  // Schmidt form: (|H>|a> + |V>|-a>)/sqrt2 has coefficients sqrt((1 +- e^{-2a^2})/2)
  const double alpha = 1.2, s = std::exp(-2 * alpha * alpha);
  const double expect = std::sqrt((1 + s) / 2) * std::sqrt((1 - s) / 2);
  const std::vector<std::size_t> carrier{1};
  CHECK_THAT(negativity(lossy_hybrid(1, CarrierSpec::coherent(alpha), 1.0, 1.0), carrier), WithinAbs(expect, 1e-12));
}

TEST_CASE("loss terms carry no entanglement", "[fock_oracle][property]") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& carrier : {CarrierSpec::psp(), CarrierSpec::vsp(), CarrierSpec::coherent(1.2)}) {
      const DensityMatrix rho = lossy_hybrid(n, carrier, 0.7, 1.0, 0);
      const DensityMatrix lost = restrict_to(rho, [n](const ModeSpace& sp, Index i) {
        for (int m = 0; m < n; ++m)
          if (sp.digit(i, static_cast<std::size_t>(m)) == kVac) return true;
        return false;
      });
      REQUIRE(lost.trace() > 0.0);
      const std::vector<std::size_t> cm{static_cast<std::size_t>(n)};
      REQUIRE(negativity(lost, cm) < 1e-10);
    }
  }
}

TEST_CASE("bell states", "[fock_oracle]") {
  for (int i = 1; i <= 4; ++i) {
    CHECK_THAT(bell_state(2, i).norm(), WithinAbs(1.0, 1e-15));
    for (int j = 1; j < i; ++j) CHECK(std::abs(bell_state(2, i).amplitudes().dot(bell_state(2, j).amplitudes())) < 1e-15);
  }
  const PureState b3 = bell_state(1, 3);
  CHECK_THAT(b3.amplitudes()(3 * kH + kV).real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
  const PureState b4 = bell_state(1, 4);
  CHECK_THAT(b4.amplitudes()(3 * kV + kH).real(), WithinAbs(-1 / std::sqrt(2.0), 1e-15));
  CHECK_THROWS(bell_state(1, 5));
}

TEST_CASE("bell projection matches the explicit joint contraction", "[fock_oracle]") {
  const PureState in = make_multiphoton_qubit(BlochQubit(1.1, 0.5), MultiphotonSpec(1));
  const DensityMatrix channel = lossy_hybrid(1, CarrierSpec::psp(), 0.8, 0.7);
  // Joint ordering: input mode, channel multiphoton mode, carrier.
  const CMatrix joint = kron(in.amplitudes() * in.amplitudes().adjoint(), channel.matrix());
  for (int i = 1; i <= 4; ++i) {
    const CMatrix proj = kron(bell_state(1, i).amplitudes(), CMatrix::Identity(3, 3));
    const CMatrix expect = proj.adjoint() * joint * proj;
    const BellBranch got = bell_project(in, channel, i);
    CHECK((got.carrier.matrix() - expect).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THAT(got.weight, WithinAbs(expect.trace().real(), 1e-15));
  }
}

TEST_CASE("lossless teleportation reproduces the input", "[fock_oracle]") {
  const BlochQubit q(0.9, 1.7);
  for (const auto& carrier : {CarrierSpec::psp(), CarrierSpec::vsp()}) {
    const PureState in = make_multiphoton_qubit(q, MultiphotonSpec(2));
    const DensityMatrix channel = lossy_hybrid(2, carrier, 1.0, 1.0);
    double total = 0.0;
    for (int i = 1; i <= 4; ++i) {
      const BellBranch b = bell_project(in, channel, i);
      total += b.weight;
      CHECK_THAT(fidelity_with_pure(b.normalized(), branch_target(carrier, 1.0, q, i)), WithinAbs(1.0, 1e-14));
    }
    CHECK_THAT(total, WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("teleported output does not depend on t_M", "[fock_oracle][property]") {
  const BlochQubit q(2.0, 0.3);
  for (const auto& carrier : {CarrierSpec::vsp(), CarrierSpec::coherent(1.2)}) {
    const PureState in = make_multiphoton_qubit(q, MultiphotonSpec(2));
    const CMatrix ref = bell_project(in, lossy_hybrid(2, carrier, 1.0, 0.8, 0), 1).normalized().matrix();
    for (int k = 1; k <= 10; ++k) {
      const CMatrix out = bell_project(in, lossy_hybrid(2, carrier, 0.1 * k, 0.8, 0), 1).normalized().matrix();
      REQUIRE(trace_distance(out, ref) < 1e-10);
    }
  }
}

TEST_CASE("identified weight does not depend on t_C", "[fock_oracle][property]") {
  const BlochQubit q(1.3, 0.9);
  const auto weight = [&](double t_c) {
    const PureState in = make_multiphoton_qubit(q, MultiphotonSpec(2));
    const DensityMatrix ch = lossy_hybrid(2, CarrierSpec::coherent(1.2), 0.9, t_c, 0);
    double p = 0.0;
    for (int i = 1; i <= 4; ++i) p += bsm_identification_probability(2, i) * bell_project(in, ch, i).weight;
    return p;
  };
  const double ref = weight(1.0);
  for (int k = 1; k <= 10; ++k) REQUIRE_THAT(weight(0.1 * k), WithinAbs(ref, 1e-10));
}

TEST_CASE("identification probabilities", "[fock_oracle]") {
  CHECK(bsm_identification_probability(1, 1) == 0.0);
  CHECK(bsm_identification_probability(1, 2) == 1.0);
  CHECK(bsm_identification_probability(3, 3) == 0.75);
  CHECK(bsm_identification_probability(3, 4) == 1.0);
}
