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

#include "mpteleport/numerics.hpp"

namespace mpt::numerics {

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureRule::QuadratureRule(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("quadrature orders must be >= 1");
  const GaussLegendre gl = gauss_legendre(n_theta);
  nodes_.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double theta = std::acos(std::clamp(gl.nodes[i], -1.0, 1.0));
    // (1/4pi) * dphi * du, with du weights summing to 2
    const double w = gl.weights[i] / (2.0 * n_phi);
    for (int j = 0; j < n_phi; ++j) {
      nodes_.push_back(Node{BlochQubit(theta, 2.0 * kPi * j / n_phi), w});
    }
  }
}

int bisection_iterations(double lo, double hi, double tol) {
  const double ratio = (hi - lo) / tol;
  if (ratio <= 1.0) return 0;
  return static_cast<int>(std::ceil(std::log2(ratio)));
}

}  // namespace mpt::numerics
