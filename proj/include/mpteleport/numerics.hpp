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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpteleport/core_model.hpp"

namespace mpt::numerics {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int order);

/// Product rule for the normalized measure (1/4pi) sin(theta) dtheta dphi.
///
/// Gauss-Legendre in u = cos(theta) times equally spaced phi nodes, which is
/// spectrally accurate for periodic integrands.
class QuadratureRule {
 public:
  struct Node {
    BlochQubit qubit;
    double weight;
  };

  explicit QuadratureRule(int n_theta = 64, int n_phi = 64);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  QuadratureRule doubled() const { return QuadratureRule(2 * n_theta_, 2 * n_phi_); }

 private:
  int n_theta_;
  int n_phi_;
  std::vector<Node> nodes_;
};

template <typename F>
double sphere_average(F&& f, const QuadratureRule& rule) {
  double sum = 0.0;
  for (const auto& node : rule.nodes()) sum += node.weight * f(node.qubit);
  return sum;
}

struct BracketedRoot {
  double lo;
  double hi;
  double tol;
  double root;
  int iterations;
};

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of halvings needed to shrink [lo, hi] below tol.
int bisection_iterations(double lo, double hi, double tol);

/// Bisection for a monotone f with a sign change on [lo, hi].
///
/// Monotonicity is the caller's contract; a coarse sample of f is checked and
/// a BracketError is thrown if it is visibly violated or there is no sign change.
template <typename F>
BracketedRoot bisect(F&& f, double lo, double hi, double tol = 1e-10) {
  if (!(lo < hi) || !(tol > 0.0)) throw std::invalid_argument("bisect: need lo < hi and tol > 0");
  double flo = f(lo);
  const double fhi = f(hi);
  if (std::isnan(flo) || std::isnan(fhi)) throw BracketError("bisect: f is NaN at the bracket ends");
  if (flo * fhi > 0.0) {
    throw BracketError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]: f = " + std::to_string(flo) + ", " +
                       std::to_string(fhi));
  }
  constexpr int kSamples = 8;
  const double direction = fhi - flo;
  double prev = flo;
  for (int k = 1; k <= kSamples; ++k) {
    const double x = lo + (hi - lo) * k / (kSamples + 1);
    const double fx = f(x);
    if ((fx - prev) * direction < -1e-12 * (std::abs(fx) + std::abs(prev) + 1.0)) {
      throw BracketError("bisect: f is not monotone on the bracket near x = " + std::to_string(x));
    }
    prev = fx;
  }

  const int iterations = bisection_iterations(lo, hi, tol);
  double a = lo;
  double b = hi;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) {
      a = b = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      a = mid;
      flo = fm;
    } else {
      b = mid;
    }
  }
  return BracketedRoot{a, b, tol, 0.5 * (a + b), iterations};
}

}  // namespace mpt::numerics
