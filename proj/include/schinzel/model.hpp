// Copyright 2026 The schinzel-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bernoulli model of Euler factors over F_ell, in exact rationals.
//
// Omega is the product of the spaces of polynomials of degree <= d_k over
// F_ell with the uniform measure. X_m = 1 when the product P_1...P_n does not
// vanish at m. No floating point is used anywhere in this module.

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "schinzel/common.hpp"

namespace schinzel::model {

struct OmegaSpec {
  std::uint64_t ell = 2;
  std::vector<unsigned> degrees;

  /// Throws std::invalid_argument unless ell is prime and all d_k >= 1.
  void validate() const;
  unsigned total_degree() const;
};

/// G_ell(d, s) = sum_{r=0}^{s} C(s,r) (-1)^r ell^{-min(r, d+1)}.
Rational g_factor(std::uint64_t ell, unsigned d, unsigned s);

/// c_ell by the alternating sum over subsets of F_ell, collapsed by size.
Rational c_ell(std::uint64_t ell, std::span<const unsigned> degrees);

/// prod_k (1 - ell^{-(d_k+1)}), which equals 1 - c_ell once ell > sum d_k.
Rational one_minus_c_ell_large(std::uint64_t ell, std::span<const unsigned> degrees);

/// gamma_n(ell) = 1 - 1/ell + ell^{n-1} / (ell-1)^n.
Rational gamma(std::uint64_t ell, unsigned n);

/// P[X_m = gamma_m for all m] from the closed alternating sum. `gamma` has
/// one entry per element of F_ell.
Rational joint_prob(const OmegaSpec& spec, const std::vector<bool>& gamma);

struct EulerFactorTable {
  std::uint64_t ell;
  std::vector<unsigned> degrees;
  std::vector<std::vector<Rational>> g;  // g[k][s] = G_ell(d_k, s), s = 0..ell
  Rational c;
  Rational gamma_n;
};

EulerFactorTable euler_factor_table(const OmegaSpec& spec);

/// Closed forms for the consequences of the model.
Rational first_moment_closed(std::uint64_t ell, unsigned n);
Rational second_moment_closed(std::uint64_t ell, unsigned n);
/// Right-hand side for the mean of 1 - Z/ell restricted to P_i(m) != 0.
Rational conditioned_mean_closed(std::uint64_t ell, unsigned n);

/// Exhaustive enumeration of Omega, summarised by how many tuples have each
/// nonvanishing set {m : X_m = 1} (a bitmask over F_ell, so ell <= 61).
class MaskHistogram {
 public:
  /// Throws BudgetExceeded when ell^{d+n} exceeds budget.enumeration.
  static MaskHistogram enumerate(const OmegaSpec& spec, const Budget& budget = {},
                                 unsigned threads = 1);

  std::uint64_t ell() const { return ell_; }
  std::uint64_t total() const { return total_; }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& entries() const { return entries_; }

  /// Fraction of tuples whose nonvanishing set is exactly `mask`.
  Rational prob_mask(std::uint64_t mask) const;
  /// E[prod_{m in subset} X_m].
  Rational expect_product(std::uint64_t subset) const;
  Rational covariance(std::uint64_t k, std::uint64_t m) const;
  /// Mean of (1 - Z/ell).
  Rational first_moment() const;
  /// Mean of (1 - Z/ell)^2.
  Rational second_moment() const;
  /// ell^{-(d+n)} times the sum of (1 - Z/ell) over tuples with every
  /// P_i(m) != 0.
  Rational conditioned_mean(std::uint64_t m) const;
  /// #T_ell: tuples whose product does not vanish identically.
  std::uint64_t count_t() const;

 private:
  std::uint64_t ell_ = 0;
  std::uint64_t total_ = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries_;  // (mask, count), mask ascending
};

struct MomentCheck {
  Rational exhaustive;
  Rational closed;
  bool exact() const { return exhaustive == closed; }
};

struct MomentReport {
  OmegaSpec spec;
  std::uint64_t m = 0;
  std::uint64_t tuples = 0;
  MomentCheck first;
  MomentCheck second;
  MomentCheck conditioned;
  MomentCheck c;  // c_ell against 1 - #T_ell / ell^{d+n}
  bool all_exact() const { return first.exact() && second.exact() && conditioned.exact() && c.exact(); }
};

MomentReport verify_moments(const OmegaSpec& spec, std::uint64_t m = 0, const Budget& budget = {},
                            unsigned threads = 1);

}  // namespace schinzel::model
