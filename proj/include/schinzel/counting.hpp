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

// Prime values of polynomials: theta, least prime inputs, pair correlations
// of the von Mangoldt function over a box, and the dispersion averages.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schinzel/common.hpp"
#include "schinzel/poly.hpp"

namespace schinzel::counting {

struct ThetaValue {
  double value = 0;
  std::vector<std::int64_t> hits;  // m in [1, x] with m = n_0 mod M and every P_i(m) prime
  double x = 0;
  std::int64_t anchor = 0;
  std::int64_t modulus = 1;
  bool probable = false;  // some prime value exceeded 2^64
};

ThetaValue theta(const poly::PolyTuple& tuple, double x, std::int64_t anchor = 0, std::int64_t modulus = 1);

/// theta without the hit list, for loops over boxes.
double theta_value(const poly::PolyTuple& tuple, double x, std::int64_t anchor, std::int64_t modulus);

/// True when every P_i(m) is prime.
bool all_prime_at(const poly::PolyTuple& tuple, std::int64_t m, bool* probable = nullptr);

struct LeastPrimeInputs {
  double bound = 0;  // (log |P|)^C
  std::vector<std::int64_t> hits;
};

/// S_C(P). Requires |P| >= 3.
LeastPrimeInputs least_prime_inputs(const poly::PolyTuple& tuple, double c, std::int64_t anchor = 0,
                                    std::int64_t modulus = 1);

/// First m >= 1 with m = n_0 (mod M) and every P_i(m) prime, up to m_bound.
std::optional<std::int64_t> first_prime_input(const poly::PolyTuple& tuple, std::int64_t m_bound,
                                              std::int64_t anchor = 0, std::int64_t modulus = 1);

struct LinnikSample {
  poly::IntPoly poly;
  std::optional<std::int64_t> m;  // input of the least prime value
  BigInt least_prime;
  double bound = 0;               // |P| (log |P|)^{d+eps}
  bool within = false;
};

struct LinnikReport {
  unsigned degree = 0;
  std::int64_t height = 0;
  double epsilon = 0;
  std::uint64_t seed = 0;
  std::int64_t scan_cap = 0;
  std::vector<LinnikSample> samples;
  std::uint64_t rejected = 0;  // non-Bouniakowsky draws discarded
  double fraction = 0;
};

/// Samples Bouniakowsky polynomials of degree d and height <= H, finds the
/// least prime value over natural inputs (scanning until P is increasing and
/// exceeds the best prime found, or m reaches scan_cap) and compares it with
/// |P| (log |P|)^{d+eps}.
LinnikReport linnik_experiment(unsigned d, std::int64_t height, std::size_t samples, double epsilon,
                               std::uint64_t seed, std::int64_t scan_cap = 1'000'000, unsigned threads = 1);

struct PairCorrValue {
  std::int64_t height = 0;
  unsigned degree = 0;
  std::int64_t k = 0;
  std::int64_t m = 0;
  double exact = 0;       // G_{k,m}(H; d) with Lambda(n) = Lambda(|n|); estimate when sampled
  double positive_only = 0;  // same sum restricted to P(k), P(m) > 0
  double main_term = 0;   // 2^d H^{d+1} prod_{p | k-m} p/(p-1)
  bool exhaustive = true;
  std::uint64_t terms = 0;     // polynomials visited
  double std_error = 0;        // zero when exhaustive
  std::uint64_t seed = 0;
  double ratio() const { return exact / main_term; }
};

double pair_main_term(std::int64_t height, unsigned degree, std::int64_t k, std::int64_t m);

/// Exhaustive when the box fits budget.enumeration, otherwise a sample of
/// `samples` polynomials stratified by leading coefficient.
PairCorrValue pair_correlation(std::int64_t height, unsigned degree, std::int64_t k, std::int64_t m,
                               const Budget& budget = {}, unsigned threads = 1,
                               std::uint64_t samples = 1'000'000, std::uint64_t seed = 1);

enum class Mode { exhaustive, sampled };

struct DispersionRow {
  poly::PolyTuple tuple;
  double theta = 0;
  double series = 0;
  double residual = 0;
};

struct DispersionReport {
  std::int64_t height = 0;
  double x = 0;
  Mode mode = Mode::exhaustive;
  std::uint64_t tuples = 0;
  std::uint64_t seed = 0;
  double r = 0;  // mean |theta - S x|
  double v = 0;  // mean (theta - S x)^2
  double r_over_x() const { return r / x; }
  /// R / (x / sqrt(log x)).
  double r_ratio() const;
  std::vector<DispersionRow> rows;  // filled only on request
};

DispersionReport dispersion(const poly::CoeffBox& box, double x, Mode mode, std::uint64_t samples,
                            std::uint64_t seed, const Budget& budget = {}, unsigned threads = 1,
                            bool keep_rows = false);

struct FractionReport {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  std::uint64_t rejected = 0;  // draws outside the admissible set
  std::uint64_t seed = 0;
  double fraction() const { return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0; }
};

/// Fraction of sampled Schinzel tuples with |theta - S x| > x / (log x)^c.
FractionReport bdh_exceptional_fraction(const poly::CoeffBox& box, double x, double c, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads = 1);

/// Fraction of sampled Schinzel tuples with #S_{n+A}(P) >= (log |P|)^{A/3}.
FractionReport theorem_cool_fraction(const poly::CoeffBox& box, double a, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads = 1);

/// Fraction of sampled Schinzel tuples (with gcd(M, prod Q_i(n_0)) = 1) that
/// take simultaneous prime values at some m <= m_bound, m = n_0 (mod M).
FractionReport prime_value_fraction(const poly::CoeffBox& box, std::int64_t m_bound, std::uint64_t samples,
                                    std::uint64_t seed, unsigned threads = 1);

/// Draws from the box until a Schinzel tuple appears; counts rejections.
/// Throws BudgetExceeded after `max_draws` consecutive rejections.
poly::PolyTuple sample_schinzel(const poly::BoxEnumerator& box, Rng& rng, std::uint64_t& rejected,
                                std::uint64_t max_draws = 100'000);

}  // namespace schinzel::counting
