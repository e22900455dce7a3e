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

// Integral points on x^2 + a y^2 = f(t), the exact mod-4 constants r_d, and
// the sampled solvability proportion over P_d(H).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schinzel/common.hpp"
#include "schinzel/poly.hpp"
#include "schinzel/series.hpp"

namespace schinzel::chatelet {

struct ChateletSpec {
  std::int64_t a = 1;
  poly::IntPoly f{std::vector<std::int64_t>{0, 1}};
  std::int64_t anchor = 0;   // n_0
  std::int64_t modulus = 1;  // M
  void validate() const;
};

/// x^2 + a y^2 represents every prime p with (-a / p) = 1 exactly for these a.
bool class_number_one(std::int64_t a);

enum class Path { fast, full };

struct Representation {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  bool fast = true;  // found through a prime value
};

/// Tries t = m alone. The fast path needs f(m) prime and uses Cornacchia; the
/// full path (a = 1 only) also accepts composite values via the two-squares
/// criterion. `reason` receives the outcome either way.
std::optional<Representation> represent_at(const ChateletSpec& spec, std::int64_t m, Path path,
                                           std::string* reason = nullptr, const Budget& budget = {});

struct ScanEntry {
  std::int64_t m = 0;
  std::string reason;
};

struct ChateletResult {
  std::optional<std::int64_t> m;
  Representation rep;
  bool best_effort = false;  // a outside the class-number-one list
  std::uint64_t scanned = 0;
  std::vector<ScanEntry> log;  // filled only on request
};

/// First m <= m_bound with m = n0 (mod M), m >= 1, where x^2 + a y^2 = f(m).
ChateletResult solve_chatelet(const ChateletSpec& spec, std::int64_t m_bound, Path path = Path::full,
                              bool keep_log = false, const Budget& budget = {});

/// Share of f in (Z/4)[t], deg f <= d, with f(n0) = 1 mod 4 for some n0,
/// by enumeration of all 4^{d+1} coefficient vectors. Requires 1 <= d <= 12
/// and 4^{d+1} within budget.enumeration.
Rational rd_exact(unsigned d, const Budget& budget = {});

struct ProbTable {
  unsigned d = 0;
  Rational r_d;
  bool rd_enumerated = false;  // false when d is beyond the enumeration range
  series::DensityConstant product;  // prod_{p >= 3} (1 - p^{-min(p, d+1)})
  double value = 0;
  double lower = 0;
  double upper = 0;
};

/// r_d times the product over odd primes, with the product's tail interval.
ProbTable lower_bound(unsigned d, std::uint64_t truncation = 1'000'000, const Budget& budget = {});

/// One-sided Wilson bounds at the normal quantile z.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.645);

struct SampleVerdict {
  poly::IntPoly f;
  std::optional<std::int64_t> m;
  Representation rep;
};

struct ProportionReport {
  unsigned degree = 0;
  std::int64_t height = 0;
  std::int64_t m_bound = 0;
  std::uint64_t seed = 0;
  std::uint64_t solvable = 0;
  double proportion = 0;
  double wilson_lower = 0;  // one-sided 95%
  double wilson_upper = 0;
  std::vector<SampleVerdict> samples;
};

/// Samples f uniformly from P_d(H) and runs solve_chatelet (a = 1, full path)
/// on each; sample i uses sub_seed(seed, i).
ProportionReport solvability_proportion(unsigned d, std::int64_t height, std::int64_t m_bound, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads = 1, const Budget& budget = {});

}  // namespace schinzel::chatelet
