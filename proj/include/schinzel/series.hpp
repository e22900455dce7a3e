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

// Truncated singular series, density constants as Euler products with
// rigorous tail intervals, and empirical Schinzel proportions of boxes.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "schinzel/common.hpp"
#include "schinzel/poly.hpp"

namespace schinzel::series {

struct SeriesValue {
  double value = 0;
  Rational exact_part;  // prod over primes ell <= log x, ell not dividing M
  Rational prefactor;   // M^{n-1} / phi(M)^n, or 0 when the gcd condition fails
  double x = 0;
  double cutoff = 0;    // natural log of x; primes ell <= cutoff are used
  std::int64_t anchor = 0;
  std::int64_t modulus = 1;
  bool gcd_indicator = false;
};

/// The truncated series with the indicator gcd(M, prod P_i(n_0)) = 1.
SeriesValue singular_series(const poly::PolyTuple& tuple, double x, std::int64_t anchor = 0,
                            std::int64_t modulus = 1);

/// Same value in double precision only, for hot loops over boxes.
/// `primes` must be the primes <= log x that do not divide M.
double singular_series_fast(const poly::PolyTuple& tuple, std::span<const std::uint64_t> primes,
                            std::int64_t anchor, std::int64_t modulus);

/// Primes ell <= log x not dividing M, ascending.
std::vector<std::uint64_t> series_primes(double x, std::int64_t modulus);

struct FloorDiagnostic {
  double series = 0;
  double scaled = 0;  // series * (log log x)^{d-n}
  int exponent = 0;   // d - n
  double loglog = 0;
};

/// Throws std::invalid_argument unless the tuple is Schinzel and satisfies
/// the gcd condition; throws InvariantViolation on a nonpositive series.
FloorDiagnostic series_floor_diag(const poly::PolyTuple& tuple, double x, std::int64_t anchor = 0,
                                  std::int64_t modulus = 1);

/// An Euler product truncated at `truncation` with an interval that contains
/// the full product: [value * exp(-tail_bound), value].
struct DensityConstant {
  double value = 0;
  double lower = 0;
  double upper = 0;
  double tail_bound = 0;
  std::uint64_t truncation = 0;
};

/// prod_{ell not dividing M} (1 - c_ell): the limiting proportion of Schinzel
/// tuples in the box. `count_constant` is 2^d M^{-(d+n)} times it, the
/// constant in front of H^{d+n} in the count.
struct SchinzelDensity {
  DensityConstant product;
  double count_constant = 0;
};

SchinzelDensity schinzel_density(std::span<const unsigned> degrees, std::int64_t modulus = 1,
                                 std::uint64_t truncation = 1'000'000);

/// prod_{3 <= p} (1 - p^{-min(p, d+1)}).
DensityConstant section7_product(unsigned d, std::uint64_t truncation = 1'000'000);
/// prod_{3 <= p} (1 - p^{-p}), the d -> infinity limit of the above.
DensityConstant section7_limit(std::uint64_t truncation = 1'000);

struct BoxProportion {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  double fraction() const { return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0; }
};

/// Exhaustive count of Schinzel tuples in the box (fixed shard order).
BoxProportion schinzel_proportion(const poly::CoeffBox& box, const Budget& budget = {}, unsigned threads = 1);

}  // namespace schinzel::series
