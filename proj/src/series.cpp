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

#include "schinzel/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "schinzel/arith.hpp"
#include "schinzel/model.hpp"
#include "schinzel/parallel.hpp"

namespace schinzel::series {

namespace {

BigInt big(std::uint64_t v) { return BigInt(std::to_string(v)); }

bool gcd_condition(const poly::PolyTuple& tuple, std::int64_t anchor, std::int64_t modulus) {
  if (modulus == 1) return true;
  const auto m = static_cast<std::uint64_t>(modulus);
  unsigned __int128 prod = 1 % m;
  for (const auto& p : tuple.polys()) prod = prod * poly::eval_mod(p, anchor, m) % m;
  return std::gcd(static_cast<std::uint64_t>(prod), m) == 1;
}

void check_modulus(std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
}

}  // namespace

std::vector<std::uint64_t> series_primes(double x, std::int64_t modulus) {
  check_modulus(modulus);
  std::vector<std::uint64_t> out;
  if (!(x > 1)) return out;
  const double cutoff = std::log(x);
  for (auto ell : arith::primes_up_to(static_cast<std::uint64_t>(std::floor(cutoff))))
    if (static_cast<double>(ell) <= cutoff && modulus % static_cast<std::int64_t>(ell) != 0) out.push_back(ell);
  return out;
}

SeriesValue singular_series(const poly::PolyTuple& tuple, double x, std::int64_t anchor, std::int64_t modulus) {
  check_modulus(modulus);
  const unsigned n = static_cast<unsigned>(tuple.size());
  SeriesValue s;
  s.x = x;
  s.cutoff = x > 0 ? std::log(x) : 0;
  s.anchor = anchor;
  s.modulus = modulus;
  s.gcd_indicator = gcd_condition(tuple, anchor, modulus);
  s.exact_part = 1;
  for (auto ell : series_primes(x, modulus)) {
    const unsigned z = poly::z_count(tuple, ell);
    s.exact_part *= make_rational(big(ell - z) * pow(big(ell), n - 1), pow(big(ell - 1), n));
  }
  const auto m = static_cast<std::uint64_t>(modulus);
  s.prefactor = s.gcd_indicator ? make_rational(pow(big(m), n - 1), pow(big(arith::euler_phi(m)), n)) : Rational(0);
  s.value = Rational(s.prefactor * s.exact_part).get_d();
  return s;
}

double singular_series_fast(const poly::PolyTuple& tuple, std::span<const std::uint64_t> primes,
                            std::int64_t anchor, std::int64_t modulus) {
  if (!gcd_condition(tuple, anchor, modulus)) return 0.0;
  const double n = static_cast<double>(tuple.size());
  const auto m = static_cast<std::uint64_t>(modulus);
  double value = std::pow(static_cast<double>(m), n - 1) / std::pow(static_cast<double>(arith::euler_phi(m)), n);
  for (auto ell : primes) {
    const double l = static_cast<double>(ell);
    value *= (1.0 - poly::z_count(tuple, ell) / l) / std::pow(1.0 - 1.0 / l, n);
  }
  return value;
}

FloorDiagnostic series_floor_diag(const poly::PolyTuple& tuple, double x, std::int64_t anchor, std::int64_t modulus) {
  if (!(x > std::exp(1.0))) throw std::invalid_argument("series_floor_diag needs x > e so that log log x > 0");
  if (!poly::is_schinzel(tuple).holds) throw std::invalid_argument("series_floor_diag needs a Schinzel tuple");
  if (!gcd_condition(tuple, anchor, modulus))
    throw std::invalid_argument("series_floor_diag needs gcd(M, prod P_i(n_0)) = 1");
  const auto s = singular_series(tuple, x, anchor, modulus);
  if (!(s.prefactor * s.exact_part > 0))
    throw InvariantViolation("nonpositive singular series for a Schinzel tuple");
  FloorDiagnostic f;
  f.series = s.value;
  f.exponent = static_cast<int>(tuple.total_degree()) - static_cast<int>(tuple.size());
  f.loglog = std::log(std::log(x));
  f.scaled = s.value * std::pow(f.loglog, f.exponent);
  return f;
}

namespace {

DensityConstant with_tail(double value, double tail_bound, std::uint64_t truncation) {
  return {value, value * std::exp(-tail_bound), value, tail_bound, truncation};
}

// Bound on -log prod_{ell > L} (1 - ell^{-k}) for k >= 2: each factor has
// u <= 1/9, so -log(1-u) <= 1.125 u, and sum_{n > L} n^{-k} <= L^{1-k}/(k-1).
double tail_exponent(std::uint64_t truncation, unsigned k) {
  return 1.125 * std::pow(static_cast<double>(truncation), 1.0 - k) / (k - 1.0);
}

}  // namespace

SchinzelDensity schinzel_density(std::span<const unsigned> degrees, std::int64_t modulus, std::uint64_t truncation) {
  check_modulus(modulus);
  if (degrees.empty()) throw std::invalid_argument("need at least one degree");
  unsigned d = 0;
  for (auto v : degrees) {
    if (v < 1) throw std::invalid_argument("degrees must be >= 1");
    d += v;
  }
  const std::uint64_t limit = std::max<std::uint64_t>({truncation, d, 2});
  double value = 1;
  for (auto ell : arith::primes_up_to(limit)) {
    if (modulus % static_cast<std::int64_t>(ell) == 0) continue;
    if (ell <= d) {
      value *= Rational(1 - model::c_ell(ell, degrees)).get_d();
    } else {
      for (auto di : degrees) value *= 1.0 - std::pow(static_cast<double>(ell), -static_cast<double>(di + 1));
    }
  }
  double tail = 0;
  for (auto di : degrees) tail += tail_exponent(limit, di + 1);
  SchinzelDensity out;
  out.product = with_tail(value, tail, limit);
  const double n = static_cast<double>(degrees.size());
  out.count_constant = std::pow(2.0, d) * value * std::pow(static_cast<double>(modulus), -(d + n));
  return out;
}

DensityConstant section7_product(unsigned d, std::uint64_t truncation) {
  if (d < 1) throw std::invalid_argument("section7_product needs d >= 1");
  const std::uint64_t limit = std::max<std::uint64_t>(truncation, d + 1);
  double value = 1;
  for (auto p : arith::primes_up_to(limit)) {
    if (p < 3) continue;
    const double e = static_cast<double>(std::min<std::uint64_t>(p, d + 1));
    value *= 1.0 - std::pow(static_cast<double>(p), -e);
  }
  return with_tail(value, tail_exponent(limit, d + 1), limit);
}

DensityConstant section7_limit(std::uint64_t truncation) {
  const std::uint64_t limit = std::max<std::uint64_t>(truncation, 3);
  double value = 1;
  for (auto p : arith::primes_up_to(limit)) {
    if (p < 3) continue;
    value *= 1.0 - std::pow(static_cast<double>(p), -static_cast<double>(p));
  }
  // sum_{n > L} n^{-n} <= sum_{n > L} L^{-n} = L^{-L} / (L - 1).
  const double l = static_cast<double>(limit);
  return with_tail(value, 1.125 * std::pow(l, -l) / (l - 1), limit);
}

BoxProportion schinzel_proportion(const poly::CoeffBox& box, const Budget& budget, unsigned threads) {
  const poly::BoxEnumerator en(box);
  if (en.size() > budget.enumeration)
    throw BudgetExceeded("box has " + std::to_string(en.size()) + " members, over the enumeration budget");
  auto parts = run_shards<std::uint64_t>(kShardCount, threads, [&](std::size_t shard) {
    const auto r = shard_range(en.size(), shard, kShardCount);
    std::uint64_t hits = 0;
    en.for_each(r.begin, r.end, [&](const poly::PolyTuple& t) { hits += poly::is_schinzel(t, budget).holds; });
    return hits;
  });
  BoxProportion out;
  out.total = en.size();
  for (auto h : parts) out.hits += h;
  return out;
}

}  // namespace schinzel::series
