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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "schinzel/arith.hpp"
#include "schinzel/counting.hpp"

using namespace schinzel;
using namespace schinzel::counting;
using poly::IntPoly;
using poly::PolyTuple;

namespace {

PolyTuple T1(std::vector<std::int64_t> c) { return PolyTuple({IntPoly(std::move(c))}); }

bool trial_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// von Mangoldt by trial division.
double oracle_lambda(std::int64_t n) {
  if (n < 2) return 0;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    std::int64_t r = n;
    while (r % p == 0) r /= p;
    return r == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return 0;
}

// Lambda(|n|) summed over the box; positive_only keeps P(k), P(m) > 0.
double oracle_pair(std::int64_t h, unsigned d, std::int64_t k, std::int64_t m, bool positive_only = false) {
  double sum = 0;
  std::vector<std::int64_t> c(d + 1, -h);
  c[d] = 1;
  while (true) {
    std::int64_t vk = 0, vm = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      vk = vk * k + c[i];
      vm = vm * m + c[i];
    }
    if (!positive_only || (vk > 0 && vm > 0)) sum += oracle_lambda(std::abs(vk)) * oracle_lambda(std::abs(vm));
    std::size_t i = 0;
    for (; i <= d; ++i) {
      const std::int64_t lo = (i == d) ? 1 : -h;
      if (c[i] < h) {
        ++c[i];
        break;
      }
      c[i] = lo;
    }
    if (i > d) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("theta examples") {
  CHECK(theta(T1({0, 1}), 0.5).value == 0.0);
  CHECK(theta(T1({0, 1}), 0.5).hits.empty());
  CHECK(theta(T1({0, 1}), 10).value == doctest::Approx(std::log(210.0)));
  const auto t = theta(T1({1, 0, 1}), 4);
  CHECK(t.hits == std::vector<std::int64_t>{1, 2, 4});
  CHECK(t.value == doctest::Approx(std::log(2.0) + std::log(5.0) + std::log(17.0)));
  // Progression restriction: primes = 1 mod 4 up to 30.
  const auto q = theta(T1({0, 1}), 30, 1, 4);
  CHECK(q.hits == std::vector<std::int64_t>{5, 13, 17, 29});
  CHECK(theta(T1({0, 1}), 30, -3, 4).hits == q.hits);
}

TEST_CASE("theta is monotone with the stated increments") {
  const auto p = PolyTuple({IntPoly({1, 2}), IntPoly({-1, 0, 2})});
  double last = 0;
  for (int x = 1; x <= 300; ++x) {
    const auto t = theta(p, x);
    const double step = t.value - last;
    const bool hit = trial_prime(1 + 2 * x) && trial_prime(2 * x * x - 1);
    CHECK(step == doctest::Approx(hit ? std::log(1.0 + 2 * x) * std::log(2.0 * x * x - 1) : 0.0));
    last = t.value;
    for (auto m : t.hits) CHECK((trial_prime(1 + 2 * m) && trial_prime(2 * m * m - 1)));
  }
}

TEST_CASE("theta with values beyond 64 bits flags probable primes") {
  std::vector<std::int64_t> c(17, 0);
  c[0] = c[16] = 1;
  const auto f16 = T1(c);
  const auto small = theta(f16, 10);
  CHECK(small.hits == std::vector<std::int64_t>{1, 2});
  CHECK_FALSE(small.probable);
  // 44^16 + 1 is prime and far above 2^64.
  const auto th = theta(f16, 50);
  CHECK(th.hits == std::vector<std::int64_t>{1, 2, 44});
  CHECK(th.probable);
}

TEST_CASE("least prime inputs") {
  CHECK(first_prime_input(T1({1, 1}), 100) == std::optional<std::int64_t>(1));
  CHECK(first_prime_input(PolyTuple({IntPoly({0, 1}), IntPoly({2, 1})}), 100) == std::optional<std::int64_t>(3));
  CHECK_FALSE(first_prime_input(T1({2, 1, 1}), 10000));
  const auto s = least_prime_inputs(T1({4, 1, 1}), 5);
  CHECK(s.hits.empty());
  const auto u = least_prime_inputs(T1({3, 10}), 3);
  CHECK(u.bound == doctest::Approx(std::pow(std::log(10.0), 3)));
  for (auto m : u.hits) CHECK(trial_prime(3 + 10 * m));
  CHECK_THROWS(least_prime_inputs(T1({1, 1}), 2));
}

TEST_CASE("pair correlation: exhaustive value against the brute-force oracle") {
  const auto g = pair_correlation(2, 1, 1, 2);
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0);
  CHECK(g.exact == doctest::Approx(2 * l2 * l3 + l2 * l2 + l3 * l5));
  CHECK(g.exact == doctest::Approx(oracle_pair(2, 1, 1, 2)));
  CHECK(g.exhaustive);
  CHECK(g.terms == 10);
  for (std::int64_t h = 1; h <= 5; ++h)
    for (unsigned d = 1; d <= 2; ++d)
      for (std::int64_t k = 1; k <= 3; ++k)
        for (std::int64_t m = 1; m <= 3; ++m) {
          if (k == m) continue;
          const double a = pair_correlation(h, d, k, m).exact;
          CHECK(a == doctest::Approx(pair_correlation(h, d, m, k).exact));
          CHECK(a == doctest::Approx(oracle_pair(h, d, k, m)));
          CHECK(pair_correlation(h, d, k, m).positive_only == doctest::Approx(oracle_pair(h, d, k, m, true)));
        }
}

TEST_CASE("pair correlation main term") {
  CHECK(pair_main_term(10, 1, 1, 2) == doctest::Approx(2 * 100.0));
  CHECK(pair_main_term(10, 2, 2, 1) == doctest::Approx(4 * 1000.0));
  CHECK(pair_main_term(10, 1, 3, 1) == doctest::Approx(4 * 100.0));
  CHECK(pair_main_term(10, 1, 7, 1) == doctest::Approx(2 * 100.0 * 2 * 1.5));
  CHECK_THROWS(pair_main_term(10, 1, 2, 2));
}

TEST_CASE("pair correlation: stratified sample tracks the exhaustive value") {
  const auto exact = pair_correlation(200, 1, 1, 2);
  Budget tiny;
  tiny.enumeration = 1000;
  const auto est = pair_correlation(200, 1, 1, 2, tiny, 1, 200000, 7);
  CHECK_FALSE(est.exhaustive);
  CHECK(est.std_error > 0);
  CHECK(std::abs(est.exact - exact.exact) < 5 * est.std_error);
  const auto again = pair_correlation(200, 1, 1, 2, tiny, 3, 200000, 7);
  CHECK(again.exact == est.exact);
}

TEST_CASE("dispersion") {
  // Single polynomial t: residual theta(x) - x.
  for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
    const double r = theta(T1({0, 1}), x).value - x;
    CHECK(std::abs(r) < x);
  }
  const std::int64_t h = 400;
  const double x = std::pow(std::log(400.0), 1.5);
  const auto rep = dispersion(poly::CoeffBox{{1}, h, 1, {}, 0}, x, Mode::exhaustive, 0, 0);
  CHECK(rep.tuples == 400u * 801u);
  CHECK(rep.r * rep.r <= rep.v);
  CHECK(rep.r_over_x() < 1);
  const auto threaded = dispersion(poly::CoeffBox{{1}, h, 1, {}, 0}, x, Mode::exhaustive, 0, 0, {}, 4);
  CHECK(threaded.r == rep.r);
  CHECK(threaded.v == rep.v);

  const auto sampled = dispersion(poly::CoeffBox{{1, 1}, 50, 1, {}, 0}, 30, Mode::sampled, 500, 9, {}, 1, true);
  CHECK(sampled.rows.size() == 500);
  CHECK(sampled.r * sampled.r <= sampled.v);
  double abs_sum = 0;
  for (const auto& row : sampled.rows) {
    CHECK(row.residual == doctest::Approx(row.theta - row.series * 30));
    abs_sum += std::abs(row.residual);
  }
  CHECK(sampled.r == doctest::Approx(abs_sum / 500));
  CHECK_THROWS(dispersion(poly::CoeffBox{{1}, 5, 1, {}, 0}, 30, Mode::sampled, 50, 1));
}

TEST_CASE("fractions") {
  const poly::CoeffBox box{{1}, 400, 1, {}, 0};
  const double x = std::pow(std::log(400.0), 1.5);
  const auto b = bdh_exceptional_fraction(box, x, 0.4, 300, 3);
  CHECK(b.fraction() >= 0);
  CHECK(b.fraction() <= 1);
  CHECK(b.total == 300);
  CHECK_THROWS(bdh_exceptional_fraction(box, x, 0.6, 10, 3));

  const auto cool = theorem_cool_fraction(poly::CoeffBox{{1}, 10000, 1, {}, 0}, 3, 200, 5);
  CHECK(cool.fraction() >= 0.9);

  const poly::CoeffBox q1{{2}, 10000, 4, {{1}}, 1};
  const auto pv = prime_value_fraction(q1, 500, 200, 11);
  CHECK(pv.fraction() >= 0.9);
  CHECK_THROWS(prime_value_fraction(poly::CoeffBox{{2}, 100, 4, {{2}}, 1}, 500, 10, 1));
  const auto pv3 = prime_value_fraction(q1, 500, 200, 11, 3);
  CHECK(pv3.hits == pv.hits);
}

TEST_CASE("Linnik-type experiment") {
  const auto r = linnik_experiment(1, 10000, 1000, 1.0, 17);
  CHECK(r.samples.size() == 1000);
  CHECK(r.fraction >= 0.99);
  for (const auto& s : r.samples) {
    REQUIRE(s.m);
    CHECK(arith::primality(s.least_prime) != arith::Primality::composite);
    CHECK(poly::eval(s.poly, *s.m) == s.least_prime);
    // Nothing smaller among earlier inputs.
    for (std::int64_t m = 1; m < *s.m; ++m) {
      const BigInt v = poly::eval(s.poly, m);
      if (v < s.least_prime && v > 1) CHECK(arith::primality(v) == arith::Primality::composite);
    }
  }
  const auto q = linnik_experiment(2, 50, 100, 0.5, 3);
  for (const auto& s : q.samples) {
    if (!s.m) continue;
    for (std::int64_t m = 1; m <= 200; ++m) {
      const BigInt v = poly::eval(s.poly, m);
      if (v < s.least_prime) CHECK(arith::primality(v) == arith::Primality::composite);
    }
  }
}
