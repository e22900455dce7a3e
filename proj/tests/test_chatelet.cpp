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
#include "schinzel/chatelet.hpp"
#include "schinzel/random.hpp"

using namespace schinzel;
using namespace schinzel::chatelet;
using poly::IntPoly;

namespace {

ChateletSpec spec_of(std::vector<std::int64_t> c, std::int64_t a = 1) {
  ChateletSpec s;
  s.a = a;
  s.f = IntPoly(std::move(c));
  return s;
}

// x^2 + a y^2 = n by direct search.
bool oracle_represents(std::int64_t n, std::int64_t a) {
  if (n < 0) return false;
  for (std::int64_t y = 0; a * y * y <= n; ++y) {
    const std::int64_t r = n - a * y * y;
    const auto x = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(r)));
    if (x * x == r) return true;
  }
  return false;
}

// Counting through the reduced system: f(j) mod 4 depends only on c0, c1 and
// the sums of the higher even and odd coefficients mod 4.
Rational oracle_rd(unsigned d) {
  std::uint64_t ways_even[4] = {1, 0, 0, 0}, ways_odd[4] = {1, 0, 0, 0};
  for (unsigned i = 2; i <= d; ++i) {
    auto& w = (i % 2 == 0) ? ways_even : ways_odd;
    std::uint64_t next[4] = {0, 0, 0, 0};
    for (unsigned s = 0; s < 4; ++s)
      for (unsigned c = 0; c < 4; ++c) next[(s + c) % 4] += w[s];
    for (unsigned s = 0; s < 4; ++s) w[s] = next[s];
  }
  std::uint64_t hits = 0;
  for (unsigned c0 = 0; c0 < 4; ++c0)
    for (unsigned c1 = 0; c1 < 4; ++c1)
      for (unsigned e = 0; e < 4; ++e)
        for (unsigned o = 0; o < 4; ++o) {
          // f(0) = c0, f(1) = c0 + c1 + e + o, f(2) = c0 + 2 c1, f(3) = c0 - c1 + e - o.
          const unsigned v[4] = {c0, (c0 + c1 + e + o) % 4, (c0 + 2 * c1) % 4, (c0 + 12 - c1 + e - o) % 4};
          if (v[0] == 1 || v[1] == 1 || v[2] == 1 || v[3] == 1) hits += ways_even[e] * ways_odd[o];
        }
  return make_rational(BigInt(std::to_string(hits)), pow(BigInt(4), d + 1));
}

}  // namespace

TEST_CASE("solve_chatelet examples") {
  const auto a = solve_chatelet(spec_of({1, 0, 1}), 100);
  REQUIRE(a.m);
  CHECK(*a.m == 1);
  CHECK(a.rep.x == 1);
  CHECK(a.rep.y == 1);
  const auto b = solve_chatelet(spec_of({3, 1}), 100);
  REQUIRE(b.m);
  CHECK(*b.m == 1);
  CHECK(b.rep.x == 2);
  CHECK(b.rep.y == 0);
  CHECK_FALSE(b.rep.fast);
  const auto c = solve_chatelet(spec_of({3, 4}), 5000, Path::full, true);
  CHECK_FALSE(c.m);
  CHECK(c.log.size() == 5000);
  CHECK(c.scanned == 5000);
  CHECK_FALSE(c.best_effort);
  CHECK(solve_chatelet(spec_of({1, 0, 1}, 5), 10).best_effort);
  CHECK_THROWS(solve_chatelet(spec_of({1, -1}), 10));
  CHECK_THROWS(solve_chatelet(spec_of({1, 1}, 0), 10));
}

TEST_CASE("every representation verifies and the scan finds the first m") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::int64_t> c(3);
    for (auto& v : c) v = static_cast<std::int64_t>(uniform_below(rng, 41)) - 20;
    c.back() = 1 + static_cast<std::int64_t>(uniform_below(rng, 20));
    const std::int64_t a = std::vector<std::int64_t>{1, 1, 2, 3, 4, 7}[uniform_below(rng, 6)];
    auto spec = spec_of(c, a);
    spec.modulus = 1 + static_cast<std::int64_t>(uniform_below(rng, 4));
    spec.anchor = static_cast<std::int64_t>(uniform_below(rng, 4));
    const auto r = solve_chatelet(spec, 200);
    for (std::int64_t m = (spec.anchor % spec.modulus == 0 ? spec.modulus : spec.anchor % spec.modulus);
         m <= (r.m ? *r.m : 200); m += spec.modulus) {
      const std::int64_t v = c[0] + c[1] * m + c[2] * m * m;
      const bool prime = v >= 2 && arith::is_prime(static_cast<std::uint64_t>(v));
      // The full path exists only for a = 1; otherwise only primes count.
      const bool expect = a == 1 ? oracle_represents(v, 1) : (prime && oracle_represents(v, a));
      if (r.m && m == *r.m) {
        CHECK(expect);
        const std::int64_t x = static_cast<std::int64_t>(r.rep.x), y = static_cast<std::int64_t>(r.rep.y);
        CHECK(x * x + a * y * y == v);
      } else {
        CHECK_FALSE(expect);
      }
    }
  }
}

TEST_CASE("fast path solutions are full path solutions") {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::int64_t> c(2 + uniform_below(rng, 3));
    for (auto& v : c) v = static_cast<std::int64_t>(uniform_below(rng, 61)) - 30;
    c.back() = 1 + static_cast<std::int64_t>(uniform_below(rng, 30));
    const auto spec = spec_of(c);
    const auto fast = solve_chatelet(spec, 300, Path::fast);
    const auto full = solve_chatelet(spec, 300, Path::full);
    if (!fast.m) continue;
    CHECK(fast.rep.fast);
    REQUIRE(full.m);
    CHECK(*full.m <= *fast.m);
    CHECK(represent_at(spec, *fast.m, Path::full));
  }
}

TEST_CASE("class number one primes are represented exactly when -a is a square") {
  for (std::int64_t a : {1, 2, 3, 4, 7})
    for (std::uint64_t p : arith::primes_up_to(3000)) {
      if (static_cast<std::int64_t>(p) <= a) continue;
      const auto spec = spec_of({static_cast<std::int64_t>(p) - 1, 1}, a);  // f(1) = p
      const bool splits = arith::symbol(-a, p) == 1 || (p == 2 && a == 7);
      const bool found = represent_at(spec, 1, Path::fast).has_value();
      CHECK(found == oracle_represents(static_cast<std::int64_t>(p), a));
      if (p > 2 && static_cast<std::int64_t>(p) % a != 0) CHECK(found == splits);
    }
}

TEST_CASE("r_d by enumeration") {
  CHECK(rd_exact(2) == make_rational(19, 32));
  for (unsigned d = 1; d <= 10; ++d) CHECK(rd_exact(d) == oracle_rd(d));
  Budget big;
  big.enumeration = std::uint64_t{1} << 26;
  for (unsigned d = 3; d <= 12; ++d) CHECK(rd_exact(d, big) == make_rational(39, 64));
  CHECK_THROWS_AS(rd_exact(12), BudgetExceeded);
  CHECK_THROWS(rd_exact(13, big));
}

TEST_CASE("lower bounds") {
  const auto two = lower_bound(2);
  CHECK(two.r_d == make_rational(19, 32));
  CHECK(two.value == doctest::Approx(0.565).epsilon(0.002));
  double last = 0;
  for (unsigned d = 2; d <= 12; ++d) {
    const auto t = lower_bound(d, 100000);
    CHECK(t.value > 0.56);
    CHECK(t.lower <= t.value);
    CHECK(t.value <= t.upper);
    if (d >= 3) {
      CHECK(t.r_d == make_rational(39, 64));
      CHECK(t.value >= last);
    }
    last = t.value;
  }
  const auto far = lower_bound(40, 100000);
  CHECK_FALSE(far.rd_enumerated);
  CHECK(far.value == doctest::Approx(39.0 / 64 * series::section7_limit().value).epsilon(1e-6));
  CHECK_THROWS(lower_bound(1));
}

TEST_CASE("wilson interval") {
  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(lo == doctest::Approx(0.4183).epsilon(1e-3));
  CHECK(wilson_interval(0, 10).first == 0.0);
  CHECK(wilson_interval(10, 10).second == 1.0);
}

TEST_CASE("solvability proportion") {
  const auto r = solvability_proportion(2, 30, 300, 200, 5);
  CHECK(r.samples.size() == 200);
  CHECK(r.proportion >= 0);
  CHECK(r.proportion <= 1);
  CHECK(r.wilson_lower <= r.proportion);
  std::uint64_t good = 0, good_solved = 0;
  for (const auto& s : r.samples) {
    CHECK(s.f.degree() == 2);
    CHECK(s.f.leading() > 0);
    CHECK(s.f.height() <= 30);
    if (s.m) {
      const BigInt v = poly::eval(s.f, *s.m);
      const BigInt x(std::to_string(s.rep.x)), y(std::to_string(s.rep.y));
      CHECK(x * x + y * y == v);
    }
    bool one_mod_4 = false;
    for (std::int64_t n0 = 0; n0 < 4; ++n0) one_mod_4 = one_mod_4 || poly::eval_mod(s.f, n0, 4) == 1;
    if (one_mod_4 && poly::is_bouniakowsky(s.f).holds) {
      ++good;
      good_solved += s.m.has_value();
    }
  }
  CHECK(good > 50);
  CHECK(good_solved == good);
  const auto again = solvability_proportion(2, 30, 300, 200, 5, 3);
  CHECK(again.solvable == r.solvable);
  for (std::size_t i = 0; i < r.samples.size(); ++i) CHECK(again.samples[i].f == r.samples[i].f);
}
