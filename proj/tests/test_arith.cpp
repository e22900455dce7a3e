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
#include <numeric>

#include "schinzel/arith.hpp"
#include "schinzel/random.hpp"

using namespace schinzel;
using namespace schinzel::arith;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Legendre symbol by Euler's criterion for odd primes.
int euler_symbol(std::int64_t a, std::uint64_t p) {
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  if (r == 0) return 0;
  return powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Jacobi symbol as the product of Legendre symbols over a trial-division
// factorization, with the stated convention at 2.
int oracle_symbol(std::int64_t a, std::uint64_t b) {
  int out = 1;
  for (std::uint64_t p = 2; b > 1; ++p) {
    while (b % p == 0) {
      b /= p;
      if (p == 2)
        out *= (a % 2 == 0) ? 0 : 1;
      else
        out *= euler_symbol(a, p);
    }
  }
  return out;
}

// Does a x^2 + b y^2 = z^2 have a primitive solution modulo p^k? Exhaustive.
bool primitive_solution_mod(std::int64_t a, std::int64_t b, std::int64_t q, std::int64_t p) {
  for (std::int64_t x = 0; x < q; ++x)
    for (std::int64_t y = 0; y < q; ++y)
      for (std::int64_t z = 0; z < q; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        std::int64_t v = ((a % q) * x % q * x + (b % q) * y % q * y - z * z) % q;
        if (v == 0) return true;
      }
  return false;
}

}  // namespace

TEST_CASE("is_prime small values and trial-division oracle") {
  CHECK_FALSE(is_prime(std::uint64_t{0}));
  CHECK_FALSE(is_prime(std::uint64_t{1}));
  CHECK(is_prime(std::uint64_t{2}));
  CHECK(is_prime(std::uint64_t{999983}));
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == trial_prime(n));
  CHECK(is_prime(std::uint64_t{18446744073709551557ULL}));
  CHECK_FALSE(is_prime(std::uint64_t{3215031751ULL}));  // strong pseudoprime to bases 2,3,5,7
  CHECK_FALSE(is_prime(std::int64_t{-7}));
}

TEST_CASE("primality above 2^64 is flagged probable") {
  BigInt big("340282366920938463463374607431768211507");  // 2^128 + 51
  CHECK(primality(big) == Primality::probable_prime);
  CHECK(primality(BigInt("340282366920938463463374607431768211457")) == Primality::composite);
  CHECK(primality(BigInt(97)) == Primality::prime);
}

TEST_CASE("factorize examples and consistency") {
  CHECK(factorize(1).factors.empty());
  auto f60 = factorize(60);
  REQUIRE(f60.factors.size() == 3);
  CHECK(f60.factors[0] == PrimePower{2, 2});
  CHECK(f60.factors[1] == PrimePower{3, 1});
  CHECK(f60.factors[2] == PrimePower{5, 1});
  auto f = factorize(10403);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PrimePower{101, 1});
  CHECK(f.factors[1] == PrimePower{103, 1});

  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = 1 + uniform_below(rng, std::uint64_t{1} << 62);
    const auto fac = factorize(n);
    std::uint64_t prod = 1;
    std::uint64_t last = 0;
    for (const auto& pp : fac.factors) {
      CHECK(is_prime(pp.prime));
      CHECK(pp.prime > last);
      last = pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    CHECK(prod == n);
  }
  // Semiprime with both factors beyond the trial-division range.
  const auto semi = factorize(1000003ULL * 1000033ULL);
  REQUIRE(semi.factors.size() == 2);
  CHECK(semi.factors[0].prime == 1000003ULL);
}

TEST_CASE("factorize honours the Pollard budget") {
  Budget tight;
  tight.factor_iterations = 1;
  CHECK_THROWS_AS(factorize(1000003ULL * 1000033ULL, tight), BudgetExceeded);
}

TEST_CASE("symbol examples and convention at 2") {
  CHECK(symbol(2, 7) == 1);
  CHECK(symbol(12345, 1) == 1);
  CHECK(symbol(-5, 1) == 1);
  CHECK(symbol(3, 2) == 1);
  CHECK(symbol(4, 2) == 0);
  CHECK(symbol(-3, 8) == 1);
  for (std::int64_t a = -60; a <= 60; ++a)
    for (std::uint64_t b = 1; b <= 120; ++b) CHECK(symbol(a, b) == oracle_symbol(a, b));
  CHECK(symbol(BigInt("-123456789012345678901234567"), 1009) ==
        oracle_symbol(static_cast<std::int64_t>(mpz_fdiv_ui(BigInt("-123456789012345678901234567").get_mpz_t(), 1009)), 1009));
}

TEST_CASE("quadratic reciprocity for odd coprime a < b <= 200") {
  for (std::int64_t a = 1; a <= 200; a += 2)
    for (std::int64_t b = a + 2; b <= 200; b += 2) {
      if (std::gcd(a, b) != 1) continue;
      const int sign = (((a - 1) / 2) * ((b - 1) / 2)) % 2 == 0 ? 1 : -1;
      CHECK(symbol(a, static_cast<std::uint64_t>(b)) * symbol(b, static_cast<std::uint64_t>(a)) == sign);
    }
}

TEST_CASE("sqrt_mod") {
  CHECK(sqrt_mod(0, 7) == std::optional<std::uint64_t>(0));
  auto r = sqrt_mod(2, 7);
  REQUIRE(r);
  CHECK((*r == 3 || *r == 4));
  CHECK_FALSE(sqrt_mod(3, 7));
  for (std::uint64_t p : primes_up_to(2000)) {
    if (p == 2) continue;
    for (std::int64_t a = -20; a < 40; ++a) {
      auto s = sqrt_mod(a, p);
      CHECK(s.has_value() == (euler_symbol(a, p) >= 0));
      if (s) {
        std::int64_t red = a % static_cast<std::int64_t>(p);
        if (red < 0) red += static_cast<std::int64_t>(p);
        CHECK(mulmod(*s, *s, p) == static_cast<std::uint64_t>(red));
      }
    }
  }
}

TEST_CASE("crt with coprime and non-coprime moduli") {
  std::vector<std::int64_t> res{2, 3, 2};
  std::vector<std::uint64_t> mod{3, 5, 7};
  auto x = crt(res, mod);
  REQUIRE(x);
  CHECK(x->first == 23);
  CHECK(x->second == 105);
  std::vector<std::int64_t> res2{1, 2};
  std::vector<std::uint64_t> mod2{4, 6};
  CHECK_FALSE(crt(res2, mod2));
  std::vector<std::int64_t> res3{1, 3};
  std::vector<std::uint64_t> mod3{4, 6};
  res3[1] = 5;
  auto y = crt(res3, mod3);
  REQUIRE(y);
  CHECK(y->first == 5);
  CHECK(y->second == 12);
}

TEST_CASE("hilbert examples") {
  CHECK(hilbert(-1, -1, Place::real()) == -1);
  CHECK(hilbert(-1, -1, Place::prime(2)) == -1);
  for (std::int64_t b : {-7, -1, 2, 3, 10, 15})
    for (auto v : {Place::real(), Place::prime(2), Place::prime(3), Place::prime(5), Place::prime(7)})
      CHECK(hilbert(1, b, v) == 1);
  CHECK_THROWS(Place::prime(9));
}

TEST_CASE("hilbert agrees with primitive solutions modulo prime powers") {
  // For odd p, solvability mod p^3 decides (a,b)_p when v_p(a), v_p(b) <= 1;
  // at 2 the modulus 2^4 is enough for unit or 2*unit arguments.
  for (std::int64_t a : {-15, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 14})
    for (std::int64_t b : {-15, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 14}) {
      CHECK(hilbert(a, b, Place::prime(3)) == (primitive_solution_mod(a, b, 27, 3) ? 1 : -1));
      CHECK(hilbert(a, b, Place::prime(5)) == (primitive_solution_mod(a, b, 125, 5) ? 1 : -1));
      CHECK(hilbert(a, b, Place::prime(2)) == (primitive_solution_mod(a, b, 16, 2) ? 1 : -1));
    }
}

TEST_CASE("hilbert product formula on random pairs") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    auto draw = [&] {
      std::int64_t v = static_cast<std::int64_t>(uniform_below(rng, 200000)) + 1;
      return uniform_below(rng, 2) ? -v : v;
    };
    const std::int64_t a = draw(), b = draw();
    int prod = 1;
    for (const auto& v : relevant_places(BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b))))
      prod *= hilbert(a, b, v);
    CHECK(prod == 1);
  }
}

TEST_CASE("cornacchia") {
  auto r = cornacchia(1, 13);
  REQUIRE(r);
  CHECK(r->first * r->first + r->second * r->second == 13);
  CHECK_FALSE(cornacchia(1, 3));
  auto s = cornacchia(2, 11);
  REQUIRE(s);
  CHECK(s->first == 3);
  CHECK(s->second == 1);
  for (std::uint64_t d : {1, 2, 3, 5, 7, 11})
    for (std::uint64_t p : primes_up_to(3000)) {
      bool brute = false;
      for (std::uint64_t y = 1; d * y * y <= p && !brute; ++y) {
        const std::uint64_t rest = p - d * y * y;
        if (is_square(rest)) brute = true;
      }
      auto c = cornacchia(d, p);
      CHECK(c.has_value() == brute);
      if (c) CHECK(c->first * c->first + d * c->second * c->second == p);
    }
}

TEST_CASE("two_squares against brute force up to 10^4") {
  CHECK(two_squares(0) == std::optional<std::pair<std::uint64_t, std::uint64_t>>({0, 0}));
  CHECK_FALSE(two_squares(21));
  for (std::uint64_t n = 0; n <= 10000; ++n) {
    bool brute = false;
    for (std::uint64_t x = 0; x * x <= n && !brute; ++x) brute = is_square(n - x * x);
    auto r = two_squares(n);
    CHECK(r.has_value() == brute);
    CHECK(is_sum_of_two_squares(n) == brute);
    if (r) CHECK(r->first * r->first + r->second * r->second == n);
  }
  auto big = two_squares(1000000000039ULL * 5);
  if (big) CHECK(static_cast<unsigned __int128>(big->first) * big->first +
                     static_cast<unsigned __int128>(big->second) * big->second ==
                 static_cast<unsigned __int128>(5000000000195ULL));
}

TEST_CASE("von Mangoldt and its truncation") {
  CHECK(mangoldt(8) == doctest::Approx(std::log(2.0)));
  CHECK(mangoldt(6) == 0.0);
  CHECK(mangoldt(1) == 0.0);
  CHECK(mangoldt(0) == 0.0);
  CHECK(mangoldt(-7) == 0.0);
  CHECK(mangoldt_truncated(12, 3) == doctest::Approx(std::log(2.0) + std::log(3.0)));
  CHECK(mangoldt_truncated(-4, 10) == 0.0);
  for (std::int64_t n = 1; n <= 10000; ++n) {
    CHECK(mangoldt_truncated(n, 1) == 0.0);
    CHECK(mangoldt_truncated(n, static_cast<double>(n)) == doctest::Approx(mangoldt(n)).epsilon(1e-12));
  }
}

TEST_CASE("small helpers") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(36) == 12);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(1) == 1);
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(18));
  CHECK_FALSE(is_squarefree(0));
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(18446744073709551615ULL) == 4294967295ULL);
  CHECK(primes_up_to(30).size() == 10);
}
