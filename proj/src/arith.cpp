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

#include "schinzel/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace schinzel::arith {

using u128 = unsigned __int128;
using i128 = __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::uint64_t n) {
  const std::uint64_t r = isqrt(n);
  return r * r == n;
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Primes below 2^20, shared by trial division. Built once.
const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(1u << 20);
  return primes;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// Returns a nontrivial factor of composite odd n, or 0 if the iteration
// budget ran out.
std::uint64_t brent_factor(std::uint64_t n, std::uint64_t& iterations_left) {
  constexpr std::uint64_t kBatch = 128;
  for (std::uint64_t c = 1; c < n; ++c) {
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) {
      return static_cast<std::uint64_t>((static_cast<u128>(mulmod(v, v, n)) + c) % n);
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t steps = std::min(kBatch, r - k);
        if (iterations_left < steps) return 0;
        iterations_left -= steps;
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

void split_composite(std::uint64_t n, std::uint64_t& iterations_left,
                     std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (is_square(n)) {
    const std::uint64_t r = isqrt(n);
    split_composite(r, iterations_left, out);
    split_composite(r, iterations_left, out);
    return;
  }
  const std::uint64_t d = brent_factor(n, iterations_left);
  if (d == 0) throw BudgetExceeded("factoring budget exhausted on " + std::to_string(n));
  split_composite(d, iterations_left, out);
  split_composite(n / d, iterations_left, out);
}

std::vector<PrimePower> collect(std::vector<std::uint64_t> primes) {
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (auto p : primes) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  }
  return out;
}

// Trial division stage. Divides out every prime below the bound (stopping at
// sqrt), returns the cofactor. `visit(p, e)` sees each prime found; returning
// false aborts early and makes the function return 0.
template <typename Visit>
std::uint64_t trial_divide(std::uint64_t n, std::uint64_t bound, Visit&& visit) {
  const auto& primes = small_primes();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    if (p > bound) break;
    if (static_cast<u128>(p) * p > n) break;
    if (n % p == 0) {
      unsigned e = 0;
      do {
        n /= p;
        ++e;
      } while (n % p == 0);
      if (!visit(p, e)) return 0;
    }
    // A prime cofactor is common; catch it before scanning all the way.
    if (p == 997 && n > 1 && is_prime(n)) break;
  }
  return n;
}

int jacobi_odd(std::uint64_t a, std::uint64_t n) {
  // n odd, a already reduced mod n
  int result = 1;
  while (a != 0) {
    const int tz = __builtin_ctzll(a);
    a >>= tz;
    if ((tz & 1) && (n % 8 == 3 || n % 8 == 5)) result = -result;
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

namespace {

constexpr std::uint64_t kSieveLimit = 1u << 20;

const std::vector<bool>& prime_table() {
  static const std::vector<bool> table = [] {
    std::vector<bool> t(kSieveLimit, false);
    for (auto p : primes_up_to(kSieveLimit - 1)) t[p] = true;
    return t;
  }();
  return table;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < kSieveLimit) return prime_table()[n];
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  if (n < 37 * 37) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set proven sufficient for all n < 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime(std::int64_t n) { return n > 1 && is_prime(static_cast<std::uint64_t>(n)); }

Primality primality(const BigInt& n) {
  if (sgn(n) <= 0) return Primality::composite;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    const std::uint64_t v = mpz_get_ui(n.get_mpz_t());
    return is_prime(v) ? Primality::prime : Primality::composite;
  }
  // GMP runs Baillie-PSW followed by extra Miller-Rabin rounds.
  const int verdict = mpz_probab_prime_p(n.get_mpz_t(), 24);
  if (verdict == 0) return Primality::composite;
  return verdict == 2 ? Primality::prime : Primality::probable_prime;
}

Factorization factorize(std::uint64_t n, const Budget& budget) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization result;
  result.value = n;
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = trial_divide(n, budget.trial_division_bound, [&](std::uint64_t p, unsigned e) {
    primes.insert(primes.end(), e, p);
    return true;
  });
  std::uint64_t iterations = budget.factor_iterations;
  split_composite(rest, iterations, primes);
  result.factors = collect(std::move(primes));
  return result;
}

bool is_squarefree(std::uint64_t n, const Budget& budget) {
  if (n == 0) return false;
  for (const auto& f : factorize(n, budget).factors)
    if (f.exponent > 1) return false;
  return true;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t phi = n;
  for (const auto& f : factorize(n).factors) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

int mobius(std::uint64_t n) {
  if (n == 0) return 0;
  int sign = 1;
  for (const auto& f : factorize(n).factors) {
    if (f.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

int symbol(std::int64_t a, std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("symbol: b must be positive");
  const int twos = __builtin_ctzll(b);
  const std::uint64_t odd = b >> twos;
  const bool a_odd = (a & 1) != 0;
  if (twos > 0 && !a_odd) return 0;
  if (odd == 1) return 1;
  std::uint64_t reduced;
  if (odd > static_cast<std::uint64_t>(INT64_MAX)) {
    reduced = a >= 0 ? static_cast<std::uint64_t>(a) : odd - static_cast<std::uint64_t>(-(a + 1)) - 1;
  } else {
    std::int64_t r = a % static_cast<std::int64_t>(odd);
    if (r < 0) r += static_cast<std::int64_t>(odd);
    reduced = static_cast<std::uint64_t>(r);
  }
  return jacobi_odd(reduced, odd);
}

int symbol(const BigInt& a, std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("symbol: b must be positive");
  const int twos = __builtin_ctzll(b);
  const std::uint64_t odd = b >> twos;
  if (twos > 0 && mpz_even_p(a.get_mpz_t())) return 0;
  if (odd == 1) return 1;
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), BigInt(std::to_string(odd)).get_mpz_t());
  return jacobi_odd(mpz_get_ui(r.get_mpz_t()), odd);
}

std::optional<std::uint64_t> sqrt_mod(std::int64_t a, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("sqrt_mod: modulus must be prime");
  std::int64_t ar = a % static_cast<std::int64_t>(p);
  if (ar < 0) ar += static_cast<std::int64_t>(p);
  const auto n = static_cast<std::uint64_t>(ar);
  if (n == 0) return 0;
  if (p == 2) return n;
  if (powmod(n, (p - 1) / 2, p) != 1) return std::nullopt;
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t root;
  if (s == 1) {
    root = powmod(n, (p + 1) / 4, p);
  } else {
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(n, q, p);
    root = powmod(n, (q + 1) / 2, p);
    unsigned m = s;
    while (t != 1) {
      unsigned i = 0;
      std::uint64_t t2 = t;
      while (t2 != 1) {
        t2 = mulmod(t2, t2, p);
        ++i;
      }
      std::uint64_t b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
      root = mulmod(root, b, p);
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      m = i;
    }
  }
  return std::min(root, p - root);
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> crt(std::span<const std::int64_t> residues,
                                                           std::span<const std::uint64_t> moduli) {
  if (residues.size() != moduli.size()) throw std::invalid_argument("crt: size mismatch");
  i128 x = 0;
  i128 m = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const auto mi = static_cast<i128>(moduli[i]);
    if (mi == 0) throw std::invalid_argument("crt: zero modulus");
    i128 ri = residues[i] % mi;
    if (ri < 0) ri += mi;
    const auto g = static_cast<i128>(std::gcd(static_cast<std::uint64_t>(m), moduli[i]));
    i128 diff = ri - x;
    if (diff % g != 0) return std::nullopt;
    const i128 m_red = m / g;
    const i128 mi_red = mi / g;
    // inverse of m_red modulo mi_red
    i128 inv = 0;
    if (mi_red > 1) {
      i128 old_r = m_red % mi_red, r = mi_red, old_s = 1, s = 0;
      if (old_r < 0) old_r += mi_red;
      while (r != 0) {
        const i128 q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
      }
      inv = old_s % mi_red;
      if (inv < 0) inv += mi_red;
    }
    i128 k = (diff / g) % mi_red;
    if (k < 0) k += mi_red;
    k = k * inv % (mi_red == 0 ? 1 : mi_red);
    const i128 lcm = m * mi_red;
    if (lcm > static_cast<i128>(UINT64_MAX)) throw std::overflow_error("crt: modulus overflow");
    x = (x + m * k) % lcm;
    if (x < 0) x += lcm;
    m = lcm;
  }
  return std::make_pair(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(m));
}

Place Place::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("Place::prime: " + std::to_string(p) + " is not prime");
  return Place(p);
}

namespace {

// n = p^v * unit; returns v and replaces n by the unit.
unsigned strip(BigInt& n, std::uint64_t p) {
  unsigned v = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    ++v;
  }
  return v;
}

}  // namespace

int hilbert(const BigInt& a, const BigInt& b, const Place& v) {
  if (sgn(a) == 0 || sgn(b) == 0) throw std::invalid_argument("hilbert: arguments must be nonzero");
  if (v.is_real()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  const std::uint64_t p = v.p();
  BigInt u = a, w = b;
  const unsigned alpha = strip(u, p);
  const unsigned beta = strip(w, p);
  if (p != 2) {
    int s = 1;
    if ((alpha & beta & 1) && p % 4 == 3) s = -s;
    if (beta & 1) s *= symbol(u, p);
    if (alpha & 1) s *= symbol(w, p);
    return s;
  }
  const unsigned u8 = mpz_fdiv_ui(u.get_mpz_t(), 8);
  const unsigned w8 = mpz_fdiv_ui(w.get_mpz_t(), 8);
  auto eps = [](unsigned x) { return (x % 4 == 3) ? 1u : 0u; };
  auto omega = [](unsigned x) { return (x == 3 || x == 5) ? 1u : 0u; };
  const unsigned e = eps(u8) * eps(w8) + alpha * omega(w8) + beta * omega(u8);
  return (e & 1) ? -1 : 1;
}

int hilbert(std::int64_t a, std::int64_t b, const Place& v) {
  return hilbert(BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b)), v);
}

std::vector<Place> relevant_places(const BigInt& a, const BigInt& b, const Budget& budget) {
  std::vector<Place> places{Place::real(), Place::prime(2)};
  std::vector<std::uint64_t> primes;
  for (const BigInt* x : {&a, &b}) {
    BigInt m = abs(*x);
    if (mpz_sizeinbase(m.get_mpz_t(), 2) > 64)
      throw BudgetExceeded("relevant_places: coefficient exceeds 64 bits");
    const std::uint64_t mv = mpz_get_ui(m.get_mpz_t());
    if (mv == 0) throw std::invalid_argument("relevant_places: zero argument");
    for (const auto& f : factorize(mv, budget).factors)
      if (f.prime != 2) primes.push_back(f.prime);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (auto p : primes) places.push_back(Place::prime(p));
  return places;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> cornacchia(std::uint64_t d, std::uint64_t p) {
  if (d == 0) throw std::invalid_argument("cornacchia: d must be positive");
  if (!is_prime(p)) throw std::invalid_argument("cornacchia: p must be prime");
  if (d >= p) {
    if (d == p) return std::make_pair(std::uint64_t{0}, std::uint64_t{1});
    return std::nullopt;
  }
  const auto minus_d = static_cast<std::int64_t>((p - d % p) % p);
  auto root = sqrt_mod(minus_d, p);
  if (!root) return std::nullopt;
  std::uint64_t r_prev = p;
  std::uint64_t r = *root;  // sqrt_mod returns the root <= p/2
  while (static_cast<u128>(r) * r >= p) {
    const std::uint64_t next = r_prev % r;
    r_prev = r;
    r = next;
  }
  const std::uint64_t rest = p - r * r;
  if (rest % d != 0) return std::nullopt;
  const std::uint64_t y2 = rest / d;
  if (!is_square(y2)) return std::nullopt;
  return std::make_pair(r, isqrt(y2));
}

bool is_sum_of_two_squares(std::uint64_t n, const Budget& budget) {
  if (n == 0) return true;
  while ((n & 1) == 0) n >>= 1;
  if (n % 4 == 3) return false;
  bool obstructed = false;
  std::uint64_t rest = trial_divide(n, budget.trial_division_bound, [&](std::uint64_t p, unsigned e) {
    if (p % 4 == 3 && (e & 1)) {
      obstructed = true;
      return false;
    }
    return true;
  });
  if (obstructed) return false;
  if (rest == 1) return true;
  if (rest % 4 == 3) return false;  // some prime 3 mod 4 divides rest to an odd power
  if (is_prime(rest)) return true;
  std::uint64_t iterations = budget.factor_iterations;
  std::vector<std::uint64_t> primes;
  split_composite(rest, iterations, primes);
  for (const auto& f : collect(std::move(primes)))
    if (f.prime % 4 == 3 && (f.exponent & 1)) return false;
  return true;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> two_squares(std::uint64_t n, const Budget& budget) {
  if (n == 0) return std::make_pair(std::uint64_t{0}, std::uint64_t{0});
  const Factorization fac = factorize(n, budget);
  i128 x = 1, y = 0;
  auto times = [&](i128 a, i128 b) {
    const i128 nx = x * a - y * b;
    const i128 ny = x * b + y * a;
    x = nx;
    y = ny;
  };
  for (const auto& f : fac.factors) {
    if (f.prime == 2) {
      for (unsigned i = 0; i < f.exponent; ++i) times(1, 1);
    } else if (f.prime % 4 == 1) {
      const auto rep = cornacchia(1, f.prime);
      if (!rep) throw InvariantViolation("cornacchia failed on a prime 1 mod 4");
      for (unsigned i = 0; i < f.exponent; ++i) times(rep->first, rep->second);
    } else {
      if (f.exponent & 1) return std::nullopt;
      for (unsigned i = 0; i < f.exponent / 2; ++i) times(f.prime, 0);
    }
  }
  const auto ax = static_cast<std::uint64_t>(x < 0 ? -x : x);
  const auto ay = static_cast<std::uint64_t>(y < 0 ? -y : y);
  return std::make_pair(ax, ay);
}

double mangoldt(std::int64_t n) {
  if (n <= 1) return 0.0;
  const auto fac = factorize(static_cast<std::uint64_t>(n));
  if (fac.factors.size() != 1) return 0.0;
  return std::log(static_cast<double>(fac.factors.front().prime));
}

double mangoldt_truncated(std::int64_t n, double z) {
  if (n <= 0) return 0.0;
  if (n == 1) return 0.0;
  const auto fac = factorize(static_cast<std::uint64_t>(n));
  std::vector<std::uint64_t> primes;
  for (const auto& f : fac.factors) primes.push_back(f.prime);
  // Squarefree divisors d <= z, with mu(d) = (-1)^{#primes}.
  double sum = 0.0;
  const std::size_t k = primes.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    long double d = 1.0L;
    int sign = 1;
    bool too_big = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        d *= static_cast<long double>(primes[i]);
        sign = -sign;
        if (d > static_cast<long double>(z)) {
          too_big = true;
          break;
        }
      }
    }
    if (too_big) continue;
    sum -= sign * std::log(static_cast<double>(d));
  }
  return sum;
}

}  // namespace schinzel::arith
