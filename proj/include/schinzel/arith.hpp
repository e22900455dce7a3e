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

// Integer arithmetic primitives: primality, factoring, residue symbols,
// modular square roots, CRT, Hilbert symbols, binary quadratic forms and the
// von Mangoldt functions. Everything here is pure and thread-safe.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schinzel/common.hpp"

namespace schinzel::arith {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  bool operator==(const PrimePower&) const = default;
};

/// value = prod prime^exponent, primes strictly increasing.
struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;
};

enum class Primality { composite, prime, probable_prime };

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin (fixed witness set, exact for all 64-bit n).
bool is_prime(std::uint64_t n);
bool is_prime(std::int64_t n);

/// Exact below 2^64; above that a Baillie-PSW probable-prime verdict.
Primality primality(const BigInt& n);

/// Trial division up to budget.trial_division_bound, then Pollard-Brent.
/// Throws BudgetExceeded when the Pollard iteration cap is spent.
Factorization factorize(std::uint64_t n, const Budget& budget = {});

/// Legendre-Jacobi symbol (a/b) for b >= 1. Even b is allowed: each factor 2
/// of b contributes 1 if a is odd and 0 if a is even.
int symbol(std::int64_t a, std::uint64_t b);
int symbol(const BigInt& a, std::uint64_t b);

/// Tonelli-Shanks. Returns r with r^2 = a (mod p), or nothing if a is a
/// nonresidue. The smaller of the two roots is returned.
std::optional<std::uint64_t> sqrt_mod(std::int64_t a, std::uint64_t p);

/// x = residues[i] (mod moduli[i]) for all i. Moduli need not be coprime;
/// returns nothing when the system is inconsistent. The result is reduced
/// modulo the lcm, which is returned alongside it.
std::optional<std::pair<std::uint64_t, std::uint64_t>> crt(std::span<const std::int64_t> residues,
                                                           std::span<const std::uint64_t> moduli);

/// A place of Q: the real place or a finite prime (2 is a finite prime with
/// its own Hilbert-symbol formula).
class Place {
 public:
  static Place real() { return Place(0); }
  static Place prime(std::uint64_t p);

  bool is_real() const { return p_ == 0; }
  bool is_two() const { return p_ == 2; }
  std::uint64_t p() const { return p_; }
  std::string name() const { return is_real() ? std::string("inf") : std::to_string(p_); }

  bool operator==(const Place&) const = default;
  bool operator<(const Place& o) const { return p_ < o.p_; }

 private:
  explicit Place(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// Hilbert symbol (a, b)_v for nonzero a, b.
int hilbert(std::int64_t a, std::int64_t b, const Place& v);
int hilbert(const BigInt& a, const BigInt& b, const Place& v);

/// Places where (a, b)_v can be -1: infinity, 2, and every odd prime
/// dividing ab. Sorted with infinity first.
std::vector<Place> relevant_places(const BigInt& a, const BigInt& b, const Budget& budget = {});

/// Solves x^2 + d y^2 = p for prime p with y >= 1 (x = 0 only when d = p).
std::optional<std::pair<std::uint64_t, std::uint64_t>> cornacchia(std::uint64_t d, std::uint64_t p);

/// True iff n = x^2 + y^2 has an integer solution. Stops factoring as soon as
/// a prime 3 mod 4 with odd exponent is found.
bool is_sum_of_two_squares(std::uint64_t n, const Budget& budget = {});

/// A representation n = x^2 + y^2 built from the factorization by composing
/// Gaussian integers, or nothing if none exists.
std::optional<std::pair<std::uint64_t, std::uint64_t>> two_squares(std::uint64_t n,
                                                                   const Budget& budget = {});

/// Lambda(n): log p when n = p^k, 0 otherwise (including n <= 1).
double mangoldt(std::int64_t n);

/// Lambda_z(n) = -sum_{d <= z, d | n} mu(d) log d for n >= 1; 0 for n <= 0.
double mangoldt_truncated(std::int64_t n, double z);

int mobius(std::uint64_t n);

/// All primes <= n, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Euler phi from a factorization.
std::uint64_t euler_phi(std::uint64_t n);

/// Squarefree test via factorization (0 is not squarefree).
bool is_squarefree(std::uint64_t n, const Budget& budget = {});

std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::uint64_t n);

}  // namespace schinzel::arith
