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

// Diagonal conics a1 pi1 x^2 + a2 pi2 y^2 + a3 pi3 z^2 = 0 whose coefficients
// carry known prime factorizations, the Q indicator, and the conic bundle
// scan over prime values of polynomials.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "schinzel/arith.hpp"
#include "schinzel/common.hpp"
#include "schinzel/poly.hpp"

namespace schinzel::conic {

enum class Hypothesis { same_signs, repeated_prime, prime_divides_2a, local_obstruction };

std::string to_string(Hypothesis h);

/// A hypothesis of the Q criterion failed; `which` names it.
class HypothesisViolation : public std::invalid_argument {
 public:
  HypothesisViolation(Hypothesis which, const std::string& detail)
      : std::invalid_argument(to_string(which) + ": " + detail), which_(which) {}
  Hypothesis which() const { return which_; }

 private:
  Hypothesis which_;
};

struct ConicSpec {
  std::array<std::int64_t, 3> a{1, 1, -1};
  std::array<std::vector<std::uint64_t>, 3> primes;  // p_{i,1..n_i}

  /// Throws invalid_argument unless a1 a2 a3 is nonzero and squarefree,
  /// every listed p_ij is prime, n1 > 0 and n2 > 0.
  void validate(const Budget& budget = {}) const;
  BigInt pi(std::size_t i) const;
  /// a_i pi_i.
  BigInt coefficient(std::size_t i) const;
  std::size_t n() const { return primes[0].size() + primes[1].size() + primes[2].size(); }
};

struct ProjectivePoint {
  BigInt x, y, z;
  bool operator==(const ProjectivePoint&) const = default;
};

/// a x^2 + b y^2 + c z^2 with exact arithmetic.
BigInt evaluate(const BigInt& a, const BigInt& b, const BigInt& c, const ProjectivePoint& p);

/// a x^2 + b y^2 + c z^2 = 0 has a nontrivial point over the completion at v,
/// decided by the Hilbert symbol (-ac, -bc)_v.
bool local_solvable(const BigInt& a, const BigInt& b, const BigInt& c, const arith::Place& v);

/// The infinite place, 2, and the odd primes dividing abc. `known` primes are
/// divided out before the cofactor is factored.
std::vector<arith::Place> bad_places(const BigInt& a, const BigInt& b, const BigInt& c,
                                     std::span<const std::uint64_t> known = {}, const Budget& budget = {});

struct QIndicator {
  int value = 0;
  std::int64_t numerator = 0;  // 2 + the primed sum; equals 2^n value
  int full_term = 1;           // the (pi_1, pi_2, pi_3) term, always +1
  std::vector<int> symbols;    // (-a_i' a_i'' pi_i' pi_i'' / p_ij) in spec order
};

/// Evaluates Q = 2^{-n}(2 + sum') with literal Jacobi symbols over every
/// subset triple. Checks the hypotheses first and throws HypothesisViolation
/// naming the one that fails; throws InvariantViolation if Q leaves {0, 1}.
QIndicator q_indicator(const ConicSpec& spec, const Budget& budget = {});

/// (-1)^{(p-1)(q-1)/4} for odd positive p, q.
int reciprocity_sign(std::uint64_t p, std::uint64_t q);
/// Product of reciprocity_sign over all pairs (p, q) in P x Q.
int reciprocity_sign(std::span<const std::uint64_t> ps, std::span<const std::uint64_t> qs);

struct NuProfile {
  std::array<std::vector<std::int64_t>, 3> nu;  // residues in [0, modulus)
  std::int64_t modulus = 8;                      // 8 |a1 a2 a3|
  int mu = 1;
  int nu_two = 1;  // the nu of the mod 8 condition on nu_11
};

/// Residues nu_ij such that pairwise distinct primes p_ij = nu_ij mod 8 a1 a2 a3
/// make the conic locally solvable at every p | 2 a1 a2 a3.
NuProfile nu_profile(std::int64_t a1, std::int64_t a2, std::int64_t a3, unsigned n1, unsigned n2, unsigned n3);

struct ConicSolution {
  std::optional<ProjectivePoint> point;
  std::optional<arith::Place> obstruction;  // a place where the conic has no point
  bool solvable() const { return point.has_value(); }
};

inline constexpr std::int64_t kDefaultSearchRadius = 300;

/// Rational point on a x^2 + b y^2 + c z^2 = 0, or the first obstructed place.
/// Points come from Lagrange descent with Gaussian reduction and are then
/// replaced by the primitive point with |x|,|y|,|z| <= radius of least |xyz|,
/// ties going to the lexicographically larger (|x|, |y|, |z|), when that
/// beats the descent point. Coordinates are >= 0.
ConicSolution solve_conic(const BigInt& a, const BigInt& b, const BigInt& c,
                          std::span<const std::uint64_t> known_primes = {}, const Budget& budget = {},
                          std::int64_t radius = kDefaultSearchRadius);

ConicSolution solve_conic(const ConicSpec& spec, const Budget& budget = {},
                          std::int64_t radius = kDefaultSearchRadius);

/// Polynomials P_ij listed group by group, with group sizes (n1, n2, n3).
struct ConicBundle {
  std::array<std::int64_t, 3> a{1, 1, -1};
  poly::PolyTuple polys;
  std::array<unsigned, 3> groups{1, 1, 0};
  void validate() const;
  /// The spec at t = m; nothing if some P_ij(m) is not a prime below 2^64.
  std::optional<ConicSpec> fiber(std::int64_t m) const;
};

struct BundleAttempt {
  std::int64_t m = 0;
  std::string reason;  // "solved" on success
};

struct BundleResult {
  std::optional<std::int64_t> m;
  std::optional<ProjectivePoint> point;
  std::vector<BundleAttempt> attempts;
};

/// Scans m <= m_bound, m = n0 mod M, for a fiber with all P_ij(m) prime and
/// pairwise distinct whose conic has a rational point. Smallest m wins.
BundleResult bundle_search(const ConicBundle& bundle, std::int64_t anchor, std::int64_t modulus,
                           std::int64_t m_bound, const Budget& budget = {});

struct IdentityReport {
  std::uint64_t qualifying = 0;   // m used on both sides
  std::uint64_t excluded = 0;     // prime fibers outside the hypotheses
  std::uint64_t subset_terms = 0; // number of primed subset triples
  double c_value = 0;             // C_P(x)
  double theta = 0;               // theta_P(x) over the qualifying m
  double t_sum = 0;               // sum' of T_{S,P}(x)
  double residual = 0;            // C - 2^{1-n} theta - 2^{-n} t_sum
  bool exact = true;              // 2^n 1(m) = 2 + sum' at every qualifying m
  std::vector<std::int64_t> failures;
};

/// Checks C = 2^{-(n-1)} theta + 2^{-n} sum' T on the m <= x (m = n0 mod M)
/// where every P_ij(m) is prime, the primes are distinct and coprime to
/// 2 a1 a2 a3, and the fiber is locally solvable at p | 2 a1 a2 a3. The
/// indicator side is decided by Hilbert symbols at every bad place.
IdentityReport identity_check(const ConicBundle& bundle, double x, std::int64_t anchor = 0,
                              std::int64_t modulus = 1, const Budget& budget = {});

nlohmann::json to_json(const ConicSpec& spec);
ConicSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProjectivePoint& p);
nlohmann::json to_json(const ConicSolution& s);

}  // namespace schinzel::conic
