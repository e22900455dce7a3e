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

// Integer polynomials, their reductions modulo primes, the Bouniakowsky and
// Schinzel local conditions, and coefficient boxes of bounded height.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "schinzel/common.hpp"
#include "schinzel/random.hpp"

namespace schinzel::poly {

/// c_0 + c_1 t + ... + c_d t^d with c_d != 0.
class IntPoly {
 public:
  IntPoly() = default;
  /// Coefficients, constant term first. Trailing zeros are rejected rather
  /// than trimmed so the degree is always what the caller wrote.
  explicit IntPoly(std::vector<std::int64_t> coeffs);

  unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  std::int64_t leading() const { return coeffs_.back(); }
  std::int64_t height() const;
  std::int64_t content() const;  // gcd of |c_i|
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t i) const { return coeffs_[i]; }

  std::string to_string() const;
  bool operator==(const IntPoly&) const = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// (P_1, ..., P_n), n >= 1.
class PolyTuple {
 public:
  PolyTuple() = default;
  explicit PolyTuple(std::vector<IntPoly> polys);

  std::size_t size() const { return polys_.size(); }
  const IntPoly& operator[](std::size_t i) const { return polys_[i]; }
  const std::vector<IntPoly>& polys() const { return polys_; }
  std::vector<unsigned> degrees() const;
  unsigned total_degree() const;
  std::int64_t height() const;

  bool operator==(const PolyTuple&) const = default;

 private:
  std::vector<IntPoly> polys_;
};

/// Horner evaluation with overflow detection; nothing on overflow.
std::optional<std::int64_t> eval_checked(const IntPoly& p, std::int64_t m);
/// Exact evaluation; takes the 64-bit path when it does not overflow.
BigInt eval(const IntPoly& p, std::int64_t m);
/// P(m) mod q in [0, q).
std::uint64_t eval_mod(const IntPoly& p, std::int64_t m, std::uint64_t q);

/// Number of s in F_ell with P(s) = 0.
unsigned z_count(const IntPoly& p, std::uint64_t ell);
/// Root count of the product P_1 ... P_n over F_ell.
unsigned z_count(const PolyTuple& tuple, std::uint64_t ell);

struct LocalVerdict {
  bool holds;
  /// A prime ell at which the product vanishes identically on F_ell. Absent
  /// when the failure is a nonpositive leading coefficient.
  std::optional<std::uint64_t> witness;
};

LocalVerdict is_bouniakowsky(const IntPoly& p, const Budget& budget = {});
LocalVerdict is_schinzel(const PolyTuple& tuple, const Budget& budget = {});

/// Coefficient box Poly(H): deg P_i = d_i, |P_i| <= H, leading coefficient
/// positive, and P_i = Q_i (mod M) coefficientwise.
struct CoeffBox {
  std::vector<unsigned> degrees;
  std::int64_t height = 1;
  std::int64_t modulus = 1;
  std::vector<std::vector<std::int64_t>> residues;  // Q_i; missing coefficients read as 0
  std::int64_t anchor = 0;                         // n_0

  void validate() const;
  std::int64_t residue(std::size_t poly, std::size_t coeff) const;
};

/// Arithmetic progression {first + k*step : 0 <= k < count}.
struct Progression {
  std::int64_t first;
  std::int64_t step;
  std::uint64_t count;
};

/// Mixed-radix view of a box: tuple <-> index in lexicographic order of the
/// flattened coefficient vector (P_1.c_0, ..., P_1.c_d1, P_2.c_0, ...), last
/// coordinate fastest.
class BoxEnumerator {
 public:
  explicit BoxEnumerator(CoeffBox box);

  const CoeffBox& box() const { return box_; }
  /// Exact cardinality; throws BudgetExceeded beyond 2^63.
  std::uint64_t size() const { return size_; }
  BigInt exact_size() const;
  PolyTuple at(std::uint64_t index) const;
  /// Visits indices [begin, end) in order. Each sub-range is independent.
  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<void(const PolyTuple&)>& visit) const;
  const std::vector<Progression>& axes() const { return axes_; }

 private:
  CoeffBox box_;
  std::vector<Progression> axes_;
  std::uint64_t size_ = 0;
};

/// Uniform draws from the box: each coefficient independently uniform on its
/// admissible progression. Throws std::invalid_argument on an empty box.
PolyTuple sample_one(const BoxEnumerator& box, Rng& rng);
std::vector<PolyTuple> sample_box(const CoeffBox& box, std::size_t count, std::uint64_t seed);

/// Closed-form count of Poly(H) when M = 1: prod_i H (2H+1)^{d_i}.
BigInt box_cardinality_unrestricted(std::span<const unsigned> degrees, std::int64_t height);

nlohmann::json to_json(const IntPoly& p);
nlohmann::json to_json(const PolyTuple& t);
IntPoly poly_from_json(const nlohmann::json& j);
PolyTuple tuple_from_json(const nlohmann::json& j);

}  // namespace schinzel::poly
