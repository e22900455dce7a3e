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

#include "schinzel/conic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace schinzel::conic {

namespace {

using arith::Place;

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }
BigInt bigu(std::uint64_t v) { return BigInt(std::to_string(v)); }

std::uint64_t to_u64(const BigInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw BudgetExceeded("value exceeds 64 bits");
  return mpz_get_ui(v.get_mpz_t());
}

// Sign and prime exponents of a nonzero integer.
struct Factored {
  int sign = 1;
  std::map<std::uint64_t, unsigned> exps;

  BigInt value() const {
    BigInt v = sign;
    for (const auto& [p, e] : exps) v *= pow(bigu(p), e);
    return v;
  }
};

Factored factor(const BigInt& v, std::span<const std::uint64_t> known, const Budget& budget) {
  if (sgn(v) == 0) throw std::invalid_argument("conic coefficients must be nonzero");
  Factored f;
  f.sign = sgn(v) < 0 ? -1 : 1;
  BigInt m = abs(v);
  for (auto p : known) {
    if (p < 2) continue;
    const BigInt bp = bigu(p);
    while (m % bp == 0) {
      m /= bp;
      ++f.exps[p];
    }
  }
  if (m > 1)
    for (const auto& pp : arith::factorize(to_u64(m), budget).factors) f.exps[pp.prime] += pp.exponent;
  return f;
}

std::vector<std::uint64_t> primes_of(const Factored& f) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : f.exps)
    if (e) out.push_back(p);
  return out;
}

// Square root of a modulo |b| for squarefree b with known prime factors.
BigInt sqrt_mod_squarefree(const BigInt& a, std::span<const std::uint64_t> primes) {
  BigInt x = 0, mod = 1;
  for (auto p : primes) {
    const BigInt bp = bigu(p);
    BigInt ar = a % bp;
    if (ar < 0) ar += bp;
    auto r = arith::sqrt_mod(static_cast<std::int64_t>(ar.get_si()), p);
    if (!r) throw InvariantViolation("descent: coefficient is not a square modulo " + std::to_string(p));
    // x = x (mod mod), x = r (mod p).
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), bp.get_mpz_t());
    BigInt k = ((bigu(*r) - x) % bp) * inv % bp;
    if (k < 0) k += bp;
    x += mod * k;
    mod *= bp;
  }
  return x;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Short vector (X, Z) of the lattice X = w Z (mod b) for the norm X^2 + |a| Z^2.
std::pair<BigInt, BigInt> gaussian_reduce(const BigInt& w, const BigInt& a, const BigInt& b) {
  const BigInt aa = abs(a);
  using V = std::pair<BigInt, BigInt>;
  auto dot = [&](const V& u, const V& v) { return BigInt(u.first * v.first + aa * u.second * v.second); };
  V u{b, 0};
  V v = (b * w >= 0) ? V{w, 1} : V{-w, -1};
  if (b * b < w * w + aa) std::swap(u, v);
  while (true) {
    const BigInt dv = dot(v, v);
    if (!(dot(u, u) > dv)) break;
    const BigInt k = floor_div(dot(u, v), dv);
    V next{u.first - k * v.first, u.second - k * v.second};
    u = v;
    v = next;
  }
  const V c{v.first - u.first, v.second - u.second};
  if (dot(c, c) <= dot(u, u) && dot(u, u) <= 2 * dot(u, v)) return c;
  return u;
}

using Triple = std::array<BigInt, 3>;

Triple primitive(Triple t) {
  BigInt g = gcd(gcd(t[0], t[1]), t[2]);
  if (g != 0)
    for (auto& v : t) v /= g;
  return t;
}

struct Coef {
  BigInt value;
  std::vector<std::uint64_t> primes;  // squarefree support
};

Coef product_coef(const Coef& x, const Coef& y) {
  Coef out{x.value * y.value, x.primes};
  out.primes.insert(out.primes.end(), y.primes.begin(), y.primes.end());
  std::sort(out.primes.begin(), out.primes.end());
  return out;
}

// X^2 = A Y^2 + B Z^2 with A, B squarefree and the equation solvable.
Triple descent(const Coef& a, const Coef& b, const Budget& budget, int depth) {
  if (depth > 400) throw InvariantViolation("descent did not terminate");
  if (abs(a.value) > abs(b.value)) {
    const auto s = descent(b, a, budget, depth + 1);
    return {s[0], s[2], s[1]};
  }
  const BigInt& A = a.value;
  const BigInt& B = b.value;
  if (B == 1) return {1, 0, 1};
  if (A == 1) return {1, 1, 0};
  if (B == -A) return {0, 1, 1};
  if (A < 0 && B < 0) throw InvariantViolation("descent reached a definite form");
  if (B == A) {
    const auto s = descent(Coef{-1, {}}, a, budget, depth + 1);
    return {A * s[2], s[1], s[0]};
  }
  const BigInt w = sqrt_mod_squarefree(A, b.primes);
  const auto [x0, z0] = gaussian_reduce(w, A, B);
  const BigInt t = (x0 * x0 - A * z0 * z0) / B;
  if (t == 0) throw InvariantViolation("descent produced a zero norm");
  std::vector<std::uint64_t> known = a.primes;
  known.insert(known.end(), b.primes.begin(), b.primes.end());
  const Factored ft = factor(t, known, budget);
  Coef t1{ft.sign, {}};
  BigInt t2 = 1;
  for (const auto& [p, e] : ft.exps) {
    if (e & 1) {
      t1.value *= bigu(p);
      t1.primes.push_back(p);
    }
    t2 *= pow(bigu(p), e / 2);
  }
  const auto s = descent(a, t1, budget, depth + 1);  // s[0]^2 = A s[1]^2 + t1 s[2]^2
  return primitive({x0 * s[0] + A * z0 * s[1], z0 * s[0] + x0 * s[1], t1.value * t2 * s[2]});
}

using Key = std::tuple<BigInt, BigInt, BigInt, BigInt>;
// Smallest |xyz| first; ties go to the lexicographically larger (|x|, |y|, |z|).
Key key_of(const ProjectivePoint& p) { return {abs(p.x * p.y * p.z), -abs(p.x), -abs(p.y), -abs(p.z)}; }

// Primitive points with 0 <= x, y, z <= radius, best key first.
std::optional<ProjectivePoint> box_search(const BigInt& a, const BigInt& b, const BigInt& c, std::int64_t radius) {
  if (radius < 1) return std::nullopt;
  const BigInt limit = BigInt(1) << 100;
  const BigInt r2 = big(radius) * big(radius);
  for (const BigInt* v : {&a, &b, &c})
    if (!mpz_fits_slong_p(v->get_mpz_t()) || abs(*v) * r2 * 4 >= limit) return std::nullopt;
  const __int128 A = a.get_si(), B = b.get_si(), C = c.get_si();
  const __int128 R2 = static_cast<__int128>(radius) * radius;
  std::optional<ProjectivePoint> best;
  std::optional<std::array<__int128, 4>> best_key;
  for (std::int64_t x = 0; x <= radius; ++x)
    for (std::int64_t y = 0; y <= radius; ++y) {
      if (x == 0 && y == 0) continue;
      const __int128 num = -(A * x * x + B * y * y);
      if (num % C != 0) continue;
      const __int128 q = num / C;
      if (q < 0 || q > R2) continue;
      const std::uint64_t z = arith::isqrt(static_cast<std::uint64_t>(q));
      if (static_cast<__int128>(z) * z != q) continue;
      if (std::gcd(std::gcd(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y)), z) != 1) continue;
      const std::array<__int128, 4> k{static_cast<__int128>(x) * y * static_cast<__int128>(z), -x, -y,
                                      -static_cast<__int128>(z)};
      if (!best_key || k < *best_key) {
        best_key = k;
        best = ProjectivePoint{big(x), big(y), bigu(z)};
      }
    }
  return best;
}

std::array<std::int64_t, 3> other(std::size_t i) {
  // {i, i', i''} = {0, 1, 2}
  if (i == 0) return {0, 1, 2};
  if (i == 1) return {1, 0, 2};
  return {2, 0, 1};
}

std::optional<Hypothesis> failed_hypothesis(const ConicSpec& spec, std::string& detail, const Budget& budget) {
  const auto& a = spec.a;
  if ((a[0] > 0 && a[1] > 0 && a[2] > 0) || (a[0] < 0 && a[1] < 0 && a[2] < 0)) {
    detail = "a1, a2, a3 all have the same sign";
    return Hypothesis::same_signs;
  }
  std::set<std::uint64_t> seen;
  for (const auto& group : spec.primes)
    for (auto p : group)
      if (!seen.insert(p).second) {
        detail = "prime " + std::to_string(p) + " repeats";
        return Hypothesis::repeated_prime;
      }
  const BigInt two_a = 2 * big(a[0]) * big(a[1]) * big(a[2]);
  for (auto p : seen)
    if (two_a % bigu(p) == 0) {
      detail = "prime " + std::to_string(p) + " divides 2a1a2a3";
      return Hypothesis::prime_divides_2a;
    }
  std::vector<std::uint64_t> bad{2};
  for (const auto& pp : arith::factorize(to_u64(abs(two_a / 2)), budget).factors)
    if (pp.prime != 2) bad.push_back(pp.prime);
  const BigInt c0 = spec.coefficient(0), c1 = spec.coefficient(1), c2 = spec.coefficient(2);
  for (auto p : bad)
    if (!local_solvable(c0, c1, c2, Place::prime(p))) {
      detail = "no point over Q_" + std::to_string(p);
      return Hypothesis::local_obstruction;
    }
  return std::nullopt;
}

struct PrimedSum {
  std::int64_t sum = 0;  // over subset triples other than the empty and full ones
  int full_term = 1;
};

// Jacobi symbol tables over the subsets of each group, then the primed sum.
PrimedSum primed_sum(const ConicSpec& spec) {
  std::array<BigInt, 3> num;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto o = other(i);
    num[i] = -big(spec.a[o[1]]) * big(spec.a[o[2]]) * spec.pi(o[1]) * spec.pi(o[2]);
  }
  std::array<std::vector<int>, 3> table;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t ni = spec.primes[i].size();
    if (ni > 20) throw BudgetExceeded("too many primes in one coefficient");
    table[i].resize(std::size_t{1} << ni);
    for (std::size_t s = 0; s < table[i].size(); ++s) {
      BigInt den = 1;
      for (std::size_t j = 0; j < ni; ++j)
        if (s >> j & 1) den *= bigu(spec.primes[i][j]);
      table[i][s] = mpz_jacobi(num[i].get_mpz_t(), den.get_mpz_t());
    }
  }
  PrimedSum out;
  const std::size_t full0 = table[0].size() - 1, full1 = table[1].size() - 1, full2 = table[2].size() - 1;
  for (std::size_t s0 = 0; s0 <= full0; ++s0)
    for (std::size_t s1 = 0; s1 <= full1; ++s1)
      for (std::size_t s2 = 0; s2 <= full2; ++s2) {
        const int term = table[0][s0] * table[1][s1] * table[2][s2];
        if (s0 == 0 && s1 == 0 && s2 == 0) continue;
        if (s0 == full0 && s1 == full1 && s2 == full2) {
          out.full_term = term;
          continue;
        }
        out.sum += term;
      }
  return out;
}

}  // namespace

std::string to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::same_signs: return "coefficients of one sign";
    case Hypothesis::repeated_prime: return "non-distinct primes";
    case Hypothesis::prime_divides_2a: return "prime divides 2a1a2a3";
    case Hypothesis::local_obstruction: return "not locally solvable at a prime dividing 2a1a2a3";
  }
  return "unknown";
}

void ConicSpec::validate(const Budget& budget) const {
  const BigInt prod = big(a[0]) * big(a[1]) * big(a[2]);
  if (prod == 0) throw std::invalid_argument("a1, a2, a3 must be nonzero");
  if (!arith::is_squarefree(to_u64(abs(prod)), budget)) throw std::invalid_argument("a1 a2 a3 must be squarefree");
  if (primes[0].empty() || primes[1].empty()) throw std::invalid_argument("n1 and n2 must be positive");
  for (const auto& group : primes)
    for (auto p : group)
      if (!arith::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

BigInt ConicSpec::pi(std::size_t i) const {
  BigInt v = 1;
  for (auto p : primes.at(i)) v *= bigu(p);
  return v;
}

BigInt ConicSpec::coefficient(std::size_t i) const { return big(a.at(i)) * pi(i); }

BigInt evaluate(const BigInt& a, const BigInt& b, const BigInt& c, const ProjectivePoint& p) {
  return a * p.x * p.x + b * p.y * p.y + c * p.z * p.z;
}

bool local_solvable(const BigInt& a, const BigInt& b, const BigInt& c, const Place& v) {
  if (sgn(a) == 0 || sgn(b) == 0 || sgn(c) == 0) throw std::invalid_argument("local_solvable needs abc != 0");
  return arith::hilbert(BigInt(-a * c), BigInt(-b * c), v) == 1;
}

std::vector<Place> bad_places(const BigInt& a, const BigInt& b, const BigInt& c,
                              std::span<const std::uint64_t> known, const Budget& budget) {
  std::set<std::uint64_t> odd;
  for (const BigInt* v : {&a, &b, &c})
    for (auto p : primes_of(factor(*v, known, budget)))
      if (p != 2) odd.insert(p);
  std::vector<Place> out{Place::real(), Place::prime(2)};
  for (auto p : odd) out.push_back(Place::prime(p));
  return out;
}

QIndicator q_indicator(const ConicSpec& spec, const Budget& budget) {
  spec.validate(budget);
  std::string detail;
  if (auto h = failed_hypothesis(spec, detail, budget)) throw HypothesisViolation(*h, detail);
  const auto ps = primed_sum(spec);
  QIndicator q;
  q.full_term = ps.full_term;
  if (ps.full_term != 1) throw InvariantViolation("full subset term is not 1");
  q.numerator = 2 + ps.sum;
  const std::int64_t two_n = std::int64_t{1} << spec.n();
  if (q.numerator != 0 && q.numerator != two_n)
    throw InvariantViolation("Q numerator " + std::to_string(q.numerator) + " is not 0 or 2^n");
  q.value = q.numerator == two_n ? 1 : 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto o = other(i);
    const BigInt num = -big(spec.a[o[1]]) * big(spec.a[o[2]]) * spec.pi(o[1]) * spec.pi(o[2]);
    for (auto p : spec.primes[i]) q.symbols.push_back(arith::symbol(num, p));
  }
  return q;
}

int reciprocity_sign(std::uint64_t p, std::uint64_t q) {
  if (p % 2 == 0 || q % 2 == 0) throw std::invalid_argument("reciprocity_sign needs odd arguments");
  return ((p % 4 == 3) && (q % 4 == 3)) ? -1 : 1;
}

int reciprocity_sign(std::span<const std::uint64_t> ps, std::span<const std::uint64_t> qs) {
  int s = 1;
  for (auto p : ps)
    for (auto q : qs) s *= reciprocity_sign(p, q);
  return s;
}

NuProfile nu_profile(std::int64_t a1, std::int64_t a2, std::int64_t a3, unsigned n1, unsigned n2, unsigned n3) {
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("n1 and n2 must be positive");
  const BigInt prod = big(a1) * big(a2) * big(a3);
  if (prod == 0 || !arith::is_squarefree(to_u64(abs(prod)))) throw std::invalid_argument("a1 a2 a3 must be squarefree");
  if ((a1 > 0) == (a2 > 0) && (a2 > 0) == (a3 > 0)) throw std::invalid_argument("a1, a2, a3 must have mixed signs");

  NuProfile out;
  out.modulus = 8 * std::abs(a1 * a2 * a3);
  if (arith::hilbert(-a1 * a3, -a2 * a3, Place::prime(2)) == 1) {
    out.mu = out.nu_two = 1;
  } else if ((a1 * a3) % 2 == 0) {
    out.mu = 5;
    out.nu_two = 1;
  } else if ((a2 * a3) % 2 == 0) {
    out.mu = 1;
    out.nu_two = 5;
  } else {
    out.mu = -1;
    out.nu_two = 1;
  }

  auto odd_part = [](std::int64_t v) {
    v = std::abs(v);
    while (v % 2 == 0) v /= 2;
    return v;
  };
  // x = target mod the odd part of a; target is 1 or the inverse of `unit`.
  auto solve = [&](std::array<std::int64_t, 3> units, int mod8) {
    std::vector<std::int64_t> residues{((mod8 % 8) + 8) % 8};
    std::vector<std::uint64_t> moduli{8};
    const std::array<std::int64_t, 3> as{a1, a2, a3};
    for (std::size_t i = 0; i < 3; ++i) {
      const std::int64_t m = odd_part(as[i]);
      if (m == 1) continue;
      BigInt inv, u = big(units[i]) % big(m);
      if (u < 0) u += big(m);
      if (!mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), big(m).get_mpz_t()))
        throw InvariantViolation("nu_profile: unit not invertible");
      residues.push_back(inv.get_si());
      moduli.push_back(static_cast<std::uint64_t>(m));
    }
    const auto r = arith::crt(residues, moduli);
    if (!r) throw InvariantViolation("nu_profile: congruences inconsistent");
    return static_cast<std::int64_t>(r->first % static_cast<std::uint64_t>(out.modulus));
  };
  // Units whose inverse is the target residue; 1 means target 1.
  const std::int64_t nu11 = solve({1, -a1 * a3, -a1 * a2}, out.nu_two);
  const std::int64_t nu21 = solve({-a2 * a3, 1, 1}, out.mu);
  out.nu[0].assign(n1, 1);
  out.nu[1].assign(n2, 1);
  out.nu[2].assign(n3, 1);
  out.nu[0][0] = nu11;
  out.nu[1][0] = nu21;
  for (const auto& group : out.nu)
    for (auto v : group)
      if (std::gcd(v, out.modulus) != 1) throw InvariantViolation("nu_profile: residue not a unit");
  return out;
}

ConicSolution solve_conic(const BigInt& a, const BigInt& b, const BigInt& c, std::span<const std::uint64_t> known,
                          const Budget& budget, std::int64_t radius) {
  std::array<Factored, 3> f{factor(a, known, budget), factor(b, known, budget), factor(c, known, budget)};
  ConicSolution out;
  if (f[0].sign == f[1].sign && f[1].sign == f[2].sign) {
    out.obstruction = Place::real();
    return out;
  }
  // Reduce to squarefree, pairwise coprime coefficients; original coordinate i
  // equals reduced coordinate i times scale[i].
  std::array<Rational, 3> scale{1, 1, 1};
  std::set<std::uint64_t> all;
  for (const auto& fi : f)
    for (const auto& [p, e] : fi.exps) all.insert(p);
  for (auto p : all) {
    unsigned lo = ~0u;
    for (auto& fi : f) lo = std::min(lo, fi.exps.count(p) ? fi.exps[p] : 0u);
    for (std::size_t i = 0; i < 3; ++i) {
      unsigned& e = f[i].exps[p];
      e -= lo;
      if (e >= 2) {
        scale[i] /= pow(bigu(p), e / 2);
        e %= 2;
      }
    }
    std::vector<std::size_t> with;
    for (std::size_t i = 0; i < 3; ++i)
      if (f[i].exps[p]) with.push_back(i);
    if (with.size() == 2) {
      const std::size_t k = 3 - with[0] - with[1];
      f[with[0]].exps[p] = 0;
      f[with[1]].exps[p] = 0;
      f[k].exps[p] = 1;
      scale[k] *= bigu(p);
    }
  }
  std::array<Coef, 3> r;
  for (std::size_t i = 0; i < 3; ++i) r[i] = Coef{f[i].value(), primes_of(f[i])};

  for (const auto& v : bad_places(r[0].value, r[1].value, r[2].value, {}, budget)) {
    if (v.is_real()) continue;
    // The reduced coefficients have known support; the place list only needs it.
    if (!local_solvable(r[0].value, r[1].value, r[2].value, v)) {
      out.obstruction = v;
      return out;
    }
  }

  // A x^2 + B y^2 + C z^2 = 0 becomes X^2 = (-AB) Y^2 + (-AC) Z^2 with X = A x.
  Coef alpha = product_coef(r[0], r[1]);
  Coef beta = product_coef(r[0], r[2]);
  alpha.value = -alpha.value;
  beta.value = -beta.value;
  const auto s = descent(alpha, beta, budget, 0);
  const Triple reduced{s[0], r[0].value * s[1], r[0].value * s[2]};

  std::array<Rational, 3> q;
  BigInt den = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    q[i] = Rational(reduced[i]) * scale[i];
    q[i].canonicalize();
    den = lcm(den, q[i].get_den());
  }
  Triple pt;
  for (std::size_t i = 0; i < 3; ++i) pt[i] = abs(BigInt(q[i].get_num() * (den / q[i].get_den())));
  pt = primitive(pt);
  ProjectivePoint point{pt[0], pt[1], pt[2]};
  if (evaluate(a, b, c, point) != 0 || (point.x == 0 && point.y == 0 && point.z == 0))
    throw InvariantViolation("descent output does not satisfy the conic");
  if (auto small = box_search(a, b, c, radius); small && key_of(*small) < key_of(point)) point = *small;
  out.point = point;
  return out;
}

ConicSolution solve_conic(const ConicSpec& spec, const Budget& budget, std::int64_t radius) {
  spec.validate(budget);
  std::vector<std::uint64_t> known;
  for (const auto& g : spec.primes) known.insert(known.end(), g.begin(), g.end());
  return solve_conic(spec.coefficient(0), spec.coefficient(1), spec.coefficient(2), known, budget, radius);
}

void ConicBundle::validate() const {
  if (groups[0] == 0 || groups[1] == 0) throw std::invalid_argument("n1 and n2 must be positive");
  if (static_cast<std::size_t>(groups[0]) + groups[1] + groups[2] != polys.size())
    throw std::invalid_argument("group sizes do not match the number of polynomials");
  const BigInt prod = big(a[0]) * big(a[1]) * big(a[2]);
  if (prod == 0 || !arith::is_squarefree(to_u64(abs(prod)))) throw std::invalid_argument("a1 a2 a3 must be squarefree");
}

std::optional<ConicSpec> ConicBundle::fiber(std::int64_t m) const {
  ConicSpec spec;
  spec.a = a;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (unsigned j = 0; j < groups[i]; ++j, ++k) {
      const BigInt v = poly::eval(polys[k], m);
      if (v < 2 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return std::nullopt;
      const std::uint64_t p = mpz_get_ui(v.get_mpz_t());
      if (!arith::is_prime(p)) return std::nullopt;
      spec.primes[i].push_back(p);
    }
  return spec;
}

namespace {

std::int64_t first_in_class(std::int64_t anchor, std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
  std::int64_t m = anchor % modulus;
  if (m < 1) m += modulus;
  return m;
}

}  // namespace

BundleResult bundle_search(const ConicBundle& bundle, std::int64_t anchor, std::int64_t modulus,
                           std::int64_t m_bound, const Budget& budget) {
  bundle.validate();
  BundleResult out;
  for (std::int64_t m = first_in_class(anchor, modulus); m <= m_bound; m += modulus) {
    const auto spec = bundle.fiber(m);
    if (!spec) {
      out.attempts.push_back({m, "not all prime"});
      continue;
    }
    std::string detail;
    if (auto h = failed_hypothesis(*spec, detail, budget)) {
      out.attempts.push_back({m, to_string(*h)});
      continue;
    }
    if (q_indicator(*spec, budget).value == 0) {
      out.attempts.push_back({m, "Q = 0"});
      continue;
    }
    const auto sol = solve_conic(*spec, budget);
    if (!sol.point) throw InvariantViolation("Q = 1 but no point was constructed");
    out.attempts.push_back({m, "solved"});
    out.m = m;
    out.point = sol.point;
    return out;
  }
  return out;
}

IdentityReport identity_check(const ConicBundle& bundle, double x, std::int64_t anchor, std::int64_t modulus,
                              const Budget& budget) {
  bundle.validate();
  IdentityReport rep;
  const std::size_t n = bundle.polys.size();
  rep.subset_terms = (std::uint64_t{1} << n) - 2;
  const std::int64_t two_n = std::int64_t{1} << n;
  for (std::int64_t m = first_in_class(anchor, modulus); static_cast<double>(m) <= x; m += modulus) {
    const auto spec = bundle.fiber(m);
    if (!spec) continue;
    std::string detail;
    if (failed_hypothesis(*spec, detail, budget)) {
      ++rep.excluded;
      continue;
    }
    ++rep.qualifying;
    std::vector<std::uint64_t> known;
    double w = 1;
    for (const auto& g : spec->primes)
      for (auto p : g) {
        known.push_back(p);
        w *= std::log(static_cast<double>(p));
      }
    const BigInt c0 = spec->coefficient(0), c1 = spec->coefficient(1), c2 = spec->coefficient(2);
    bool solvable = true;
    for (const auto& v : bad_places(c0, c1, c2, known, budget)) solvable = solvable && local_solvable(c0, c1, c2, v);
    const auto ps = primed_sum(*spec);
    if ((solvable ? two_n : 0) != 2 + ps.sum) {
      rep.exact = false;
      rep.failures.push_back(m);
    }
    rep.theta += w;
    rep.c_value += solvable ? w : 0;
    rep.t_sum += w * static_cast<double>(ps.sum);
  }
  rep.residual = rep.c_value - rep.theta * 2.0 / static_cast<double>(two_n) - rep.t_sum / static_cast<double>(two_n);
  return rep;
}

nlohmann::json to_json(const ConicSpec& spec) {
  nlohmann::json j;
  j["a"] = {std::to_string(spec.a[0]), std::to_string(spec.a[1]), std::to_string(spec.a[2])};
  j["primes"] = nlohmann::json::array();
  for (const auto& g : spec.primes) {
    auto arr = nlohmann::json::array();
    for (auto p : g) arr.push_back(std::to_string(p));
    j["primes"].push_back(arr);
  }
  return j;
}

ConicSpec spec_from_json(const nlohmann::json& j) {
  auto num = [](const nlohmann::json& v) -> std::string { return v.is_string() ? v.get<std::string>() : v.dump(); };
  ConicSpec spec;
  const auto& a = j.at("a");
  if (!a.is_array() || a.size() != 3) throw std::invalid_argument("\"a\" must list three integers");
  for (std::size_t i = 0; i < 3; ++i) spec.a[i] = std::stoll(num(a[i]));
  const auto& pr = j.at("primes");
  if (!pr.is_array() || pr.size() != 3) throw std::invalid_argument("\"primes\" must hold three lists");
  for (std::size_t i = 0; i < 3; ++i)
    for (const auto& p : pr[i]) spec.primes[i].push_back(std::stoull(num(p)));
  return spec;
}

nlohmann::json to_json(const ProjectivePoint& p) {
  return {{"x", p.x.get_str()}, {"y", p.y.get_str()}, {"z", p.z.get_str()}};
}

nlohmann::json to_json(const ConicSolution& s) {
  nlohmann::json j;
  j["solvable"] = s.solvable();
  if (s.point) j["point"] = to_json(*s.point);
  if (s.obstruction) j["obstruction"] = s.obstruction->name();
  return j;
}

}  // namespace schinzel::conic
