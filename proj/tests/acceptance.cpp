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

// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [--strict] [criterion ...]   (default: all)
//
// Criteria marked `asymptotic` test a limiting statement at desk scale. Their
// FAIL lines are printed as they are but only change the exit status under
// --strict; any other failure always does.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "schinzel/arith.hpp"
#include "schinzel/chatelet.hpp"
#include "schinzel/conic.hpp"
#include "schinzel/counting.hpp"
#include "schinzel/model.hpp"
#include "schinzel/random.hpp"
#include "schinzel/series.hpp"

using namespace schinzel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
  bool asymptotic = false;
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Criterion 1: moments of the model, exhaustively, against the closed forms.
Outcome exact_model() {
  Outcome o;
  int cases = 0;
  for (std::uint64_t ell : {2, 3, 5})
    for (const auto& degrees : std::vector<std::vector<unsigned>>{{1}, {2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}})
      for (std::uint64_t m = 0; m < ell; ++m) {
        const auto r = model::verify_moments({ell, degrees}, m);
        ++cases;
        if (!r.all_exact()) {
          o.pass = false;
          o.detail += " mismatch at ell=" + std::to_string(ell) + " n=" + std::to_string(degrees.size());
        }
      }
  const auto ref = model::verify_moments({3, {1}}, 0);
  const bool ref_ok = ref.second.exhaustive == make_rational(14, 27) && ref.second.closed == make_rational(14, 27);
  o.pass = o.pass && ref_ok;
  o.detail = std::to_string(cases) + " (ell, d, m) cases exact; ell=3 n=1 d=1 second moment " +
             to_string(ref.second.exhaustive) + " = " + to_string(ref.second.closed) + o.detail;
  return o;
}

// Criterion 2: joint law for ell = 3, d = (1, 1) against direct counting.
Outcome joint_distribution() {
  Outcome o;
  const std::uint64_t ell = 3;
  std::vector<std::uint64_t> counts(8, 0);
  for (int a0 = 0; a0 < 3; ++a0)
    for (int a1 = 0; a1 < 3; ++a1)
      for (int b0 = 0; b0 < 3; ++b0)
        for (int b1 = 0; b1 < 3; ++b1) {
          unsigned mask = 0;
          for (int m = 0; m < 3; ++m)
            if ((a0 + a1 * m) % 3 != 0 && (b0 + b1 * m) % 3 != 0) mask |= 1u << m;
          ++counts[mask];
        }
  Rational total = 0;
  int matched = 0;
  for (unsigned mask = 0; mask < 8; ++mask) {
    const std::vector<bool> gamma{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
    const auto p = model::joint_prob({ell, {1, 1}}, gamma);
    total += p;
    if (p == make_rational(static_cast<long>(counts[mask]), 81)) ++matched;
  }
  o.pass = total == 1 && matched == 8;
  o.detail = "sum " + to_string(total) + ", " + std::to_string(matched) + "/8 values match counting over 81 tuples";
  return o;
}

// Criterion 3: c_ell for one polynomial.
Outcome special_values() {
  Outcome o;
  int checked = 0;
  for (auto ell : arith::primes_up_to(50))
    for (unsigned d = 1; d <= 6; ++d) {
      const unsigned e = ell <= d + 1 ? static_cast<unsigned>(ell) : d + 1;
      const auto expected = make_rational(1, pow(BigInt(static_cast<unsigned long>(ell)), e));
      const unsigned degs[] = {d};
      if (model::c_ell(ell, degs) != expected) {
        o.pass = false;
        o.detail += " ell=" + std::to_string(ell) + " d=" + std::to_string(d);
      }
      ++checked;
    }
  o.detail = std::to_string(checked) + " (ell, d) pairs" + (o.pass ? " exact" : ", mismatches:" + o.detail);
  return o;
}

// Criterion 4: exhaustive Bouniakowsky proportions against the density constants.
Outcome density() {
  const double six_over_pi2 = 6.0 / (std::numbers::pi * std::numbers::pi);
  poly::CoeffBox b1;
  b1.degrees = {1};
  b1.height = 300;
  const auto p1 = series::schinzel_proportion(b1);
  poly::CoeffBox b2;
  b2.degrees = {2};
  b2.height = 60;
  const auto p2 = series::schinzel_proportion(b2);
  const unsigned two[] = {2};
  const double c2 = series::schinzel_density(two).product.value;
  const double e1 = std::abs(p1.fraction() - six_over_pi2) / six_over_pi2;
  const double e2 = std::abs(p2.fraction() - c2) / c2;
  Outcome o;
  o.pass = e1 <= 0.02 && e2 <= 0.02;
  o.detail = "d=1 H=300: " + fmt(p1.fraction()) + " vs 6/pi^2=" + fmt(six_over_pi2) + " (rel " + fmt(e1, 3) +
             "); d=2 H=60: " + fmt(p2.fraction()) + " vs " + fmt(c2) + " (rel " + fmt(e2, 3) + ")";
  return o;
}

// Criterion 5: r_d and the lower bound.
Outcome section7_exact() {
  Outcome o;
  std::string rds;
  if (chatelet::rd_exact(2) != make_rational(19, 32)) o.pass = false;
  for (unsigned d = 3; d <= 8; ++d)
    if (chatelet::rd_exact(d) != make_rational(39, 64)) {
      o.pass = false;
      rds += " r_" + std::to_string(d) + "=" + to_string(chatelet::rd_exact(d));
    }
  double least = 1;
  for (unsigned d = 2; d <= 8; ++d) least = std::min(least, chatelet::lower_bound(d).lower);
  o.pass = o.pass && least > 0.56;
  o.detail = "r_2=" + to_string(chatelet::rd_exact(2)) + ", r_3..r_8=39/64" + rds +
             ", min lower bound over d=2..8 " + fmt(least);
  return o;
}

// Criterion 6: pair correlations, exhaustive.
Outcome pair_correlation() {
  const auto g12 = counting::pair_correlation(1500, 1, 1, 2);
  const auto g13 = counting::pair_correlation(1500, 1, 1, 3);
  const double h2 = 1500.0 * 1500.0;
  const double r12 = g12.exact / (2 * h2), r13 = g13.exact / (4 * h2);
  Outcome o;
  o.pass = g12.exhaustive && g13.exhaustive && r12 >= 0.85 && r12 <= 1.15 && r13 >= 0.85 && r13 <= 1.15;
  o.detail = "G_{1,2}/(2H^2)=" + fmt(r12) + ", G_{1,3}/(4H^2)=" + fmt(r13) + ", " + std::to_string(g12.terms) +
             " polynomials each";
  return o;
}

// Criterion 7: dispersion averages.
Outcome dispersion() {
  Outcome o;
  double last = HUGE_VAL;
  bool r2_le_v = true, decreasing = true;
  for (std::int64_t h : {200, 400, 800}) {
    poly::CoeffBox b;
    b.degrees = {1};
    b.height = h;
    const double x = std::pow(std::log(static_cast<double>(h)), 1.5);
    const auto r = counting::dispersion(b, x, counting::Mode::exhaustive, 0, 0);
    r2_le_v = r2_le_v && r.r * r.r <= r.v;
    decreasing = decreasing && r.r_over_x() < last;
    last = r.r_over_x();
    o.detail += "H=" + std::to_string(h) + ": x=" + fmt(x, 4) + " R=" + fmt(r.r, 4) + " V=" + fmt(r.v, 4) +
                " R/x=" + fmt(r.r_over_x(), 4) + "; ";
  }
  o.pass = r2_le_v && decreasing;
  o.detail += std::string("R^2<=V ") + (r2_le_v ? "yes" : "no") + ", R/x decreasing " + (decreasing ? "yes" : "no");
  return o;
}

bool oracle_solvable(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t r) {
  for (std::int64_t x = 0; x <= r; ++x)
    for (std::int64_t y = 0; y <= r; ++y) {
      if (x == 0 && y == 0) continue;
      const __int128 num = -(static_cast<__int128>(a) * x * x + static_cast<__int128>(b) * y * y);
      if (num % c) continue;
      const __int128 q = num / c;
      if (q < 0 || q > static_cast<__int128>(r) * r) continue;
      auto z = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(q))));
      while (static_cast<__int128>(z) * z > q) --z;
      while (static_cast<__int128>(z + 1) * (z + 1) <= q) ++z;
      if (static_cast<__int128>(z) * z == q && std::gcd(std::gcd(x, y), z) == 1) return true;
    }
  return false;
}

bool squarefree(std::int64_t v) {
  v = std::abs(v);
  for (std::int64_t d = 2; d * d <= v; ++d)
    if (v % (d * d) == 0) return false;
  return v != 0;
}

// Random spec with distinct odd primes below 500. Products of two
// coefficients stay below 500^2 so that, by Holzer's bound, the box
// |x|,|y|,|z| <= 500 holds a point whenever one exists.
conic::ConicSpec random_spec(Rng& rng, const std::vector<std::uint64_t>& primes) {
  static const std::int64_t small[] = {1, 1, 1, 2, 3, 5, 6, 7};
  while (true) {
    conic::ConicSpec s;
    for (auto& a : s.a) a = small[uniform_below(rng, 8)] * (uniform_below(rng, 2) ? 1 : -1);
    if (!squarefree(s.a[0] * s.a[1] * s.a[2])) continue;
    std::set<std::uint64_t> used;
    const unsigned sizes[3] = {1 + static_cast<unsigned>(uniform_below(rng, 2)),
                               1 + static_cast<unsigned>(uniform_below(rng, 2)),
                               static_cast<unsigned>(uniform_below(rng, 2))};
    for (std::size_t i = 0; i < 3; ++i)
      for (unsigned j = 0; j < sizes[i]; ++j) {
        std::uint64_t p;
        do p = primes[uniform_below(rng, primes.size())];
        while (used.count(p));
        used.insert(p);
        s.primes[i].push_back(p);
      }
    const double c0 = std::abs(s.coefficient(0).get_d()), c1 = std::abs(s.coefficient(1).get_d()),
                 c2 = std::abs(s.coefficient(2).get_d());
    if (c0 * c1 >= 250000 || c0 * c2 >= 250000 || c1 * c2 >= 250000) continue;
    return s;
  }
}

// Criterion 8: Q against brute force, solutions by substitution, identity (6.4).
Outcome conic_oracle() {
  Outcome o;
  Rng rng(2026);
  std::vector<std::uint64_t> primes;
  for (auto p : arith::primes_up_to(499))
    if (p > 2) primes.push_back(p);
  int checked = 0, agree = 0, verified = 0, solvable = 0, draws = 0;
  while (checked < 200) {
    ++draws;
    const auto s = random_spec(rng, primes);
    conic::QIndicator q;
    try {
      q = conic::q_indicator(s);
    } catch (const conic::HypothesisViolation&) {
      continue;  // outside the local filter
    }
    ++checked;
    const auto c0 = s.coefficient(0).get_si(), c1 = s.coefficient(1).get_si(), c2 = s.coefficient(2).get_si();
    const bool brute = oracle_solvable(c0, c1, c2, 500);
    agree += (q.value == 1) == brute;
    solvable += brute;
    const auto sol = conic::solve_conic(s);
    if (sol.solvable() == brute &&
        (!sol.point || conic::evaluate(s.coefficient(0), s.coefficient(1), s.coefficient(2), *sol.point) == 0))
      ++verified;
  }
  int exact = 0, qualifying = 0;
  Rng brng(2027);
  int bundles = 0;
  while (bundles < 20) {
    conic::ConicBundle b;
    for (auto& a : b.a) a = static_cast<std::int64_t>(uniform_below(brng, 15)) - 7;
    if (!b.a[0] || !b.a[1] || !b.a[2] || !squarefree(b.a[0] * b.a[1] * b.a[2])) continue;
    if ((b.a[0] > 0) == (b.a[1] > 0) && (b.a[1] > 0) == (b.a[2] > 0)) continue;
    std::vector<poly::IntPoly> ps;
    for (int i = 0; i < 2; ++i) {
      const std::int64_t lead = 1 + static_cast<std::int64_t>(uniform_below(brng, 6));
      const std::int64_t c0 = static_cast<std::int64_t>(uniform_below(brng, 21)) - 10;
      ps.emplace_back(std::vector<std::int64_t>{c0, lead});
    }
    b.polys = poly::PolyTuple(ps);
    b.groups = {1, 1, 0};
    const auto rep = conic::identity_check(b, 200);
    ++bundles;
    qualifying += static_cast<int>(rep.qualifying);
    exact += rep.exact && std::abs(rep.residual) <= 1e-9 * (1 + rep.theta);
  }
  o.pass = agree == 200 && verified == 200 && exact == 20 && qualifying > 0;
  o.detail = std::to_string(agree) + "/200 Q agree with brute force (" + std::to_string(solvable) + " solvable, " +
             std::to_string(draws) + " draws), " + std::to_string(verified) + "/200 solver outputs verified; " +
             "identity exact on " + std::to_string(exact) + "/20 bundles (" + std::to_string(qualifying) +
             " qualifying m)";
  return o;
}

// Criterion 9: sampled Chatelet solvability.
Outcome chatelet_proportion() {
  const auto r = chatelet::solvability_proportion(2, 100, 10'000, 2000, 7);
  Outcome o;
  o.pass = r.wilson_lower >= 0.56;
  o.detail = std::to_string(r.solvable) + "/2000 solvable, proportion " + fmt(r.proportion, 4) +
             ", one-sided 95% Wilson lower bound " + fmt(r.wilson_lower, 4);
  return o;
}

// Criterion 10: prime values for P = 1 mod 4 with small inputs.
Outcome prime_values() {
  poly::CoeffBox b;
  b.degrees = {2};
  b.height = 10'000;
  b.modulus = 4;
  b.residues = {{1}};
  b.anchor = 1;
  const auto r = counting::prime_value_fraction(b, 500, 1000, 11);
  Outcome o;
  o.pass = r.total == 1000 && r.fraction() >= 0.95;
  o.detail = std::to_string(r.hits) + "/" + std::to_string(r.total) + " sampled Schinzel polynomials with a prime" +
             " value at m <= 500 (" + std::to_string(r.rejected) + " non-Schinzel draws skipped)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"exact model identities", exact_model},
      {"joint distribution", joint_distribution},
      {"special values of c_ell", special_values},
      {"density", density},
      {"r_d and lower bound", section7_exact},
      {"pair correlation", pair_correlation},
      {"dispersion", dispersion, true},
      {"conic oracle equivalence", conic_oracle},
      {"Chatelet proportion", chatelet_proportion},
      {"prime values", prime_values},
  };
  std::set<int> only;
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--strict") {
      strict = true;
    } else {
      only.insert(std::stoi(argv[i]));
    }
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool counts = strict || !criteria[i].asymptotic;
    failed += !o.pass && counts;
    std::printf("%s criterion %d (%s): %s [%.1fs]%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].name.c_str(),
                o.detail.c_str(), secs, !o.pass && !counts ? " (asymptotic claim; see README)" : "");
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
