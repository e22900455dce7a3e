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

#include "schinzel/chatelet.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "schinzel/arith.hpp"
#include "schinzel/parallel.hpp"
#include "schinzel/random.hpp"

namespace schinzel::chatelet {

void ChateletSpec::validate() const {
  if (a < 1) throw std::invalid_argument("a must be >= 1");
  if (f.coeffs().empty()) throw std::invalid_argument("f must be nonzero");
  if (f.leading() <= 0) throw std::invalid_argument("f must have a positive leading coefficient");
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
}

bool class_number_one(std::int64_t a) { return a == 1 || a == 2 || a == 3 || a == 4 || a == 7; }

std::optional<Representation> represent_at(const ChateletSpec& spec, std::int64_t m, Path path, std::string* reason,
                                           const Budget& budget) {
  auto fail = [&](const char* why) -> std::optional<Representation> {
    if (reason) *reason = why;
    return std::nullopt;
  };
  const BigInt v = poly::eval(spec.f, m);
  if (v < 0) return fail("negative value");
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return fail("value exceeds 64 bits");
  const std::uint64_t n = mpz_get_ui(v.get_mpz_t());
  const auto a = static_cast<std::uint64_t>(spec.a);
  if (n >= 2 && arith::is_prime(n)) {
    if (auto r = arith::cornacchia(a, n)) {
      if (reason) *reason = "solved (fast path)";
      return Representation{r->first, r->second, true};
    }
    if (path == Path::fast || spec.a != 1) return fail("prime not represented");
  } else if (path == Path::fast || spec.a != 1) {
    return fail("not prime");
  }
  if (!arith::is_sum_of_two_squares(n, budget)) return fail("not a sum of two squares");
  auto r = arith::two_squares(n, budget);
  if (!r) throw InvariantViolation("two_squares disagrees with the sum of two squares criterion");
  if (r->first < r->second) std::swap(r->first, r->second);
  if (reason) *reason = "solved (full path)";
  return Representation{r->first, r->second, false};
}

ChateletResult solve_chatelet(const ChateletSpec& spec, std::int64_t m_bound, Path path, bool keep_log,
                              const Budget& budget) {
  spec.validate();
  ChateletResult out;
  out.best_effort = !class_number_one(spec.a);
  std::int64_t m = spec.anchor % spec.modulus;
  if (m < 1) m += spec.modulus;
  std::string reason;
  for (; m <= m_bound; m += spec.modulus) {
    ++out.scanned;
    auto rep = represent_at(spec, m, path, keep_log ? &reason : nullptr, budget);
    if (keep_log) out.log.push_back({m, reason});
    if (!rep) continue;
    const BigInt x(std::to_string(rep->x)), y(std::to_string(rep->y));
    const BigInt lhs = x * x + BigInt(static_cast<long>(spec.a)) * y * y;
    if (lhs != poly::eval(spec.f, m)) throw InvariantViolation("representation does not verify");
    out.m = m;
    out.rep = *rep;
    break;
  }
  return out;
}

Rational rd_exact(unsigned d, const Budget& budget) {
  if (d < 1 || d > 12) throw std::invalid_argument("rd_exact needs 1 <= d <= 12");
  const std::uint64_t total = std::uint64_t{1} << (2 * (d + 1));
  if (total > budget.enumeration)
    throw BudgetExceeded("4^" + std::to_string(d + 1) + " coefficient vectors exceed the enumeration budget");
  // pw[j][i] = j^i mod 4; vals[j] = f(j) mod 4 tracked as the odometer turns.
  std::array<std::array<unsigned, 13>, 4> pw{};
  for (unsigned j = 0; j < 4; ++j) {
    unsigned p = 1;
    for (unsigned i = 0; i <= d; ++i) {
      pw[j][i] = p;
      p = p * j % 4;
    }
  }
  std::array<unsigned, 13> c{};
  std::array<unsigned, 4> vals{};
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < total; ++k) {
    hits += (vals[0] == 1 || vals[1] == 1 || vals[2] == 1 || vals[3] == 1);
    unsigned i = 0;
    while (i <= d && c[i] == 3) {
      c[i] = 0;
      for (unsigned j = 0; j < 4; ++j) vals[j] = (vals[j] + pw[j][i]) % 4;  // -3 = +1 mod 4
      ++i;
    }
    if (i > d) break;
    ++c[i];
    for (unsigned j = 0; j < 4; ++j) vals[j] = (vals[j] + pw[j][i]) % 4;
  }
  return make_rational(BigInt(std::to_string(hits)), BigInt(std::to_string(total)));
}

ProbTable lower_bound(unsigned d, std::uint64_t truncation, const Budget& budget) {
  if (d < 2) throw std::invalid_argument("lower_bound needs d >= 2");
  ProbTable t;
  t.d = d;
  if (d <= 12 && (std::uint64_t{1} << (2 * (d + 1))) <= budget.enumeration) {
    t.r_d = rd_exact(d, budget);
    t.rd_enumerated = true;
  } else {
    t.r_d = make_rational(d >= 3 ? 39 : 38, 64);
  }
  t.product = series::section7_product(d, truncation);
  const double r = t.r_d.get_d();
  t.value = r * t.product.value;
  t.lower = r * t.product.lower;
  t.upper = r * t.product.upper;
  return t;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double centre = p + z2 / (2 * nn);
  const double spread = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
  const double den = 1 + z2 / nn;
  return {std::max(0.0, (centre - spread) / den), std::min(1.0, (centre + spread) / den)};
}

ProportionReport solvability_proportion(unsigned d, std::int64_t height, std::int64_t m_bound, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads, const Budget& budget) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  if (height < 1) throw std::invalid_argument("height must be >= 1");
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  const poly::BoxEnumerator box(poly::CoeffBox{{d}, height, 1, {}, 0});
  auto parts = run_shards<std::vector<SampleVerdict>>(kShardCount, threads, [&](std::size_t shard) {
    const auto r = shard_range(samples, shard, kShardCount);
    std::vector<SampleVerdict> out;
    for (std::uint64_t i = r.begin; i < r.end; ++i) {
      Rng rng(sub_seed(seed, i));
      ChateletSpec spec;
      spec.f = poly::sample_one(box, rng)[0];
      const auto res = solve_chatelet(spec, m_bound, Path::full, false, budget);
      out.push_back({spec.f, res.m, res.rep});
    }
    return out;
  });
  ProportionReport rep;
  rep.degree = d;
  rep.height = height;
  rep.m_bound = m_bound;
  rep.seed = seed;
  for (auto& part : parts)
    for (auto& s : part) {
      rep.solvable += s.m.has_value();
      rep.samples.push_back(std::move(s));
    }
  rep.proportion = static_cast<double>(rep.solvable) / static_cast<double>(samples);
  std::tie(rep.wilson_lower, rep.wilson_upper) = wilson_interval(rep.solvable, samples);
  return rep;
}

}  // namespace schinzel::chatelet
