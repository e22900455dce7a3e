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

#include "schinzel/model.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "schinzel/arith.hpp"
#include "schinzel/parallel.hpp"

namespace schinzel::model {

namespace {

BigInt big(std::uint64_t v) { return BigInt(std::to_string(v)); }

Rational inv_pow(std::uint64_t ell, unsigned e) { return make_rational(1, pow(big(ell), e)); }

}  // namespace

void OmegaSpec::validate() const {
  if (!arith::is_prime(ell)) throw std::invalid_argument("ell must be prime");
  if (degrees.empty()) throw std::invalid_argument("need at least one degree");
  for (auto d : degrees)
    if (d < 1) throw std::invalid_argument("degrees must be >= 1");
}

unsigned OmegaSpec::total_degree() const {
  unsigned d = 0;
  for (auto v : degrees) d += v;
  return d;
}

Rational g_factor(std::uint64_t ell, unsigned d, unsigned s) {
  Rational sum = 0;
  for (unsigned r = 0; r <= s; ++r) {
    Rational term = Rational(binomial(s, r)) * inv_pow(ell, std::min(r, d + 1));
    if (r % 2) sum -= term; else sum += term;
  }
  return sum;
}

Rational c_ell(std::uint64_t ell, std::span<const unsigned> degrees) {
  Rational sum = 0;
  for (unsigned s = 0; s <= ell; ++s) {
    Rational term = Rational(binomial(static_cast<unsigned>(ell), s));
    for (auto d : degrees) term *= g_factor(ell, d, s);
    if (s % 2) sum -= term; else sum += term;
  }
  return sum;
}

Rational one_minus_c_ell_large(std::uint64_t ell, std::span<const unsigned> degrees) {
  Rational prod = 1;
  for (auto d : degrees) prod *= 1 - inv_pow(ell, d + 1);
  return prod;
}

Rational gamma(std::uint64_t ell, unsigned n) {
  if (ell < 2) throw std::invalid_argument("gamma: ell must be >= 2");
  return 1 - inv_pow(ell, 1) + make_rational(pow(big(ell), n - 1), pow(big(ell - 1), n));
}

Rational joint_prob(const OmegaSpec& spec, const std::vector<bool>& gamma_bits) {
  spec.validate();
  if (gamma_bits.size() != spec.ell) throw std::invalid_argument("joint_prob: gamma must have ell entries");
  const unsigned ell = static_cast<unsigned>(spec.ell);
  const unsigned ones = static_cast<unsigned>(std::count(gamma_bits.begin(), gamma_bits.end(), true));
  // Subsets J containing every m with gamma_m = 1; the summand depends on #J only.
  Rational sum = 0;
  for (unsigned j = ones; j <= ell; ++j) {
    Rational term = Rational(binomial(ell - ones, j - ones));
    for (auto d : spec.degrees) term *= g_factor(spec.ell, d, j);
    if ((ell - j) % 2) sum -= term; else sum += term;
  }
  return ((ell - ones) % 2) ? Rational(-sum) : sum;
}

EulerFactorTable euler_factor_table(const OmegaSpec& spec) {
  spec.validate();
  EulerFactorTable t{spec.ell, spec.degrees, {}, c_ell(spec.ell, spec.degrees),
                     gamma(spec.ell, static_cast<unsigned>(spec.degrees.size()))};
  for (auto d : spec.degrees) {
    std::vector<Rational> row;
    for (unsigned s = 0; s <= spec.ell; ++s) row.push_back(g_factor(spec.ell, d, s));
    t.g.push_back(std::move(row));
  }
  return t;
}

Rational first_moment_closed(std::uint64_t ell, unsigned n) {
  return pow(Rational(1) - inv_pow(ell, 1), n);
}

Rational second_moment_closed(std::uint64_t ell, unsigned n) {
  const Rational q = Rational(1) - inv_pow(ell, 1);
  const Rational qn = pow(q, n);
  return qn * qn * (q + 1 / (Rational(big(ell)) * qn));
}

Rational conditioned_mean_closed(std::uint64_t ell, unsigned n) { return second_moment_closed(ell, n); }

namespace {

// Nonvanishing masks of every polynomial of degree <= d over F_ell, indexed
// by the coefficient vector read as a base-ell number (constant term last).
std::vector<std::uint64_t> poly_masks(std::uint64_t ell, unsigned d) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i <= d; ++i) count *= ell;
  std::vector<std::uint64_t> masks(count);
  std::vector<std::uint64_t> coeffs(d + 1);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = 0; i <= d; ++i) {
      coeffs[i] = rest % ell;
      rest /= ell;
    }
    std::uint64_t mask = 0;
    for (std::uint64_t s = 0; s < ell; ++s) {
      std::uint64_t acc = 0;
      for (unsigned i = d + 1; i-- > 0;) acc = (acc * s + coeffs[i]) % ell;
      if (acc != 0) mask |= std::uint64_t{1} << s;
    }
    masks[idx] = mask;
  }
  return masks;
}

}  // namespace

MaskHistogram MaskHistogram::enumerate(const OmegaSpec& spec, const Budget& budget, unsigned threads) {
  spec.validate();
  if (spec.ell > 61) throw std::invalid_argument("exhaustive enumeration needs ell <= 61");
  const std::uint64_t ell = spec.ell;
  unsigned __int128 total = 1;
  for (unsigned i = 0; i < spec.total_degree() + spec.degrees.size(); ++i) {
    total *= ell;
    if (total > budget.enumeration)
      throw BudgetExceeded("ell^(d+n) exceeds the enumeration budget of " + std::to_string(budget.enumeration));
  }
  std::vector<std::vector<std::uint64_t>> factor_masks;
  for (auto d : spec.degrees) factor_masks.push_back(poly_masks(ell, d));

  const std::uint64_t n_total = static_cast<std::uint64_t>(total);
  using Partial = std::unordered_map<std::uint64_t, std::uint64_t>;
  auto partials = run_shards<Partial>(kShardCount, threads, [&](std::size_t shard) {
    Partial counts;
    const auto range = shard_range(n_total, shard, kShardCount);
    if (range.begin == range.end) return counts;
    // Mixed-radix odometer over (P_1, ..., P_n), last factor fastest.
    const std::size_t n = factor_masks.size();
    std::vector<std::uint64_t> digit(n);
    std::uint64_t rest = range.begin;
    for (std::size_t k = n; k-- > 0;) {
      digit[k] = rest % factor_masks[k].size();
      rest /= factor_masks[k].size();
    }
    for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
      std::uint64_t mask = ~std::uint64_t{0};
      for (std::size_t k = 0; k < n; ++k) mask &= factor_masks[k][digit[k]];
      ++counts[mask & ((std::uint64_t{1} << ell) - 1)];
      for (std::size_t k = n; k-- > 0;) {
        if (++digit[k] < factor_masks[k].size()) break;
        digit[k] = 0;
      }
    }
    return counts;
  });
  std::map<std::uint64_t, std::uint64_t> merged;
  for (const auto& part : partials)
    for (const auto& [mask, count] : part) merged[mask] += count;

  MaskHistogram h;
  h.ell_ = ell;
  h.total_ = n_total;
  h.entries_.assign(merged.begin(), merged.end());
  return h;
}

Rational MaskHistogram::prob_mask(std::uint64_t mask) const {
  for (const auto& [m, c] : entries_)
    if (m == mask) return make_rational(big(c), big(total_));
  return 0;
}

Rational MaskHistogram::expect_product(std::uint64_t subset) const {
  BigInt hits = 0;
  for (const auto& [m, c] : entries_)
    if ((m & subset) == subset) hits += big(c);
  return make_rational(hits, big(total_));
}

Rational MaskHistogram::covariance(std::uint64_t k, std::uint64_t m) const {
  const std::uint64_t bk = std::uint64_t{1} << k, bm = std::uint64_t{1} << m;
  return expect_product(bk | bm) - expect_product(bk) * expect_product(bm);
}

Rational MaskHistogram::first_moment() const {
  // 1 - Z/ell = popcount(mask) / ell.
  BigInt sum = 0;
  for (const auto& [m, c] : entries_) sum += big(c) * std::popcount(m);
  return make_rational(sum, big(total_) * big(ell_));
}

Rational MaskHistogram::second_moment() const {
  BigInt sum = 0;
  for (const auto& [m, c] : entries_) {
    const long k = std::popcount(m);
    sum += big(c) * (k * k);
  }
  return make_rational(sum, big(total_) * big(ell_) * big(ell_));
}

Rational MaskHistogram::conditioned_mean(std::uint64_t m) const {
  const std::uint64_t bit = std::uint64_t{1} << (m % ell_);
  BigInt sum = 0;
  for (const auto& [mask, c] : entries_)
    if (mask & bit) sum += big(c) * std::popcount(mask);
  return make_rational(sum, big(total_) * big(ell_));
}

std::uint64_t MaskHistogram::count_t() const {
  std::uint64_t zero = 0;
  for (const auto& [m, c] : entries_)
    if (m == 0) zero = c;
  return total_ - zero;
}

MomentReport verify_moments(const OmegaSpec& spec, std::uint64_t m, const Budget& budget, unsigned threads) {
  const auto hist = MaskHistogram::enumerate(spec, budget, threads);
  const unsigned n = static_cast<unsigned>(spec.degrees.size());
  MomentReport r;
  r.spec = spec;
  r.m = m;
  r.tuples = hist.total();
  r.first = {hist.first_moment(), first_moment_closed(spec.ell, n)};
  r.second = {hist.second_moment(), second_moment_closed(spec.ell, n)};
  r.conditioned = {hist.conditioned_mean(m), conditioned_mean_closed(spec.ell, n)};
  r.c = {1 - make_rational(big(hist.count_t()), big(hist.total())), c_ell(spec.ell, spec.degrees)};
  return r;
}

}  // namespace schinzel::model
