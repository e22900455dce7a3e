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

#include "schinzel/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "schinzel/arith.hpp"
#include "schinzel/parallel.hpp"
#include "schinzel/random.hpp"
#include "schinzel/series.hpp"

namespace schinzel::counting {

namespace {

double log_big(const BigInt& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

// First m >= 1 with m = anchor (mod modulus).
std::int64_t first_input(std::int64_t anchor, std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
  std::int64_t r = (anchor - 1) % modulus;
  if (r < 0) r += modulus;
  return 1 + r;
}

// Sum of prod log P_i(m) if all values are prime, else 0.
double prime_weight(const poly::PolyTuple& tuple, std::int64_t m, bool* probable) {
  double w = 1;
  for (const auto& p : tuple.polys()) {
    if (auto v = poly::eval_checked(p, m)) {
      if (!arith::is_prime(*v)) return 0;
      w *= std::log(static_cast<double>(*v));
    } else {
      const BigInt big = poly::eval(p, m);
      const auto verdict = arith::primality(big);
      if (verdict == arith::Primality::composite) return 0;
      if (verdict == arith::Primality::probable_prime && probable) *probable = true;
      w *= log_big(big);
    }
  }
  return w;
}

std::int64_t floor_bound(double x) {
  if (!(x >= 1)) return 0;
  if (x > 9e18) throw std::invalid_argument("x is too large to scan");
  return static_cast<std::int64_t>(std::floor(x));
}

bool gcd_admissible(const poly::CoeffBox& box) {
  if (box.modulus == 1) return true;
  const auto m = static_cast<std::uint64_t>(box.modulus);
  unsigned __int128 prod = 1;
  for (std::size_t i = 0; i < box.degrees.size(); ++i) {
    std::vector<std::int64_t> q(box.degrees[i] + 1);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] = box.residue(i, j);
    // Q_i may have a zero top coefficient, so evaluate by hand.
    unsigned __int128 acc = 0;
    std::int64_t n0 = box.anchor % box.modulus;
    if (n0 < 0) n0 += box.modulus;
    for (std::size_t j = q.size(); j-- > 0;) {
      std::int64_t c = q[j] % box.modulus;
      if (c < 0) c += box.modulus;
      acc = (acc * static_cast<std::uint64_t>(n0) + static_cast<std::uint64_t>(c)) % m;
    }
    prod = prod * acc % m;
  }
  return std::gcd(static_cast<std::uint64_t>(prod), m) == 1;
}

}  // namespace

bool all_prime_at(const poly::PolyTuple& tuple, std::int64_t m, bool* probable) {
  return prime_weight(tuple, m, probable) > 0;
}

ThetaValue theta(const poly::PolyTuple& tuple, double x, std::int64_t anchor, std::int64_t modulus) {
  ThetaValue t;
  t.x = x;
  t.anchor = anchor;
  t.modulus = modulus;
  const std::int64_t last = floor_bound(x);
  for (std::int64_t m = first_input(anchor, modulus); m <= last; m += modulus) {
    const double w = prime_weight(tuple, m, &t.probable);
    if (w > 0) {
      t.value += w;
      t.hits.push_back(m);
    }
  }
  return t;
}

double theta_value(const poly::PolyTuple& tuple, double x, std::int64_t anchor, std::int64_t modulus) {
  double value = 0;
  const std::int64_t last = floor_bound(x);
  for (std::int64_t m = first_input(anchor, modulus); m <= last; m += modulus)
    value += prime_weight(tuple, m, nullptr);
  return value;
}

LeastPrimeInputs least_prime_inputs(const poly::PolyTuple& tuple, double c, std::int64_t anchor,
                                    std::int64_t modulus) {
  if (tuple.height() < 3) throw std::invalid_argument("least_prime_inputs needs |P| >= 3");
  if (!(c > 0)) throw std::invalid_argument("least_prime_inputs needs C > 0");
  LeastPrimeInputs out;
  out.bound = std::pow(std::log(static_cast<double>(tuple.height())), c);
  out.hits = theta(tuple, out.bound, anchor, modulus).hits;
  return out;
}

std::optional<std::int64_t> first_prime_input(const poly::PolyTuple& tuple, std::int64_t m_bound,
                                              std::int64_t anchor, std::int64_t modulus) {
  for (std::int64_t m = first_input(anchor, modulus); m <= m_bound; m += modulus)
    if (all_prime_at(tuple, m)) return m;
  return std::nullopt;
}

poly::PolyTuple sample_schinzel(const poly::BoxEnumerator& box, Rng& rng, std::uint64_t& rejected,
                                std::uint64_t max_draws) {
  for (std::uint64_t draw = 0; draw < max_draws; ++draw) {
    auto t = poly::sample_one(box, rng);
    if (poly::is_schinzel(t).holds) return t;
    ++rejected;
  }
  throw BudgetExceeded("no Schinzel tuple found in " + std::to_string(max_draws) + " draws");
}

namespace {

// Inputs m beyond this are past every critical point of P, so P increases.
std::int64_t increasing_from(const poly::IntPoly& p) {
  const unsigned d = p.degree();
  if (d <= 1) return 1;
  double worst = 0;
  for (unsigned i = 1; i < d; ++i)
    worst = std::max(worst, std::abs(static_cast<double>(i) * static_cast<double>(p[i])) /
                                (static_cast<double>(d) * static_cast<double>(p.leading())));
  return static_cast<std::int64_t>(std::ceil(1 + worst)) + 1;
}

}  // namespace

LinnikReport linnik_experiment(unsigned d, std::int64_t height, std::size_t samples, double epsilon,
                               std::uint64_t seed, std::int64_t scan_cap, unsigned threads) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be > 0");
  const poly::BoxEnumerator box(poly::CoeffBox{{d}, height, 1, {}, 0});
  struct Part {
    std::vector<LinnikSample> samples;
    std::uint64_t rejected = 0;
  };
  auto parts = run_shards<Part>(kShardCount, threads, [&](std::size_t shard) {
    Part part;
    const auto range = shard_range(samples, shard, kShardCount);
    for (std::uint64_t i = range.begin; i < range.end; ++i) {
      Rng rng(sub_seed(seed, i));
      const auto tuple = sample_schinzel(box, rng, part.rejected);
      const auto& p = tuple[0];
      LinnikSample s{p, std::nullopt, 0, 0, false};
      const std::int64_t rising = increasing_from(p);
      for (std::int64_t m = 1; m <= scan_cap; ++m) {
        const BigInt v = poly::eval(p, m);
        if (s.m && m >= rising && v > s.least_prime) break;
        if ((!s.m || v < s.least_prime) && arith::primality(v) != arith::Primality::composite) {
          s.m = m;
          s.least_prime = v;
        }
      }
      const double h = static_cast<double>(p.height());
      s.bound = h * std::pow(std::log(h), d + epsilon);
      s.within = s.m && s.least_prime.get_d() <= s.bound;
      part.samples.push_back(std::move(s));
    }
    return part;
  });
  LinnikReport r{d, height, epsilon, seed, scan_cap, {}, 0, 0};
  std::uint64_t within = 0;
  for (auto& part : parts) {
    r.rejected += part.rejected;
    for (auto& s : part.samples) {
      within += s.within;
      r.samples.push_back(std::move(s));
    }
  }
  r.fraction = samples ? static_cast<double>(within) / static_cast<double>(samples) : 0.0;
  return r;
}

double pair_main_term(std::int64_t height, unsigned degree, std::int64_t k, std::int64_t m) {
  if (k == m) throw std::invalid_argument("pair correlation needs k != m");
  double main = std::pow(2.0, degree) * std::pow(static_cast<double>(height), degree + 1.0);
  std::uint64_t diff = static_cast<std::uint64_t>(k > m ? k - m : m - k);
  for (const auto& pp : arith::factorize(diff).factors) {
    const double p = static_cast<double>(pp.prime);
    main *= p / (p - 1);
  }
  return main;
}

namespace {

class MangoldtTable {
 public:
  explicit MangoldtTable(std::uint64_t limit) {
    if (limit > (1u << 23)) return;  // fall back to direct evaluation
    table_.assign(limit + 1, 0.0);
    for (auto p : arith::primes_up_to(limit)) {
      const double lp = std::log(static_cast<double>(p));
      for (std::uint64_t q = p; q <= limit; q *= p) {
        table_[q] = lp;
        if (q > limit / p) break;
      }
    }
  }
  // Lambda(|n|).
  double operator()(std::int64_t n) const {
    if (n < 0) n = -n;
    if (n <= 1) return 0;
    if (static_cast<std::uint64_t>(n) < table_.size()) return table_[n];
    return arith::mangoldt(n);
  }

 private:
  std::vector<double> table_;
};

// k^i for i = 0..d, with an overflow guard on H * sum_i k^i.
std::vector<std::int64_t> powers(std::int64_t k, unsigned d, std::int64_t height) {
  std::vector<std::int64_t> out(d + 1);
  __int128 acc = 1, total = 0;
  for (unsigned i = 0; i <= d; ++i) {
    out[i] = static_cast<std::int64_t>(acc);
    total += acc;
    acc *= k;
    if (total * height > (static_cast<__int128>(1) << 62))
      throw std::invalid_argument("pair correlation values exceed 62 bits");
  }
  return out;
}

}  // namespace

PairCorrValue pair_correlation(std::int64_t height, unsigned degree, std::int64_t k, std::int64_t m,
                               const Budget& budget, unsigned threads, std::uint64_t samples, std::uint64_t seed) {
  if (k < 1 || m < 1 || k == m) throw std::invalid_argument("pair correlation needs k != m, both >= 1");
  if (height < 1 || degree < 1) throw std::invalid_argument("pair correlation needs H >= 1 and d >= 1");
  const auto pk = powers(k, degree, height);
  const auto pm = powers(m, degree, height);
  std::uint64_t limit = 0;
  for (unsigned i = 0; i <= degree; ++i)
    limit += static_cast<std::uint64_t>(height) * static_cast<std::uint64_t>(std::max(pk[i], pm[i]));
  const MangoldtTable lambda(limit);

  PairCorrValue out;
  out.height = height;
  out.degree = degree;
  out.k = k;
  out.m = m;
  out.main_term = pair_main_term(height, degree, k, m);
  const std::uint64_t width = static_cast<std::uint64_t>(2 * height + 1);
  unsigned __int128 lower_count = 1;
  for (unsigned i = 0; i < degree; ++i) lower_count *= width;
  const unsigned __int128 box_size = lower_count * static_cast<std::uint64_t>(height);

  if (box_size <= budget.enumeration) {
    const auto lc = static_cast<std::uint64_t>(lower_count);
    auto parts = run_shards<std::pair<double, double>>(kShardCount, threads, [&](std::size_t shard) {
      const auto range = shard_range(static_cast<std::uint64_t>(height), shard, kShardCount);
      double sum = 0, positive = 0;
      std::vector<std::int64_t> digit(degree);
      for (std::uint64_t lead = range.begin + 1; lead <= range.end; ++lead) {
        const auto c = static_cast<std::int64_t>(lead);
        std::int64_t vk = c * pk[degree], vm = c * pm[degree];
        for (unsigned i = 0; i < degree; ++i) {
          digit[i] = -height;
          vk -= height * pk[i];
          vm -= height * pm[i];
        }
        for (std::uint64_t idx = 0; idx < lc; ++idx) {
          const double term = lambda(vk) * lambda(vm);
          sum += term;
          if (vk > 0 && vm > 0) positive += term;
          for (unsigned i = 0; i < degree; ++i) {
            if (digit[i] < height) {
              ++digit[i];
              vk += pk[i];
              vm += pm[i];
              break;
            }
            digit[i] = -height;
            vk -= 2 * height * pk[i];
            vm -= 2 * height * pm[i];
          }
        }
      }
      return std::pair{sum, positive};
    });
    for (const auto& [s, pos] : parts) {
      out.exact += s;
      out.positive_only += pos;
    }
    out.terms = static_cast<std::uint64_t>(box_size);
    return out;
  }

  // Stratified by contiguous ranges of the leading coefficient, with samples
  // allocated in proportion to stratum size.
  out.exhaustive = false;
  out.seed = seed;
  const std::size_t strata = static_cast<std::size_t>(std::min<std::int64_t>(height, 64));
  struct Stratum {
    double estimate = 0;
    double positive = 0;
    double variance = 0;
    std::uint64_t drawn = 0;
  };
  auto parts = run_shards<Stratum>(strata, threads, [&](std::size_t h) {
    const auto range = shard_range(static_cast<std::uint64_t>(height), h, strata);
    const std::uint64_t leads = range.end - range.begin;
    const double size = static_cast<double>(leads) * static_cast<double>(lower_count);
    const std::uint64_t n_h = std::max<std::uint64_t>(2, samples * leads / static_cast<std::uint64_t>(height));
    Rng rng(sub_seed(seed, h));
    double sum = 0, sum_sq = 0, positive = 0;
    for (std::uint64_t s = 0; s < n_h; ++s) {
      const auto c = static_cast<std::int64_t>(range.begin + 1 + uniform_below(rng, leads));
      std::int64_t vk = c * pk[degree], vm = c * pm[degree];
      for (unsigned i = 0; i < degree; ++i) {
        const auto ci = static_cast<std::int64_t>(uniform_below(rng, width)) - height;
        vk += ci * pk[i];
        vm += ci * pm[i];
      }
      const double term = lambda(vk) * lambda(vm);
      sum += term;
      sum_sq += term * term;
      if (vk > 0 && vm > 0) positive += term;
    }
    const double mean = sum / static_cast<double>(n_h);
    const double var = std::max(0.0, (sum_sq - static_cast<double>(n_h) * mean * mean) / static_cast<double>(n_h - 1));
    return Stratum{size * mean, size * positive / static_cast<double>(n_h), size * size * var / static_cast<double>(n_h), n_h};
  });
  double variance = 0;
  for (const auto& s : parts) {
    out.exact += s.estimate;
    out.positive_only += s.positive;
    variance += s.variance;
    out.terms += s.drawn;
  }
  out.std_error = std::sqrt(variance);
  return out;
}

double DispersionReport::r_ratio() const { return r / (x / std::sqrt(std::log(x))); }

DispersionReport dispersion(const poly::CoeffBox& box, double x, Mode mode, std::uint64_t samples,
                            std::uint64_t seed, const Budget& budget, unsigned threads, bool keep_rows) {
  if (!(x >= 3)) throw std::invalid_argument("dispersion needs x >= 3");
  const poly::BoxEnumerator en(box);
  std::vector<poly::PolyTuple> drawn;
  std::uint64_t count = 0;
  if (mode == Mode::exhaustive) {
    if (en.size() > budget.enumeration)
      throw BudgetExceeded("box has " + std::to_string(en.size()) + " members, over the enumeration budget");
    count = en.size();
  } else {
    if (samples < 100) throw std::invalid_argument("sampled dispersion needs at least 100 samples");
    drawn = poly::sample_box(box, samples, seed);
    count = samples;
  }
  if (count == 0) throw std::invalid_argument("dispersion over an empty box");
  const auto primes = series::series_primes(x, box.modulus);

  struct Part {
    double abs_sum = 0;
    double sq_sum = 0;
    std::vector<DispersionRow> rows;
  };
  auto parts = run_shards<Part>(kShardCount, threads, [&](std::size_t shard) {
    Part part;
    const auto range = shard_range(count, shard, kShardCount);
    auto visit = [&](const poly::PolyTuple& t) {
      const double th = theta_value(t, x, box.anchor, box.modulus);
      const double s = series::singular_series_fast(t, primes, box.anchor, box.modulus);
      const double r = th - s * x;
      part.abs_sum += std::abs(r);
      part.sq_sum += r * r;
      if (keep_rows) part.rows.push_back({t, th, s, r});
    };
    if (mode == Mode::exhaustive)
      en.for_each(range.begin, range.end, visit);
    else
      for (std::uint64_t i = range.begin; i < range.end; ++i) visit(drawn[i]);
    return part;
  });
  DispersionReport rep;
  rep.height = box.height;
  rep.x = x;
  rep.mode = mode;
  rep.tuples = count;
  rep.seed = seed;
  double abs_sum = 0, sq_sum = 0;
  for (auto& part : parts) {
    abs_sum += part.abs_sum;
    sq_sum += part.sq_sum;
    for (auto& row : part.rows) rep.rows.push_back(std::move(row));
  }
  rep.r = abs_sum / static_cast<double>(count);
  rep.v = sq_sum / static_cast<double>(count);
  return rep;
}

namespace {

// Runs `test` on `samples` Schinzel tuples drawn with per-sample sub-seeds.
template <typename Test>
FractionReport schinzel_fraction(const poly::CoeffBox& box, std::uint64_t samples, std::uint64_t seed,
                                 unsigned threads, Test&& test) {
  const poly::BoxEnumerator en(box);
  if (en.size() == 0) throw std::invalid_argument("empty box");
  struct Part {
    std::uint64_t hits = 0;
    std::uint64_t rejected = 0;
  };
  auto parts = run_shards<Part>(kShardCount, threads, [&](std::size_t shard) {
    Part part;
    const auto range = shard_range(samples, shard, kShardCount);
    for (std::uint64_t i = range.begin; i < range.end; ++i) {
      Rng rng(sub_seed(seed, i));
      const auto t = sample_schinzel(en, rng, part.rejected);
      part.hits += test(t);
    }
    return part;
  });
  FractionReport r;
  r.total = samples;
  r.seed = seed;
  for (const auto& p : parts) {
    r.hits += p.hits;
    r.rejected += p.rejected;
  }
  return r;
}

}  // namespace

FractionReport bdh_exceptional_fraction(const poly::CoeffBox& box, double x, double c, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads) {
  if (!(c > 0 && c < 0.5)) throw std::invalid_argument("bdh_exceptional_fraction needs 0 < c < 1/2");
  if (!(x >= 3)) throw std::invalid_argument("bdh_exceptional_fraction needs x >= 3");
  const auto primes = series::series_primes(x, box.modulus);
  const double threshold = x / std::pow(std::log(x), c);
  return schinzel_fraction(box, samples, seed, threads, [&](const poly::PolyTuple& t) {
    const double r = theta_value(t, x, box.anchor, box.modulus) -
                     series::singular_series_fast(t, primes, box.anchor, box.modulus) * x;
    return std::abs(r) > threshold;
  });
}

FractionReport theorem_cool_fraction(const poly::CoeffBox& box, double a, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads) {
  if (!(a > 0)) throw std::invalid_argument("theorem_cool_fraction needs A > 0");
  const double n = static_cast<double>(box.degrees.size());
  return schinzel_fraction(box, samples, seed, threads, [&](const poly::PolyTuple& t) {
    const double lh = std::log(static_cast<double>(t.height()));
    const double bound = lh > 0 ? std::pow(lh, n + a) : 0.0;
    const double needed = lh > 0 ? std::pow(lh, a / 3) : 0.0;
    const std::int64_t last = floor_bound(bound);
    double found = 0;
    for (std::int64_t m = first_input(box.anchor, box.modulus); m <= last && found < needed; m += box.modulus)
      found += all_prime_at(t, m);
    return found >= needed;
  });
}

FractionReport prime_value_fraction(const poly::CoeffBox& box, std::int64_t m_bound, std::uint64_t samples,
                                    std::uint64_t seed, unsigned threads) {
  if (!gcd_admissible(box)) throw std::invalid_argument("prod Q_i(n_0) must be coprime to M");
  return schinzel_fraction(box, samples, seed, threads, [&](const poly::PolyTuple& t) {
    return first_prime_input(t, m_bound, box.anchor, box.modulus).has_value();
  });
}

}  // namespace schinzel::counting
