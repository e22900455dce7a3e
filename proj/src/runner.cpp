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

#include "schinzel/runner.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "schinzel/chatelet.hpp"
#include "schinzel/conic.hpp"
#include "schinzel/counting.hpp"
#include "schinzel/model.hpp"
#include "schinzel/poly.hpp"
#include "schinzel/series.hpp"

namespace schinzel::runner {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::int64_t parse_int(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9.2e18) return static_cast<std::int64_t>(d);
  } else if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size()) return out;
    // Accept exponent forms such as 1e6 when they are integral.
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size() && d == std::floor(d) && std::abs(d) < 9.2e18)
      return static_cast<std::int64_t>(d);
  }
  throw std::invalid_argument("'" + key + "' must be an integer");
}

double parse_real(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size() && std::isfinite(d)) return d;
  }
  throw std::invalid_argument("'" + key + "' must be a real number");
}

// Reads parameters, records the normalized echo, and rejects leftovers.
class Params {
 public:
  explicit Params(const json& raw) : raw_(raw) {
    if (!raw.is_object()) throw std::invalid_argument("config must be a JSON object");
  }

  bool has(const std::string& key) const { return raw_.contains(key); }

  std::int64_t i64(const std::string& key, std::optional<std::int64_t> def,
                   std::int64_t lo = std::numeric_limits<std::int64_t>::min(),
                   std::int64_t hi = std::numeric_limits<std::int64_t>::max()) {
    std::int64_t v;
    if (take(key)) {
      v = parse_int(raw_[key], key);
    } else if (def) {
      v = *def;
    } else {
      throw std::invalid_argument("missing '" + key + "'");
    }
    if (v < lo || v > hi)
      throw std::invalid_argument("'" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    echo[key] = v;
    return v;
  }

  std::uint64_t u64(const std::string& key, std::optional<std::uint64_t> def, std::uint64_t lo = 0) {
    if (has(key) && raw_[key].is_string()) {
      // Seeds use the full 64-bit range.
      const auto s = raw_[key].get<std::string>();
      std::uint64_t out = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec == std::errc() && ptr == s.data() + s.size()) {
        take(key);
        if (out < lo) throw std::invalid_argument("'" + key + "' must be >= " + std::to_string(lo));
        echo[key] = out;
        return out;
      }
    }
    if (has(key) && raw_[key].is_number_unsigned()) {
      take(key);
      const auto out = raw_[key].get<std::uint64_t>();
      if (out < lo) throw std::invalid_argument("'" + key + "' must be >= " + std::to_string(lo));
      echo[key] = out;
      return out;
    }
    const auto v = i64(key, def ? std::optional<std::int64_t>(static_cast<std::int64_t>(*def)) : std::nullopt,
                       static_cast<std::int64_t>(lo));
    return static_cast<std::uint64_t>(v);
  }

  double real(const std::string& key, std::optional<double> def, double lo = -HUGE_VAL) {
    double v;
    if (take(key)) {
      v = parse_real(raw_[key], key);
    } else if (def) {
      v = *def;
    } else {
      throw std::invalid_argument("missing '" + key + "'");
    }
    if (!(v >= lo)) throw std::invalid_argument("'" + key + "' must be >= " + format_double(lo));
    echo[key] = v;
    return v;
  }

  std::string choice(const std::string& key, const std::string& def, const std::set<std::string>& allowed) {
    std::string v = def;
    if (take(key)) {
      if (!raw_[key].is_string()) throw std::invalid_argument("'" + key + "' must be a string");
      v = raw_[key].get<std::string>();
    }
    if (!allowed.count(v)) throw std::invalid_argument("'" + key + "' has unknown value '" + v + "'");
    echo[key] = v;
    return v;
  }

  std::vector<std::int64_t> ints(const std::string& key, std::optional<std::vector<std::int64_t>> def,
                                 std::size_t min_len = 0, std::size_t max_len = SIZE_MAX) {
    std::vector<std::int64_t> v;
    if (take(key)) {
      v = int_array(raw_[key], key);
    } else if (def) {
      v = *def;
    } else {
      throw std::invalid_argument("missing '" + key + "'");
    }
    if (v.size() < min_len || v.size() > max_len)
      throw std::invalid_argument("'" + key + "' has the wrong number of entries");
    echo[key] = v;
    return v;
  }

  std::vector<std::vector<std::int64_t>> int_lists(const std::string& key,
                                                   std::optional<std::vector<std::vector<std::int64_t>>> def) {
    std::vector<std::vector<std::int64_t>> v;
    if (take(key)) {
      if (!raw_[key].is_array()) throw std::invalid_argument("'" + key + "' must be an array of arrays");
      for (const auto& row : raw_[key]) v.push_back(int_array(row, key));
    } else if (def) {
      v = *def;
    } else {
      throw std::invalid_argument("missing '" + key + "'");
    }
    echo[key] = v;
    return v;
  }

  std::vector<BigInt> big_ints(const std::string& key, std::size_t len) {
    if (!take(key)) throw std::invalid_argument("missing '" + key + "'");
    const auto& arr = raw_[key];
    if (!arr.is_array() || arr.size() != len)
      throw std::invalid_argument("'" + key + "' must hold " + std::to_string(len) + " integers");
    std::vector<BigInt> out;
    json e = json::array();
    for (const auto& x : arr) {
      std::string s = x.is_string() ? x.get<std::string>() : x.is_number_integer() ? x.dump() : "";
      BigInt b;
      if (s.empty() || b.set_str(s, 10) != 0) throw std::invalid_argument("'" + key + "' must hold integers");
      out.push_back(b);
      e.push_back(b.get_str());
    }
    echo[key] = e;
    return out;
  }

  std::vector<unsigned> degrees(std::optional<std::vector<std::int64_t>> def, std::size_t max_len = SIZE_MAX) {
    const auto raw = ints("degrees", std::move(def), 1, max_len);
    std::vector<unsigned> out;
    for (auto d : raw) {
      if (d < 1 || d > 64) throw std::invalid_argument("degrees must lie in [1, 64]");
      out.push_back(static_cast<unsigned>(d));
    }
    return out;
  }

  poly::PolyTuple polys(std::size_t min_len = 1, std::size_t max_len = SIZE_MAX) {
    const auto rows = int_lists("polys", std::nullopt);
    if (rows.size() < min_len || rows.size() > max_len)
      throw std::invalid_argument("'polys' has the wrong number of polynomials");
    std::vector<poly::IntPoly> ps;
    for (const auto& r : rows) ps.emplace_back(r);
    return poly::PolyTuple(std::move(ps));
  }

  poly::CoeffBox box(std::optional<std::int64_t> default_height, std::vector<std::int64_t> default_degrees = {1}) {
    poly::CoeffBox b;
    b.degrees = degrees(default_degrees);
    b.height = i64("height", default_height, 1);
    b.modulus = i64("modulus", 1, 1);
    b.residues = int_lists("residues", std::vector<std::vector<std::int64_t>>{});
    b.anchor = i64("anchor", 0);
    b.validate();
    return b;
  }

  void finish() const {
    for (const auto& [key, value] : raw_.items())
      if (!used_.count(key)) throw std::invalid_argument("unknown key '" + key + "' for this command");
  }

  json echo = json::object();

 private:
  bool take(const std::string& key) {
    used_.insert(key);
    return has(key);
  }

  static std::vector<std::int64_t> int_array(const json& v, const std::string& key) {
    if (!v.is_array()) throw std::invalid_argument("'" + key + "' must be an array");
    std::vector<std::int64_t> out;
    for (const auto& x : v) out.push_back(parse_int(x, key));
    return out;
  }

  const json& raw_;
  std::set<std::string> used_;
};

struct Context {
  Params& p;
  const Budget& budget;
  unsigned threads;
  json results = json::object();
  json provenance = json::object();
  std::vector<std::string> header{};
  std::vector<std::vector<std::string>> rows{};
};

json density_json(const series::DensityConstant& c) {
  return {{"value", c.value}, {"lower", c.lower}, {"upper", c.upper},
          {"tail_bound", c.tail_bound}, {"truncation", c.truncation}};
}

json hits_json(const std::vector<std::int64_t>& hits) { return hits; }

void single_column(Context& ctx, const std::string& name, const std::vector<std::int64_t>& values) {
  ctx.header = {name};
  for (auto v : values) ctx.rows.push_back({std::to_string(v)});
}

void run_density(Context& ctx) {
  auto& p = ctx.p;
  const auto degrees = p.degrees(std::vector<std::int64_t>{1});
  const auto modulus = p.i64("modulus", 1, 1);
  const auto truncation = p.u64("truncation", 1'000'000, 10);
  std::optional<poly::CoeffBox> box;
  if (p.has("height")) {
    poly::CoeffBox b;
    b.degrees = degrees;
    b.modulus = modulus;
    b.height = p.i64("height", std::nullopt, 1);
    b.residues = p.int_lists("residues", std::vector<std::vector<std::int64_t>>{});
    b.anchor = p.i64("anchor", 0);
    b.validate();
    box = b;
  }
  p.finish();
  const auto d = series::schinzel_density(degrees, modulus, truncation);
  ctx.results["product"] = density_json(d.product);
  ctx.results["count_constant"] = d.count_constant;
  ctx.provenance["truncation_tail"] = d.product.tail_bound;
  if (box) {
    const auto e = series::schinzel_proportion(*box, ctx.budget, ctx.threads);
    ctx.results["empirical"] = {{"hits", e.hits},
                                {"total", e.total},
                                {"fraction", e.fraction()},
                                {"deviation", e.fraction() - d.product.value}};
  }
}

void run_series(Context& ctx) {
  auto& p = ctx.p;
  const auto tuple = p.polys();
  const double x = p.real("x", std::nullopt, 1.0);
  const auto anchor = p.i64("anchor", 0);
  const auto modulus = p.i64("modulus", 1, 1);
  p.finish();
  const auto s = series::singular_series(tuple, x, anchor, modulus);
  ctx.results["value"] = s.value;
  ctx.results["exact_part"] = to_string(s.exact_part);
  ctx.results["prefactor"] = to_string(s.prefactor);
  ctx.results["cutoff"] = s.cutoff;
  ctx.results["gcd_indicator"] = s.gcd_indicator;
  ctx.results["schinzel"] = poly::is_schinzel(tuple, ctx.budget).holds;
  json floor = nullptr;
  if (s.gcd_indicator && ctx.results["schinzel"].get<bool>() && x > std::exp(1.0) * std::exp(1.0)) {
    const auto f = series::series_floor_diag(tuple, x, anchor, modulus);
    floor = {{"scaled", f.scaled}, {"exponent", f.exponent}, {"loglog", f.loglog}};
  }
  ctx.results["floor"] = floor;
}

void run_theta(Context& ctx) {
  auto& p = ctx.p;
  const auto tuple = p.polys();
  const double x = p.real("x", std::nullopt, 1.0);
  const auto anchor = p.i64("anchor", 0);
  const auto modulus = p.i64("modulus", 1, 1);
  p.finish();
  const auto t = counting::theta(tuple, x, anchor, modulus);
  const auto s = series::singular_series(tuple, x, anchor, modulus);
  ctx.results["theta"] = t.value;
  ctx.results["hits"] = hits_json(t.hits);
  ctx.results["count"] = t.hits.size();
  ctx.results["series"] = s.value;
  ctx.results["predicted"] = s.value * x;
  ctx.provenance["probable_prime"] = t.probable;
  single_column(ctx, "m", t.hits);
}

void run_least_prime(Context& ctx) {
  auto& p = ctx.p;
  const auto mode = p.choice("mode", p.has("polys") ? "single" : "fraction", {"single", "linnik", "fraction"});
  if (mode == "single") {
    const auto tuple = p.polys();
    const double c = p.real("c", 2.0, 0.0);
    const auto anchor = p.i64("anchor", 0);
    const auto modulus = p.i64("modulus", 1, 1);
    const auto bound = p.i64("bound", 1'000'000, 1);
    p.finish();
    const auto s = counting::least_prime_inputs(tuple, c, anchor, modulus);
    const auto first = counting::first_prime_input(tuple, bound, anchor, modulus);
    ctx.results["bound_c"] = s.bound;
    ctx.results["hits"] = hits_json(s.hits);
    ctx.results["count"] = s.hits.size();
    ctx.results["first_prime_input"] = first ? json(*first) : json(nullptr);
    single_column(ctx, "m", s.hits);
  } else if (mode == "linnik") {
    const auto degrees = p.degrees(std::vector<std::int64_t>{1}, 1);
    const auto height = p.i64("height", std::nullopt, 3);
    const auto samples = p.u64("samples", 100, 1);
    const double eps = p.real("epsilon", 0.5, 0.0);
    const auto seed = p.u64("seed", 1);
    const auto cap = p.i64("bound", 1'000'000, 1);
    p.finish();
    const auto r = counting::linnik_experiment(degrees[0], height, samples, eps, seed, cap, ctx.threads);
    ctx.results["fraction_within"] = r.fraction;
    ctx.results["rejected"] = r.rejected;
    ctx.results["samples"] = r.samples.size();
    ctx.header = {"poly", "m", "least_prime", "bound", "within"};
    for (const auto& s : r.samples)
      ctx.rows.push_back({s.poly.to_string(), s.m ? std::to_string(*s.m) : "", s.m ? s.least_prime.get_str() : "",
                          format_double(s.bound), s.within ? "1" : "0"});
  } else {
    const auto box = p.box(std::nullopt);
    const auto bound = p.i64("bound", 500, 1);
    const auto samples = p.u64("samples", 1000, 1);
    const auto seed = p.u64("seed", 1);
    p.finish();
    const auto r = counting::prime_value_fraction(box, bound, samples, seed, ctx.threads);
    const auto [lo, hi] = chatelet::wilson_interval(r.hits, r.total);
    ctx.results["hits"] = r.hits;
    ctx.results["total"] = r.total;
    ctx.results["rejected"] = r.rejected;
    ctx.results["fraction"] = r.fraction();
    ctx.results["wilson_lower"] = lo;
    ctx.results["wilson_upper"] = hi;
  }
}

void run_pair_corr(Context& ctx) {
  auto& p = ctx.p;
  const auto height = p.i64("height", std::nullopt, 1);
  const auto degrees = p.degrees(std::vector<std::int64_t>{1}, 1);
  const auto k = p.i64("k", 1, 1);
  const auto m = p.i64("m", 2, 1);
  const auto samples = p.u64("samples", 1'000'000, 1);
  const auto seed = p.u64("seed", 1);
  p.finish();
  const auto r = counting::pair_correlation(height, degrees[0], k, m, ctx.budget, ctx.threads, samples, seed);
  ctx.results["value"] = r.exact;
  ctx.results["positive_only"] = r.positive_only;
  ctx.results["main_term"] = r.main_term;
  ctx.results["ratio"] = r.ratio();
  ctx.results["exhaustive"] = r.exhaustive;
  ctx.results["terms"] = r.terms;
  ctx.results["std_error"] = r.std_error;
  ctx.provenance["sampled"] = !r.exhaustive;
}

void run_dispersion(Context& ctx) {
  auto& p = ctx.p;
  const auto box = p.box(std::nullopt);
  const double x = p.real("x", std::pow(std::log(static_cast<double>(box.height)), 1.5), 3.0);
  const auto mode = p.choice("mode", "exhaustive", {"exhaustive", "sampled"});
  std::uint64_t samples = 0, seed = 1;
  if (mode == "sampled") {
    samples = p.u64("samples", 10'000, 100);
    seed = p.u64("seed", 1);
  }
  p.finish();
  const auto r = counting::dispersion(box, x, mode == "sampled" ? counting::Mode::sampled : counting::Mode::exhaustive,
                                      samples, seed, ctx.budget, ctx.threads);
  ctx.results["tuples"] = r.tuples;
  ctx.results["r"] = r.r;
  ctx.results["v"] = r.v;
  ctx.results["r_over_x"] = r.r_over_x();
  ctx.results["r_ratio"] = r.r_ratio();
  ctx.results["r_squared_le_v"] = r.r * r.r <= r.v;
  ctx.provenance["sampled"] = mode == "sampled";
}

json check_json(const model::MomentCheck& c) {
  return {{"exhaustive", to_string(c.exhaustive)}, {"closed", to_string(c.closed)}, {"exact", c.exact()}};
}

void run_model_verify(Context& ctx) {
  auto& p = ctx.p;
  model::OmegaSpec spec;
  spec.ell = p.u64("ell", std::nullopt, 2);
  spec.degrees = p.degrees(std::nullopt);
  const auto m = p.u64("m", 0);
  p.finish();
  spec.validate();
  if (m >= spec.ell) throw std::invalid_argument("'m' must be a residue mod ell");
  const auto r = model::verify_moments(spec, m, ctx.budget, ctx.threads);
  const auto t = model::euler_factor_table(spec);
  ctx.results["tuples"] = r.tuples;
  ctx.results["checks"] = {{"first_moment", check_json(r.first)},
                           {"second_moment", check_json(r.second)},
                           {"conditioned_mean", check_json(r.conditioned)},
                           {"c_ell", check_json(r.c)}};
  json g = json::array();
  for (const auto& row : t.g) {
    json jr = json::array();
    for (const auto& q : row) jr.push_back(to_string(q));
    g.push_back(jr);
  }
  ctx.results["table"] = {{"c_ell", to_string(t.c)}, {"gamma_n", to_string(t.gamma_n)}, {"g", g}};
  ctx.results["all_exact"] = r.all_exact();
  ctx.header = {"check", "exhaustive", "closed", "exact"};
  for (const auto& [name, c] : std::vector<std::pair<std::string, const model::MomentCheck*>>{
           {"first_moment", &r.first}, {"second_moment", &r.second},
           {"conditioned_mean", &r.conditioned}, {"c_ell", &r.c}})
    ctx.rows.push_back({name, to_string(c->exhaustive), to_string(c->closed), c->exact() ? "1" : "0"});
  if (!r.all_exact()) throw InvariantViolation("model moments disagree with their closed forms");
}

std::array<std::int64_t, 3> three(const std::vector<std::int64_t>& v) { return {v[0], v[1], v[2]}; }

void run_conic(Context& ctx) {
  auto& p = ctx.p;
  const auto radius = p.i64("bound", conic::kDefaultSearchRadius, 0, 3'000'000);
  if (p.has("coeffs")) {
    const auto c = p.big_ints("coeffs", 3);
    p.finish();
    const auto s = conic::solve_conic(c[0], c[1], c[2], {}, ctx.budget, radius);
    ctx.results = conic::to_json(s);
    return;
  }
  conic::ConicSpec spec;
  spec.a = three(p.ints("a", std::vector<std::int64_t>{1, 1, -1}, 3, 3));
  const auto primes = p.int_lists("primes", std::nullopt);
  if (primes.size() != 3) throw std::invalid_argument("'primes' must hold three lists");
  for (std::size_t i = 0; i < 3; ++i)
    for (auto q : primes[i]) {
      if (q < 2) throw std::invalid_argument("'primes' entries must be primes");
      spec.primes[i].push_back(static_cast<std::uint64_t>(q));
    }
  p.finish();
  spec.validate(ctx.budget);
  const auto s = conic::solve_conic(spec, ctx.budget, radius);
  ctx.results = conic::to_json(s);
  try {
    const auto q = conic::q_indicator(spec, ctx.budget);
    ctx.results["q"] = {{"value", q.value}, {"numerator", q.numerator}, {"symbols", q.symbols}};
    if ((q.value == 1) != s.solvable()) throw InvariantViolation("Q indicator disagrees with the conic solver");
  } catch (const conic::HypothesisViolation& e) {
    ctx.results["q"] = {{"hypothesis", to_string(e.which())}};
  }
}

void run_bundle(Context& ctx) {
  auto& p = ctx.p;
  conic::ConicBundle b;
  b.a = three(p.ints("a", std::vector<std::int64_t>{1, 1, -1}, 3, 3));
  b.polys = p.polys();
  std::optional<std::vector<std::int64_t>> def_groups;
  if (b.polys.size() == 2) def_groups = std::vector<std::int64_t>{1, 1, 0};
  const auto g = p.ints("groups", def_groups, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    if (g[i] < 0) throw std::invalid_argument("'groups' entries must be >= 0");
    b.groups[i] = static_cast<unsigned>(g[i]);
  }
  const auto anchor = p.i64("anchor", 0);
  const auto modulus = p.i64("modulus", 1, 1);
  const auto bound = p.i64("bound", 1000, 1);
  std::optional<double> x;
  if (p.has("x")) x = p.real("x", std::nullopt, 1.0);
  p.finish();
  b.validate();
  const auto r = conic::bundle_search(b, anchor, modulus, bound, ctx.budget);
  ctx.results["m"] = r.m ? json(*r.m) : json(nullptr);
  ctx.results["point"] = r.point ? conic::to_json(*r.point) : json(nullptr);
  ctx.results["attempts"] = r.attempts.size();
  ctx.header = {"m", "reason"};
  for (const auto& a : r.attempts) ctx.rows.push_back({std::to_string(a.m), a.reason});
  if (x) {
    const auto id = conic::identity_check(b, *x, anchor, modulus, ctx.budget);
    ctx.results["identity"] = {{"qualifying", id.qualifying}, {"excluded", id.excluded},
                               {"subset_terms", id.subset_terms}, {"c_value", id.c_value},
                               {"theta", id.theta}, {"t_sum", id.t_sum},
                               {"residual", id.residual}, {"exact", id.exact},
                               {"failures", id.failures}};
    if (!id.exact) throw InvariantViolation("counting identity fails at m = " + std::to_string(id.failures.front()));
  }
}

void run_chatelet(Context& ctx) {
  auto& p = ctx.p;
  chatelet::ChateletSpec spec;
  spec.a = p.i64("a", 1, 1);
  spec.f = p.polys(1, 1)[0];
  spec.anchor = p.i64("anchor", 0);
  spec.modulus = p.i64("modulus", 1, 1);
  const auto bound = p.i64("bound", 10'000, 1);
  const auto path = p.choice("path", "full", {"fast", "full"});
  p.finish();
  const auto r = chatelet::solve_chatelet(spec, bound, path == "fast" ? chatelet::Path::fast : chatelet::Path::full,
                                          true, ctx.budget);
  ctx.results["m"] = r.m ? json(*r.m) : json(nullptr);
  ctx.results["x"] = r.m ? json(r.rep.x) : json(nullptr);
  ctx.results["y"] = r.m ? json(r.rep.y) : json(nullptr);
  ctx.results["fast"] = r.m ? json(r.rep.fast) : json(nullptr);
  ctx.results["scanned"] = r.scanned;
  ctx.provenance["best_effort"] = r.best_effort;
  ctx.header = {"m", "reason"};
  for (const auto& e : r.log) ctx.rows.push_back({std::to_string(e.m), e.reason});
}

void run_prob(Context& ctx) {
  auto& p = ctx.p;
  if (p.has("samples")) {
    const auto degrees = p.degrees(std::vector<std::int64_t>{2}, 1);
    const auto height = p.i64("height", 100, 1);
    const auto bound = p.i64("bound", 10'000, 1);
    const auto samples = p.u64("samples", std::nullopt, 1);
    const auto seed = p.u64("seed", 1);
    const auto truncation = p.u64("truncation", 1'000'000, 10);
    p.finish();
    const auto r = chatelet::solvability_proportion(degrees[0], height, bound, samples, seed, ctx.threads, ctx.budget);
    const auto t = chatelet::lower_bound(std::max(2u, degrees[0]), truncation, ctx.budget);
    ctx.results["solvable"] = r.solvable;
    ctx.results["samples"] = r.samples.size();
    ctx.results["proportion"] = r.proportion;
    ctx.results["wilson_lower"] = r.wilson_lower;
    ctx.results["wilson_upper"] = r.wilson_upper;
    ctx.results["lower_bound"] = t.value;
    ctx.results["wilson_lower_ge_0_56"] = r.wilson_lower >= 0.56;
    ctx.provenance["truncation_tail"] = t.product.tail_bound;
    ctx.header = {"f", "m", "x", "y"};
    for (const auto& s : r.samples)
      ctx.rows.push_back({s.f.to_string(), s.m ? std::to_string(*s.m) : "", s.m ? std::to_string(s.rep.x) : "",
                          s.m ? std::to_string(s.rep.y) : ""});
    return;
  }
  const auto d = p.i64("rd", 2, 2, 1000);
  const auto truncation = p.u64("truncation", 1'000'000, 10);
  p.finish();
  const auto t = chatelet::lower_bound(static_cast<unsigned>(d), truncation, ctx.budget);
  ctx.results["r_d"] = to_string(t.r_d);
  ctx.results["rd_enumerated"] = t.rd_enumerated;
  ctx.results["product"] = density_json(t.product);
  ctx.results["lower_bound"] = {{"value", t.value}, {"lower", t.lower}, {"upper", t.upper}};
  ctx.provenance["truncation_tail"] = t.product.tail_bound;
}

const std::map<std::string, std::function<void(Context&)>>& handlers() {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"density", run_density},       {"series", run_series},         {"theta", run_theta},
      {"least-prime", run_least_prime}, {"pair-corr", run_pair_corr}, {"dispersion", run_dispersion},
      {"model-verify", run_model_verify}, {"conic", run_conic},       {"bundle", run_bundle},
      {"chatelet", run_chatelet},     {"prob", run_prob}};
  return table;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::vector<std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) joined += ';';
      joined += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
    }
    rows.push_back({prefix, joined});
  } else {
    rows.push_back({prefix, j.is_string() ? j.get<std::string>() : j.is_null() ? "" : j.dump()});
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list{"density",      "series", "theta",  "least-prime",
                                             "pair-corr",    "dispersion", "model-verify", "conic",
                                             "bundle",       "chatelet", "prob"};
  return list;
}

json stringify_numbers(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = stringify_numbers(v);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(stringify_numbers(v));
    return out;
  }
  if (j.is_number_float()) return format_double(j.get<double>());
  if (j.is_number()) return j.dump();
  return j;
}

Report run(const json& config, const Budget& budget, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  if (!config.is_object()) throw std::invalid_argument("config must be a JSON object");
  if (!config.contains("command") || !config["command"].is_string())
    throw std::invalid_argument("config needs a string 'command'");
  const auto command = config["command"].get<std::string>();
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw std::invalid_argument("unknown command '" + command + "'");
  json params = config;
  params.erase("command");
  Params p(params);
  const auto t = p.u64("threads", threads, 1);
  if (t > 1024) throw std::invalid_argument("'threads' must be <= 1024");
  Context ctx{p, budget, static_cast<unsigned>(t)};
  ctx.provenance["probable_prime"] = false;
  it->second(ctx);

  Report report;
  json echo = p.echo;
  echo["command"] = command;
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.payload = {{"schema", kSchema},
                    {"tool_version", kToolVersion},
                    {"config", stringify_numbers(echo)},
                    {"results", stringify_numbers(ctx.results)},
                    {"provenance", stringify_numbers(ctx.provenance)},
                    {"wall_time_seconds", format_double(wall)}};
  if (ctx.header.empty()) {
    report.csv_header = {"key", "value"};
    flatten(report.payload["results"], "", report.csv_rows);
  } else {
    report.csv_header = std::move(ctx.header);
    report.csv_rows = std::move(ctx.rows);
  }
  return report;
}

std::string to_json_text(const Report& report) { return report.payload.dump(2) + "\n"; }

std::string to_csv_text(const Report& report) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
    out << "\n";
  };
  line(report.csv_header);
  for (const auto& r : report.csv_rows) line(r);
  return out.str();
}

Budget parse_budget(const std::string& text, Budget base) {
  auto number = [&](const std::string& s) -> std::uint64_t {
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !(d >= 1) || d > 1.8e19 || d != std::floor(d))
      throw std::invalid_argument("bad budget value '" + s + "'");
    return static_cast<std::uint64_t>(d);
  };
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      base.factor_iterations = base.enumeration = number(item);
      continue;
    }
    const auto key = item.substr(0, eq);
    const auto v = number(item.substr(eq + 1));
    if (key == "factor") {
      base.factor_iterations = v;
    } else if (key == "enumeration") {
      base.enumeration = v;
    } else if (key == "trial") {
      base.trial_division_bound = v;
    } else {
      throw std::invalid_argument("unknown budget key '" + key + "'");
    }
  }
  return base;
}

}  // namespace schinzel::runner
