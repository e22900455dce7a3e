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

#include "schinzel_lab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "schinzel/arith.hpp"
#include "schinzel/chatelet.hpp"
#include "schinzel/runner.hpp"

struct sl_context {
  schinzel::Budget budget;
  unsigned threads = 1;
  std::string error;
};

struct sl_report {
  schinzel::runner::Report report;
  std::string json;
  std::string csv;
};

namespace {

// Runs fn, translating exceptions into status codes and a message on ctx.
template <typename Fn>
sl_status guarded(sl_context* ctx, Fn&& fn) {
  if (!ctx) return SL_ERR_INVALID;
  ctx->error.clear();
  try {
    fn();
    return SL_OK;
  } catch (const schinzel::BudgetExceeded& e) {
    ctx->error = e.what();
    return SL_ERR_BUDGET;
  } catch (const schinzel::InvariantViolation& e) {
    ctx->error = e.what();
    return SL_ERR_INVARIANT;
  } catch (const std::invalid_argument& e) {
    ctx->error = e.what();
    return SL_ERR_INVALID;
  } catch (const nlohmann::json::exception& e) {
    ctx->error = e.what();
    return SL_ERR_INVALID;
  } catch (const std::ios_base::failure& e) {
    ctx->error = e.what();
    return SL_ERR_IO;
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
    return SL_ERR_BUDGET;
  } catch (const std::exception& e) {
    ctx->error = std::string("internal error: ") + e.what();
    return SL_ERR_INVARIANT;
  }
}

}  // namespace

extern "C" {

const char* sl_version(void) { return schinzel::runner::kToolVersion; }

const char* sl_status_string(sl_status status) {
  switch (status) {
    case SL_OK: return "ok";
    case SL_ERR_INVALID: return "invalid argument";
    case SL_ERR_BUDGET: return "budget exhausted";
    case SL_ERR_INVARIANT: return "invariant violation";
    case SL_ERR_IO: return "i/o error";
  }
  return "unknown status";
}

sl_status sl_context_create(sl_context** out) {
  if (!out) return SL_ERR_INVALID;
  *out = nullptr;
  auto* ctx = new (std::nothrow) sl_context;
  if (!ctx) return SL_ERR_BUDGET;
  if (const char* env = std::getenv("SCHINZEL_LAB_BUDGET")) {
    try {
      ctx->budget = schinzel::runner::parse_budget(env, ctx->budget);
    } catch (const std::exception&) {
      delete ctx;
      return SL_ERR_INVALID;
    }
  }
  *out = ctx;
  return SL_OK;
}

void sl_context_destroy(sl_context* ctx) { delete ctx; }

sl_status sl_context_set_budget(sl_context* ctx, uint64_t factor_iterations, uint64_t enumeration,
                                uint64_t trial_division_bound) {
  return guarded(ctx, [&] {
    if (factor_iterations) ctx->budget.factor_iterations = factor_iterations;
    if (enumeration) ctx->budget.enumeration = enumeration;
    if (trial_division_bound) ctx->budget.trial_division_bound = trial_division_bound;
  });
}

sl_status sl_context_set_threads(sl_context* ctx, unsigned threads) {
  return guarded(ctx, [&] {
    if (threads < 1 || threads > 1024) throw std::invalid_argument("threads must lie in [1, 1024]");
    ctx->threads = threads;
  });
}

const char* sl_last_error(const sl_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

sl_status sl_run(sl_context* ctx, const char* config_json, sl_report** out) {
  return guarded(ctx, [&] {
    if (!config_json || !out) throw std::invalid_argument("null argument");
    *out = nullptr;
    const auto config = nlohmann::json::parse(config_json);
    auto* r = new sl_report;
    try {
      r->report = schinzel::runner::run(config, ctx->budget, ctx->threads);
      r->json = schinzel::runner::to_json_text(r->report);
      r->csv = schinzel::runner::to_csv_text(r->report);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

void sl_report_destroy(sl_report* report) { delete report; }

const char* sl_report_json(const sl_report* report) { return report ? report->json.c_str() : ""; }

const char* sl_report_csv(const sl_report* report) { return report ? report->csv.c_str() : ""; }

sl_status sl_report_write(sl_context* ctx, const sl_report* report, const char* format, const char* path) {
  return guarded(ctx, [&] {
    if (!report || !format || !path) throw std::invalid_argument("null argument");
    const std::string f = format;
    if (f != "json" && f != "csv") throw std::invalid_argument("format must be json or csv");
    const std::string& text = f == "json" ? report->json : report->csv;
    if (std::strcmp(path, "-") == 0) {
      std::cout << text << std::flush;
      if (!std::cout) throw std::ios_base::failure("cannot write to stdout");
      return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::ios_base::failure(std::string("cannot open ") + path);
    file << text;
    file.close();
    if (!file) throw std::ios_base::failure(std::string("cannot write ") + path);
  });
}

int sl_is_prime(uint64_t n) { return schinzel::arith::is_prime(n) ? 1 : 0; }

sl_status sl_symbol(sl_context* ctx, int64_t a, uint64_t b, int* out) {
  return guarded(ctx, [&] {
    if (!out) throw std::invalid_argument("null argument");
    if (b < 1) throw std::invalid_argument("symbol needs b >= 1");
    *out = schinzel::arith::symbol(a, b);
  });
}

sl_status sl_factorize(sl_context* ctx, uint64_t n, uint64_t* primes, unsigned* exponents, size_t cap,
                       size_t* count) {
  return guarded(ctx, [&] {
    if (!count || (cap && (!primes || !exponents))) throw std::invalid_argument("null argument");
    if (n < 1) throw std::invalid_argument("factorize needs n >= 1");
    const auto f = schinzel::arith::factorize(n, ctx->budget);
    *count = f.factors.size();
    for (size_t i = 0; i < f.factors.size() && i < cap; ++i) {
      primes[i] = f.factors[i].prime;
      exponents[i] = f.factors[i].exponent;
    }
  });
}

sl_status sl_cornacchia(sl_context* ctx, uint64_t d, uint64_t p, int* found, uint64_t* x, uint64_t* y) {
  return guarded(ctx, [&] {
    if (!found || !x || !y) throw std::invalid_argument("null argument");
    if (d < 1) throw std::invalid_argument("cornacchia needs d >= 1");
    if (!schinzel::arith::is_prime(p)) throw std::invalid_argument("cornacchia needs a prime p");
    const auto r = schinzel::arith::cornacchia(d, p);
    *found = r ? 1 : 0;
    *x = r ? r->first : 0;
    *y = r ? r->second : 0;
  });
}

sl_status sl_two_squares(sl_context* ctx, uint64_t n, int* found, uint64_t* x, uint64_t* y) {
  return guarded(ctx, [&] {
    if (!found || !x || !y) throw std::invalid_argument("null argument");
    const auto r = schinzel::arith::two_squares(n, ctx->budget);
    *found = r ? 1 : 0;
    *x = r ? r->first : 0;
    *y = r ? r->second : 0;
  });
}

sl_status sl_rd_exact(sl_context* ctx, unsigned d, char* buf, size_t size) {
  return guarded(ctx, [&] {
    if (!buf || size == 0) throw std::invalid_argument("null buffer");
    const auto s = schinzel::to_string(schinzel::chatelet::rd_exact(d, ctx->budget));
    std::snprintf(buf, size, "%s", s.c_str());
  });
}

}  // extern "C"
