/*
 * Copyright 2026 The schinzel-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libschinzel_lab.
 *
 * Every call returns an sl_status. On failure the context keeps a message
 * readable through sl_last_error until the next call on that context.
 * Strings returned by the library are owned by the object they came from
 * and stay valid until that object is destroyed or the next call that
 * writes the same buffer. A context is not safe for concurrent use; use one
 * context per thread.
 */

#ifndef SCHINZEL_LAB_H
#define SCHINZEL_LAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SL_API __attribute__((visibility("default")))
#else
#define SL_API
#endif

/* Status codes double as CLI exit codes, except SL_ERR_IO which exits 1. */
typedef enum sl_status {
  SL_OK = 0,
  SL_ERR_INVALID = 1,   /* bad argument or config */
  SL_ERR_BUDGET = 2,    /* factoring or enumeration budget exhausted */
  SL_ERR_INVARIANT = 3, /* an internal identity failed */
  SL_ERR_IO = 4
} sl_status;

typedef struct sl_context sl_context;
typedef struct sl_report sl_report;

SL_API const char* sl_version(void);
SL_API const char* sl_status_string(sl_status status);

/* Reads SCHINZEL_LAB_BUDGET if set ("factor=N,enumeration=N,trial=N" or a
 * bare N for both caps). Fails with SL_ERR_INVALID on a malformed value. */
SL_API sl_status sl_context_create(sl_context** out);
SL_API void sl_context_destroy(sl_context* ctx);
/* Zero leaves a cap unchanged. */
SL_API sl_status sl_context_set_budget(sl_context* ctx, uint64_t factor_iterations, uint64_t enumeration,
                                       uint64_t trial_division_bound);
SL_API sl_status sl_context_set_threads(sl_context* ctx, unsigned threads);
/* Message of the last failure on ctx, or "" after a success. */
SL_API const char* sl_last_error(const sl_context* ctx);

/* Runs one experiment described by a JSON config; see README for keys. */
SL_API sl_status sl_run(sl_context* ctx, const char* config_json, sl_report** out);
SL_API void sl_report_destroy(sl_report* report);
SL_API const char* sl_report_json(const sl_report* report);
SL_API const char* sl_report_csv(const sl_report* report);
/* format is "json" or "csv"; path "-" writes to stdout. */
SL_API sl_status sl_report_write(sl_context* ctx, const sl_report* report, const char* format, const char* path);

/* Primitives. */
SL_API int sl_is_prime(uint64_t n);
/* (a/b) with the even-b convention; b >= 1. */
SL_API sl_status sl_symbol(sl_context* ctx, int64_t a, uint64_t b, int* out);
/* Writes up to cap (prime, exponent) pairs; *count receives the true count. */
SL_API sl_status sl_factorize(sl_context* ctx, uint64_t n, uint64_t* primes, unsigned* exponents, size_t cap,
                              size_t* count);
/* *found = 0 when p has no representation x^2 + d y^2. */
SL_API sl_status sl_cornacchia(sl_context* ctx, uint64_t d, uint64_t p, int* found, uint64_t* x, uint64_t* y);
SL_API sl_status sl_two_squares(sl_context* ctx, uint64_t n, int* found, uint64_t* x, uint64_t* y);
/* r_d as "p/q" into buf (NUL-terminated, truncated to size). */
SL_API sl_status sl_rd_exact(sl_context* ctx, unsigned d, char* buf, size_t size);

#ifdef __cplusplus
}
#endif

#endif /* SCHINZEL_LAB_H */
