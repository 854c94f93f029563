// SPDX-License-Identifier: Apache-2.0
//
// wtd - MIMO wiretap decompositions, secrecy capacity and layered transceiver planning
// Copyright (C) 2026 The wtd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/* C interface to the wtd library. All objects are opaque and owned by the
   caller once returned; release them with the matching *_free function.
   Complex data is exchanged as interleaved (re, im) doubles in row-major order. */

#ifndef WTD_WTD_H
#define WTD_WTD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(WTD_BUILDING_LIBRARY)
#define WTD_API __declspec(dllexport)
#else
#define WTD_API __declspec(dllimport)
#endif
#else
#define WTD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C"
{
#endif

    typedef enum wtd_status
    {
        WTD_OK = 0,
        WTD_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown keyword, bad buffer */
        WTD_ERR_DOMAIN = 2,           /* shape or precondition violation */
        WTD_ERR_RANK_DEFICIENT = 3,
        WTD_ERR_MAJORIZATION = 4,
        WTD_ERR_NOT_PSD = 5,
        WTD_ERR_NUMERICAL = 6,
        WTD_ERR_INSUFFICIENT_SAMPLES = 7,
        WTD_ERR_OUT_OF_MEMORY = 8,
        WTD_ERR_INTERNAL = 9
    } wtd_status;

    typedef enum wtd_value_kind
    {
        WTD_VALUE_NONE = 0,
        WTD_VALUE_SCALAR = 1,
        WTD_VALUE_VECTOR = 2,
        WTD_VALUE_MATRIX = 3,
        WTD_VALUE_TEXT = 4
    } wtd_value_kind;

    typedef struct wtd_matrix wtd_matrix;
    typedef struct wtd_result wtd_result;

    typedef struct wtd_sim_options
    {
        uint64_t samples;
        uint64_t seed;
        unsigned threads; /* 0: hardware concurrency */
        int genie;        /* nonzero: cancel with the true symbols */
        double epsilon;   /* rate back-off, >= 0 */
    } wtd_sim_options;

    WTD_API const char *wtd_version(void);
    WTD_API const char *wtd_status_string(wtd_status status);

    /* Message and majorization prefix (1-based, 0 if not applicable) of the
       last failed call on the calling thread. */
    WTD_API const char *wtd_last_error(void);
    WTD_API size_t wtd_last_error_index(void);

    /* ---- matrices ---- */
    WTD_API wtd_status wtd_matrix_new(size_t rows, size_t cols, const double *interleaved, wtd_matrix **out);
    WTD_API wtd_status wtd_matrix_identity(size_t n, wtd_matrix **out);
    WTD_API void wtd_matrix_free(wtd_matrix *m);
    WTD_API size_t wtd_matrix_rows(const wtd_matrix *m);
    WTD_API size_t wtd_matrix_cols(const wtd_matrix *m);
    /* Copies 2 * rows * cols doubles into `out`; `capacity` counts doubles. */
    WTD_API wtd_status wtd_matrix_data(const wtd_matrix *m, double *out, size_t capacity);

    /* ---- results ---- */
    WTD_API void wtd_result_free(wtd_result *r);
    WTD_API size_t wtd_result_size(const wtd_result *r);
    WTD_API const char *wtd_result_key(const wtd_result *r, size_t index);
    WTD_API wtd_value_kind wtd_result_kind(const wtd_result *r, const char *key);
    WTD_API wtd_status wtd_result_scalar(const wtd_result *r, const char *key, double *out);
    /* Vector length is written to `length`; data is copied when `out` is non-null
       and `capacity` suffices. */
    WTD_API wtd_status wtd_result_vector(const wtd_result *r, const char *key, double *out, size_t capacity,
                                         size_t *length);
    WTD_API wtd_status wtd_result_matrix(const wtd_result *r, const char *key, wtd_matrix **out);
    WTD_API const char *wtd_result_text(const wtd_result *r, const char *key);

    /* ---- operations ----
       Null `kbar` means the identity. `mode` is one of gsvd, svd_eve, svd_bob,
       gmd_bob; null selects gsvd. */

    /* kind: qr, ql, svd, gmd, gtd (needs target), gsvd (needs a2). */
    WTD_API wtd_status wtd_decompose(const char *kind, const wtd_matrix *a, const wtd_matrix *a2,
                                     const double *target, size_t target_length, wtd_result **out);

    WTD_API wtd_status wtd_capacity(const wtd_matrix *hb, const wtd_matrix *he, const wtd_matrix *kbar,
                                    const char *mode, wtd_result **out);

    WTD_API wtd_status wtd_power_capacity(const wtd_matrix *hb, const wtd_matrix *he, double power, size_t budget,
                                          uint64_t seed, wtd_result **out);

    WTD_API wtd_status wtd_region(const wtd_matrix *hb, const wtd_matrix *hc, const wtd_matrix *kbar,
                                  wtd_result **out);

    WTD_API void wtd_sim_options_init(wtd_sim_options *opt);

    /* scheme: sic, wiretap, dpc, broadcast. For broadcast `he` is the second
       user's channel. For sic `he` may be null and the covariance is kbar itself. */
    WTD_API wtd_status wtd_simulate(const char *scheme, const wtd_matrix *hb, const wtd_matrix *he,
                                    const wtd_matrix *kbar, const char *mode, const wtd_sim_options *opt,
                                    wtd_result **out);

    WTD_API wtd_status wtd_scalar_secrecy_capacity(double hb_re, double hb_im, double he_re, double he_im,
                                                   double *out);

#ifdef __cplusplus
}
#endif

#endif
