/*
 * C API for the Pillai pair toolkit.
 *
 * All functions return a pillai_status; results are handed back through out
 * parameters. Strings returned through char** out parameters are heap
 * allocated and must be released with pillai_string_free(). Handles are
 * opaque and freed with their matching *_free() function. On any non-zero
 * status, pillai_last_error() returns a thread-local description of what
 * went wrong.
 */

#ifndef PILLAI_H
#define PILLAI_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PILLAI_API __declspec(dllexport)
#else
#define PILLAI_API __attribute__((visibility("default")))
#endif

typedef enum {
    PILLAI_OK = 0,
    PILLAI_ERR_IO = 1,             /* file not readable/writable */
    PILLAI_ERR_PARSE = 2,          /* malformed spec file or JSON */
    PILLAI_ERR_HYPOTHESIS = 3,     /* a theorem hypothesis failed */
    PILLAI_ERR_PRECISION = 4,      /* certification exceeded the precision ceiling */
    PILLAI_ERR_UNSUPPORTED = 5,    /* input outside the supported place/field classes */
    PILLAI_ERR_BOX_TOO_LARGE = 6,  /* search box exceeds the cell ceiling */
    PILLAI_ERR_INVALID_ARGUMENT = 7,
    PILLAI_ERR_INTERNAL = 8
} pillai_status;

typedef struct pillai_sequence pillai_sequence;
typedef struct pillai_options pillai_options;

/* thread-local message for the most recent failure in this thread */
PILLAI_API const char* pillai_last_error(void);
/* stage tag ("dominant-root", "monotonicity", "independence", ...) for the
 * most recent PILLAI_ERR_HYPOTHESIS in this thread; empty otherwise */
PILLAI_API const char* pillai_last_error_stage(void);

PILLAI_API void pillai_string_free(char* s);

/* ------------------------------------------------------------- options -- */

PILLAI_API pillai_options* pillai_options_create(void);
PILLAI_API void pillai_options_free(pillai_options* opts);
PILLAI_API pillai_status pillai_options_set_precision_bits(pillai_options* opts, long bits);
PILLAI_API pillai_status pillai_options_set_threads(pillai_options* opts, int threads);
PILLAI_API pillai_status pillai_options_set_box_ceiling(pillai_options* opts, long cells);

/* ----------------------------------------------------------- sequences -- */

/* spec JSON: {"label": str, "coefficients": [int...], "initial": [int...]} */
PILLAI_API pillai_status pillai_sequence_from_json(const char* json_text, pillai_sequence** out);
PILLAI_API pillai_status pillai_sequence_load_file(const char* path, pillai_sequence** out);
PILLAI_API void pillai_sequence_free(pillai_sequence* seq);

/* U_n as a decimal string */
PILLAI_API pillai_status pillai_sequence_term(const pillai_sequence* seq, long n, char** out);
PILLAI_API pillai_status pillai_sequence_label(const pillai_sequence* seq, char** out);

/* ---------------------------------------------------------- operations -- */

/* full hypothesis check + analysis report (JSON) */
PILLAI_API pillai_status pillai_analyze(const pillai_sequence* seq, const pillai_options* opts,
                                        char** out_json);

/* multiplicative independence of the dominant roots; *out_independent is 1
 * on Pass, 0 on Fail (witness in the JSON) */
PILLAI_API pillai_status pillai_independence(const pillai_sequence* u, const pillai_sequence* v,
                                             const pillai_options* opts, int* out_independent,
                                             char** out_json);

/* full effective-bound derivation (JSON report with the audited constants) */
PILLAI_API pillai_status pillai_bound(const pillai_sequence* u, const pillai_sequence* v,
                                      const pillai_options* opts, char** out_json);

/* exhaustive search over [n_lo, n_hi] x [m_lo, m_hi]; JSON summary */
PILLAI_API pillai_status pillai_search(const pillai_sequence* u, const pillai_sequence* v,
                                       long n_lo, long n_hi, long m_lo, long m_hi,
                                       const pillai_options* opts, char** out_json);

/* same search, CSV rows "c,n,m" sorted by (c, n, m) */
PILLAI_API pillai_status pillai_search_csv(const pillai_sequence* u, const pillai_sequence* v,
                                           long n_lo, long n_hi, long m_lo, long m_hi,
                                           const pillai_options* opts, char** out_csv);

/* search + comparison against an expected set (one integer per line);
 * *out_match is 1 when the multi-represented set equals the expected set */
PILLAI_API pillai_status pillai_verify(const pillai_sequence* u, const pillai_sequence* v,
                                       long n_lo, long n_hi, long m_lo, long m_hi,
                                       const char* expected_path, const pillai_options* opts,
                                       int* out_match, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* PILLAI_H */
