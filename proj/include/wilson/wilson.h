/* C interface to the wilson library. Every function returns a status code;
 * text results are heap strings released with wilson_string_free. After a
 * non-OK status, wilson_last_error describes the failure on this thread. */
#ifndef WILSON_WILSON_H
#define WILSON_WILSON_H

#include <stdint.h>

#if defined(_WIN32)
#define WILSON_API __declspec(dllexport)
#else
#define WILSON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wilson_status {
  WILSON_OK = 0,
  WILSON_VERDICT_FAILED = 1,   /* computed, but a checked claim is false */
  WILSON_INVALID_ARGUMENT = 2,
  WILSON_RESOURCE_EXHAUSTED = 3,
  WILSON_INTERNAL_ERROR = 4
} wilson_status;

typedef enum wilson_format {
  WILSON_FORMAT_CSV = 0,
  WILSON_FORMAT_JSON = 1,
  WILSON_FORMAT_DOT = 2,
  WILSON_FORMAT_TEXT = 3
} wilson_format;

typedef enum wilson_convention {
  WILSON_BALL_AT_MOST = 0, /* products of at most n generators */
  WILSON_BALL_EXACTLY = 1  /* products of exactly n generators */
} wilson_convention;

typedef struct wilson_context wilson_context;

WILSON_API const char *wilson_version(void);
WILSON_API const char *wilson_last_error(void);
WILSON_API void wilson_string_free(char *s);

/* state_budget = 0 selects the default budget. */
WILSON_API wilson_status wilson_context_create(uint64_t state_budget, wilson_context **out);
WILSON_API void wilson_context_destroy(wilson_context *ctx);
WILSON_API uint64_t wilson_context_state_budget(const wilson_context *ctx);

/* Generating sets are selected by "base", "S:n", "tilde" or "free". */

WILSON_API wilson_status wilson_verify_all(wilson_context *ctx, int threads, char **json);
WILSON_API wilson_status wilson_catalog(wilson_context *ctx, char **json);

/* CSV (index,length,geodesic) or DOT. */
WILSON_API wilson_status wilson_ball(wilson_context *ctx, const char *genset, int radius,
                                     wilson_format format, int threads, char **out);
WILSON_API wilson_status wilson_ball_sizes(wilson_context *ctx, const char *genset, int radius,
                                           wilson_convention convention, int threads,
                                           uint64_t *sizes /* radius + 1 entries */);
WILSON_API wilson_status wilson_growth(wilson_context *ctx, const char *genset, int radius,
                                       wilson_convention convention, int threads, char **csv);
WILSON_API wilson_status wilson_delta_stats(wilson_context *ctx, const char *genset, int radius,
                                            double eta, int threads, char **csv);

WILSON_API wilson_status wilson_lemma30(wilson_context *ctx, int max_n, char **csv);
WILSON_API wilson_status wilson_lambda(wilson_context *ctx, int steps, double tol, char **csv);
WILSON_API wilson_status wilson_curves(wilson_context *ctx, double lambda, char **csv);
WILSON_API wilson_status wilson_growth_bound(double lambda, double tol, double *out);

/* all_pairs = 0 checks the canonical swapper pair, otherwise every ordered
 * pair of distinct swappers. */
WILSON_API wilson_status wilson_free_monoid(wilson_context *ctx, int length, int all_pairs,
                                            char **json);
WILSON_API wilson_status wilson_local_iso(wilson_context *ctx, int radius, int max_n,
                                          char **json);

/* word: generator symbols separated by spaces, "s^-1" for inverses.
 * string: labels '1'..'7'. */
WILSON_API wilson_status wilson_act(wilson_context *ctx, const char *genset, const char *word,
                                    const char *string, char **out);
/* JSON or TEXT. */
WILSON_API wilson_status wilson_portrait(wilson_context *ctx, const char *genset,
                                         const char *word, int depth, wilson_format format,
                                         char **out);

#ifdef __cplusplus
}
#endif

#endif
