#ifndef FFGAL_H
#define FFGAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(FFGAL_BUILDING)
#define FFGAL_API __attribute__((visibility("default")))
#else
#define FFGAL_API
#endif

/* Status codes double as CLI exit codes. */
typedef enum {
  FFGAL_OK = 0,
  FFGAL_E_USAGE = 1,
  FFGAL_E_HYPOTHESIS = 2,
  FFGAL_E_BUDGET = 3,
  FFGAL_E_FAILED = 4
} ffgal_status;

typedef struct ffgal_options {
  uint64_t seed;
  uint64_t budget; /* candidate cap for searches */
  unsigned jobs;
  uint64_t samples;
  int max_k;
} ffgal_options;

/* Opaque run context holding options. */
typedef struct ffgal_ctx ffgal_ctx;

FFGAL_API ffgal_options ffgal_default_options(void);
FFGAL_API ffgal_status ffgal_ctx_new(const ffgal_options* opts, ffgal_ctx** out);
FFGAL_API void ffgal_ctx_free(ffgal_ctx* ctx);

/* Message for the last non-OK status on this thread; empty when none. */
FFGAL_API const char* ffgal_last_error(void);
/* Name of the error class behind the last non-OK status, e.g. "HypothesisViolated". */
FFGAL_API const char* ffgal_last_error_kind(void);

/*
 * Every command writes a malloc'd JSON document to *json and a summary to *summary
 * (either may be NULL). Free both with ffgal_string_free. On a thrown error both are left NULL.
 * A FAILED certificate returns FFGAL_E_FAILED with the JSON still filled in.
 */
FFGAL_API ffgal_status ffgal_reproduce(const ffgal_ctx* ctx, const char* table, char** json, char** summary);
FFGAL_API ffgal_status ffgal_search(const ffgal_ctx* ctx, const char* field, const char* target, int n, int m,
                                    const char* strategy, char** json, char** summary);
FFGAL_API ffgal_status ffgal_twin(const ffgal_ctx* ctx, const char* field, int deg, const char* b, char** json, char** summary);
FFGAL_API ffgal_status ffgal_hsearch(const ffgal_ctx* ctx, const char* field, const char* poly, int e, const char* strategy,
                                     char** json, char** summary);
FFGAL_API ffgal_status ffgal_morse_count(const ffgal_ctx* ctx, const char* field, int n, char** json, char** summary);
FFGAL_API ffgal_status ffgal_frob(const ffgal_ctx* ctx, const char* field, const char* poly, char** json, char** summary);
FFGAL_API ffgal_status ffgal_group(const ffgal_ctx* ctx, const char* gens, uint64_t p, char** json, char** summary);
FFGAL_API ffgal_status ffgal_family(const ffgal_ctx* ctx, const char* spec, char** json, char** summary);
FFGAL_API ffgal_status ffgal_replay(const ffgal_ctx* ctx, const char* certificate_json, char** json, char** summary);

FFGAL_API void ffgal_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
