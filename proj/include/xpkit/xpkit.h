#ifndef XPKIT_XPKIT_H
#define XPKIT_XPKIT_H

/* C interface to the xpkit explanation library.
 *
 * Handles are opaque. Every fallible call returns an xpk_status; on failure
 * xpk_last_error() describes the problem (thread-local, valid until the next
 * call on the same thread). Result documents are UTF-8 JSON strings owned by
 * the caller and released with xpk_string_free(). */

#include <stddef.h>

#if defined(XPKIT_BUILDING_LIBRARY)
#define XPK_API __attribute__((visibility("default")))
#else
#define XPK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct xpk_model xpk_model;
typedef struct xpk_instance xpk_instance;
typedef struct xpk_context xpk_context;

typedef enum xpk_status {
  XPK_OK = 0,
  XPK_ERR_USAGE = 1,    /* bad argument (null pointer, unknown name) */
  XPK_ERR_INVALID = 2,  /* malformed model, instance, point or constraint */
  XPK_ERR_RESOURCE = 3, /* a size guard was exceeded */
  XPK_ERR_CONTRACT = 4, /* a precondition of the operation does not hold */
  XPK_ERR_IO = 5,       /* unreadable file or unparsable document */
  XPK_ERR_INTERNAL = 6
} xpk_status;

typedef enum xpk_backend {
  XPK_BACKEND_AUTO = 0,
  XPK_BACKEND_SAT = 1,
  XPK_BACKEND_BRUTE = 2,
  XPK_BACKEND_DT = 3,
  XPK_BACKEND_MONOTONE = 4
} xpk_backend;

typedef struct xpk_options {
  xpk_backend backend;
  int has_epsilon; /* nonzero: restrict to points within Hamming distance epsilon */
  int epsilon;
  const char* constraints_path; /* NULL: unconstrained */
} xpk_options;

XPK_API const char* xpk_version(void);
XPK_API const char* xpk_last_error(void);
XPK_API void xpk_string_free(char* s);
XPK_API void xpk_options_init(xpk_options* opts);
/* Accepts "auto", "sat", "brute", "dt", "monotone". */
XPK_API xpk_status xpk_backend_parse(const char* name, xpk_backend* out);

XPK_API xpk_status xpk_model_load(const char* path, xpk_model** out);
XPK_API xpk_status xpk_model_parse(const char* json, xpk_model** out);
XPK_API void xpk_model_free(xpk_model* model);
XPK_API int xpk_model_num_features(const xpk_model* model);
/* Writes the class label of `point` (length num_features) as JSON. */
XPK_API xpk_status xpk_model_predict(const xpk_model* model, const int* point, size_t n,
                                     char** out_json);
/* {"ok":bool,"violations":[...]}; returns XPK_OK even when violations exist. */
XPK_API xpk_status xpk_model_validate(const xpk_model* model, char** out_json);

XPK_API xpk_status xpk_instance_load(const xpk_model* model, const char* path,
                                     xpk_instance** out);
XPK_API xpk_status xpk_instance_parse(const xpk_model* model, const char* json,
                                      xpk_instance** out);
XPK_API void xpk_instance_free(xpk_instance* inst);

/* opts may be NULL (automatic backend, no constraints, no locality). */
XPK_API xpk_status xpk_context_create(const xpk_model* model, const xpk_instance* inst,
                                      const xpk_options* opts, xpk_context** out);
XPK_API void xpk_context_free(xpk_context* ctx);
XPK_API size_t xpk_context_oracle_calls(const xpk_context* ctx);

/* One AXp/CXp. `seed` (may be NULL) restricts the search to a weak
 * explanation; `order` (may be NULL) sets the deletion order. */
XPK_API xpk_status xpk_axp(xpk_context* ctx, const int* seed, size_t seed_len, const int* order,
                           size_t order_len, char** out_json);
XPK_API xpk_status xpk_cxp(xpk_context* ctx, const int* seed, size_t seed_len, const int* order,
                           size_t order_len, char** out_json);
XPK_API xpk_status xpk_smallest_axp(xpk_context* ctx, char** out_json);
/* limit 0 means no limit. */
XPK_API xpk_status xpk_enumerate(xpk_context* ctx, size_t limit, int invert_polarity,
                                 char** out_json);
XPK_API xpk_status xpk_fmp(xpk_context* ctx, int feature, char** out_json);

/* Locally minimal probabilistic AXp of a decision tree; delta is a decimal
 * or fraction string in (0,1]. */
XPK_API xpk_status xpk_paxp(const xpk_model* model, const xpk_instance* inst, const char* delta,
                            const int* order, size_t order_len, char** out_json);
/* class_label as written in the model file. */
XPK_API xpk_status xpk_global(const xpk_model* model, const char* class_label, char** out_json);

/* DIMACS text of the counterexample encoding plus a JSON selector map. */
XPK_API xpk_status xpk_export_dimacs(const xpk_model* model, const xpk_instance* inst,
                                     const xpk_options* opts, int horn, char** out_cnf,
                                     char** out_map_json);

/* Runs every applicable route against the brute-force oracle. *agree is
 * set to 1 when all routes and checks agree. */
XPK_API xpk_status xpk_crosscheck(const xpk_model* model, const xpk_instance* inst,
                                  const xpk_options* opts, char** out_json, int* agree);

#ifdef __cplusplus
}
#endif

#endif
