/*
 * C interface to dioclust: hierarchical clustering of asymmetric networks
 * via (min, max) dioid matrix powers.
 *
 * Objects are opaque handles released with their *_free function. Strings
 * returned through char** out-parameters are heap allocated and must be
 * released with dc_string_free(). Every call returns a dc_status; on failure
 * dc_last_error() describes the problem (per thread).
 */
#ifndef DIOCLUST_H
#define DIOCLUST_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(DIOCLUST_BUILDING)
#    define DC_API __declspec(dllexport)
#  else
#    define DC_API __declspec(dllimport)
#  endif
#else
#  define DC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum dc_status {
  DC_OK = 0,
  DC_ERR_USAGE = 1,      /* bad argument, malformed input or method spec */
  DC_ERR_VALIDATION = 2, /* invalid network or non-ultrametric output */
  DC_ERR_IO = 3,
  DC_ERR_INTERNAL = 4
} dc_status;

typedef enum dc_input_format {
  DC_FORMAT_DENSE_CSV = 0,
  DC_FORMAT_EDGE_LIST = 1,
  DC_FORMAT_USES = 2 /* dense uses table, normalized to dissimilarities */
} dc_input_format;

typedef enum dc_emit_format {
  DC_EMIT_CSV = 0,
  DC_EMIT_JSON = 1,
  DC_EMIT_NEWICK = 2,
  DC_EMIT_DOT = 3
} dc_emit_format;

typedef struct dc_network dc_network;
typedef struct dc_result dc_result;

DC_API const char* dc_version(void);
DC_API const char* dc_last_error(void);
DC_API void dc_string_free(char* s);

/* The method spec grammar, for help text. */
DC_API const char* dc_method_grammar(void);

/* Parses a method spec; on success *canonical (optional) receives its
 * canonical form. */
DC_API dc_status dc_method_check(const char* spec, char** canonical);

/* --- networks ---------------------------------------------------------- */

/* uses_exclude_diagonal only matters for DC_FORMAT_USES. */
DC_API dc_status dc_network_load_file(const char* path, dc_input_format format,
                                      int uses_exclude_diagonal, dc_network** out);
DC_API dc_status dc_network_load_buffer(const char* data, size_t size, dc_input_format format,
                                        int uses_exclude_diagonal, dc_network** out);
DC_API void dc_network_free(dc_network* net);

DC_API size_t dc_network_size(const dc_network* net);
DC_API const char* dc_network_label(const dc_network* net, size_t i);
/* NaN when out of range; +inf for absent edges. */
DC_API double dc_network_dissimilarity(const dc_network* net, size_t i, size_t j);

/* Fills *valid and *minimax_connected; *report (optional) gets the text.
 * Returns DC_OK even when the network is invalid. */
DC_API dc_status dc_network_validate(const dc_network* net, int* valid, int* minimax_connected,
                                     char** report);

/* Dense CSV of the (possibly normalized) dissimilarities. */
DC_API dc_status dc_network_export_csv(const dc_network* net, char** out);

/* --- clustering -------------------------------------------------------- */

/* Runs a method. Fails with DC_ERR_VALIDATION on an invalid network. A
 * "graft-rr-invalid" spec succeeds and yields a result whose
 * dc_result_is_ultrametric() may be 0. */
DC_API dc_status dc_cluster(const dc_network* net, const char* spec, dc_result** out);

/* Brute-force reference output: spec must be reciprocal, nonreciprocal,
 * single-linkage or semi-reciprocal:<t>; at most 8 nodes. */
DC_API dc_status dc_oracle(const dc_network* net, const char* spec, dc_result** out);

/* Treats the network matrix itself as a candidate ultrametric. */
DC_API dc_status dc_result_from_network(const dc_network* net, dc_result** out);

DC_API void dc_result_free(dc_result* result);

DC_API size_t dc_result_size(const dc_result* result);
DC_API const char* dc_result_label(const dc_result* result, size_t i);
DC_API double dc_result_value(const dc_result* result, size_t i, size_t j);
DC_API const char* dc_result_method(const dc_result* result);

/* Validation tolerance in effect: 0 for min/max methods, 1e-9 when convex
 * arithmetic is involved, or the last value passed to
 * dc_result_set_tolerance(). */
DC_API double dc_result_tolerance(const dc_result* result);
DC_API dc_status dc_result_set_tolerance(dc_result* result, double tolerance);

DC_API int dc_result_is_ultrametric(const dc_result* result);
/* 1 when some pair never merges (+inf entries). */
DC_API int dc_result_is_forest(const dc_result* result);

DC_API dc_status dc_result_report(const dc_result* result, char** out);
/* Merge events, one per line. DC_ERR_VALIDATION for non-ultrametrics. */
DC_API dc_status dc_result_summary(const dc_result* result, char** out);

/* delta is used by DC_EMIT_DOT only (pass NaN otherwise). JSON, Newick and
 * DOT refuse non-ultrametric results with DC_ERR_VALIDATION. */
DC_API dc_status dc_result_export(const dc_result* result, dc_emit_format format, double delta,
                                  char** out);

DC_API dc_status dc_result_cut(const dc_result* result, double delta, int as_json, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DIOCLUST_H */
