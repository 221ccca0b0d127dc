#ifndef FILLFAM_H
#define FILLFAM_H

/* C interface to the filling-family library.  Handles are opaque; every
 * function that can fail returns ff_status, and on failure ff_last_error()
 * holds a JSON description for the calling thread.  Strings returned
 * through char** out-parameters are owned by the caller and released with
 * ff_string_free; const char* returns are borrowed. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ff_status {
  FF_OK = 0,
  FF_INVALID_ARGUMENT = 1,
  FF_COMPARABLE_NODES = 2,
  FF_NOT_DOWNWARD_CLOSED = 3,
  FF_NOT_SKEW = 4,
  FF_NOT_INCREASING = 5,
  FF_PRECONDITION = 6,
  FF_BUDGET_EXCEEDED = 7,
  FF_UNATTAINABLE = 8,
  FF_SEARCH_FAILED = 9,
  FF_PARSE_ERROR = 10,
  FF_INTERNAL = 11,
  FF_UNKNOWN = 12
} ff_status;

const char* ff_version(void);

/* {"code": "...", "message": "...", "detail": {...}} of the last failure
 * on this thread; "{}" when the last call succeeded. */
const char* ff_last_error(void);

void ff_string_free(char* s);

/* ---------------------------------------------------------------- families
 * A spec is a built-in name with optional parameters ("schreier",
 * "all:depth=6", "size-cap:3", "fremlin:f=sqrt,levels=2,depth=8",
 * "half-space", "strongly-monotone") or a path to a family file
 * {"depth": D, "members": [["0101", ...], ...]}. */
typedef struct ff_family ff_family;

ff_status ff_family_open(const char* spec, ff_family** out);
void ff_family_close(ff_family* f);
const char* ff_family_name(const ff_family* f);
int ff_family_kind(const ff_family* f); /* 0 = bitstring words, 1 = naturals */
size_t ff_family_depth(const ff_family* f);
/* How many member sets hereditary closure added when the family came from
 * a file; 0 for built-ins. */
size_t ff_family_closure_added(const ff_family* f);
ff_status ff_family_member(const ff_family* f, const char* const* words,
                           size_t count, int* out);
ff_status ff_family_member_nat(const ff_family* f, const int64_t* elems,
                               size_t count, int* out);

/* ------------------------------------------------------------ dyadic trees */
typedef struct ff_tree ff_tree;

ff_status ff_tree_identity(size_t depth, size_t host_depth, ff_tree** out);
ff_status ff_tree_parse(const char* json_text, ff_tree** out);
ff_status ff_tree_build(ff_family* f, size_t levels, size_t host_depth,
                        uint64_t budget, ff_tree** out);
ff_status ff_tree_graded(ff_family* f, const size_t* sizes, size_t count,
                         size_t levels, size_t host_depth, uint64_t budget,
                         ff_tree** out);
void ff_tree_close(ff_tree* t);
ff_status ff_tree_json(const ff_tree* t, char** out);
ff_status ff_tree_validate(const ff_tree* t, int* out);

/* ------------------------------------------------- reports (JSON strings)
 * Ground specs: NULL/"" for the default ground (the full cube at the
 * family depth, or {0..2n} for natural-number families), "lo..hi" for a
 * natural range, or a comma-separated point list.  A budget of 0 keeps the
 * library default.  Rationals appear as "p/q" strings. */
ff_status ff_types_json(size_t k, char** out);
ff_status ff_type_of_json(const char* const* words, size_t count, char** out);
ff_status ff_check_increasing(const char* const* words, size_t count,
                              int* out);
ff_status ff_density_json(ff_family* f, const char* ground, size_t n_max,
                          int sampled, size_t samples, uint64_t seed,
                          char** out);
ff_status ff_filling_json(ff_family* f, const char* ground, const char* eps,
                          size_t n_max, int sampled, size_t samples,
                          uint64_t seed, char** out);
ff_status ff_star_probe_json(ff_family* f, const char* ground, size_t n_max,
                             int sampled, size_t samples, uint64_t seed,
                             char** out);
ff_status ff_half_filling_json(ff_family* f, const char* ground, size_t m,
                               uint64_t budget, char** out);
ff_status ff_fremlin_json(ff_family* f, size_t n_max, char** out);
ff_status ff_extract_increasing_json(const char* const* f_words,
                                     size_t f_count,
                                     const char* const* g_words,
                                     size_t g_count, size_t k, char** out);
ff_status ff_extract_type_json(const char* const* h_words, size_t h_count,
                               const char* type_json, char** out);
ff_status ff_typed_member_json(ff_family* f, const char* ground, size_t k,
                               const char* type_json, size_t n,
                               uint64_t budget, char** out);
ff_status ff_decides_json(const ff_tree* t, ff_family* f, size_t n,
                          uint64_t budget, char** out);
ff_status ff_trapped_json(const ff_tree* t, ff_family* f, const char* eps,
                          size_t n, uint64_t budget, char** out);
ff_status ff_measure_json(const ff_tree* t, const char* const* roots,
                          size_t count, char** out);
ff_status ff_limit_set_json(const ff_tree* t, ff_family* f, const char* eps,
                            size_t max_level, size_t resolution,
                            uint64_t budget, char** out);
ff_status ff_norm_json(ff_family* f, const char* vector_json, uint64_t budget,
                       char** out);
ff_status ff_cesaro_json(ff_family* f, const ff_tree* t, uint64_t i_max,
                         uint64_t budget, char** out);
ff_status ff_non_summability_json(ff_family* f, const char* const* words,
                                  size_t count, uint64_t i_max,
                                  uint64_t budget, char** out);

#ifdef __cplusplus
}
#endif

#endif /* FILLFAM_H */
