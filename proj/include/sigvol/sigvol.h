/* C interface to the sigvol library.
 *
 * Every function returns a sigvol_status. On failure a message is available
 * from sigvol_last_error() until the next call on the same thread. Strings
 * returned through char** are owned by the caller and released with
 * sigvol_string_free(); handles are released with their *_free function.
 * Rationals cross the boundary as text ("-2/3"), structured results as JSON.
 */
#ifndef SIGVOL_H
#define SIGVOL_H

#include <stddef.h>

#if defined(SIGVOL_BUILDING)
#define SIGVOL_API __attribute__((visibility("default")))
#else
#define SIGVOL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sigvol_status {
  SIGVOL_OK = 0,
  SIGVOL_INVALID_ARGUMENT = 1,
  SIGVOL_PARSE_ERROR = 2,
  SIGVOL_DIMENSION_MISMATCH = 3,
  SIGVOL_OUT_OF_RANGE = 4,
  SIGVOL_DEGENERATE = 5,
  SIGVOL_UNSUPPORTED = 6,
  SIGVOL_INTERNAL_ERROR = 7
} sigvol_status;

typedef struct sigvol_element sigvol_element;       /* element of the shuffle algebra */
typedef struct sigvol_polynomial sigvol_polynomial; /* polynomial in increments a[s][i] */
typedef struct sigvol_group sigvol_group;           /* permutation group */

typedef struct sigvol_options {
  unsigned threads;  /* 0 or 1: single-threaded */
  int segments;      /* loop-closure segment count, 0 = element degree */
  int progress;      /* nonzero: progress lines on stderr */
} sigvol_options;

SIGVOL_API const char* sigvol_last_error(void);
SIGVOL_API void sigvol_string_free(char* s);
SIGVOL_API const char* sigvol_version(void);

/* Elements */
SIGVOL_API sigvol_status sigvol_element_parse(const char* text, int d, sigvol_element** out);
SIGVOL_API sigvol_status sigvol_element_fixture(const char* name, sigvol_element** out);
SIGVOL_API void sigvol_element_free(sigvol_element* x);
SIGVOL_API sigvol_status sigvol_element_to_string(const sigvol_element* x, char** out);
SIGVOL_API sigvol_status sigvol_element_alphabet(const sigvol_element* x, int* out);
SIGVOL_API sigvol_status sigvol_element_equal(const sigvol_element* a, const sigvol_element* b, int* out);
SIGVOL_API sigvol_status sigvol_shuffle(const sigvol_element* a, const sigvol_element* b, sigvol_element** out);
SIGVOL_API sigvol_status sigvol_concat(const sigvol_element* a, const sigvol_element* b, sigvol_element** out);
SIGVOL_API sigvol_status sigvol_antipode(const sigvol_element* x, sigvol_element** out);
SIGVOL_API sigvol_status sigvol_timerev_project(const sigvol_element* x, sigvol_element** out);
SIGVOL_API sigvol_status sigvol_shuffle_power(const sigvol_element* x, unsigned k, sigvol_element** out);
/* letters may be NULL (all of 1..d). */
SIGVOL_API sigvol_status sigvol_vol(int d, const int* letters, size_t count, sigvol_element** out);
/* JSON array of words. */
SIGVOL_API sigvol_status sigvol_lyndon_json(int d, unsigned k, char** out);

/* Paths: points_json is an array of points, each an array of rational strings
 * or integers, e.g. [["0","0"],["1","0"],[1,1]]. */
SIGVOL_API sigvol_status sigvol_signature_json(const char* points_json, unsigned maxdeg, char** out);
SIGVOL_API sigvol_status sigvol_pair(const char* points_json, const sigvol_element* x, char** value);

/* Signature polynomials */
SIGVOL_API sigvol_status sigvol_hmap(const sigvol_element* x, int n, sigvol_polynomial** out);
SIGVOL_API sigvol_status sigvol_polynomial_parse(const char* text, int d, int n, sigvol_polynomial** out);
SIGVOL_API sigvol_status sigvol_polynomial_fixture(const char* name, sigvol_polynomial** out);
SIGVOL_API void sigvol_polynomial_free(sigvol_polynomial* p);
SIGVOL_API sigvol_status sigvol_polynomial_to_string(const sigvol_polynomial* p, char** out);
SIGVOL_API sigvol_status sigvol_polynomial_equal(const sigvol_polynomial* a, const sigvol_polynomial* b, int* out);
SIGVOL_API sigvol_status sigvol_permute_control_points(const sigvol_polynomial* p, const int* sigma, size_t n,
                                                       sigvol_polynomial** out);
SIGVOL_API sigvol_status sigvol_substitute_collinear(const sigvol_polynomial* p, int i, const char* lambda,
                                                     sigvol_polynomial** out);

/* Groups. kind: "auto" (positivity stabilizer for d, n), "trivial",
 * "cyclic", "dihedral", "full". */
SIGVOL_API sigvol_status sigvol_group_create(const char* kind, int d, int n, sigvol_group** out);
SIGVOL_API sigvol_status sigvol_stabilizer(int d, int n, int bruteforce, sigvol_group** out);
SIGVOL_API void sigvol_group_free(sigvol_group* g);
SIGVOL_API sigvol_status sigvol_group_order(const sigvol_group* g, size_t* out);
/* {n, order, structure_tag, generators, elements?}; elements are listed when
 * with_elements is nonzero and the order is at most 100. */
SIGVOL_API sigvol_status sigvol_group_json(const sigvol_group* g, int with_elements, char** out);

/* Geometry */
SIGVOL_API sigvol_status sigvol_gale_json(int d, int n, char** out);
/* params_csv: increasing rationals "0,1,2,3,4". */
SIGVOL_API sigvol_status sigvol_volume_json(int d, const char* params_csv, char** out);
SIGVOL_API sigvol_status sigvol_signed_volume(const char* points_json, char** value);

/* Graded spaces; JSON {d, n?, k, group?, dim_raw, dim_image?, basis}. */
SIGVOL_API sigvol_status sigvol_inv_space_json(int d, int n, unsigned k, const sigvol_group* g,
                                               const sigvol_options* opt, char** out);
SIGVOL_API sigvol_status sigvol_kernel_space_json(int d, int n, unsigned k, const sigvol_options* opt, char** out);
SIGVOL_API sigvol_status sigvol_timerev_space_json(int d, unsigned k, char** out);
SIGVOL_API sigvol_status sigvol_loopclosure_space_json(int d, unsigned k, const sigvol_options* opt, char** out);
SIGVOL_API sigvol_status sigvol_inv_d_json(int d, unsigned k, const sigvol_options* opt, char** out);
SIGVOL_API sigvol_status sigvol_conjecture_json(int d, unsigned k, const sigvol_options* opt, char** out);

/* Membership */
SIGVOL_API sigvol_status sigvol_is_invariant(const sigvol_element* x, int n, const sigvol_group* g, int* out);
SIGVOL_API sigvol_status sigvol_in_kernel(const sigvol_element* x, int n, int* out);
SIGVOL_API sigvol_status sigvol_loopclosure_member(const sigvol_element* x, int segments, int* out);

/* Runs the checks of a fixture file (or bundled fixture name) and reports
 * JSON {fixtures: [{name, checks: [{check, pass}]}], pass}. */
SIGVOL_API sigvol_status sigvol_check_fixture_json(const char* name_or_path, const sigvol_options* opt,
                                                   char** out, int* all_pass);
/* Same, for fixture text given inline. */
SIGVOL_API sigvol_status sigvol_check_fixture_text_json(const char* text, const sigvol_options* opt, char** out,
                                                        int* all_pass);

/* Reproduction checks; ids NULL runs all. */
SIGVOL_API int sigvol_criterion_count(void);
SIGVOL_API sigvol_status sigvol_reproduce_json(const int* ids, size_t count, const sigvol_options* opt,
                                               char** out, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* SIGVOL_H */
