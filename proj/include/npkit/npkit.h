#ifndef NPKIT_NPKIT_H
#define NPKIT_NPKIT_H

/* C interface to npkit. Every function returns an npk_status; on failure
 * npk_last_error() holds a one-line message for the calling thread. Handles
 * are opaque and released with their *_free function (NULL is accepted).
 * Output structs and buffers are caller-owned. */

#include <stddef.h>
#include <stdint.h>

#if defined(NPK_BUILDING_LIBRARY)
#define NPK_API __attribute__((visibility("default")))
#else
#define NPK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum npk_status {
  NPK_OK = 0,
  NPK_ERR_DOMAIN = 1,
  NPK_ERR_UNCERTIFIED = 2,
  NPK_ERR_OVERFLOW = 3,
  NPK_ERR_DEGENERATE = 4,
  NPK_ERR_COINCIDENT_POINTS = 5,
  NPK_ERR_NOT_DISC_PRESERVING = 6,
  NPK_ERR_NO_SOLUTION = 7,
  NPK_ERR_WINDOW = 8,
  NPK_ERR_INSUFFICIENT_DATA = 9,
  NPK_ERR_CAPACITY = 10,
  NPK_ERR_INVALID_ARGUMENT = 11,
  NPK_ERR_BUFFER_TOO_SMALL = 12,
  NPK_ERR_INTERNAL = 13
} npk_status;

NPK_API const char* npk_status_name(npk_status status);
NPK_API const char* npk_last_error(void);

typedef struct npk_complex {
  double re;
  double im;
} npk_complex;

/* ---- string lists ------------------------------------------------------ */

typedef struct npk_strings npk_strings;

NPK_API size_t npk_strings_size(const npk_strings* s);
/* Valid until the list is freed; NULL when index is out of range. */
NPK_API const char* npk_strings_get(const npk_strings* s, size_t index);
NPK_API void npk_strings_free(npk_strings* s);

/* ---- coefficient sequences -------------------------------------------- */

/* b holds b_1, b_2, ... (missing terms are zero). Writes a_0..a_{n-1}. */
NPK_API npk_status npk_a_from_b(const double* b, size_t nb, size_t n, double* a_out);
/* Writes b_1..b_{n-1} from a_0..a_{n-1}; b_out needs n - 1 slots. */
NPK_API npk_status npk_b_from_a(const double* a, size_t n, double* b_out);

/* Exact variants over rationals written as "p/q", integers or decimals. */
NPK_API npk_status npk_a_from_b_exact(const char* const* b, size_t nb, size_t n,
                                      npk_strings** a_out);
NPK_API npk_status npk_b_from_a_exact(const char* const* a, size_t n, npk_strings** b_out);

typedef struct npk_admissibility {
  int a0_is_one;
  int ratios_nonincreasing;
  double last_ratio;
  double partial_sum;
  size_t truncation;
  int verdict;
} npk_admissibility;

NPK_API npk_status npk_check_admissible(const double* a, size_t n, double tol,
                                        npk_admissibility* out);

typedef struct npk_growth {
  double min_ratio;
  double max_ratio;
  size_t argmin_index;
  size_t argmax_index;
  size_t truncation;
} npk_growth;

NPK_API npk_status npk_same_growth(const double* a, size_t na, const double* a2, size_t na2,
                                   size_t n_terms, npk_growth* out);

typedef struct npk_kernel_value {
  npk_complex value;
  double tail_bound;
  size_t terms_used;
} npk_kernel_value;

NPK_API npk_status npk_kernel_eval(const double* a, size_t n, npk_complex u, double tol,
                                   npk_kernel_value* out);

/* Writes f(s)_0..f(s)_{n_terms-1}. */
NPK_API npk_status npk_reduction_f(const double* s, size_t ns, size_t n_terms, double* out);
NPK_API npk_status npk_f_discrepancy(const double* s, size_t ns, const double* s2, size_t ns2,
                                     size_t n_terms, double* out);
/* embedding_out may be NULL; otherwise it needs n_terms slots. */
NPK_API npk_status npk_gamma_membership(const double* g, size_t ng, size_t n_terms,
                                        double* partial_sum, double* embedding_out);
NPK_API npk_status npk_gamma_distance(const double* g, size_t ng, const double* h, size_t nh,
                                      size_t n_terms, double* out);

/* g_out needs n slots. max_steps = 0 selects the default cap. */
NPK_API npk_status npk_turbulence_step(const double* s, const double* t, size_t n, size_t n1,
                                       double eps, uint64_t max_steps, double* g_out,
                                       uint64_t* steps, double* distance);
NPK_API npk_status npk_turbulence_power(const double* g, const double* s, size_t n, size_t k,
                                        uint64_t i, double* out);

/* Drury-Arveson <z^alpha, z^beta> as an exact fraction string. */
NPK_API npk_status npk_da_monomial_inner(const unsigned* alpha, const unsigned* beta,
                                         size_t d, npk_strings** out);

/* ---- Pick problems ----------------------------------------------------- */

typedef struct npk_pick_problem npk_pick_problem;

typedef struct npk_psd_report {
  double min_eigenvalue;
  int is_psd;
  double tolerance;
} npk_psd_report;

/* nodes is n points of dimension d stored row by row (n * d entries). */
NPK_API npk_status npk_pick_create(const double* kernel, size_t nk, size_t d,
                                   const npk_complex* nodes, const npk_complex* targets,
                                   size_t n, double kernel_tol, npk_pick_problem** out);
NPK_API void npk_pick_free(npk_pick_problem* p);
NPK_API size_t npk_pick_size(const npk_pick_problem* p);
/* Writes the n x n Pick matrix row-major. */
NPK_API npk_status npk_pick_matrix(const npk_pick_problem* p, npk_complex* out);
NPK_API npk_status npk_pick_feasible(const npk_pick_problem* p, double tol,
                                     npk_psd_report* out);
/* Minimum eigenvalue test for a caller-supplied Hermitian matrix. */
NPK_API npk_status npk_min_eigenvalue(const npk_complex* m, size_t n, double tol,
                                      npk_psd_report* out);
/* gram_out (n * n, row-major) may be NULL. */
NPK_API npk_status npk_gram(const double* kernel, size_t nk, size_t d,
                            const npk_complex* points, size_t n, double tol,
                            double kernel_tol, npk_complex* gram_out, int* irreducible);

/* ---- disc and ball geometry -------------------------------------------- */

typedef struct npk_automorphism {
  npk_complex alpha;
  npk_complex beta;
} npk_automorphism;

NPK_API npk_status npk_rho(npk_complex a, npk_complex b, double* out);
NPK_API npk_status npk_phi(npk_complex a, npk_complex z, npk_complex* out);
NPK_API npk_status npk_rho_ball(const npk_complex* a, const npk_complex* b, size_t d,
                                double* out);
NPK_API npk_status npk_phi_ball(const npk_complex* a, const npk_complex* z, size_t d,
                                npk_complex* out);
NPK_API npk_status npk_point_at_distance(npk_complex center, double r, double angle,
                                         npk_complex* out);
NPK_API npk_status npk_cayley(npk_complex z, npk_complex* out);
NPK_API npk_status npk_inverse_cayley(npk_complex w, npk_complex* out);

NPK_API npk_status npk_automorphism_make(npk_complex alpha, npk_complex beta,
                                         npk_automorphism* out);
NPK_API npk_status npk_automorphism_apply(const npk_automorphism* f, npk_complex z,
                                          npk_complex* out);
NPK_API npk_status npk_automorphism_compose(const npk_automorphism* f,
                                            const npk_automorphism* g,
                                            npk_automorphism* out);
NPK_API npk_status npk_automorphism_inverse(const npk_automorphism* f, npk_automorphism* out);
NPK_API npk_status npk_moebius_from_matrix(double a, double b, double c, double d,
                                           npk_automorphism* out);
NPK_API npk_status npk_moebius_three_points(const npk_complex src[3],
                                            const npk_complex dst[3],
                                            npk_automorphism* out);
/* out[i] is the index in q that p[i] must map to. */
NPK_API npk_status npk_triple_match(const npk_complex p[3], const npk_complex* q, size_t nq,
                                    double gap, double tol, size_t out[3]);

/* ---- free group and orbits --------------------------------------------- */

typedef struct npk_group npk_group;
typedef struct npk_orbit_table npk_orbit_table;

/* "GAMMA3" or "LAMBDA2". */
NPK_API npk_status npk_group_preset(const char* name, npk_group** out);
/* Integer generators as {a, b, c, d} with determinant 1. */
NPK_API npk_status npk_group_custom(const char* name, const int64_t g1[4],
                                    const int64_t g2[4], npk_group** out);
NPK_API void npk_group_free(npk_group* g);
NPK_API const char* npk_group_name(const npk_group* g);

NPK_API npk_status npk_word_count(int max_length, uint64_t* out);
NPK_API npk_status npk_enumerate_words(int max_length, npk_strings** out);
/* Reduces the word; "e" is the identity. */
NPK_API npk_status npk_word_reduce(const char* word, npk_strings** out);
/* Entries a, b, c, d as decimal strings. */
NPK_API npk_status npk_word_matrix(const npk_group* g, const char* word, npk_strings** out);
NPK_API npk_status npk_word_to_disc(const npk_group* g, const char* word,
                                    npk_automorphism* out);

NPK_API npk_status npk_orbit_compute(const npk_group* g, npk_complex z, int max_length,
                                     int keep_points, unsigned threads,
                                     npk_orbit_table** out);
NPK_API void npk_orbit_free(npk_orbit_table* t);
/* Number of levels, max_length + 1. */
NPK_API size_t npk_orbit_levels(const npk_orbit_table* t);

typedef struct npk_orbit_level {
  int length;
  uint64_t sphere_size;
  double sigma;
  double cumulative;
  size_t stored_points;
} npk_orbit_level;

NPK_API npk_status npk_orbit_level_info(const npk_orbit_table* t, size_t level,
                                        npk_orbit_level* out);
NPK_API npk_status npk_orbit_point(const npk_orbit_table* t, size_t level, size_t index,
                                   npk_complex* z, double* one_minus_abs, char* word,
                                   size_t word_capacity);

typedef enum npk_blaschke_verdict {
  NPK_BLASCHKE_CONVERGING = 0,
  NPK_BLASCHKE_NOT_CONVERGING = 1,
  NPK_BLASCHKE_INCONCLUSIVE = 2
} npk_blaschke_verdict;

/* ratios_out needs levels - 1 slots; note_out may be NULL. */
NPK_API npk_status npk_blaschke(const npk_orbit_table* t, double theta_converging,
                                double theta_diverging, size_t window, double* ratios_out,
                                npk_blaschke_verdict* verdict, npk_strings** note_out);
NPK_API const char* npk_blaschke_verdict_name(npk_blaschke_verdict v);

NPK_API npk_status npk_separation(const npk_group* g, npk_complex z, int max_length,
                                  double* out);

/* ---- encoding ---------------------------------------------------------- */

typedef struct npk_params npk_params;
typedef struct npk_config npk_config;

typedef struct npk_params_info {
  npk_complex base;
  npk_complex satellites[3];
  double epsilon;
  double delta;
  int window;
  int separation_length;
  int perturbation_steps;
  double distances[6];
} npk_params_info;

NPK_API npk_status npk_params_make(const npk_group* g, int window, npk_complex base,
                                   npk_params** out);
NPK_API void npk_params_free(npk_params* p);
NPK_API npk_status npk_params_get(const npk_params* p, npk_params_info* out);

/* words is a comma-separated list over a, A, b, B ("e" is the identity). */
NPK_API npk_status npk_config_build(const npk_params* p, const char* words, npk_config** out);
NPK_API void npk_config_free(npk_config* c);
NPK_API size_t npk_config_size(const npk_config* c);
NPK_API npk_status npk_config_point(const npk_config* c, size_t index, npk_complex* z,
                                    char* word, size_t word_capacity, int* family);
NPK_API npk_status npk_config_permuted(const npk_config* c, const size_t* order, size_t n,
                                       npk_config** out);
/* Applies a disc automorphism to every point (labels are kept). */
NPK_API npk_status npk_config_transform(const npk_config* c, const npk_automorphism* f,
                                        npk_config** out);
/* Drops one point. */
NPK_API npk_status npk_config_remove(const npk_config* c, size_t index, npk_config** out);

/* Canonical comma-separated form of g A. */
NPK_API npk_status npk_translate(const char* g, const char* words, npk_strings** out);

typedef enum npk_equivalence_mode {
  NPK_MODE_WORD_SEARCH = 0,
  NPK_MODE_GEOMETRIC = 1
} npk_equivalence_mode;

typedef struct npk_verdict {
  int equivalent;
  int has_witness;
  char witness_word[64];
  npk_automorphism witness_map;
  npk_equivalence_mode mode;
  int core_length;
  int search_length;
  char caveat[256];
} npk_verdict;

NPK_API npk_status npk_word_search_equivalence(const npk_params* p, const char* a,
                                               const char* b, int search_length,
                                               npk_verdict* out);
NPK_API npk_status npk_geometric_equivalence(const npk_config* p, const npk_config* q,
                                             int search_length, npk_verdict* out);

#ifdef __cplusplus
}
#endif

#endif
