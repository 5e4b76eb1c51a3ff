#ifndef CUTSPEC_H
#define CUTSPEC_H

/*
 * C interface to the cutspec library.
 *
 * Every fallible call returns a cutspec_status. On failure the message and a
 * short machine-readable kind (for example "guard_refusal") are available
 * from cutspec_last_error() and cutspec_last_error_kind() on the same thread
 * until the next failing call. Strings returned through char** out-parameters
 * belong to the caller and are released with cutspec_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CUTSPEC_API __declspec(dllexport)
#else
#define CUTSPEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cutspec_status {
    CUTSPEC_OK = 0,
    CUTSPEC_VIOLATED = 1, /* a checked inequality failed; the JSON is still produced */
    CUTSPEC_ERR_INPUT = 2,
    CUTSPEC_ERR_GUARD = 3,
    CUTSPEC_ERR_NUMERICAL = 4,
    CUTSPEC_ERR_INTERNAL = 5
} cutspec_status;

typedef enum cutspec_format { CUTSPEC_FORMAT_MATRIX_MARKET = 0, CUTSPEC_FORMAT_CSV = 1 } cutspec_format;

typedef enum cutspec_norm_kind { CUTSPEC_NORM_SQUARE = 1, CUTSPEC_NORM_BOXDOT = 2, CUTSPEC_NORM_BOTH = 3 } cutspec_norm_kind;

typedef enum cutspec_norm_method {
    CUTSPEC_NORM_EXACT = 0,     /* exact enumeration, refuses above the limit */
    CUTSPEC_NORM_CERTIFIED = 1, /* exact, or the rank-one route for larger inputs */
    CUTSPEC_NORM_ANNEAL = 2,    /* restarted local search, lower bound */
    CUTSPEC_NORM_ANGLE_GRID = 3 /* rotated real-part alternation, lower bound */
} cutspec_norm_method;

typedef enum cutspec_search_method {
    CUTSPEC_SEARCH_AUTO = 0,
    CUTSPEC_SEARCH_EXACT = 1,
    CUTSPEC_SEARCH_ANNEAL = 2
} cutspec_search_method;

typedef enum cutspec_distance_kind { CUTSPEC_DISTANCE_SQUARE = 0, CUTSPEC_DISTANCE_BOXMINUS = 1 } cutspec_distance_kind;

typedef struct cutspec_matrix cutspec_matrix;

CUTSPEC_API const char* cutspec_version(void);
CUTSPEC_API const char* cutspec_last_error(void);
CUTSPEC_API const char* cutspec_last_error_kind(void);
CUTSPEC_API void cutspec_string_free(char* s);

/* ---- matrices ---- */

/* Format from the extension (.mtx, .mm) or the MatrixMarket banner, else CSV. */
CUTSPEC_API cutspec_status cutspec_matrix_load(const char* path, cutspec_matrix** out);
CUTSPEC_API cutspec_status cutspec_matrix_parse(const char* text, cutspec_format format, cutspec_matrix** out);
CUTSPEC_API cutspec_status cutspec_matrix_from_real(size_t rows, size_t cols, const double* row_major,
                                                    cutspec_matrix** out);
/* row_major holds rows * cols (re, im) pairs. */
CUTSPEC_API cutspec_status cutspec_matrix_from_complex(size_t rows, size_t cols, const double* row_major,
                                                       cutspec_matrix** out);
CUTSPEC_API void cutspec_matrix_free(cutspec_matrix* m);

CUTSPEC_API size_t cutspec_matrix_rows(const cutspec_matrix* m);
CUTSPEC_API size_t cutspec_matrix_cols(const cutspec_matrix* m);
CUTSPEC_API int cutspec_matrix_is_real(const cutspec_matrix* m);
CUTSPEC_API int cutspec_matrix_is_hermitian(const cutspec_matrix* m);
CUTSPEC_API cutspec_status cutspec_matrix_entry(const cutspec_matrix* m, size_t i, size_t j, double* re, double* im);
/* "sha256:<hex>" content digest. */
CUTSPEC_API cutspec_status cutspec_matrix_digest(const cutspec_matrix* m, char** out);
/* Matrix Market array format. */
CUTSPEC_API cutspec_status cutspec_matrix_save(const cutspec_matrix* m, const char* path);

/* name is "star", "hilbert" or "ceml". */
CUTSPEC_API cutspec_status cutspec_witness(const char* name, size_t n, cutspec_matrix** out);

/* ---- numeric entry points ---- */

typedef struct cutspec_norm_options {
    int which;          /* cutspec_norm_kind; BOTH is only meaningful for the JSON call */
    int method;         /* cutspec_norm_method */
    uint64_t seed;
    size_t restarts;    /* anneal */
    size_t exact_limit; /* largest smaller dimension enumerated exactly */
    size_t angles;      /* angle grid */
} cutspec_norm_options;

CUTSPEC_API void cutspec_norm_options_init(cutspec_norm_options* o);

CUTSPEC_API cutspec_status cutspec_cut_norm(const cutspec_matrix* m, const cutspec_norm_options* o, double* value);

/* Descending singular values; *count receives min(rows, cols). */
CUTSPEC_API cutspec_status cutspec_singular_values(const cutspec_matrix* m, double* out, size_t capacity,
                                                   size_t* count);

/* ---- JSON entry points ---- */

CUTSPEC_API cutspec_status cutspec_norms_json(const cutspec_matrix* m, const cutspec_norm_options* o, char** out);

/* Singular values, plus eigenvalues when the matrix is Hermitian. */
CUTSPEC_API cutspec_status cutspec_spectrum_json(const cutspec_matrix* m, char** out);

typedef struct cutspec_check_options {
    double constant;      /* C in the logarithmic bounds (gin2, sin2) */
    double delta_upper;   /* th2/th3: a certified distance bound; NaN computes one */
    int delta_method;     /* cutspec_search_method used when computing the distance */
    size_t delta_k;       /* blow-up levels searched when computing the distance */
    uint64_t seed;
    size_t index;         /* th2/th3 index, 0 for every admissible one */
    int clause;           /* th2: -1 all, 0 (i), 1 (ii.a), 2 (ii.b) */
    size_t k;             /* pro1, prop: blow-up factor; interlacing: subset size */
    size_t p, q;          /* pro2 */
    double eps;           /* lapp */
    size_t exact_limit;
    int rescale;          /* th2/th3: scale inputs so that |A|_inf <= 1 */
} cutspec_check_options;

CUTSPEC_API void cutspec_check_options_init(cutspec_check_options* o);

/*
 * name: gin1, gin1.1, gin2, gin3, eml, ceml, sin1, sin2, th2, th2-i, th2-iia,
 * th2-iib, th3, le1, lapp, pro1, pro2, prop, interlacing. b is required for
 * th2 and th3 and ignored otherwise. Returns CUTSPEC_VIOLATED when any
 * evaluated inequality fails.
 */
CUTSPEC_API cutspec_status cutspec_check_json(const char* name, const cutspec_matrix* a, const cutspec_matrix* b,
                                              const cutspec_check_options* o, char** out);

typedef struct cutspec_distance_options {
    int kind;   /* cutspec_distance_kind */
    size_t kmax;
    int method; /* cutspec_search_method */
    uint64_t seed;
    size_t restarts;
    size_t proposals; /* 0: 200 * rows * cols */
} cutspec_distance_options;

CUTSPEC_API void cutspec_distance_options_init(cutspec_distance_options* o);

CUTSPEC_API cutspec_status cutspec_distance_json(const cutspec_matrix* a, const cutspec_matrix* b,
                                                 const cutspec_distance_options* o, char** out);

CUTSPEC_API cutspec_status cutspec_sample_json(const cutspec_matrix* a, size_t k, size_t trials, uint64_t seed,
                                               int verbose, char** out);

/* v is a single row or column; normalize rescales it to unit length first. */
CUTSPEC_API cutspec_status cutspec_quantize_json(const cutspec_matrix* v, double eps, int normalize, char** out);

#ifdef __cplusplus
}
#endif

#endif
