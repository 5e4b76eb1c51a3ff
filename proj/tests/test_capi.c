/* Exercises the C interface from a C translation unit. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "cutspec/cutspec.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                               \
        }                                                             \
    } while (0)

static void test_norms(void) {
    const double ones[] = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    cutspec_matrix* j4 = NULL;
    EXPECT(cutspec_matrix_from_real(4, 4, ones, &j4) == CUTSPEC_OK);
    EXPECT(cutspec_matrix_rows(j4) == 4 && cutspec_matrix_cols(j4) == 4);
    EXPECT(cutspec_matrix_is_real(j4) && cutspec_matrix_is_hermitian(j4));

    cutspec_norm_options o;
    cutspec_norm_options_init(&o);
    double v = 0;
    o.which = CUTSPEC_NORM_SQUARE;
    EXPECT(cutspec_cut_norm(j4, &o, &v) == CUTSPEC_OK && fabs(v - 1.0) < 1e-15);
    o.which = CUTSPEC_NORM_BOXDOT;
    EXPECT(cutspec_cut_norm(j4, &o, &v) == CUTSPEC_OK && fabs(v - 4.0) < 1e-15);
    o.which = CUTSPEC_NORM_BOTH;
    EXPECT(cutspec_cut_norm(j4, &o, &v) == CUTSPEC_ERR_INPUT);

    double s[4];
    size_t count = 0;
    EXPECT(cutspec_singular_values(j4, s, 4, &count) == CUTSPEC_OK && count == 4);
    EXPECT(fabs(s[0] - 4.0) < 1e-12 && fabs(s[1]) < 1e-12);

    char* json = NULL;
    EXPECT(cutspec_norms_json(j4, &o, &json) == CUTSPEC_OK);
    EXPECT(json && strstr(json, "\"boxdot\"") && strstr(json, "\"square\""));
    cutspec_string_free(json);

    char* digest = NULL;
    EXPECT(cutspec_matrix_digest(j4, &digest) == CUTSPEC_OK && strncmp(digest, "sha256:", 7) == 0);
    cutspec_string_free(digest);
    cutspec_matrix_free(j4);
}

static void test_errors(void) {
    cutspec_matrix* m = NULL;
    EXPECT(cutspec_matrix_parse("not a matrix", CUTSPEC_FORMAT_MATRIX_MARKET, &m) == CUTSPEC_ERR_INPUT);
    EXPECT(strcmp(cutspec_last_error_kind(), "parse_error") == 0);
    EXPECT(strlen(cutspec_last_error()) > 0);
    EXPECT(cutspec_witness("nope", 3, &m) == CUTSPEC_ERR_INPUT);
    EXPECT(cutspec_matrix_load(NULL, &m) == CUTSPEC_ERR_INPUT);

    /* 30 x 30 exceeds the exact limit and is not rank one. */
    cutspec_matrix* star = NULL;
    EXPECT(cutspec_witness("star", 15, &star) == CUTSPEC_OK);
    cutspec_norm_options o;
    cutspec_norm_options_init(&o);
    o.which = CUTSPEC_NORM_SQUARE;
    o.exact_limit = 10;
    double v = 0;
    EXPECT(cutspec_cut_norm(star, &o, &v) == CUTSPEC_ERR_GUARD);
    EXPECT(strcmp(cutspec_last_error_kind(), "guard_refusal") == 0);
    cutspec_matrix_free(star);
}

static void test_checks(void) {
    cutspec_matrix* star = NULL;
    EXPECT(cutspec_witness("star", 4, &star) == CUTSPEC_OK);
    cutspec_check_options o;
    cutspec_check_options_init(&o);
    char* json = NULL;
    EXPECT(cutspec_check_json("gin1", star, NULL, &o, &json) == CUTSPEC_OK);
    EXPECT(json && strstr(json, "\"holds\":true"));
    cutspec_string_free(json);
    EXPECT(cutspec_check_json("unknown", star, NULL, &o, &json) == CUTSPEC_ERR_INPUT);
    EXPECT(cutspec_check_json("th2", star, NULL, &o, &json) == CUTSPEC_ERR_INPUT);

    /* A zero row and a star differ; th2 runs end to end with exact k = 1. */
    const double a[] = {0, 1, 1, 0};
    const double b[] = {0, 1, 1, 1, 0, 0, 1, 0, 0};
    cutspec_matrix *ma = NULL, *mb = NULL;
    EXPECT(cutspec_matrix_from_real(2, 2, a, &ma) == CUTSPEC_OK);
    EXPECT(cutspec_matrix_from_real(3, 3, b, &mb) == CUTSPEC_OK);
    EXPECT(cutspec_check_json("th2", ma, mb, &o, &json) == CUTSPEC_OK);
    EXPECT(json && strstr(json, "delta_hat_square"));
    cutspec_string_free(json);

    cutspec_distance_options d;
    cutspec_distance_options_init(&d);
    d.kmax = 2;
    EXPECT(cutspec_distance_json(ma, ma, &d, &json) == CUTSPEC_OK);
    EXPECT(json && strstr(json, "\"value\":0.0"));
    cutspec_string_free(json);

    cutspec_matrix_free(ma);
    cutspec_matrix_free(mb);
    cutspec_matrix_free(star);
}

static void test_complex_and_quantize(void) {
    const double h[] = {1, 0, 0, 1, 0, -1, 1, 0};
    cutspec_matrix* m = NULL;
    EXPECT(cutspec_matrix_from_complex(2, 2, h, &m) == CUTSPEC_OK);
    EXPECT(!cutspec_matrix_is_real(m) && cutspec_matrix_is_hermitian(m));
    double re = 0, im = 0;
    EXPECT(cutspec_matrix_entry(m, 1, 0, &re, &im) == CUTSPEC_OK && re == 0 && im == -1);
    EXPECT(cutspec_matrix_entry(m, 2, 0, &re, &im) == CUTSPEC_ERR_INPUT);
    cutspec_matrix_free(m);

    const double v[] = {3, 4};
    cutspec_matrix* col = NULL;
    EXPECT(cutspec_matrix_from_real(2, 1, v, &col) == CUTSPEC_OK);
    char* json = NULL;
    EXPECT(cutspec_quantize_json(col, 0.1, 1, &json) == CUTSPEC_OK);
    EXPECT(json && strstr(json, "\"holds\":true"));
    cutspec_string_free(json);
    cutspec_matrix_free(col);
}

int main(void) {
    EXPECT(strlen(cutspec_version()) > 0);
    test_norms();
    test_errors();
    test_checks();
    test_complex_and_quantize();
    if (failures) fprintf(stderr, "%d failure(s)\n", failures);
    return failures ? 1 : 0;
}
