#include "cutspec/cutspec.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "cutspec/blowup.hpp"
#include "cutspec/bounds.hpp"
#include "cutspec/cut_distance.hpp"
#include "cutspec/cut_norms.hpp"
#include "cutspec/digest.hpp"
#include "cutspec/errors.hpp"
#include "cutspec/matrix_io.hpp"
#include "cutspec/report_json.hpp"
#include "cutspec/rng.hpp"
#include "cutspec/sampling.hpp"
#include "cutspec/spectral.hpp"
#include "cutspec/witnesses.hpp"

struct cutspec_matrix {
    cutspec::Matrix m;
};

namespace {

using namespace cutspec;
using nlohmann::json;

thread_local std::string g_error;
thread_local std::string g_kind;

cutspec_status fail(cutspec_status s, std::string kind, std::string message) {
    g_kind = std::move(kind);
    g_error = std::move(message);
    return s;
}

/// Runs body and converts exceptions into status codes plus the thread-local error.
template <class F>
cutspec_status guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return fail(static_cast<cutspec_status>(static_cast<int>(e.code())), e.kind(), e.what());
    } catch (const std::bad_alloc&) {
        return fail(CUTSPEC_ERR_INTERNAL, "internal_error", "out of memory");
    } catch (const nlohmann::json::exception& e) {
        return fail(CUTSPEC_ERR_INTERNAL, "internal_error", e.what());
    } catch (const std::exception& e) {
        return fail(CUTSPEC_ERR_INTERNAL, "internal_error", e.what());
    }
}

cutspec_status null_argument(const char* what) {
    return fail(CUTSPEC_ERR_INPUT, "invalid_argument", std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cutspec_status emit(const json& j, char** out, cutspec_status status = CUTSPEC_OK) {
    *out = copy_string(j.dump());
    return status;
}

cutspec_status adopt(Matrix m, cutspec_matrix** out) {
    *out = new cutspec_matrix{std::move(m)};
    return CUTSPEC_OK;
}

CutNormResult run_norm(const Matrix& a, NormKind kind, const cutspec_norm_options& o) {
    ExactOptions exact;
    exact.exact_limit = o.exact_limit;
    switch (o.method) {
        case CUTSPEC_NORM_EXACT: return norm_exact(a, kind, exact);
        case CUTSPEC_NORM_CERTIFIED: return norm_certified(a, kind, exact);
        case CUTSPEC_NORM_ANNEAL: return cut_norm_heuristic(a, kind, HeuristicOptions{o.seed, o.restarts});
        case CUTSPEC_NORM_ANGLE_GRID: return cut_norm_angle_grid(a, kind, o.angles);
        default: throw PreconditionError("unknown norm method " + std::to_string(o.method));
    }
}

DistanceMethod search_method(int m) {
    switch (m) {
        case CUTSPEC_SEARCH_AUTO: return DistanceMethod::automatic;
        case CUTSPEC_SEARCH_EXACT: return DistanceMethod::exact;
        case CUTSPEC_SEARCH_ANNEAL: return DistanceMethod::anneal;
        default: throw PreconditionError("unknown search method " + std::to_string(m));
    }
}

json reports_json(const std::vector<BoundReport>& reports, bool& all_hold) {
    json arr = json::array();
    all_hold = true;
    for (const auto& r : reports) {
        all_hold = all_hold && r.holds;
        arr.push_back(to_json(r));
    }
    return arr;
}

struct DeltaBound {
    double value = 0.0;
    Provenance source;
    json detail;
};

/// Smallest certified blow-up distance over k = 1..delta_k, or the caller's value.
DeltaBound delta_bound(const Matrix& a, const Matrix& b, bool square, const cutspec_check_options& o) {
    DeltaBound d;
    if (!std::isnan(o.delta_upper)) {
        d.value = o.delta_upper;
        d.source.method = "given";
        d.detail = {{"source", "given"}, {"value", o.delta_upper}};
        return d;
    }
    if (o.delta_k == 0) throw PreconditionError("delta_k must be positive");
    DistanceOptions opts;
    opts.method = search_method(o.delta_method);
    opts.seed = o.seed;
    const auto seq = square ? delta_square_estimate(a, b, o.delta_k, opts) : delta_boxminus_estimate(a, b, o.delta_k, opts);
    const DistanceResult* best = nullptr;
    json tried = json::array();
    for (const auto& r : seq) {
        tried.push_back(to_json(r));
        if (r.bound_kind == BoundKind::heuristic) continue;
        if (!best || r.value < best->value) best = &r;
    }
    if (!best) throw GuardRefusal("no certified distance bound was found; pass delta_upper explicitly");
    d.value = best->value;
    d.source = Provenance{to_string(best->method), best->blowup_k, o.seed};
    d.detail = {{"source", square ? "delta_hat_square" : "delta_hat_boxminus"},
                {"value", best->value},
                {"bound_kind", to_string(best->bound_kind)},
                {"sequence", tried}};
    return d;
}

std::vector<Complex> random_vector(Rng& rng, std::size_t n, bool real) {
    std::vector<Complex> v(n);
    for (auto& z : v) {
        const double re = 2.0 * uniform01(rng) - 1.0;
        z = real ? Complex(re, 0.0) : Complex(re, 2.0 * uniform01(rng) - 1.0);
    }
    return v;
}

cutspec_status run_check(const std::string& name, const Matrix& a, const Matrix* b, const cutspec_check_options& o,
                         char** out) {
    ExactOptions exact;
    exact.exact_limit = o.exact_limit;
    std::vector<BoundReport> reports;
    json extra = json::object();

    auto need_b = [&]() -> const Matrix& {
        if (!b) throw PreconditionError(name + " needs a second matrix");
        return *b;
    };

    if (name == "gin1" || name == "gin1.1") {
        reports.push_back(check_gin1(a, exact));
    } else if (name == "gin2") {
        reports.push_back(check_gin2(a, o.constant, exact));
    } else if (name == "gin3") {
        reports.push_back(check_gin3(a, exact));
    } else if (name == "eml") {
        reports.push_back(check_eml(a, exact));
    } else if (name == "ceml" || name == "sin1" || name == "sin2") {
        for (auto& r : check_ceml(a, o.constant, exact))
            if (name == "ceml" || r.name == name) reports.push_back(std::move(r));
        if (reports.empty()) throw PreconditionError(name + " needs m, n >= 2");
    } else if (name.rfind("th2", 0) == 0 || name == "th3") {
        const bool th2 = name != "th3";
        Matrix x = a;
        Matrix y = need_b();
        if (o.rescale) {
            auto [xs, fx] = rescale_to_unit(x);
            auto [ys, fy] = rescale_to_unit(y);
            x = std::move(xs);
            y = std::move(ys);
            extra["rescale"] = {{"a", fx}, {"b", fy}};
        }
        const DeltaBound d = delta_bound(x, y, th2, o);
        extra["delta"] = d.detail;
        if (!th2) {
            if (o.index == 0) reports = check_th3_all(x, y, d.value, d.source);
            else reports.push_back(check_th3(x, y, d.value, o.index, d.source));
        } else {
            int clause = o.clause;
            if (name == "th2-i") clause = 0;
            else if (name == "th2-iia") clause = 1;
            else if (name == "th2-iib") clause = 2;
            else if (name != "th2") throw PreconditionError("unknown inequality " + name);
            const char* names[] = {"th2-i", "th2-iia", "th2-iib"};
            if (o.index == 0) {
                for (auto& r : check_th2_all(x, y, d.value, d.source))
                    if (clause < 0 || r.name == names[clause]) reports.push_back(std::move(r));
            } else {
                if (clause < 0 || clause > 2) throw PreconditionError("th2 with an index needs a clause");
                reports.push_back(check_th2(x, y, d.value, static_cast<Th2Clause>(clause), o.index, d.source));
            }
        }
    } else if (name == "le1") {
        Rng rng = make_rng(o.seed, 0);
        const auto xv = random_vector(rng, a.cols(), a.is_real());
        const auto yv = random_vector(rng, a.rows(), a.is_real());
        reports.push_back(bilinear_form_bound_check(a, xv, yv, norm_certified(a, NormKind::square, exact)));
        reports.back().provenance.seed = o.seed;
    } else if (name == "lapp") {
        const auto s = singular_values(a, true);
        const auto& v = s.right.front();
        reports.push_back(check_lapp(v, o.eps));
        extra["vector"] = "top right singular vector";
    } else if (name == "pro1") {
        reports.push_back(check_blowup_spectrum_hermitian(a, o.k));
    } else if (name == "pro2") {
        reports.push_back(check_blowup_spectrum_rect(a, o.p, o.q));
    } else if (name == "prop") {
        reports.push_back(check_blowup_eigen_ratio(a, o.k));
    } else if (name == "interlacing") {
        const auto s = sample_principal(a, std::min(o.k, a.rows()), o.seed);
        reports.push_back(check_interlacing(a, s.b, s.x));
        reports.back().provenance.seed = o.seed;
    } else {
        throw PreconditionError("unknown inequality " + name);
    }

    bool all_hold = true;
    json j = {{"check", name}, {"reports", reports_json(reports, all_hold)}};
    j["holds"] = all_hold;
    for (auto& [key, value] : extra.items()) j[key] = value;
    return emit(j, out, all_hold ? CUTSPEC_OK : CUTSPEC_VIOLATED);
}

}  // namespace

extern "C" {

const char* cutspec_version(void) { return CUTSPEC_VERSION_STRING; }
const char* cutspec_last_error(void) { return g_error.c_str(); }
const char* cutspec_last_error_kind(void) { return g_kind.c_str(); }
void cutspec_string_free(char* s) { std::free(s); }

cutspec_status cutspec_matrix_load(const char* path, cutspec_matrix** out) {
    if (!path || !out) return null_argument("path and out");
    return guarded([&] { return adopt(load_matrix_file(path), out); });
}

cutspec_status cutspec_matrix_parse(const char* text, cutspec_format format, cutspec_matrix** out) {
    if (!text || !out) return null_argument("text and out");
    return guarded([&] {
        const auto f = format == CUTSPEC_FORMAT_CSV ? MatrixFormat::csv : MatrixFormat::matrix_market;
        return adopt(parse_matrix(text, f), out);
    });
}

cutspec_status cutspec_matrix_from_real(size_t rows, size_t cols, const double* row_major, cutspec_matrix** out) {
    if (!row_major || !out) return null_argument("data and out");
    return guarded([&] { return adopt(Matrix::from_real(rows, cols, std::span<const double>(row_major, rows * cols)), out); });
}

cutspec_status cutspec_matrix_from_complex(size_t rows, size_t cols, const double* row_major, cutspec_matrix** out) {
    if (!row_major || !out) return null_argument("data and out");
    return guarded([&] {
        std::vector<Complex> e(rows * cols);
        for (std::size_t t = 0; t < e.size(); ++t) e[t] = Complex(row_major[2 * t], row_major[2 * t + 1]);
        return adopt(Matrix(rows, cols, std::move(e), HermitianCheck::tolerant), out);
    });
}

void cutspec_matrix_free(cutspec_matrix* m) { delete m; }

size_t cutspec_matrix_rows(const cutspec_matrix* m) { return m ? m->m.rows() : 0; }
size_t cutspec_matrix_cols(const cutspec_matrix* m) { return m ? m->m.cols() : 0; }
int cutspec_matrix_is_real(const cutspec_matrix* m) { return m && m->m.is_real() ? 1 : 0; }
int cutspec_matrix_is_hermitian(const cutspec_matrix* m) { return m && m->m.is_hermitian() ? 1 : 0; }

cutspec_status cutspec_matrix_entry(const cutspec_matrix* m, size_t i, size_t j, double* re, double* im) {
    if (!m || !re || !im) return null_argument("matrix and outputs");
    return guarded([&] {
        const Complex z = m->m.at(i, j);
        *re = z.real();
        *im = z.imag();
        return CUTSPEC_OK;
    });
}

cutspec_status cutspec_matrix_digest(const cutspec_matrix* m, char** out) {
    if (!m || !out) return null_argument("matrix and out");
    return guarded([&] {
        *out = copy_string(matrix_digest(m->m));
        return CUTSPEC_OK;
    });
}

cutspec_status cutspec_matrix_save(const cutspec_matrix* m, const char* path) {
    if (!m || !path) return null_argument("matrix and path");
    return guarded([&] {
        save_matrix_file(path, m->m);
        return CUTSPEC_OK;
    });
}

cutspec_status cutspec_witness(const char* name, size_t n, cutspec_matrix** out) {
    if (!name || !out) return null_argument("name and out");
    return guarded([&] {
        const std::string s = name;
        if (s == "star") return adopt(star_witness(n), out);
        if (s == "hilbert") return adopt(hilbertish_witness(n), out);
        if (s == "ceml") return adopt(ceml_block_witness(n), out);
        throw PreconditionError("unknown witness " + s + " (expected star, hilbert or ceml)");
    });
}

void cutspec_norm_options_init(cutspec_norm_options* o) {
    if (!o) return;
    o->which = CUTSPEC_NORM_BOTH;
    o->method = CUTSPEC_NORM_EXACT;
    o->seed = 0;
    o->restarts = 16;
    o->exact_limit = ExactOptions{}.exact_limit;
    o->angles = 720;
}

cutspec_status cutspec_cut_norm(const cutspec_matrix* m, const cutspec_norm_options* o, double* value) {
    if (!m || !o || !value) return null_argument("matrix, options and value");
    if (o->which != CUTSPEC_NORM_SQUARE && o->which != CUTSPEC_NORM_BOXDOT) {
        return fail(CUTSPEC_ERR_INPUT, "invalid_argument", "which must name a single norm");
    }
    return guarded([&] {
        *value = run_norm(m->m, o->which == CUTSPEC_NORM_SQUARE ? NormKind::square : NormKind::boxdot, *o).value;
        return CUTSPEC_OK;
    });
}

cutspec_status cutspec_singular_values(const cutspec_matrix* m, double* out, size_t capacity, size_t* count) {
    if (!m || !count) return null_argument("matrix and count");
    return guarded([&] {
        const auto s = singular_values(m->m).values;
        *count = s.size();
        for (std::size_t i = 0; i < s.size() && i < capacity && out; ++i) out[i] = s[i];
        return CUTSPEC_OK;
    });
}

cutspec_status cutspec_norms_json(const cutspec_matrix* m, const cutspec_norm_options* o, char** out) {
    if (!m || !o || !out) return null_argument("matrix, options and out");
    return guarded([&] {
        json j = json::object();
        if (o->which & CUTSPEC_NORM_SQUARE) j["square"] = to_json(run_norm(m->m, NormKind::square, *o));
        if (o->which & CUTSPEC_NORM_BOXDOT) j["boxdot"] = to_json(run_norm(m->m, NormKind::boxdot, *o));
        if (j.empty()) throw PreconditionError("no norm selected");
        return emit(j, out);
    });
}

cutspec_status cutspec_spectrum_json(const cutspec_matrix* m, char** out) {
    if (!m || !out) return null_argument("matrix and out");
    return guarded([&] {
        json j = {{"singular", to_json(singular_values(m->m))}};
        if (m->m.is_hermitian()) j["hermitian"] = to_json(hermitian_eigenvalues(m->m));
        return emit(j, out);
    });
}

void cutspec_check_options_init(cutspec_check_options* o) {
    if (!o) return;
    o->constant = kLogBoundConstant;
    o->delta_upper = std::numeric_limits<double>::quiet_NaN();
    o->delta_method = CUTSPEC_SEARCH_EXACT;
    o->delta_k = 1;
    o->seed = 0;
    o->index = 0;
    o->clause = -1;
    o->k = 2;
    o->p = 2;
    o->q = 2;
    o->eps = 1.0 / 3.0;
    o->exact_limit = ExactOptions{}.exact_limit;
    o->rescale = 1;
}

cutspec_status cutspec_check_json(const char* name, const cutspec_matrix* a, const cutspec_matrix* b,
                                  const cutspec_check_options* o, char** out) {
    if (!name || !a || !o || !out) return null_argument("name, matrix, options and out");
    return guarded([&] { return run_check(name, a->m, b ? &b->m : nullptr, *o, out); });
}

void cutspec_distance_options_init(cutspec_distance_options* o) {
    if (!o) return;
    o->kind = CUTSPEC_DISTANCE_SQUARE;
    o->kmax = 1;
    o->method = CUTSPEC_SEARCH_AUTO;
    o->seed = 0;
    o->restarts = DistanceOptions{}.restarts;
    o->proposals = 0;
}

cutspec_status cutspec_distance_json(const cutspec_matrix* a, const cutspec_matrix* b, const cutspec_distance_options* o,
                                     char** out) {
    if (!a || !b || !o || !out) return null_argument("matrices, options and out");
    return guarded([&] {
        DistanceOptions opts;
        opts.method = search_method(o->method);
        opts.seed = o->seed;
        opts.restarts = o->restarts;
        opts.proposals = o->proposals;
        const bool square = o->kind == CUTSPEC_DISTANCE_SQUARE;
        const auto seq = square ? delta_square_estimate(a->m, b->m, o->kmax, opts)
                                : delta_boxminus_estimate(a->m, b->m, o->kmax, opts);
        json arr = json::array();
        bool monotone = true;
        for (std::size_t t = 0; t < seq.size(); ++t) {
            arr.push_back(to_json(seq[t]));
            if (t > 0 && seq[t].value > seq[t - 1].value + 1e-12) monotone = false;
        }
        json j = {{"kind", to_string(square ? DistanceKind::square : DistanceKind::boxminus)},
                  {"kmax", o->kmax},
                  {"sequence", arr},
                  {"nonincreasing", monotone}};
        return emit(j, out);
    });
}

cutspec_status cutspec_sample_json(const cutspec_matrix* a, size_t k, size_t trials, uint64_t seed, int verbose,
                                   char** out) {
    if (!a || !out) return null_argument("matrix and out");
    return guarded([&] { return emit(to_json(run_ssamp_experiment(a->m, k, trials, seed), verbose != 0), out); });
}

cutspec_status cutspec_quantize_json(const cutspec_matrix* v, double eps, int normalize, char** out) {
    if (!v || !out) return null_argument("vector and out");
    return guarded([&] {
        if (v->m.rows() != 1 && v->m.cols() != 1) throw DimensionError("quantize needs a single row or column");
        std::vector<Complex> x(v->m.entries().begin(), v->m.entries().end());
        if (normalize) {
            const double f = v->m.aggregates().frobenius;
            if (f == 0.0) throw PreconditionError("cannot normalise the zero vector");
            for (auto& z : x) z /= f;
        }
        const QuantizedVector q = quantize_unit_vector(x, eps);
        json j = to_json(q);
        j["eps"] = eps;
        j["n"] = x.size();
        j["holds"] = q.error <= eps && q.distinct <= q.cap;
        return emit(j, out);
    });
}

}  // extern "C"
