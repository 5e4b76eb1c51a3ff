// cutspec command-line front end. Talks to the library only through cutspec.h.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cutspec/cutspec.h"

using nlohmann::json;

namespace {

struct Failure {
    int status;
    std::string kind;
    std::string message;
};

[[noreturn]] void throw_last(cutspec_status s) {
    throw Failure{static_cast<int>(s), cutspec_last_error_kind(), cutspec_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw Failure{CUTSPEC_ERR_INPUT, "usage_error", message}; }

void check(cutspec_status s) {
    if (s != CUTSPEC_OK && s != CUTSPEC_VIOLATED) throw_last(s);
}

using MatrixPtr = std::unique_ptr<cutspec_matrix, decltype(&cutspec_matrix_free)>;

MatrixPtr load(const std::string& path) {
    cutspec_matrix* m = nullptr;
    check(cutspec_matrix_load(path.c_str(), &m));
    return MatrixPtr(m, &cutspec_matrix_free);
}

std::string take(char* s) {
    std::string out = s ? s : "";
    cutspec_string_free(s);
    return out;
}

std::string digest(const cutspec_matrix* m) {
    char* s = nullptr;
    check(cutspec_matrix_digest(m, &s));
    return take(s);
}

/// Calls a JSON-producing entry point and returns the parsed result with its status.
template <class F>
std::pair<json, cutspec_status> call_json(F&& f) {
    char* out = nullptr;
    const cutspec_status s = f(&out);
    check(s);
    return {json::parse(take(out)), s};
}

// ---- pretty printing ----

std::string cell(const json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(10) << v.get<double>();
        return os.str();
    }
    if (v.is_array() && v.size() > 8) return "[" + std::to_string(v.size()) + " items]";
    return v.dump();
}

void table(std::ostream& os, const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(head.size());
    for (std::size_t c = 0; c < head.size(); ++c) {
        w[c] = head[c].size();
        for (const auto& r : rows) w[c] = std::max(w[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "  " : "") << std::left << std::setw(static_cast<int>(w[c])) << r[c];
        os << '\n';
    };
    line(head);
    std::vector<std::string> rule;
    for (auto x : w) rule.emplace_back(x, '-');
    line(rule);
    for (const auto& r : rows) line(r);
}

void pretty_key_values(std::ostream& os, const json& j) {
    std::vector<std::vector<std::string>> rows;
    for (auto& [k, v] : j.items()) {
        if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_object())) continue;
        rows.push_back({k, cell(v)});
    }
    table(os, {"field", "value"}, rows);
}

void pretty(std::ostream& os, const std::string& command, const json& report) {
    const json& r = report["results"];
    os << "cutspec " << report["version"].get<std::string>() << "  " << command << '\n';
    for (const auto& in : report["inputs"]) os << "input " << in["path"].get<std::string>() << "  " << in["digest"].get<std::string>() << '\n';
    os << '\n';
    if (command == "norms") {
        std::vector<std::vector<std::string>> rows;
        for (auto& [k, v] : r.items()) rows.push_back({k, cell(v["value"]), cell(v["upper_bound"]), cell(v["method"]), cell(v["X"]), cell(v["Y"])});
        table(os, {"norm", "value", "upper_bound", "method", "X", "Y"}, rows);
    } else if (command == "spectrum") {
        for (auto& [k, v] : r.items()) {
            std::vector<std::vector<std::string>> rows;
            std::size_t i = 1;
            for (const auto& x : v["values"]) rows.push_back({std::to_string(i++), cell(x)});
            table(os, {"i", k}, rows);
            os << '\n';
        }
    } else if (command == "check") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& b : r["reports"]) rows.push_back({cell(b["name"]), cell(b["lhs"]), cell(b["rhs"]), cell(b["slack"]), b["holds"].get<bool>() ? "yes" : "NO"});
        table(os, {"inequality", "lhs", "rhs", "slack", "holds"}, rows);
        if (r.contains("delta")) os << "\ndelta " << cell(r["delta"]["value"]) << " (" << cell(r["delta"]["source"]) << ")\n";
    } else if (command == "distance") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& d : r["sequence"]) rows.push_back({cell(d["k"]), cell(d["value"]), cell(d["method"]), cell(d["bound_kind"])});
        table(os, {"k", "value", "method", "bound"}, rows);
    } else {
        pretty_key_values(os, r);
    }
    os << "\nwall time " << report["wall_time_ms"].get<double>() << " ms\n";
}

// ---- subcommands ----

struct Run {
    json results;
    json inputs = json::array();
    std::optional<std::uint64_t> seed;
    int exit_code = 0;
};

void add_input(Run& run, const std::string& path, const cutspec_matrix* m) {
    run.inputs.push_back({{"path", path}, {"digest", digest(m)}});
}

int search_method(const std::string& s) {
    if (s == "auto") return CUTSPEC_SEARCH_AUTO;
    if (s == "exact") return CUTSPEC_SEARCH_EXACT;
    if (s == "anneal") return CUTSPEC_SEARCH_ANNEAL;
    usage_error("unknown search method " + s);
}

struct NormsArgs {
    std::string file, which = "both", method = "exact";
    std::uint64_t seed = 0;
    std::size_t restarts = 16, exact_limit = 22, angles = 720;
};

Run cmd_norms(const NormsArgs& a) {
    Run run;
    auto m = load(a.file);
    add_input(run, a.file, m.get());
    cutspec_norm_options o;
    cutspec_norm_options_init(&o);
    o.which = a.which == "square" ? CUTSPEC_NORM_SQUARE : a.which == "boxdot" ? CUTSPEC_NORM_BOXDOT : CUTSPEC_NORM_BOTH;
    if (a.method == "exact") o.method = CUTSPEC_NORM_EXACT;
    else if (a.method == "certified") o.method = CUTSPEC_NORM_CERTIFIED;
    else if (a.method == "anneal") o.method = CUTSPEC_NORM_ANNEAL;
    else o.method = CUTSPEC_NORM_ANGLE_GRID;
    o.seed = a.seed;
    o.restarts = a.restarts;
    o.exact_limit = a.exact_limit;
    o.angles = a.angles;
    if (o.method == CUTSPEC_NORM_ANNEAL) run.seed = a.seed;
    run.results = call_json([&](char** out) { return cutspec_norms_json(m.get(), &o, out); }).first;
    return run;
}

Run cmd_spectrum(const std::string& file) {
    Run run;
    auto m = load(file);
    add_input(run, file, m.get());
    run.results = call_json([&](char** out) { return cutspec_spectrum_json(m.get(), out); }).first;
    return run;
}

struct CheckArgs {
    std::string name;
    std::vector<std::string> files;
    std::optional<double> delta;
    std::string delta_from = "exact-k1";
    std::string clause;
    double constant = 1e5, eps = 1.0 / 3.0;
    std::uint64_t seed = 0;
    std::size_t index = 0, k = 2, p = 2, q = 2, exact_limit = 22;
    bool no_rescale = false;
};

Run cmd_check(const CheckArgs& a) {
    Run run;
    if (a.files.empty() || a.files.size() > 2) usage_error("check takes one or two matrix files");
    auto first = load(a.files[0]);
    add_input(run, a.files[0], first.get());
    std::optional<MatrixPtr> second;
    if (a.files.size() == 2) {
        second.emplace(load(a.files[1]));
        add_input(run, a.files[1], second->get());
    }
    cutspec_check_options o;
    cutspec_check_options_init(&o);
    o.constant = a.constant;
    o.seed = a.seed;
    o.index = a.index;
    o.k = a.k;
    o.p = a.p;
    o.q = a.q;
    o.eps = a.eps;
    o.exact_limit = a.exact_limit;
    o.rescale = a.no_rescale ? 0 : 1;
    if (a.clause == "i") o.clause = 0;
    else if (a.clause == "iia") o.clause = 1;
    else if (a.clause == "iib") o.clause = 2;
    else if (!a.clause.empty()) usage_error("clause must be i, iia or iib");
    if (a.delta) {
        o.delta_upper = *a.delta;
    } else {
        static const std::regex form(R"((auto|exact|anneal)-k([1-9][0-9]*))");
        std::smatch m;
        if (!std::regex_match(a.delta_from, m, form)) usage_error("--delta-from expects <auto|exact|anneal>-k<K>, e.g. exact-k1");
        o.delta_method = search_method(m[1]);
        o.delta_k = std::stoul(m[2]);
    }
    const bool seeded = a.name == "le1" || a.name == "interlacing" ||
                        ((a.name.rfind("th", 0) == 0) && !a.delta && o.delta_method != CUTSPEC_SEARCH_EXACT);
    if (seeded) run.seed = a.seed;
    auto [j, s] = call_json([&](char** out) {
        return cutspec_check_json(a.name.c_str(), first.get(), second ? second->get() : nullptr, &o, out);
    });
    run.results = std::move(j);
    run.exit_code = s == CUTSPEC_VIOLATED ? 1 : 0;
    return run;
}

struct DistanceArgs {
    std::string a, b, kind = "square", method = "auto";
    std::size_t kmax = 1, restarts = 4, proposals = 0;
    std::uint64_t seed = 0;
};

Run cmd_distance(const DistanceArgs& a) {
    Run run;
    auto x = load(a.a);
    auto y = load(a.b);
    add_input(run, a.a, x.get());
    add_input(run, a.b, y.get());
    cutspec_distance_options o;
    cutspec_distance_options_init(&o);
    o.kind = a.kind == "boxminus" ? CUTSPEC_DISTANCE_BOXMINUS : CUTSPEC_DISTANCE_SQUARE;
    o.kmax = a.kmax;
    o.method = search_method(a.method);
    o.seed = a.seed;
    o.restarts = a.restarts;
    o.proposals = a.proposals;
    run.seed = a.seed;
    run.results = call_json([&](char** out) { return cutspec_distance_json(x.get(), y.get(), &o, out); }).first;
    return run;
}

struct SampleArgs {
    std::string file;
    std::size_t k = 0, trials = 100;
    std::uint64_t seed = 0;
    bool verbose = false;
};

Run cmd_sample(const SampleArgs& a) {
    Run run;
    auto m = load(a.file);
    add_input(run, a.file, m.get());
    run.seed = a.seed;
    run.results = call_json([&](char** out) {
        return cutspec_sample_json(m.get(), a.k, a.trials, a.seed, a.verbose ? 1 : 0, out);
    }).first;
    return run;
}

struct WitnessArgs {
    std::string name, out;
    std::size_t n = 1;
};

Run cmd_witness(const WitnessArgs& a) {
    Run run;
    cutspec_matrix* raw = nullptr;
    check(cutspec_witness(a.name.c_str(), a.n, &raw));
    MatrixPtr m(raw, &cutspec_matrix_free);
    check(cutspec_matrix_save(m.get(), a.out.c_str()));
    run.results = {{"witness", a.name},
                   {"n", a.n},
                   {"out", a.out},
                   {"rows", cutspec_matrix_rows(m.get())},
                   {"cols", cutspec_matrix_cols(m.get())},
                   {"digest", digest(m.get())}};
    return run;
}

struct QuantizeArgs {
    std::string file;
    double eps = 1.0 / 3.0;
    bool normalize = false;
};

Run cmd_quantize(const QuantizeArgs& a) {
    Run run;
    auto m = load(a.file);
    add_input(run, a.file, m.get());
    auto [j, s] = call_json([&](char** out) { return cutspec_quantize_json(m.get(), a.eps, a.normalize ? 1 : 0, out); });
    run.exit_code = j.value("holds", true) ? 0 : 1;
    run.results = std::move(j);
    return run;
}

json header(const std::vector<std::string>& argv, const std::string& command) {
    return {{"tool", "cutspec"}, {"version", cutspec_version()}, {"command", command}, {"argv", argv}};
}

}  // namespace

int main(int argc, char** argv) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> args(argv + 1, argv + argc);

    CLI::App app{"Cut-norms, cut-distances and spectra, with checks of the inequalities relating them"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty_output = false;
    app.add_flag("--pretty", pretty_output, "Render human-readable tables instead of JSON");

    NormsArgs norms;
    auto* c_norms = app.add_subcommand("norms", "Cut-norm and boxdot-norm of a matrix");
    c_norms->add_option("file", norms.file, "Matrix Market or CSV file")->required();
    c_norms->add_option("--which", norms.which)->check(CLI::IsMember({"square", "boxdot", "both"}));
    c_norms->add_option("--method", norms.method)->check(CLI::IsMember({"exact", "certified", "anneal", "angle-grid"}));
    c_norms->add_option("--seed", norms.seed);
    c_norms->add_option("--restarts", norms.restarts);
    c_norms->add_option("--exact-limit", norms.exact_limit);
    c_norms->add_option("--angles", norms.angles);

    std::string spectrum_file;
    auto* c_spectrum = app.add_subcommand("spectrum", "Singular values, and eigenvalues for Hermitian input");
    c_spectrum->add_option("file", spectrum_file)->required();

    CheckArgs chk;
    std::string delta_text;
    auto* c_check = app.add_subcommand("check", "Evaluate one inequality and report its slack");
    c_check->add_option("name", chk.name)->required();
    c_check->add_option("files", chk.files)->required();
    c_check->add_option("--delta", delta_text, "Certified upper bound on the distance (th2, th3)");
    c_check->add_option("--delta-from", chk.delta_from, "How to compute the distance: <auto|exact|anneal>-k<K>");
    c_check->add_option("--constant", chk.constant, "C in gin2 and sin2");
    c_check->add_option("--index", chk.index, "th2/th3 index; 0 checks every admissible one");
    c_check->add_option("--clause", chk.clause)->check(CLI::IsMember({"i", "iia", "iib"}));
    c_check->add_option("--k", chk.k, "Blow-up factor (pro1, prop) or subset size (interlacing)");
    c_check->add_option("--p", chk.p);
    c_check->add_option("--q", chk.q);
    c_check->add_option("--eps", chk.eps);
    c_check->add_option("--seed", chk.seed);
    c_check->add_option("--exact-limit", chk.exact_limit);
    c_check->add_flag("--no-rescale", chk.no_rescale, "Do not scale th2/th3 inputs to |A|_inf <= 1");

    DistanceArgs dist;
    auto* c_distance = app.add_subcommand("distance", "Blow-up cut-distance estimates for k = 1..kmax");
    c_distance->add_option("a", dist.a)->required();
    c_distance->add_option("b", dist.b)->required();
    c_distance->add_option("--kind", dist.kind)->check(CLI::IsMember({"square", "boxminus"}));
    c_distance->add_option("--kmax", dist.kmax);
    c_distance->add_option("--method", dist.method)->check(CLI::IsMember({"auto", "exact", "anneal"}));
    c_distance->add_option("--seed", dist.seed);
    c_distance->add_option("--restarts", dist.restarts);
    c_distance->add_option("--proposals", dist.proposals, "Annealing proposals per restart; 0 picks 200 rows cols");

    SampleArgs smp;
    auto* c_sample = app.add_subcommand("sample", "Random principal submatrix spectra experiment");
    c_sample->add_option("file", smp.file)->required();
    c_sample->add_option("--k", smp.k)->required();
    c_sample->add_option("--trials", smp.trials);
    c_sample->add_option("--seed", smp.seed);
    c_sample->add_flag("--verbose", smp.verbose, "Include per-trial detail");

    WitnessArgs wit;
    auto* c_witness = app.add_subcommand("witness", "Write a witness matrix in Matrix Market format");
    c_witness->add_option("name", wit.name)->required()->check(CLI::IsMember({"star", "hilbert", "ceml"}));
    c_witness->add_option("--n", wit.n)->required();
    c_witness->add_option("--out", wit.out)->required();

    QuantizeArgs qz;
    auto* c_quantize = app.add_subcommand("quantize", "Snap a unit vector onto the polar grid");
    c_quantize->add_option("file", qz.file, "Single row or column")->required();
    c_quantize->add_option("--eps", qz.eps);
    c_quantize->add_flag("--normalize", qz.normalize, "Scale to unit length first");

    std::string command = args.empty() ? "" : args.front();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json err = header(args, command);
        err["error"] = {{"kind", "usage_error"}, {"message", e.what()}, {"code", CUTSPEC_ERR_INPUT}};
        std::cout << err.dump() << '\n';
        return CUTSPEC_ERR_INPUT;
    }

    for (auto* sub : app.get_subcommands()) command = sub->get_name();

    try {
        Run run;
        if (command == "norms") run = cmd_norms(norms);
        else if (command == "spectrum") run = cmd_spectrum(spectrum_file);
        else if (command == "check") {
            if (!delta_text.empty()) {
                std::size_t used = 0;
                double d = 0;
                try {
                    d = std::stod(delta_text, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != delta_text.size() || !std::isfinite(d)) usage_error("--delta expects a finite number");
                chk.delta = d;
            }
            run = cmd_check(chk);
        } else if (command == "distance") run = cmd_distance(dist);
        else if (command == "sample") run = cmd_sample(smp);
        else if (command == "witness") run = cmd_witness(wit);
        else run = cmd_quantize(qz);

        json report = header(args, command);
        report["inputs"] = run.inputs;
        report["seed"] = run.seed ? json(*run.seed) : json(nullptr);
        report["results"] = std::move(run.results);
        report["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (pretty_output) pretty(std::cout, command, report);
        else std::cout << report.dump() << '\n';
        return run.exit_code;
    } catch (const Failure& f) {
        json err = header(args, command);
        err["error"] = {{"kind", f.kind}, {"message", f.message}, {"code", f.status}};
        std::cout << err.dump() << '\n';
        return f.status;
    } catch (const std::exception& e) {
        json err = header(args, command);
        err["error"] = {{"kind", "internal_error"}, {"message", e.what()}, {"code", CUTSPEC_ERR_INTERNAL}};
        std::cout << err.dump() << '\n';
        return CUTSPEC_ERR_INTERNAL;
    }
}
