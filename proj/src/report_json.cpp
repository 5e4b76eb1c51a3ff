#include "cutspec/report_json.hpp"

#include <algorithm>

namespace cutspec {

nlohmann::json to_json(const IndexSet& s) { return s.one_based(); }

nlohmann::json to_json(const Permutation& p) {
    std::vector<std::size_t> m = p.map();
    for (auto& v : m) ++v;
    return m;
}

nlohmann::json complex_vector_json(std::span<const Complex> v) {
    const bool real = std::all_of(v.begin(), v.end(), [](const Complex& z) { return z.imag() == 0.0; });
    nlohmann::json out = nlohmann::json::array();
    for (const Complex& z : v) {
        if (real) out.push_back(z.real());
        else out.push_back({{"re", z.real()}, {"im", z.imag()}});
    }
    return out;
}

nlohmann::json to_json(const CutNormResult& r) {
    nlohmann::json j = {{"kind", to_string(r.kind)},
                        {"method", to_string(r.method)},
                        {"value", r.value},
                        {"certified", r.certified},
                        {"X", to_json(r.x)},
                        {"Y", to_json(r.y)},
                        {"witness_sum", {{"re", r.witness_sum.real()}, {"im", r.witness_sum.imag()}}}};
    j["upper_bound"] = std::isfinite(r.upper_bound) ? nlohmann::json(r.upper_bound) : nlohmann::json();
    return j;
}

nlohmann::json to_json(const SpectralSummary& s) {
    nlohmann::json j = {{"kind", s.kind == SpectrumKind::singular ? "singular" : "hermitian"},
                        {"values", s.values},
                        {"sweeps", s.sweeps}};
    return j;
}

nlohmann::json to_json(const DistanceResult& r) {
    nlohmann::json j = {{"kind", to_string(r.kind)},
                        {"k", r.blowup_k},
                        {"value", r.value},
                        {"method", to_string(r.method)},
                        {"bound_kind", to_string(r.bound_kind)},
                        {"size", {r.rows, r.cols}},
                        {"perm_P", to_json(r.perm_P)},
                        {"work", r.tables}};
    j["perm_Q"] = r.perm_Q ? to_json(*r.perm_Q) : nlohmann::json();
    return j;
}

nlohmann::json to_json(const BoundReport& r) {
    return {{"name", r.name},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"slack", r.slack},
            {"holds", r.holds},
            {"constant_used", r.constant_used},
            {"inputs_digest", r.inputs_digest},
            {"provenance", {{"method", r.provenance.method}, {"k", r.provenance.k}, {"seed", r.provenance.seed}}},
            {"details", r.details}};
}

nlohmann::json to_json(const QuantizedVector& q) {
    return {{"y", complex_vector_json(q.y)}, {"distinct_values", q.distinct}, {"value_cap", q.cap}, {"error", q.error}};
}

nlohmann::json to_json(const SsampReport& r, bool verbose) {
    nlohmann::json j = {{"n", r.n},
                        {"k", r.k},
                        {"trials", r.trials},
                        {"seed", r.seed},
                        {"rescale_factor", r.rescale_factor},
                        {"bound", r.bound},
                        {"deviation_cap", r.deviation_cap},
                        {"vacuous", r.vacuous},
                        {"max_deviation", r.max_deviation},
                        {"fraction_within", r.fraction_within},
                        {"interlacing_pass_rate", r.interlacing_pass_rate},
                        {"sampling_distance_bound", {{"formula", "10 |A|_inf (log2 k)^(-1/2)"},
                                                     {"value", r.sampling_distance_bound},
                                                     {"evaluated", false}}}};
    if (verbose) {
        nlohmann::json trials = nlohmann::json::array();
        for (const auto& t : r.per_trial) {
            nlohmann::json devs = nlohmann::json::array();
            for (const auto& d : t.deviations)
                devs.push_back({{"i", d.i}, {"lhs", d.lhs}, {"rhs", d.rhs}, {"clause", d.clause}});
            trials.push_back({{"seed", t.seed},
                              {"subset", to_json(t.x)},
                              {"max_deviation", t.max_deviation},
                              {"within_bound", t.within_bound},
                              {"interlacing_ok", t.interlacing_ok},
                              {"deviations", devs}});
        }
        j["per_trial"] = std::move(trials);
    }
    return j;
}

}  // namespace cutspec
