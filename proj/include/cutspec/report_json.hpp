#pragma once

#include "json.hpp"

#include "cutspec/bound_report.hpp"
#include "cutspec/bounds.hpp"
#include "cutspec/cut_distance.hpp"
#include "cutspec/cut_norms.hpp"
#include "cutspec/sampling.hpp"
#include "cutspec/spectral.hpp"

namespace cutspec {

// Index sets and permutations are written 1-based, matching the notation
// used for matrices throughout the reports.

nlohmann::json to_json(const IndexSet& s);
nlohmann::json to_json(const Permutation& p);
nlohmann::json to_json(const CutNormResult& r);
nlohmann::json to_json(const SpectralSummary& s);
nlohmann::json to_json(const DistanceResult& r);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const QuantizedVector& q);
/// Per-trial detail only when verbose is set.
nlohmann::json to_json(const SsampReport& r, bool verbose);

/// {"re": .., "im": ..} pairs, or plain numbers when every imaginary part is zero.
nlohmann::json complex_vector_json(std::span<const Complex> v);

}  // namespace cutspec
