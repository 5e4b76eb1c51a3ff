#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "json.hpp"

namespace cutspec {

struct Provenance {
    std::string method;   ///< how any norm or distance on the right-hand side was obtained
    std::uint64_t k = 1;  ///< blow-up level for distance-based bounds
    std::uint64_t seed = 0;
};

/// One evaluated inequality lhs <= rhs.
struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
    double constant_used = 0.0;
    std::string inputs_digest;
    Provenance provenance;
    nlohmann::json details = nlohmann::json::object();
};

inline constexpr double kBoundTolerance = 1e-9;

inline bool within_tolerance(double slack, double rhs) {
    return slack >= -kBoundTolerance * std::max(1.0, std::abs(rhs));
}

/// Fills slack and holds from lhs and rhs.
inline BoundReport make_report(std::string name, double lhs, double rhs, double constant_used,
                               std::string digest) {
    BoundReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.holds = within_tolerance(r.slack, rhs);
    r.constant_used = constant_used;
    r.inputs_digest = std::move(digest);
    return r;
}

}  // namespace cutspec
