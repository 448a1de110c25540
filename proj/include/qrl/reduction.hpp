#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qrl/quartic.hpp"

namespace qrl {

struct ConsistencyCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct ReductionPrediction {
    /// "predicted", or "out_of_scope" for semistable quartics that are not stable.
    std::string status;
    std::string reason;
    /// Special fiber graph with one leg per cusp (empty when out of scope).
    StableGraph pointed_core;
    int r = 0;
    /// Names of the r+1 candidates, ordered by number of pig tails.
    std::vector<std::string> candidates;
    std::vector<ConsistencyCheck> flags;
    bool consistent() const;
};

/// Replaces every leg by a 1-tail: an elliptic tail (weight-1 vertex) for
/// 'e' or a pig tail (weight-0 vertex with a loop) for 'm'.  kinds follows leg order.
StableGraph attach_tails(const StableGraph& core, const std::string& kinds);

/// Candidate stable-reduction types.  Throws InputError for unstable quartics.
ReductionPrediction predict_reduction_types(const PlaneQuartic& q, unsigned depth);

struct ConsistencyReport {
    int r = 0;
    /// "irreducible", "line_cubic" or "reducible".
    std::string configuration;
    std::vector<int> component_degrees;
    StableGraph pointed_core;
    std::vector<ConsistencyCheck> checks;
    bool passed() const;
};

/// Structural checks on a GIT-stable quartic.  Throws InputError for non-stable input.
ConsistencyReport consistency_report(const PlaneQuartic& q, unsigned depth);

nlohmann::json to_json(const ReductionPrediction& p);
nlohmann::json to_json(const ConsistencyReport& r);

}  // namespace qrl
