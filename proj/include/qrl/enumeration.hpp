#pragma once

#include <cstddef>
#include <vector>

#include "qrl/stable_graph.hpp"

namespace qrl {

struct EnumerationOptions {
    /// Legs carry labels 1..n and isomorphisms must fix them.  When false,
    /// graphs are counted up to permutation of the legs.
    bool labeled_legs = true;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Largest 2g - 2 + n accepted.
inline constexpr int kMaxEnumerationComplexity = 12;

/// One canonical representative per isomorphism class of connected stable
/// graphs of genus g with n legs, sorted by canonical code.
/// Throws InputError for inadmissible (g, n).
std::vector<StableGraph> enumerate_stable(int g, int n, const EnumerationOptions& opts = {});

/// Number of classes, without keeping the graphs.
std::size_t count_stable(int g, int n, const EnumerationOptions& opts = {});

}  // namespace qrl
