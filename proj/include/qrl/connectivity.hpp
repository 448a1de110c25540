#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrl/stable_graph.hpp"

namespace qrl {

/// Indices of bridges, ascending.  Loops are never bridges.
std::vector<int> separating_edges(const StableGraph& g);

/// All pairs {e, f} (e < f) of non-bridge edges whose joint removal disconnects g.
std::vector<std::pair<int, int>> separating_pairs(const StableGraph& g);

enum class ConnectivityClass { separable, inseparable, two_inseparable };
std::string to_string(ConnectivityClass c);

/// separable: has a bridge; inseparable: no bridge but a separating pair;
/// two_inseparable: neither.
ConnectivityClass connectivity_class(const StableGraph& g);

/// Every edge lies in at most one separating pair.
bool is_semicompact(const StableGraph& g);

/// Where a leg created by a cut came from.
struct Provenance {
    int label = 0;      // label of the new leg
    int edge = 0;       // index of the cut edge in the original graph
    int side = 0;       // 0 for the edge's first end, 1 for the second
    int component = 0;  // component holding the leg
    std::optional<int> thickness;  // of the cut edge
};

struct PointedDecomposition {
    std::vector<StableGraph> components;
    std::vector<Provenance> provenance;
    /// For each component, original index of each of its vertices.
    std::vector<std::vector<int>> vertex_map;
};

/// Cuts g at the edges in s.  New legs get labels max_label+1, max_label+2, ...
/// in cut-set order, first end before second.  Components are ordered by
/// their least original vertex.  Throws InputError on bad or repeated edges.
PointedDecomposition decompose(const StableGraph& g, const std::vector<int>& s);

/// Inverse of decompose: pairs provenance legs back into edges.
StableGraph glue(const PointedDecomposition& d);

/// Joins the legs with the given labels into a new edge (a loop if they share a vertex).
StableGraph contract_leg_pair(const StableGraph& g, int label_a, int label_b);

struct CoreAndTails {
    /// Inseparable core with one leg per attachment point.
    StableGraph core;
    /// One-pointed genus-1 tails; tails[i] is attached at core leg tail_labels[i].
    std::vector<StableGraph> tails;
    std::vector<int> tail_labels;
    /// 'e' for a weight-1 vertex, 'm' for a weight-0 vertex with a loop.
    std::vector<char> tail_kinds;
};

/// Splits a stable genus-3 graph without legs at its bridges.
CoreAndTails core_and_tails(const StableGraph& g);

}  // namespace qrl
