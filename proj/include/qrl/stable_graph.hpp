#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qrl {

struct Edge {
    int u = 0;
    int v = 0;
    std::optional<int> thickness;
    bool is_loop() const noexcept { return u == v; }
};

struct Leg {
    int vertex = 0;
    int label = 0;
};

/// Half-edge presentation: half-edges 2i, 2i+1 are the two ends of edge i,
/// followed by one half-edge per leg (a fixed point of the involution).
struct HalfEdges {
    std::vector<int> vertex;
    std::vector<int> involution;
};

struct StabilityReport {
    bool stable = true;
    /// Vertices with 2g - 2 + deg <= 0.
    std::vector<int> unstable_vertices;
};

/// Vertex-weighted multigraph with loops, legs and optional edge thickness.
/// Vertex indices are 0-based.  Connectivity is not enforced here; operations
/// that need it check and throw InputError.
class StableGraph {
public:
    StableGraph() = default;
    /// Throws InputError on out-of-range endpoints, negative genus,
    /// non-positive thickness or duplicate leg labels.
    StableGraph(std::vector<int> genera, std::vector<Edge> edges, std::vector<Leg> legs = {});

    int vertex_count() const noexcept { return static_cast<int>(genera_.size()); }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    int leg_count() const noexcept { return static_cast<int>(legs_.size()); }
    const std::vector<int>& genera() const noexcept { return genera_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Leg>& legs() const noexcept { return legs_; }
    int vertex_genus(int v) const { return genera_.at(static_cast<std::size_t>(v)); }

    /// Number of half-edges at v, legs included; a loop contributes 2.
    int degree(int v) const;
    int loop_count(int v) const;
    int legs_at(int v) const;
    /// Number of edges joining u and v (loops when u == v).
    int multiplicity(int u, int v) const;
    /// True iff every edge carries a thickness.
    bool has_thickness() const;
    /// Largest leg label, or 0 without legs.
    int max_label() const;

    HalfEdges half_edges() const;
    bool is_connected() const;
    /// sum g_v + 1 - |V| + |E|.  Throws InputError if disconnected or empty.
    int genus() const;
    StabilityReport stability() const;
    bool is_stable() const { return stability().stable; }

    /// Copy with vertices renumbered: new index of old vertex v is perm[v].
    StableGraph relabeled(const std::vector<int>& perm) const;
    /// Adds a vertex and returns its index.
    int add_vertex(int genus);
    void add_edge(Edge e);
    void add_leg(Leg l);

private:
    void check_vertex(int v) const;
    std::vector<int> genera_;
    std::vector<Edge> edges_;
    std::vector<Leg> legs_;
};

struct CanonicalOptions {
    /// Compare legs by label rather than by count.
    bool labeled_legs = false;
    /// Compare edge thicknesses.
    bool use_thickness = false;
};

/// Isomorphism-invariant encoding; equal iff the graphs are isomorphic.
struct CanonicalForm {
    std::vector<int> code;
    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const StableGraph& g, const CanonicalOptions& opts = {});
/// The graph renumbered into canonical vertex order, edges and legs sorted.
StableGraph canonical_graph(const StableGraph& g, const CanonicalOptions& opts = {});
/// Thickness participates only when present on every edge of both graphs.
bool is_isomorphic(const StableGraph& a, const StableGraph& b, bool labeled_legs = false);

nlohmann::json to_json(const StableGraph& g);
/// Throws InputError with a path to the offending field.
StableGraph graph_from_json(const nlohmann::json& j);

}  // namespace qrl
