#pragma once

// Brute-force references for graph algorithms, written without the library's
// own traversal or canonical labeling code.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "qrl/stable_graph.hpp"

namespace oracle {

using qrl::Edge;
using qrl::Leg;
using qrl::StableGraph;

inline bool connected_without(const StableGraph& g, const std::set<int>& removed) {
    const int n = g.vertex_count();
    if (n == 0) return false;
    std::vector<int> comp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i)] = i;
    // Repeated relaxation: every vertex takes the least label among its neighbours.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (removed.count(e)) continue;
            const auto& ed = g.edges()[static_cast<std::size_t>(e)];
            auto& a = comp[static_cast<std::size_t>(ed.u)];
            auto& b = comp[static_cast<std::size_t>(ed.v)];
            if (a != b) {
                a = b = std::min(a, b);
                changed = true;
            }
        }
    }
    return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

inline std::vector<int> bridges(const StableGraph& g) {
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!connected_without(g, {e})) out.push_back(e);
    return out;
}

inline std::vector<std::pair<int, int>> separating_pairs(const StableGraph& g) {
    const auto br = bridges(g);
    const std::set<int> bs(br.begin(), br.end());
    std::vector<std::pair<int, int>> out;
    for (int e = 0; e < g.edge_count(); ++e)
        for (int f = e + 1; f < g.edge_count(); ++f)
            if (!bs.count(e) && !bs.count(f) && !connected_without(g, {e, f})) out.emplace_back(e, f);
    return out;
}

/// Backtracking search for a vertex bijection preserving genera, edge
/// multiplicities (and thickness multisets when both carry them) and legs.
inline bool isomorphic(const StableGraph& a, const StableGraph& b, bool labeled_legs) {
    const int n = a.vertex_count();
    if (n != b.vertex_count() || a.edge_count() != b.edge_count() || a.leg_count() != b.leg_count()) return false;
    const bool thick = a.has_thickness() && b.has_thickness() && a.edge_count() > 0;
    auto edge_bag = [&](const StableGraph& g) {
        std::map<std::pair<int, int>, std::multiset<int>> bag;
        for (const auto& e : g.edges())
            bag[{std::min(e.u, e.v), std::max(e.u, e.v)}].insert(thick ? *e.thickness : 0);
        return bag;
    };
    auto leg_bag = [&](const StableGraph& g) {
        std::vector<std::multiset<int>> bag(static_cast<std::size_t>(g.vertex_count()));
        for (const auto& l : g.legs()) bag[static_cast<std::size_t>(l.vertex)].insert(labeled_legs ? l.label : 0);
        return bag;
    };
    const auto ea = edge_bag(a), eb = edge_bag(b);
    const auto la = leg_bag(a), lb = leg_bag(b);
    auto bag_at = [](const auto& bag, int u, int v) {
        const auto it = bag.find({std::min(u, v), std::max(u, v)});
        return it == bag.end() ? std::multiset<int>{} : it->second;
    };
    std::vector<int> pi(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<bool(int)> extend = [&](int v) {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)]) continue;
            if (a.vertex_genus(v) != b.vertex_genus(w) || a.degree(v) != b.degree(w)) continue;
            if (la[static_cast<std::size_t>(v)] != lb[static_cast<std::size_t>(w)]) continue;
            bool ok = bag_at(ea, v, v) == bag_at(eb, w, w);
            for (int u = 0; ok && u < v; ++u) ok = bag_at(ea, u, v) == bag_at(eb, pi[static_cast<std::size_t>(u)], w);
            if (!ok) continue;
            pi[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = true;
            if (extend(v + 1)) return true;
            used[static_cast<std::size_t>(w)] = false;
        }
        return false;
    };
    return extend(0);
}

/// Connected multigraphs (loops allowed) with exactly m edges, one labeled
/// representative per "vertices introduced in order" edge sequence.  Contains
/// every isomorphism class, usually several times.
inline std::vector<StableGraph> multigraphs_with_edges(int m) {
    std::vector<StableGraph> out;
    std::vector<std::pair<int, int>> seq;
    std::function<void(int)> rec = [&](int used) {
        if (static_cast<int>(seq.size()) == m) {
            std::vector<Edge> edges;
            for (auto [u, v] : seq) edges.push_back({u, v, {}});
            StableGraph g(std::vector<int>(static_cast<std::size_t>(used), 0), edges);
            if (g.is_connected()) out.push_back(g);
            return;
        }
        const std::pair<int, int> last = seq.empty() ? std::pair{0, 0} : seq.back();
        for (int u = 0; u < used; ++u)
            for (int v = u; v <= used; ++v) {
                if (std::pair{u, v} < last) continue;
                seq.emplace_back(u, v);
                rec(std::max(used, v + 1));
                seq.pop_back();
            }
    };
    rec(1);
    return out;
}

inline StableGraph random_relabel(const StableGraph& g, std::mt19937_64& rng) {
    std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> genera(perm.size());
    for (std::size_t v = 0; v < perm.size(); ++v) genera[static_cast<std::size_t>(perm[v])] = g.genera()[v];
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        int u = perm[static_cast<std::size_t>(e.u)], v = perm[static_cast<std::size_t>(e.v)];
        if (rng() & 1) std::swap(u, v);
        edges.push_back({u, v, e.thickness});
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    std::vector<Leg> legs;
    for (const auto& l : g.legs()) legs.push_back({perm[static_cast<std::size_t>(l.vertex)], l.label});
    std::shuffle(legs.begin(), legs.end(), rng);
    return StableGraph(genera, edges, legs);
}

/// Random connected graph: spanning tree plus extra edges and loops.
inline StableGraph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges, int max_genus, int max_legs,
                                bool thickness = false) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int n = pick(1, max_vertices);
    const int m = pick(n - 1, std::max(n - 1, max_edges));
    std::vector<int> genera(static_cast<std::size_t>(n));
    for (auto& g : genera) g = pick(0, max_genus);
    std::vector<Edge> edges;
    auto th = [&]() -> std::optional<int> { return thickness ? std::optional<int>(pick(1, 3)) : std::nullopt; };
    for (int v = 1; v < n; ++v) edges.push_back({pick(0, v - 1), v, th()});
    while (static_cast<int>(edges.size()) < m) edges.push_back({pick(0, n - 1), pick(0, n - 1), th()});
    std::vector<Leg> legs;
    const int k = pick(0, max_legs);
    for (int i = 0; i < k; ++i) legs.push_back({pick(0, n - 1), i + 1});
    return StableGraph(genera, edges, legs);
}

/// Moves one endpoint of one edge, or shifts a genus, or moves a leg.
inline StableGraph random_perturbation(const StableGraph& g, std::mt19937_64& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto genera = g.genera();
    auto edges = g.edges();
    auto legs = g.legs();
    const int n = g.vertex_count();
    switch (pick(0, 2)) {
        case 0:
            if (!edges.empty()) {
                auto& e = edges[static_cast<std::size_t>(pick(0, static_cast<int>(edges.size()) - 1))];
                (pick(0, 1) ? e.u : e.v) = pick(0, n - 1);
            }
            break;
        case 1: {
            auto& x = genera[static_cast<std::size_t>(pick(0, n - 1))];
            x = x > 0 && pick(0, 1) ? x - 1 : x + 1;
            break;
        }
        default:
            if (!legs.empty()) legs[static_cast<std::size_t>(pick(0, static_cast<int>(legs.size()) - 1))].vertex = pick(0, n - 1);
            break;
    }
    return StableGraph(genera, edges, legs);
}

inline bool connected(const StableGraph& g) { return connected_without(g, {}); }

}  // namespace oracle

#include "qrl/connectivity.hpp"

namespace oracle {

/// Every connected multigraph with at most max_edges edges, plain and with
/// alternating genera plus a leg at vertex 0 (and a labeled pair of legs).
inline std::vector<StableGraph> exhaustive_corpus(int max_edges) {
    std::vector<StableGraph> out;
    for (int m = 0; m <= max_edges; ++m)
        for (const auto& g : multigraphs_with_edges(m)) {
            out.push_back(g);
            std::vector<int> genera(static_cast<std::size_t>(g.vertex_count()));
            for (std::size_t i = 0; i < genera.size(); ++i) genera[i] = static_cast<int>(i % 2);
            out.push_back(StableGraph(genera, g.edges(), {{0, 1}}));
            out.push_back(StableGraph(g.genera(), g.edges(), {{0, 1}, {g.vertex_count() - 1, 2}}));
        }
    return out;
}

struct Tally {
    std::size_t cases = 0;
    std::size_t mismatches = 0;
};

inline void tally_connectivity(const StableGraph& g, Tally& t) {
    ++t.cases;
    if (qrl::separating_edges(g) != bridges(g) || qrl::separating_pairs(g) != oracle::separating_pairs(g)) ++t.mismatches;
}

/// Canonical forms must agree exactly when the brute-force search finds an isomorphism.
/// Graphs are bucketed by code; each bucket is checked against its first member,
/// and bucket representatives with equal coarse invariants are checked pairwise.
inline void tally_canonical(const std::vector<StableGraph>& corpus, bool labeled, std::mt19937_64& rng, Tally& t) {
    const qrl::CanonicalOptions opts{labeled, false};
    std::map<qrl::CanonicalForm, std::vector<const StableGraph*>> buckets;
    for (const auto& g : corpus) {
        ++t.cases;
        const auto code = qrl::canonical_form(g, opts);
        if (qrl::canonical_form(random_relabel(g, rng), opts) != code) ++t.mismatches;
        buckets[code].push_back(&g);
    }
    auto coarse = [](const StableGraph& g) {
        std::vector<std::tuple<int, int, int, int>> v;
        for (int i = 0; i < g.vertex_count(); ++i) v.emplace_back(g.vertex_genus(i), g.degree(i), g.loop_count(i), g.legs_at(i));
        std::sort(v.begin(), v.end());
        return std::make_tuple(g.edge_count(), v);
    };
    std::map<decltype(coarse(corpus.front())), std::vector<const StableGraph*>> reps;
    for (const auto& [code, members] : buckets) {
        for (const auto* g : members)
            if (!isomorphic(*members.front(), *g, labeled)) ++t.mismatches;
        reps[coarse(*members.front())].push_back(members.front());
    }
    for (const auto& [key, rs] : reps)
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = i + 1; j < rs.size(); ++j)
                if (isomorphic(*rs[i], *rs[j], labeled)) ++t.mismatches;
}

/// Random graphs: connectivity, relabel invariance and perturbation pairs.
inline void tally_random(std::size_t count, int max_edges, std::mt19937_64& rng, Tally& conn, Tally& canon) {
    for (std::size_t i = 0; i < count; ++i) {
        const StableGraph g = random_graph(rng, 6, max_edges, 2, 3);
        tally_connectivity(g, conn);
        const bool labeled = i % 2 == 0;
        const qrl::CanonicalOptions opts{labeled, false};
        const StableGraph h = random_relabel(g, rng);
        ++canon.cases;
        if (qrl::canonical_form(g, opts) != qrl::canonical_form(h, opts) || !isomorphic(g, h, labeled)) ++canon.mismatches;
        const StableGraph p = random_perturbation(g, rng);
        if (!connected(p)) continue;
        ++canon.cases;
        if ((qrl::canonical_form(g, opts) == qrl::canonical_form(p, opts)) != isomorphic(g, p, labeled)) ++canon.mismatches;
    }
}

}  // namespace oracle
