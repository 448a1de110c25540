#include "qrl/connectivity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "qrl/errors.hpp"

namespace qrl {

namespace {

// Bridges of the multigraph restricted to edges with alive[i]; loops skipped.
std::vector<int> bridges(const StableGraph& g, const std::vector<bool>& alive) {
    const int m = g.vertex_count();
    std::vector<std::vector<std::pair<int, int>>> adj(m);  // (neighbour, edge id)
    const auto& es = g.edges();
    for (int i = 0; i < static_cast<int>(es.size()); ++i) {
        if (!alive[i] || es[i].is_loop()) continue;
        adj[es[i].u].emplace_back(es[i].v, i);
        adj[es[i].v].emplace_back(es[i].u, i);
    }
    std::vector<int> disc(m, -1), low(m, 0), out;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int via) {
        disc[v] = low[v] = timer++;
        for (auto [u, id] : adj[v]) {
            if (id == via) continue;
            if (disc[u] >= 0) {
                low[v] = std::min(low[v], disc[u]);
            } else {
                dfs(u, id);
                low[v] = std::min(low[v], low[u]);
                if (low[u] > disc[v]) out.push_back(id);
            }
        }
    };
    for (int v = 0; v < m; ++v)
        if (disc[v] < 0) dfs(v, -1);
    std::sort(out.begin(), out.end());
    return out;
}

void require_connected(const StableGraph& g) {
    if (!g.is_connected()) throw InputError("graph is not connected");
}

}  // namespace

std::vector<int> separating_edges(const StableGraph& g) {
    require_connected(g);
    return bridges(g, std::vector<bool>(g.edges().size(), true));
}

std::vector<std::pair<int, int>> separating_pairs(const StableGraph& g) {
    require_connected(g);
    const int n = g.edge_count();
    std::vector<bool> alive(n, true);
    std::vector<bool> is_bridge(n, false);
    for (int b : bridges(g, alive)) is_bridge[b] = true;
    std::vector<std::pair<int, int>> out;
    for (int e = 0; e < n; ++e) {
        if (is_bridge[e] || g.edges()[e].is_loop()) continue;
        alive[e] = false;
        for (int f : bridges(g, alive))
            if (f > e && !is_bridge[f]) out.emplace_back(e, f);
        alive[e] = true;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(ConnectivityClass c) {
    switch (c) {
        case ConnectivityClass::separable: return "separable";
        case ConnectivityClass::inseparable: return "inseparable";
        case ConnectivityClass::two_inseparable: return "two_inseparable";
    }
    return "?";
}

ConnectivityClass connectivity_class(const StableGraph& g) {
    if (!separating_edges(g).empty()) return ConnectivityClass::separable;
    if (!separating_pairs(g).empty()) return ConnectivityClass::inseparable;
    return ConnectivityClass::two_inseparable;
}

bool is_semicompact(const StableGraph& g) {
    std::vector<int> count(g.edges().size(), 0);
    for (auto [e, f] : separating_pairs(g)) {
        ++count[e];
        ++count[f];
    }
    return std::all_of(count.begin(), count.end(), [](int c) { return c <= 1; });
}

PointedDecomposition decompose(const StableGraph& g, const std::vector<int>& s) {
    const int n = g.edge_count();
    std::vector<bool> alive(n, true);
    for (int e : s) {
        if (e < 0 || e >= n) throw InputError("cut edge " + std::to_string(e) + " out of range");
        if (!alive[e]) throw InputError("cut edge " + std::to_string(e) + " listed twice");
        alive[e] = false;
    }
    const int m = g.vertex_count();
    // Components by union-find on the surviving edges.
    std::vector<int> parent(m);
    for (int v = 0; v < m; ++v) parent[v] = v;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int i = 0; i < n; ++i)
        if (alive[i]) parent[find(g.edges()[i].u)] = find(g.edges()[i].v);
    std::map<int, int> root_to_comp;
    std::vector<int> comp(m), local(m);
    PointedDecomposition d;
    for (int v = 0; v < m; ++v) {
        auto [it, fresh] = root_to_comp.emplace(find(v), static_cast<int>(root_to_comp.size()));
        comp[v] = it->second;
        if (fresh) {
            d.components.emplace_back();
            d.vertex_map.emplace_back();
        }
        local[v] = d.components[comp[v]].add_vertex(g.vertex_genus(v));
        d.vertex_map[comp[v]].push_back(v);
    }
    for (int i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        Edge e = g.edges()[i];
        const int c = comp[e.u];
        e.u = local[e.u];
        e.v = local[e.v];
        d.components[c].add_edge(e);
    }
    for (auto& l : g.legs()) d.components[comp[l.vertex]].add_leg({local[l.vertex], l.label});
    int next = g.max_label() + 1;
    for (int e : s) {
        const auto& edge = g.edges()[e];
        for (int side = 0; side < 2; ++side) {
            const int v = side == 0 ? edge.u : edge.v;
            d.components[comp[v]].add_leg({local[v], next});
            d.provenance.push_back({next, e, side, comp[v], edge.thickness});
            ++next;
        }
    }
    return d;
}

StableGraph glue(const PointedDecomposition& d) {
    StableGraph out;
    std::vector<int> offset;
    for (auto& c : d.components) {
        offset.push_back(out.vertex_count());
        for (int w : c.genera()) out.add_vertex(w);
    }
    std::map<int, std::pair<int, int>> ends;  // edge -> vertices of its two sides
    std::map<int, std::optional<int>> thick;
    for (auto& p : d.provenance) thick[p.edge] = p.thickness;
    std::set<int> cut_labels;
    for (auto& p : d.provenance) cut_labels.insert(p.label);
    for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
        const auto& c = d.components[ci];
        for (auto e : c.edges()) {
            e.u += offset[ci];
            e.v += offset[ci];
            out.add_edge(e);
        }
        for (auto& l : c.legs())
            if (!cut_labels.count(l.label)) out.add_leg({l.vertex + offset[ci], l.label});
    }
    for (auto& p : d.provenance) {
        const auto& c = d.components.at(p.component);
        auto it = std::find_if(c.legs().begin(), c.legs().end(), [&](const Leg& l) { return l.label == p.label; });
        if (it == c.legs().end()) throw InputError("provenance leg " + std::to_string(p.label) + " missing");
        auto& slot = ends[p.edge];
        (p.side == 0 ? slot.first : slot.second) = it->vertex + offset[p.component];
    }
    for (auto& [e, uv] : ends) out.add_edge({uv.first, uv.second, thick[e]});
    return out;
}

StableGraph contract_leg_pair(const StableGraph& g, int label_a, int label_b) {
    if (label_a == label_b) throw InputError("cannot contract a leg with itself");
    int va = -1, vb = -1;
    std::vector<Leg> rest;
    for (auto& l : g.legs()) {
        if (l.label == label_a) va = l.vertex;
        else if (l.label == label_b) vb = l.vertex;
        else rest.push_back(l);
    }
    if (va < 0) throw InputError("no leg labelled " + std::to_string(label_a));
    if (vb < 0) throw InputError("no leg labelled " + std::to_string(label_b));
    auto edges = g.edges();
    edges.push_back({va, vb, {}});
    return StableGraph(g.genera(), edges, rest);
}

CoreAndTails core_and_tails(const StableGraph& g) {
    if (g.leg_count() != 0 || !g.is_connected() || g.genus() != 3 || !g.is_stable())
        throw InputError("core_and_tails expects a stable genus-3 graph without legs");
    const auto cut = separating_edges(g);
    auto d = decompose(g, cut);
    auto is_tail = [](const StableGraph& c) {
        if (c.vertex_count() != 1 || c.leg_count() != 1) return false;
        return (c.vertex_genus(0) == 1 && c.edge_count() == 0) || (c.vertex_genus(0) == 0 && c.edge_count() == 1);
    };
    // Label of the leg on the other end of the same cut edge.
    auto partner = [&](int label) {
        for (const auto& a : d.provenance)
            if (a.label == label)
                for (const auto& b : d.provenance)
                    if (b.edge == a.edge && b.label != label) return b.label;
        throw InvariantViolation("cut leg without a partner");
    };
    CoreAndTails out;
    int cores = 0;
    for (auto& c : d.components) {
        if (is_tail(c)) {
            out.tails.push_back(c);
            out.tail_labels.push_back(partner(c.legs()[0].label));
            out.tail_kinds.push_back(c.vertex_genus(0) == 1 ? 'e' : 'm');
        } else {
            out.core = c;
            ++cores;
        }
    }
    // Two one-vertex components joined by a bridge cannot both be tails in genus 3,
    // so exactly one non-tail component remains.
    if (cores != 1) throw InvariantViolation("bridge decomposition did not leave a single core");
    return out;
}

}  // namespace qrl
