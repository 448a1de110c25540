#include "qrl/stable_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "qrl/errors.hpp"

namespace qrl {

StableGraph::StableGraph(std::vector<int> genera, std::vector<Edge> edges, std::vector<Leg> legs)
    : genera_(std::move(genera)) {
    for (std::size_t v = 0; v < genera_.size(); ++v)
        if (genera_[v] < 0) throw InputError("vertex " + std::to_string(v) + " has negative genus");
    for (auto& e : edges) add_edge(e);
    for (auto& l : legs) add_leg(l);
}

void StableGraph::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
        throw InputError("vertex index " + std::to_string(v) + " out of range (graph has " +
                         std::to_string(vertex_count()) + " vertices)");
}

int StableGraph::add_vertex(int genus) {
    if (genus < 0) throw InputError("negative vertex genus");
    genera_.push_back(genus);
    return vertex_count() - 1;
}

void StableGraph::add_edge(Edge e) {
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.thickness && *e.thickness <= 0) throw InputError("edge thickness must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
    edges_.push_back(e);
}

void StableGraph::add_leg(Leg l) {
    check_vertex(l.vertex);
    for (auto& o : legs_)
        if (o.label == l.label) throw InputError("duplicate leg label " + std::to_string(l.label));
    legs_.push_back(l);
}

int StableGraph::degree(int v) const {
    int d = legs_at(v);
    for (auto& e : edges_) d += (e.u == v) + (e.v == v);
    return d;
}

int StableGraph::loop_count(int v) const {
    int n = 0;
    for (auto& e : edges_) n += e.is_loop() && e.u == v;
    return n;
}

int StableGraph::legs_at(int v) const {
    int n = 0;
    for (auto& l : legs_) n += l.vertex == v;
    return n;
}

int StableGraph::multiplicity(int u, int v) const {
    if (u > v) std::swap(u, v);
    int n = 0;
    for (auto& e : edges_) n += e.u == u && e.v == v;
    return n;
}

bool StableGraph::has_thickness() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.thickness.has_value(); });
}

int StableGraph::max_label() const {
    int m = 0;
    for (auto& l : legs_) m = std::max(m, l.label);
    return m;
}

HalfEdges StableGraph::half_edges() const {
    HalfEdges h;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const int a = static_cast<int>(2 * i);
        h.vertex.push_back(edges_[i].u);
        h.vertex.push_back(edges_[i].v);
        h.involution.push_back(a + 1);
        h.involution.push_back(a);
    }
    for (auto& l : legs_) {
        h.involution.push_back(static_cast<int>(h.vertex.size()));
        h.vertex.push_back(l.vertex);
    }
    return h;
}

bool StableGraph::is_connected() const {
    if (genera_.empty()) return false;
    std::vector<int> parent(genera_.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int comps = vertex_count();
    for (auto& e : edges_) {
        const int a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps == 1;
}

int StableGraph::genus() const {
    if (!is_connected()) throw InputError("graph is not connected");
    return std::accumulate(genera_.begin(), genera_.end(), 0) + 1 - vertex_count() + edge_count();
}

StabilityReport StableGraph::stability() const {
    StabilityReport r;
    for (int v = 0; v < vertex_count(); ++v)
        if (2 * genera_[v] - 2 + degree(v) <= 0) {
            r.stable = false;
            r.unstable_vertices.push_back(v);
        }
    return r;
}

StableGraph StableGraph::relabeled(const std::vector<int>& perm) const {
    std::vector<int> g(genera_.size());
    for (std::size_t v = 0; v < genera_.size(); ++v) g[perm[v]] = genera_[v];
    std::vector<Edge> es;
    for (auto e : edges_) {
        e.u = perm[e.u];
        e.v = perm[e.v];
        if (e.u > e.v) std::swap(e.u, e.v);
        es.push_back(e);
    }
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v, a.thickness) < std::tie(b.u, b.v, b.thickness);
    });
    std::vector<Leg> ls;
    for (auto l : legs_) {
        l.vertex = perm[l.vertex];
        ls.push_back(l);
    }
    std::sort(ls.begin(), ls.end(), [](const Leg& a, const Leg& b) {
        return std::tie(a.vertex, a.label) < std::tie(b.vertex, b.label);
    });
    return StableGraph(std::move(g), std::move(es), std::move(ls));
}

// ---------------------------------------------------------------------------
// Canonical form: colour refinement with individualisation, minimum code over
// all leaves of the search tree.

namespace {

struct Encoded {
    std::vector<int> header;          // dictionaries for edge and leg labels
    std::vector<int> genus;           // per vertex
    std::vector<int> leg;             // per vertex, index into leg dictionary
    std::vector<std::vector<int>> a;  // pair labels, loops on the diagonal
};

// Replaces each vector by its rank among the distinct values; appends the sorted
// dictionary to header.
std::vector<int> rank_vectors(const std::vector<std::vector<int>>& items, std::vector<int>& header) {
    std::vector<std::vector<int>> dict(items.begin(), items.end());
    std::sort(dict.begin(), dict.end());
    dict.erase(std::unique(dict.begin(), dict.end()), dict.end());
    header.push_back(static_cast<int>(dict.size()));
    for (auto& d : dict) {
        header.push_back(static_cast<int>(d.size()));
        header.insert(header.end(), d.begin(), d.end());
    }
    std::vector<int> out;
    for (auto& it : items)
        out.push_back(static_cast<int>(std::lower_bound(dict.begin(), dict.end(), it) - dict.begin()));
    return out;
}

Encoded encode(const StableGraph& g, const CanonicalOptions& opts) {
    const int m = g.vertex_count();
    Encoded enc;
    enc.genus = g.genera();

    std::vector<std::vector<int>> leg_items(m);
    for (auto& l : g.legs()) leg_items[l.vertex].push_back(opts.labeled_legs ? l.label : 0);
    for (auto& v : leg_items) std::sort(v.begin(), v.end());
    enc.leg = rank_vectors(leg_items, enc.header);

    std::vector<std::vector<int>> pair_items(static_cast<std::size_t>(m * m));
    for (auto& e : g.edges()) {
        const int t = opts.use_thickness ? e.thickness.value_or(0) : 0;
        pair_items[e.u * m + e.v].push_back(t);
        if (e.u != e.v) pair_items[e.v * m + e.u].push_back(t);
    }
    for (auto& v : pair_items) std::sort(v.begin(), v.end());
    const auto ranks = rank_vectors(pair_items, enc.header);
    enc.a.assign(m, std::vector<int>(m));
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) enc.a[u][v] = ranks[u * m + v];
    return enc;
}

// Refines until stable; colours are ranks of isomorphism-invariant signatures.
std::vector<int> refine(const Encoded& enc, std::vector<int> colour) {
    const int m = static_cast<int>(colour.size());
    int classes = static_cast<int>(std::set<int>(colour.begin(), colour.end()).size());
    while (true) {
        std::vector<std::vector<int>> sig(m);
        for (int v = 0; v < m; ++v) {
            std::vector<std::pair<int, int>> nb;
            for (int u = 0; u < m; ++u)
                if (u != v) nb.emplace_back(colour[u], enc.a[v][u]);
            std::sort(nb.begin(), nb.end());
            sig[v].push_back(colour[v]);
            for (auto& [c, a] : nb) {
                sig[v].push_back(c);
                sig[v].push_back(a);
            }
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int v = 0; v < m; ++v)
            colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        const int now = static_cast<int>(sorted.size());
        if (now == classes) return colour;
        classes = now;
    }
}

std::vector<int> leaf_code(const Encoded& enc, const std::vector<int>& order) {
    const int m = static_cast<int>(order.size());
    std::vector<int> code;
    code.reserve(static_cast<std::size_t>(3 * m + m * (m + 1) / 2));
    for (int i = 0; i < m; ++i) {
        code.push_back(enc.genus[order[i]]);
        code.push_back(enc.leg[order[i]]);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) code.push_back(enc.a[order[i]][order[j]]);
    return code;
}

void search(const Encoded& enc, const std::vector<int>& colour, std::vector<int>& best_code,
            std::vector<int>& best_order) {
    const int m = static_cast<int>(colour.size());
    std::vector<int> count(m, 0);
    for (int c : colour) ++count[c];
    int target = -1;
    for (int c = 0; c < m; ++c)
        if (count[c] > 1) {
            target = c;
            break;
        }
    if (target < 0) {
        std::vector<int> order(m);
        for (int v = 0; v < m; ++v) order[colour[v]] = v;
        auto code = leaf_code(enc, order);
        if (best_code.empty() || code < best_code) {
            best_code = std::move(code);
            best_order = std::move(order);
        }
        return;
    }
    for (int v = 0; v < m; ++v) {
        if (colour[v] != target) continue;
        std::vector<int> c2(m);
        for (int u = 0; u < m; ++u) c2[u] = 2 * colour[u] + (colour[u] == target && u != v ? 1 : 0);
        search(enc, refine(enc, c2), best_code, best_order);
    }
}

std::pair<std::vector<int>, std::vector<int>> canonical_impl(const StableGraph& g, const CanonicalOptions& opts) {
    const int m = g.vertex_count();
    const Encoded enc = encode(g, opts);
    std::vector<std::vector<int>> init(m);
    for (int v = 0; v < m; ++v) init[v] = {enc.genus[v], enc.leg[v], enc.a[v][v], g.degree(v)};
    auto sorted = init;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> colour(m);
    for (int v = 0; v < m; ++v)
        colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), init[v]) - sorted.begin());
    std::vector<int> best_code, best_order;
    if (m > 0) search(enc, refine(enc, colour), best_code, best_order);
    std::vector<int> code = {m};
    code.insert(code.end(), enc.header.begin(), enc.header.end());
    code.insert(code.end(), best_code.begin(), best_code.end());
    return {code, best_order};
}

}  // namespace

CanonicalForm canonical_form(const StableGraph& g, const CanonicalOptions& opts) {
    return {canonical_impl(g, opts).first};
}

StableGraph canonical_graph(const StableGraph& g, const CanonicalOptions& opts) {
    const auto order = canonical_impl(g, opts).second;
    std::vector<int> perm(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) perm[order[i]] = static_cast<int>(i);
    return g.relabeled(perm);
}

bool is_isomorphic(const StableGraph& a, const StableGraph& b, bool labeled_legs) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() ||
        a.leg_count() != b.leg_count())
        return false;
    CanonicalOptions opts{labeled_legs, a.has_thickness() && b.has_thickness()};
    return canonical_form(a, opts) == canonical_form(b, opts);
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const StableGraph& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (int w : g.genera()) j["vertices"].push_back({{"genus", w}});
    j["edges"] = nlohmann::json::array();
    for (auto& e : g.edges()) {
        nlohmann::json je = {{"ends", {e.u, e.v}}};
        if (e.thickness) je["thickness"] = *e.thickness;
        j["edges"].push_back(je);
    }
    j["legs"] = nlohmann::json::array();
    for (auto& l : g.legs()) j["legs"].push_back({{"vertex", l.vertex}, {"label", l.label}});
    return j;
}

namespace {

int get_int(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
    return j.get<int>();
}

}  // namespace

StableGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("graph: expected a JSON object");
    if (!j.contains("vertices") || !j["vertices"].is_array()) throw InputError("graph.vertices: expected an array");
    std::vector<int> genera;
    for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
        const auto& v = j["vertices"][i];
        const std::string path = "vertices[" + std::to_string(i) + "]";
        if (!v.is_object() || !v.contains("genus")) throw InputError(path + ": expected {\"genus\": int}");
        genera.push_back(get_int(v["genus"], path + ".genus"));
    }
    StableGraph g(genera, {});
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw InputError("graph.edges: expected an array");
        for (std::size_t i = 0; i < j["edges"].size(); ++i) {
            const auto& e = j["edges"][i];
            const std::string path = "edges[" + std::to_string(i) + "]";
            if (!e.is_object() || !e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2)
                throw InputError(path + ".ends: expected a pair of vertex indices");
            Edge edge{get_int(e["ends"][0], path + ".ends[0]"), get_int(e["ends"][1], path + ".ends[1]"), {}};
            if (e.contains("thickness")) edge.thickness = get_int(e["thickness"], path + ".thickness");
            try {
                g.add_edge(edge);
            } catch (const InputError& err) {
                throw InputError(path + ": " + err.what());
            }
        }
    }
    if (j.contains("legs")) {
        if (!j["legs"].is_array()) throw InputError("graph.legs: expected an array");
        for (std::size_t i = 0; i < j["legs"].size(); ++i) {
            const auto& l = j["legs"][i];
            const std::string path = "legs[" + std::to_string(i) + "]";
            if (!l.is_object() || !l.contains("vertex")) throw InputError(path + ": expected {\"vertex\": int}");
            Leg leg{get_int(l["vertex"], path + ".vertex"),
                    l.contains("label") ? get_int(l["label"], path + ".label") : static_cast<int>(i) + 1};
            try {
                g.add_leg(leg);
            } catch (const InputError& err) {
                throw InputError(path + ": " + err.what());
            }
        }
    }
    return g;
}

}  // namespace qrl
