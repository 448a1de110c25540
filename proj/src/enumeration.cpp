#include "qrl/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <thread>

#include "qrl/errors.hpp"

namespace qrl {

namespace {

void check_admissible(int g, int n) {
    if (g < 0 || n < 0) throw InputError("genus and leg count must be non-negative");
    if (g == 0 && n < 3) throw InputError("genus 0 needs at least 3 legs for stable curves");
    if (g == 1 && n < 1) throw InputError("genus 1 needs at least 1 leg for stable curves");
    if (2 * g - 2 + n > kMaxEnumerationComplexity)
        throw InputError("2g - 2 + n exceeds the supported maximum of " + std::to_string(kMaxEnumerationComplexity));
}

// One partition of the search: fixed vertex count, weights and unlabelled leg counts.
struct Shape {
    std::vector<int> weight;
    std::vector<int> legs;
    int edges;
};

std::vector<Shape> shapes(int g, int n) {
    std::vector<Shape> out;
    const int bound = std::max(1, 2 * g - 2 + n);
    for (int m = 1; m <= bound; ++m) {
        std::vector<int> w(m);
        // Weights non-increasing, sum <= g.
        std::function<void(int, int, int)> weights = [&](int i, int cap, int left) {
            if (i == m) {
                const int e = left - 1 + m;
                if (e < m - 1) return;
                std::vector<int> l(m);
                // Legs non-increasing within runs of equal weight.
                std::function<void(int, int)> legs = [&](int j, int rest) {
                    if (j == m) {
                        if (rest == 0) out.push_back({w, l, e});
                        return;
                    }
                    int cap_l = rest;
                    if (j > 0 && w[j] == w[j - 1]) cap_l = std::min(cap_l, l[j - 1]);
                    for (int k = cap_l; k >= 0; --k) {
                        l[j] = k;
                        legs(j + 1, rest - k);
                    }
                };
                legs(0, n);
                return;
            }
            for (int x = std::min(cap, left); x >= 0; --x) {
                w[i] = x;
                weights(i + 1, x, left - x);
            }
        };
        weights(0, g, g);
    }
    return out;
}

// Calls emit for every connected stable multigraph with the given shape,
// up to relabelling within blocks of equal (weight, legs).
void graphs_of_shape(int g, int n, const Shape& s, const std::function<void(const StableGraph&)>& emit) {
    const int m = static_cast<int>(s.weight.size());
    // 2g_v - 2 + deg_v >= 1 and these terms sum to 2g - 2 + n.
    const int slack = 2 * g - 2 + n - m;
    std::vector<int> lo(m), hi(m);
    for (int v = 0; v < m; ++v) {
        lo[v] = std::max(0, 3 - 2 * s.weight[v]);
        hi[v] = slack + 3 - 2 * s.weight[v];
    }
    std::vector<std::vector<int>> a(m, std::vector<int>(m, 0));
    std::vector<int> deg(s.legs);  // running degree
    int placed = 0;

    auto same_block = [&](int v) { return v > 0 && s.weight[v] == s.weight[v - 1] && s.legs[v] == s.legs[v - 1]; };

    std::function<void(int)> row;
    // Chooses a[i][j] for j = col..m-1 (loops when j == i).
    std::function<void(int, int)> cell = [&](int i, int col) {
        if (col == m) {
            if (deg[i] < lo[i]) return;
            if (same_block(i) && deg[i] > deg[i - 1]) return;
            row(i + 1);
            return;
        }
        const int room = s.edges - placed;
        const int per = col == i ? 2 : 1;
        int max_k = std::min(room, (hi[i] - deg[i]) / per);
        if (col != i) max_k = std::min(max_k, hi[col] - deg[col]);
        for (int k = 0; k <= max_k; ++k) {
            a[i][col] = k;
            deg[i] += per * k;
            if (col != i) deg[col] += k;
            placed += k;
            cell(i, col + 1);
            placed -= k;
            if (col != i) deg[col] -= k;
            deg[i] -= per * k;
        }
        a[i][col] = 0;
    };
    row = [&](int i) {
        if (i == m) {
            if (placed != s.edges) return;
            StableGraph gr(s.weight, {});
            for (int u = 0; u < m; ++u)
                for (int v = u; v < m; ++v)
                    for (int k = 0; k < a[u][v]; ++k) gr.add_edge({u, v, {}});
            if (!gr.is_connected()) return;
            int label = 1;
            for (int v = 0; v < m; ++v)
                for (int k = 0; k < s.legs[v]; ++k) gr.add_leg({v, label++});
            emit(gr);
            return;
        }
        cell(i, i);
    };
    row(0);
}

// All distinct ways to relabel the legs of g with 1..n.
void label_variants(const StableGraph& g, const std::function<void(const StableGraph&)>& emit) {
    std::vector<int> owner;
    for (auto& l : g.legs()) owner.push_back(l.vertex);
    std::sort(owner.begin(), owner.end());
    do {
        std::vector<Leg> legs;
        for (std::size_t i = 0; i < owner.size(); ++i) legs.push_back({owner[i], static_cast<int>(i) + 1});
        emit(StableGraph(g.genera(), g.edges(), legs));
    } while (std::next_permutation(owner.begin(), owner.end()));
}

using Found = std::map<CanonicalForm, StableGraph>;

Found run_shapes(int g, int n, const std::vector<Shape>& work, bool labeled, bool keep) {
    Found found;
    const CanonicalOptions unl{false, false};
    const CanonicalOptions lab{true, false};
    for (auto& s : work) {
        graphs_of_shape(g, n, s, [&](const StableGraph& gr) {
            auto key = canonical_form(gr, unl);
            if (found.count(key)) return;
            found.emplace(std::move(key), keep ? canonical_graph(gr, unl) : StableGraph{});
        });
    }
    if (!labeled || n == 0) return found;
    Found labeled_found;
    for (auto& [k, gr] : found) {
        (void)k;
        StableGraph base = gr;
        label_variants(base, [&](const StableGraph& v) {
            auto key = canonical_form(v, lab);
            if (labeled_found.count(key)) return;
            labeled_found.emplace(std::move(key), keep ? canonical_graph(v, lab) : StableGraph{});
        });
    }
    return labeled_found;
}

Found enumerate_impl(int g, int n, const EnumerationOptions& opts, bool keep) {
    check_admissible(g, n);
    const auto all = shapes(g, n);
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(all.size()));
    // Labelled variants need the graph itself even in counting mode.
    const bool need_graphs = keep || (opts.labeled_legs && n > 0);
    // Canonical forms never collide across shapes: the shape (weights and leg
    // counts as multisets) is an isomorphism invariant.  Round-robin split.
    std::vector<std::vector<Shape>> parts(std::max(1u, threads));
    for (std::size_t i = 0; i < all.size(); ++i) parts[i % parts.size()].push_back(all[i]);
    std::vector<std::future<Found>> futures;
    for (auto& p : parts)
        futures.push_back(std::async(std::launch::async, [&, p] { return run_shapes(g, n, p, opts.labeled_legs, need_graphs); }));
    Found merged;
    for (auto& f : futures) merged.merge(f.get());
    return merged;
}

}  // namespace

std::vector<StableGraph> enumerate_stable(int g, int n, const EnumerationOptions& opts) {
    auto found = enumerate_impl(g, n, opts, true);
    std::vector<StableGraph> out;
    out.reserve(found.size());
    for (auto& [k, gr] : found) out.push_back(std::move(gr));
    return out;
}

std::size_t count_stable(int g, int n, const EnumerationOptions& opts) {
    return enumerate_impl(g, n, opts, false).size();
}

}  // namespace qrl
