#include <doctest.h>

#include "qrl/errors.hpp"
#include "qrl/stable_graph.hpp"
#include "support/graph_oracles.hpp"

using namespace qrl;

namespace {

// Genus from an independent formula: sum of weights plus first Betti number,
// Betti number counted by spanning-forest edges.
int genus_by_forest(const StableGraph& g) {
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
    };
    int cycles = 0;
    for (const auto& e : g.edges()) {
        const int a = find(e.u), b = find(e.v);
        if (a == b)
            ++cycles;
        else
            parent[static_cast<std::size_t>(a)] = b;
    }
    int w = 0;
    for (int x : g.genera()) w += x;
    return w + cycles;
}

}  // namespace

TEST_CASE("genus and stability on small examples") {
    const StableGraph banana({0, 0}, {{0, 1, {}}, {0, 1, {}}, {0, 1, {}}});
    CHECK(banana.genus() == 2);
    CHECK(banana.is_stable());

    const StableGraph bridge({1, 1}, {{0, 1, {}}});
    CHECK(bridge.genus() == 2);
    CHECK(bridge.is_stable());

    const StableGraph rational_tail({2, 0}, {{0, 1, {}}}, {{1, 1}});
    CHECK(rational_tail.genus() == 2);
    const auto rep = rational_tail.stability();
    CHECK_FALSE(rep.stable);
    CHECK(rep.unstable_vertices == std::vector<int>{1});

    const StableGraph pig({0}, {{0, 0, {}}}, {{0, 1}});
    CHECK(pig.genus() == 1);
    CHECK(pig.is_stable());
    CHECK(pig.degree(0) == 3);
    CHECK(pig.loop_count(0) == 1);

    CHECK_THROWS_AS(StableGraph({0, 0}, {}).genus(), InputError);
    CHECK_THROWS_AS(StableGraph({0}, {{0, 1, {}}}), InputError);
    CHECK_THROWS_AS(StableGraph({-1}, {}), InputError);
    CHECK_THROWS_AS(StableGraph({0}, {{0, 0, 0}}), InputError);
    CHECK_THROWS_AS(StableGraph({0}, {}, {{0, 1}, {0, 1}}), InputError);
}

TEST_CASE("genus agrees with a spanning-forest count on random graphs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto g = oracle::random_graph(rng, 7, 10, 3, 3);
        CHECK(g.genus() == genus_by_forest(g));
        int deg = 0;
        for (int v = 0; v < g.vertex_count(); ++v) deg += g.degree(v);
        CHECK(deg == 2 * g.edge_count() + g.leg_count());
        // Stability from the definition 2g - 2 + n > 0 at every vertex.
        bool stable = true;
        for (int v = 0; v < g.vertex_count(); ++v) stable = stable && 2 * g.vertex_genus(v) - 2 + g.degree(v) > 0;
        CHECK(g.is_stable() == stable);
    }
}

TEST_CASE("half-edge presentation") {
    const StableGraph g({0, 1}, {{0, 1, {}}, {1, 1, {}}}, {{0, 7}});
    const auto h = g.half_edges();
    CHECK(h.vertex == std::vector<int>{0, 1, 1, 1, 0});
    CHECK(h.involution == std::vector<int>{1, 0, 3, 2, 4});
}

TEST_CASE("json round trip and diagnostics") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto g = oracle::random_graph(rng, 5, 8, 2, 3, i % 2 == 0);
        const auto back = graph_from_json(to_json(g));
        CHECK(to_json(back) == to_json(g));
        CHECK(is_isomorphic(g, back, true));
    }
    using nlohmann::json;
    const json missing = {{"vertices", json::array({{{"genus", 0}}})}, {"edges", json::array({{{"ends", {0, 3}}}})}};
    try {
        graph_from_json(missing);
        FAIL("expected an InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("edges[0]") != std::string::npos);
    }
    CHECK_THROWS_AS(graph_from_json(json::array()), InputError);
    CHECK_THROWS_AS(graph_from_json(json{{"vertices", json::array({{{"genus", "x"}}})}}), InputError);
}

TEST_CASE("relabeling and canonical graph") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        const auto g = oracle::random_graph(rng, 6, 8, 2, 3);
        const auto c = canonical_graph(g);
        CHECK(oracle::isomorphic(g, c, false));
        CHECK(canonical_graph(oracle::random_relabel(g, rng)).edges().size() == c.edges().size());
        CHECK(to_json(canonical_graph(oracle::random_relabel(g, rng), {true, false})) == to_json(canonical_graph(g, {true, false})));
    }
}

TEST_CASE("thickness participates in isomorphism when present on both sides") {
    const StableGraph a({1, 1}, {{0, 1, 2}, {0, 1, 3}});
    const StableGraph b({1, 1}, {{0, 1, 3}, {0, 1, 3}});
    const StableGraph bare({1, 1}, {{0, 1, {}}, {0, 1, {}}});
    CHECK_FALSE(is_isomorphic(a, b));
    CHECK(is_isomorphic(a, bare));
    CHECK(canonical_form(a, {false, true}) != canonical_form(b, {false, true}));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto g = oracle::random_graph(rng, 5, 7, 1, 2, true);
        const auto p = oracle::random_perturbation(g, rng);
        if (!oracle::connected(p)) continue;
        CHECK(is_isomorphic(g, p) == oracle::isomorphic(g, p, false));
        CHECK(is_isomorphic(g, oracle::random_relabel(g, rng)));
    }
}

TEST_CASE("canonical form matches brute force on every graph with at most 5 edges") {
    std::mt19937_64 rng(1);
    const auto corpus = oracle::exhaustive_corpus(5);
    for (bool labeled : {false, true}) {
        oracle::Tally t;
        oracle::tally_canonical(corpus, labeled, rng, t);
        CHECK(t.cases == corpus.size());
        CHECK(t.mismatches == 0);
    }
}

TEST_CASE("canonical form matches brute force on random graphs") {
    std::mt19937_64 rng(2);
    oracle::Tally conn, canon;
    oracle::tally_random(3000, 8, rng, conn, canon);
    CHECK(canon.mismatches == 0);
    CHECK(conn.mismatches == 0);
}
