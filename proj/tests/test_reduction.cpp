#include <doctest.h>

#include "qrl/connectivity.hpp"
#include "qrl/errors.hpp"
#include "qrl/genus3.hpp"
#include "qrl/reduction.hpp"
#include "support/graph_oracles.hpp"
#include "support/quartic_catalog.hpp"

using namespace qrl;

namespace {

PlaneQuartic quartic(const std::string& s, const std::string& field) {
    return PlaneQuartic::parse(s, FiniteField::parse(field));
}

const char* const kTricuspidal = "(x*y+y*z+z*x)^2 - 4*x*y*z*(x+y+z)";

}  // namespace

TEST_CASE("tricuspidal quartic predicts the four rational-core types") {
    for (const char* spec : {"3", "5", "7", "11"}) {
        const auto p = predict_reduction_types(quartic(kTricuspidal, spec), 6);
        CHECK(p.status == "predicted");
        CHECK(p.r == 3);
        CHECK(p.candidates == std::vector<std::string>{"0eee", "0mee", "0mme", "0mmm"});
        CHECK(p.consistent());
        const auto rep = consistency_report(quartic(kTricuspidal, spec), 6);
        CHECK(rep.passed());
        CHECK(rep.configuration == "irreducible");
    }
}

TEST_CASE("examples with few singularities") {
    CHECK(predict_reduction_types(quartic("x^4 + y^4 + z^4", "5"), 6).candidates == std::vector<std::string>{"3"});
    const auto conics = consistency_report(quartic("(x^2+y^2-z^2)*(x^2+2*y^2-3*z^2)", "7"), 6);
    CHECK(conics.r == 0);
    CHECK(conics.passed());
    CHECK(type_name(conics.pointed_core) == "0----0");
    const auto lc = predict_reduction_types(quartic("z*(x^3 + y^3 + z^3)", "7"), 6);
    CHECK(lc.candidates == std::vector<std::string>{"1---0"});
}

TEST_CASE("catalog: candidates follow from the singularities") {
    int node_cusp = 0, one_node = 0;
    for (const char* spec : {"3", "5", "7"}) {
        for (const auto& e : catalog::build(FiniteField::parse(spec), 19)) {
            const auto rep = consistency_report(e.quartic, 4);
            CHECK(rep.passed());
            CHECK(rep.r == e.cusps);
            const auto p = predict_reduction_types(e.quartic, 4);
            CHECK(p.consistent());
            CHECK(p.candidates.size() == static_cast<std::size_t>(e.cusps + 1));
            for (const auto& name : p.candidates) {
                const auto g = parse_type_name(name);
                CHECK(classify_genus3(g).hyperelliptic != HyperellipticClass::always);
                CHECK(oracle::separating_pairs(core_and_tails(g).core).empty());
            }
            if (e.category == "irreducible" && e.nodes == 1 && e.cusps == 1) {
                ++node_cusp;
                CHECK(p.candidates == std::vector<std::string>{"1ne", "1nm"});
            }
            if (e.category == "irreducible" && e.nodes == 1 && e.cusps == 0) {
                ++one_node;
                CHECK(p.candidates == std::vector<std::string>{"2n"});
            }
        }
    }
    CHECK(node_cusp > 0);
    CHECK(one_node > 0);
}

TEST_CASE("attach tails and round trip") {
    const StableGraph core({1}, {{0, 0, {}}}, {{0, 1}});
    CHECK(type_name(attach_tails(core, "e")) == "1ne");
    CHECK(type_name(attach_tails(core, "m")) == "1nm");
    CHECK_THROWS_AS(attach_tails(core, "em"), InputError);
    CHECK_THROWS_AS(attach_tails(core, "x"), InputError);
    // Every type with tails: cut them off, reattach with the same kinds.
    for (const auto& t : all_types()) {
        const auto ct = core_and_tails(t.graph);
        const std::string kinds(ct.tail_kinds.begin(), ct.tail_kinds.end());
        StableGraph c = ct.core;
        // Reorder core legs to match tail order.
        std::vector<Leg> legs;
        for (int label : ct.tail_labels)
            for (const auto& l : c.legs())
                if (l.label == label) legs.push_back(l);
        c = StableGraph(c.genera(), c.edges(), legs);
        CHECK(is_isomorphic(attach_tails(c, kinds), t.graph));
    }
}

TEST_CASE("non-stable input") {
    const auto p = predict_reduction_types(quartic(kTricuspidal, "2"), 6);
    CHECK(p.status == "out_of_scope");
    CHECK(p.candidates.empty());
    CHECK(p.reason.find("hyperelliptic") != std::string::npos);
    CHECK(to_json(p)["status"] == "out_of_scope");
    CHECK_THROWS_AS(predict_reduction_types(quartic("x^3*y", "5"), 6), InputError);
    CHECK_THROWS_AS(consistency_report(quartic(kTricuspidal, "2"), 6), InputError);
}
