#include "qrl/reduction.hpp"

#include <algorithm>

#include "qrl/connectivity.hpp"
#include "qrl/errors.hpp"
#include "qrl/genus3.hpp"

namespace qrl {

namespace {

bool all_pass(const std::vector<ConsistencyCheck>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const ConsistencyCheck& c) { return c.passed; });
}

nlohmann::json checks_json(const std::vector<ConsistencyCheck>& cs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : cs) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return out;
}

}  // namespace

bool ReductionPrediction::consistent() const { return all_pass(flags); }
bool ConsistencyReport::passed() const { return all_pass(checks); }

StableGraph attach_tails(const StableGraph& core, const std::string& kinds) {
    if (static_cast<int>(kinds.size()) != core.leg_count())
        throw InputError("need one tail kind per leg: " + std::to_string(core.leg_count()) + " legs, " +
                         std::to_string(kinds.size()) + " kinds");
    StableGraph g(core.genera(), core.edges(), {});
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const int at = core.legs()[i].vertex;
        if (kinds[i] == 'e') {
            const int v = g.add_vertex(1);
            g.add_edge({at, v, {}});
        } else if (kinds[i] == 'm') {
            const int v = g.add_vertex(0);
            g.add_edge({v, v, {}});
            g.add_edge({at, v, {}});
        } else {
            throw InputError(std::string("tail kind must be 'e' or 'm', got '") + kinds[i] + "'");
        }
    }
    return g;
}

ReductionPrediction predict_reduction_types(const PlaneQuartic& q, unsigned depth) {
    ReductionPrediction out;
    const GitReport git = git_status(q, depth);
    if (git.status == GitStatus::semistable_not_stable) {
        out.status = "out_of_scope";
        out.reason = "hyperelliptic reduction: prediction out of scope (" + git.reason + ")";
        return out;
    }
    if (git.status == GitStatus::unstable)
        throw InputError("quartic is GIT-unstable (" + git.reason + "); no reduction type is predicted");

    const SpecialFiber fiber = special_fiber_graph(q, depth);
    out.status = "predicted";
    out.pointed_core = fiber.graph;
    out.r = static_cast<int>(fiber.graph.leg_count());

    bool genus_ok = true, stable_ok = true, class_ok = true, round_trip = true;
    std::string bad_class, bad_trip;
    for (int pigs = 0; pigs <= out.r; ++pigs) {
        const std::string kinds = std::string(static_cast<std::size_t>(out.r - pigs), 'e') +
                                  std::string(static_cast<std::size_t>(pigs), 'm');
        const StableGraph g = attach_tails(fiber.graph, kinds);
        genus_ok = genus_ok && g.genus() == 3;
        stable_ok = stable_ok && g.is_stable();
        if (!(g.genus() == 3 && g.is_stable())) continue;
        const Genus3Type& t = classify_genus3(g);
        out.candidates.push_back(t.name);
        if (t.hyperelliptic == HyperellipticClass::always) {
            class_ok = false;
            bad_class = t.name;
        }
        const CoreAndTails ct = core_and_tails(g);
        if (!is_isomorphic(ct.core, fiber.graph, false)) {
            round_trip = false;
            bad_trip = t.name;
        }
    }
    out.flags.push_back({"candidate_count", out.candidates.size() == static_cast<std::size_t>(out.r + 1),
                         std::to_string(out.candidates.size()) + " candidates for r = " + std::to_string(out.r)});
    out.flags.push_back({"candidates_genus_3", genus_ok, genus_ok ? "all candidates have genus 3" : "genus mismatch"});
    out.flags.push_back({"candidates_stable", stable_ok, stable_ok ? "all candidates are stable" : "unstable candidate"});
    out.flags.push_back({"no_always_hyperelliptic", class_ok,
                         class_ok ? "no candidate has a 2-separable core" : bad_class + " is always hyperelliptic"});
    out.flags.push_back({"round_trip", round_trip,
                         round_trip ? "removing the tails recovers the pointed core"
                                    : "core of " + bad_trip + " differs from the pointed core"});
    return out;
}

ConsistencyReport consistency_report(const PlaneQuartic& q, unsigned depth) {
    const GitReport git = git_status(q, depth);
    if (git.status != GitStatus::stable)
        throw InputError("consistency report needs a GIT-stable quartic (status " + to_string(git.status) + ")");
    const SpecialFiber fiber = special_fiber_graph(q, depth);
    ConsistencyReport rep;
    rep.pointed_core = fiber.graph;
    rep.r = static_cast<int>(fiber.graph.leg_count());
    for (const auto& c : fiber.components) rep.component_degrees.push_back(c.degree);
    auto degs = rep.component_degrees;
    std::sort(degs.begin(), degs.end());
    rep.configuration = degs.size() == 1                    ? "irreducible"
                        : degs == std::vector<int>{1, 3}    ? "line_cubic"
                                                            : "reducible";
    const auto& g = fiber.graph;
    const std::string rs = "r = " + std::to_string(rep.r);

    rep.checks.push_back({"r_at_most_3", rep.r <= 3, rs});
    if (rep.configuration == "line_cubic") {
        bool on_cubic = true;
        for (const auto& l : g.legs()) on_cubic = on_cubic && fiber.components[static_cast<std::size_t>(l.vertex)].degree == 3;
        rep.checks.push_back({"line_cubic_bound", rep.r <= 1 && on_cubic,
                              rs + (on_cubic ? ", cusps on the cubic" : ", cusp off the cubic")});
    } else if (rep.configuration == "reducible") {
        rep.checks.push_back({"reducible_no_cusps", rep.r == 0, rs});
    }
    const auto cls = connectivity_class(g);
    rep.checks.push_back({"core_two_inseparable", cls == ConnectivityClass::two_inseparable, to_string(cls)});
    const auto st = g.stability();
    rep.checks.push_back({"core_stable", st.stable,
                          st.stable ? "pointed core is stable"
                                    : std::to_string(st.unstable_vertices.size()) + " unstable vertices"});
    bool deg_ok = true;
    std::string deg_detail;
    for (std::size_t i = 0; i < fiber.components.size(); ++i) {
        const int rz = static_cast<int>(g.legs_at(static_cast<int>(i)));
        const int d = fiber.components[i].degree;
        deg_ok = deg_ok && d - rz > 0;
        deg_detail += (deg_detail.empty() ? "" : ", ") + std::to_string(d) + "-" + std::to_string(rz);
    }
    rep.checks.push_back({"degree_exceeds_cusps", deg_ok, deg_detail});
    const int gc = g.genus();
    rep.checks.push_back({"genus_ledger", gc + rep.r == 3,
                          "genus(core) " + std::to_string(gc) + " + r " + std::to_string(rep.r)});
    return rep;
}

nlohmann::json to_json(const ReductionPrediction& p) {
    nlohmann::json j = {{"status", p.status}};
    if (p.status != "predicted") {
        j["reason"] = p.reason;
        return j;
    }
    j["r"] = p.r;
    j["pointed_core"] = to_json(p.pointed_core);
    j["candidates"] = p.candidates;
    j["flags"] = checks_json(p.flags);
    j["consistent"] = p.consistent();
    return j;
}

nlohmann::json to_json(const ConsistencyReport& r) {
    return {{"r", r.r},
            {"configuration", r.configuration},
            {"component_degrees", r.component_degrees},
            {"pointed_core", to_json(r.pointed_core)},
            {"checks", checks_json(r.checks)},
            {"passed", r.passed()}};
}

}  // namespace qrl
