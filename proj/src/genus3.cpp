#include "qrl/genus3.hpp"

#include <map>
#include <mutex>

#include "qrl/connectivity.hpp"
#include "qrl/errors.hpp"

namespace qrl {

std::string to_string(CoreKind k) {
    switch (k) {
        case CoreKind::two_inseparable_irreducible: return "two_inseparable_irreducible";
        case CoreKind::two_inseparable_reducible: return "two_inseparable_reducible";
        case CoreKind::two_separable: return "two_separable";
    }
    return "?";
}

std::string to_string(HyperellipticClass c) {
    switch (c) {
        case HyperellipticClass::always: return "always";
        case HyperellipticClass::never: return "never";
        case HyperellipticClass::char_two_only: return "char_two_only";
        case HyperellipticClass::geometric: return "geometric";
    }
    return "?";
}

std::string to_string(ConditionDescriptor d) {
    switch (d) {
        case ConditionDescriptor::none: return "none";
        case ConditionDescriptor::weierstrass_attachment: return "weierstrass_attachment";
        case ConditionDescriptor::double_point_equivalence: return "double_point_equivalence";
        case ConditionDescriptor::canonical_map_immersion: return "canonical_map_immersion";
        case ConditionDescriptor::cross_ratio_match: return "cross_ratio_match";
        case ConditionDescriptor::char_two: return "char_two";
    }
    return "?";
}

namespace {

const std::vector<std::string> kNames = {
    // irreducible core, by number of tails
    "3", "2n", "1nn", "0nnn",
    "2e", "2m", "1ne", "1nm", "0nne", "0nnm",
    "1ee", "1me", "1mm", "0nee", "0nme", "0nmm",
    "0eee", "0mee", "0mme", "0mmm",
    // reducible 2-inseparable core
    "1---0", "0---0n", "0----0", "CAVE", "BRAID", "0---0e", "0---0m",
    // 2-separable core with two components
    "1=1", "1=0n", "0n=0n", "1=0e", "1=0m", "0n=0e", "0n=0m", "0e=0e", "0m=0e", "0m=0m",
    // 2-separable core with more components
    "Z=1", "Z=0n", "Z=Z", "Z=0e", "Z=0m",
};

// Adds a component token (digit, loops 'n', tails 'e'/'m') at a fresh vertex.
int add_component(StableGraph& g, const std::string& tok, std::size_t offset) {
    if (tok.empty() || tok[0] < '0' || tok[0] > '9') throw ParseError("expected a genus digit", offset);
    const int v = g.add_vertex(tok[0] - '0');
    std::size_t i = 1;
    for (; i < tok.size() && tok[i] == 'n'; ++i) g.add_edge({v, v, {}});
    for (; i < tok.size(); ++i) {
        if (tok[i] == 'e') {
            const int t = g.add_vertex(1);
            g.add_edge({v, t, {}});
        } else if (tok[i] == 'm') {
            const int t = g.add_vertex(0);
            g.add_edge({t, t, {}});
            g.add_edge({v, t, {}});
        } else {
            throw ParseError(std::string("unexpected character '") + tok[i] + "'", offset + i);
        }
    }
    return v;
}

StableGraph build(const std::string& name) {
    StableGraph g;
    if (name == "CAVE") {
        for (int i = 0; i < 3; ++i) g.add_vertex(0);
        for (auto [u, v] : {std::pair{0, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 2}}) g.add_edge({u, v, {}});
        return g;
    }
    if (name == "BRAID") {
        for (int i = 0; i < 4; ++i) g.add_vertex(0);
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) g.add_edge({u, v, {}});
        return g;
    }
    std::size_t pos = std::string::npos, len = 0;
    int joins = 0;
    for (auto [sep, k] : {std::pair<std::string, int>{"----", 4}, {"---", 3}, {"=", 2}}) {
        pos = name.find(sep);
        if (pos != std::string::npos) {
            len = sep.size();
            joins = k;
            break;
        }
    }
    if (pos == std::string::npos) {
        add_component(g, name, 0);
        return g;
    }
    const std::string left = name.substr(0, pos), right = name.substr(pos + len);
    // 'Z' is two weight-0 vertices joined by two edges, attached to the other side
    // by one edge from each of its vertices.
    auto add_side = [&](const std::string& tok, std::size_t offset) -> std::vector<int> {
        if (tok == "Z") {
            const int a = g.add_vertex(0), b = g.add_vertex(0);
            g.add_edge({a, b, {}});
            g.add_edge({a, b, {}});
            return {a, b};
        }
        return {add_component(g, tok, offset)};
    };
    const auto a = add_side(left, 0);
    const auto b = add_side(right, pos + len);
    if (a.size() == 2 || b.size() == 2) {
        if (joins != 2) throw ParseError("'Z' only joins with '='", pos);
        for (std::size_t i = 0; i < 2; ++i) g.add_edge({a[i % a.size()], b[i % b.size()], {}});
    } else {
        for (int k = 0; k < joins; ++k) g.add_edge({a[0], b[0], {}});
    }
    return g;
}

struct Table {
    std::vector<Genus3Type> types;
    std::map<CanonicalForm, std::size_t> index;
    std::map<std::string, std::size_t> by_name;
};

const Table& table() {
    static const Table t = [] {
        Table t;
        for (auto& name : kNames) {
            Genus3Type ty;
            ty.name = name;
            ty.graph = canonical_graph(build(name));
            if (ty.graph.genus() != 3 || !ty.graph.is_stable())
                throw InvariantViolation("type table entry " + name + " is not a stable genus-3 graph");
            const auto ct = core_and_tails(ty.graph);
            ty.r = static_cast<int>(ct.tails.size());
            ty.core_components = ct.core.vertex_count();
            if (connectivity_class(ct.core) != ConnectivityClass::two_inseparable)
                ty.core = CoreKind::two_separable;
            else
                ty.core = ct.core.vertex_count() == 1 ? CoreKind::two_inseparable_irreducible
                                                      : CoreKind::two_inseparable_reducible;
            std::tie(ty.hyperelliptic, ty.descriptor) = hyperellipticity_class(ty.graph);
            auto [it, fresh] = t.index.emplace(canonical_form(ty.graph), t.types.size());
            if (!fresh) throw InvariantViolation("type names " + name + " and " + t.types[it->second].name + " coincide");
            t.by_name[name] = t.types.size();
            t.types.push_back(std::move(ty));
        }
        return t;
    }();
    return t;
}

void require_genus3(const StableGraph& g) {
    if (g.leg_count() != 0) throw InputError("genus-3 types have no legs");
    if (!g.is_connected()) throw InputError("graph is not connected");
    if (g.genus() != 3) throw InputError("graph has genus " + std::to_string(g.genus()) + ", expected 3");
    const auto st = g.stability();
    if (!st.stable) throw InputError("graph is not stable (vertex " + std::to_string(st.unstable_vertices[0]) + ")");
}

}  // namespace

const std::vector<Genus3Type>& all_types() { return table().types; }

const Genus3Type& classify_genus3(const StableGraph& g) {
    require_genus3(g);
    const auto& t = table();
    auto it = t.index.find(canonical_form(g));
    if (it == t.index.end()) throw InvariantViolation("stable genus-3 graph missing from the type table");
    return t.types[it->second];
}

std::string type_name(const StableGraph& g) { return classify_genus3(g).name; }

StableGraph parse_type_name(const std::string& name) {
    const auto& t = table();
    auto it = t.by_name.find(name);
    if (it != t.by_name.end()) return t.types[it->second].graph;
    // Report grammar errors with a position, otherwise an unknown name.
    build(name);
    throw InputError("unknown genus-3 type name '" + name + "'");
}

std::pair<HyperellipticClass, ConditionDescriptor> hyperellipticity_class(const StableGraph& g) {
    require_genus3(g);
    const auto ct = core_and_tails(g);
    const auto r = ct.tails.size();
    if (connectivity_class(ct.core) != ConnectivityClass::two_inseparable)
        return {HyperellipticClass::always, ConditionDescriptor::none};
    if (ct.core.vertex_count() == 1) {
        switch (r) {
            case 0: return {HyperellipticClass::geometric, ConditionDescriptor::canonical_map_immersion};
            case 1: return {HyperellipticClass::geometric, ConditionDescriptor::weierstrass_attachment};
            case 2: return {HyperellipticClass::geometric, ConditionDescriptor::double_point_equivalence};
            default: return {HyperellipticClass::char_two_only, ConditionDescriptor::char_two};
        }
    }
    const bool binary = r == 0 && ct.core.vertex_count() == 2 && ct.core.vertex_genus(0) == 0 &&
                        ct.core.vertex_genus(1) == 0 && ct.core.multiplicity(0, 1) == 4;
    if (binary) return {HyperellipticClass::geometric, ConditionDescriptor::cross_ratio_match};
    return {HyperellipticClass::never, ConditionDescriptor::none};
}

nlohmann::json to_json(const Genus3Type& t) {
    return {{"name", t.name},
            {"class", to_string(t.hyperelliptic)},
            {"descriptor", to_string(t.descriptor)},
            {"r", t.r},
            {"core", to_string(t.core)}};
}

bool cartier_twist_check(const StableGraph& g, const std::vector<int>& m) {
    if (static_cast<int>(m.size()) != g.vertex_count())
        throw InputError("expected " + std::to_string(g.vertex_count()) + " twist coefficients, got " +
                         std::to_string(m.size()));
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        if (!e.thickness) throw InputError("edge " + std::to_string(i) + " has no thickness");
        const int d = *e.thickness;
        if (((m[e.u] - m[e.v]) % d + d) % d != 0) return false;
    }
    return true;
}

std::vector<int> canonical_twist(const StableGraph& g) {
    if (!g.has_thickness()) throw InputError("canonical twist needs a thickness on every edge");
    std::vector<int> m(g.vertex_count(), 0);
    for (int b : separating_edges(g)) {
        const auto& e = g.edges()[b];
        for (int v : {e.u, e.v}) {
            const bool tail = g.legs_at(v) == 0 && ((g.vertex_genus(v) == 1 && g.degree(v) == 1) ||
                                                   (g.vertex_genus(v) == 0 && g.loop_count(v) == 1 && g.degree(v) == 3));
            if (tail) m[v] = *e.thickness;
        }
    }
    if (!cartier_twist_check(g, m)) throw InvariantViolation("canonical twist is not Cartier");
    return m;
}

}  // namespace qrl
