#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qrl/stable_graph.hpp"

namespace qrl {

enum class CoreKind { two_inseparable_irreducible, two_inseparable_reducible, two_separable };
enum class HyperellipticClass { always, never, char_two_only, geometric };
enum class ConditionDescriptor {
    none,
    weierstrass_attachment,
    double_point_equivalence,
    canonical_map_immersion,
    cross_ratio_match,
    char_two,
};

std::string to_string(CoreKind k);
std::string to_string(HyperellipticClass c);
std::string to_string(ConditionDescriptor d);

struct Genus3Type {
    std::string name;
    StableGraph graph;
    int r = 0;  // number of 1-tails
    CoreKind core = CoreKind::two_inseparable_irreducible;
    int core_components = 1;
    HyperellipticClass hyperelliptic = HyperellipticClass::never;
    ConditionDescriptor descriptor = ConditionDescriptor::none;
};

/// The 42 types in table order.
const std::vector<Genus3Type>& all_types();

/// Table entry for a stable genus-3 graph without legs; throws InputError otherwise.
const Genus3Type& classify_genus3(const StableGraph& g);
std::string type_name(const StableGraph& g);

/// Dual graph of a named type.  Throws InputError for names outside the table
/// and ParseError for strings that do not follow the name grammar.
StableGraph parse_type_name(const std::string& name);

/// Class and descriptor derived from the core structure of g.
std::pair<HyperellipticClass, ConditionDescriptor> hyperellipticity_class(const StableGraph& g);

nlohmann::json to_json(const Genus3Type& t);

/// m_u == m_v (mod thickness) across every edge.  Throws InputError if an edge
/// has no thickness or m has the wrong length.
bool cartier_twist_check(const StableGraph& g, const std::vector<int>& m);

/// Thickness of the attaching bridge on each 1-tail vertex, 0 elsewhere.
std::vector<int> canonical_twist(const StableGraph& g);

}  // namespace qrl
