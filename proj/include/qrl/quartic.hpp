#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qrl/projective.hpp"
#include "qrl/stable_graph.hpp"

namespace qrl {

/// Default extension bound for singular point searches.
inline constexpr unsigned kDefaultSearchDepth = 6;
/// Singular points of a reduced quartic have degree at most 4 over the base.
inline constexpr unsigned kCompleteSearchDepth = 4;
/// Largest base field accepted by factor_absolutely.
inline constexpr std::uint64_t kFactorFieldBound = 9;
/// Largest field searched for conic factors.
inline constexpr std::uint64_t kConicSearchCap = 81;

/// Reads QRL_SEARCH_DEPTH if set, else kDefaultSearchDepth.  Throws InputError on junk.
unsigned default_search_depth();

class PlaneQuartic {
public:
    /// Throws InputError unless the form has degree 4.
    explicit PlaneQuartic(HomogeneousPoly form);
    static PlaneQuartic parse(const std::string& text, const FiniteField& field);

    const HomogeneousPoly& form() const noexcept { return form_; }
    const FiniteField& field() const noexcept { return form_.field(); }

private:
    HomogeneousPoly form_;
};

enum class SingularityType { A1, A2, worse };
std::string to_string(SingularityType t);

struct SingularityClass {
    SingularityType type = SingularityType::worse;
    /// Order of the local equation at the point.
    int multiplicity = 0;
    /// "two_lines" (A1), "cuspidal" (A2), "double_line", "ordinary" or "non_ordinary".
    std::string tangent_cone;
};

struct SingularPoint {
    ProjectivePoint point;  // over the extension of degree field_degree
    unsigned field_degree;
    SingularityClass kind;
};

struct SingularityReport {
    std::vector<SingularPoint> points;  // sorted by field degree, then coordinates
    bool is_reduced = true;
    bool is_double_conic = false;
    /// Extension degrees 1..search_depth were searched.
    unsigned search_depth = 0;
    /// True when the search provably found every singular point.
    bool search_complete = false;
    /// Non-reduced forms have a singular curve; no point search is run.
    bool searched = false;
};

/// Binary form sum b_i s^(m-i) t^i has no repeated factor over the closure.
bool binary_form_squarefree(const std::vector<Element>& b);

/// F has no repeated factor over the algebraic closure.
bool is_reduced(const HomogeneousPoly& form);

/// Square root of a polynomial if one exists over its field.
std::optional<Polynomial> polynomial_sqrt(const Polynomial& p);

/// F = c * C^2 with C a smooth conic.
bool is_double_smooth_conic(const HomogeneousPoly& form);

/// Classifies the singularity at the origin of f(x, y); f(0) = 0 and no linear
/// terms.  Throws InputError otherwise.
SingularityClass classify_local(const Polynomial& f);

/// Classifies a singular point; form and point share a field.  Throws InputError
/// if the point is not a singular point of the curve.
SingularityClass classify_singularity(const HomogeneousPoly& form, const ProjectivePoint& p);

/// Singular points over GF(q^d), d <= depth.  The depth is clamped to the table
/// limit and to kCompleteSearchDepth.
SingularityReport singular_points(const PlaneQuartic& q, unsigned depth);

/// A line contained in the curve, over the extension of its minimal degree.
struct LineComponent {
    std::array<Element, 3> coeffs;  // normalized, last nonzero entry 1
    FieldEmbedding embedding;       // base -> field of definition
    int multiplicity;
};

/// Every line contained in V(F) over the closure, with multiplicity.  Needs q^4
/// within the field table limit.
std::vector<LineComponent> line_components(const HomogeneousPoly& form);

struct Factor {
    HomogeneousPoly form;  // over the common field of the factorization
    int multiplicity;
    int degree;
    unsigned field_degree;  // minimal field of definition over the base
};

struct Factorization {
    FieldEmbedding embedding;  // base -> common field W
    Element scalar;            // F = scalar * prod factors^multiplicity over W
    std::vector<Factor> factors;
};

/// Absolute factorization of a form of degree <= 4 over GF(q), q <= kFactorFieldBound.
Factorization factor_absolutely(const HomogeneousPoly& form);

enum class GitStatus { stable, semistable_not_stable, unstable };
std::string to_string(GitStatus s);

struct GitReport {
    GitStatus status;
    std::string reason;
    /// Characteristic <= 7: semistable classification tables are not claimed complete.
    bool small_characteristic;
    SingularityReport singularities;
};

GitReport git_status(const PlaneQuartic& q, unsigned depth);

struct ComponentInfo {
    int degree;
    int arithmetic_genus;
    int delta;  // number of the component's own A1/A2 points
    int geometric_genus;
    std::string kind;  // "line", "conic", "cubic", "quartic"
};

struct SpecialFiber {
    /// Vertices are the components, edges are nodes, legs are cusps.
    StableGraph graph;
    std::vector<ComponentInfo> components;
    /// Minimal field degree of the cusp behind each leg, in leg order.
    std::vector<unsigned> leg_field_degrees;
    SingularityReport singularities;
};

/// Dual graph of a GIT-stable quartic with cusps as legs.  Throws InputError for
/// non-stable input.
SpecialFiber special_fiber_graph(const PlaneQuartic& q, unsigned depth);

/// Cross-ratio of four points of P^1 given as (x, y) pairs.  Throws InputError on repeats.
Element cross_ratio(const std::array<std::array<Element, 2>, 4>& pts);
/// The six values of the S3 orbit of lambda, sorted, duplicates removed.
std::vector<Element> cross_ratio_orbit(const Element& lambda);
bool cross_ratio_orbit_equivalent(const std::array<std::array<Element, 2>, 4>& a,
                                  const std::array<std::array<Element, 2>, 4>& b);

nlohmann::json to_json(const SingularityReport& r);

}  // namespace qrl
