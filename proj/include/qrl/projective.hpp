#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "qrl/polynomial.hpp"

namespace qrl {

/// A point of the projective plane, normalized so the last nonzero coordinate is 1.
class ProjectivePoint {
public:
    /// Throws InputError if all coordinates vanish.
    explicit ProjectivePoint(std::array<Element, 3> coords);
    ProjectivePoint(const Element& x, const Element& y, const Element& z)
        : ProjectivePoint(std::array<Element, 3>{x, y, z}) {}

    const std::array<Element, 3>& coords() const noexcept { return coords_; }
    const Element& operator[](std::size_t i) const { return coords_[i]; }
    FiniteField field() const { return coords_[0].field(); }
    /// Index of the coordinate normalized to 1.
    int chart() const noexcept { return chart_; }

    ProjectivePoint map(const FieldEmbedding& emb) const;
    std::string to_string() const;

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
        return a.coords_ == b.coords_;
    }
    friend auto operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) {
        return a.coords_ <=> b.coords_;
    }

private:
    std::array<Element, 3> coords_;
    int chart_ = 2;
};

/// A point together with the degree of its minimal field of definition over the base.
struct RationalPoint {
    ProjectivePoint point;
    unsigned field_degree;
};

/// Every point of P^2 over the degree-d extension of F's field where F vanishes,
/// each reported once, in the extension's coordinates, tagged with its minimal degree.
std::vector<RationalPoint> extension_points(const HomogeneousPoly& form, unsigned d);

/// Same, over an explicit extension (form is mapped through emb first).
std::vector<RationalPoint> extension_points(const HomogeneousPoly& form, const FieldEmbedding& emb);

/// Restriction of a form to the line through a and b, as a binary form in (s, t)
/// evaluated at s*a + t*b; returned as coefficients of s^(deg-i) t^i, i = 0..deg.
std::vector<Element> restrict_to_line(const Polynomial& form, int degree, const ProjectivePoint& a,
                                      const ProjectivePoint& b);

/// Coefficients of the line through two distinct points (cross product).
std::array<Element, 3> line_through(const ProjectivePoint& a, const ProjectivePoint& b);

/// The degree-1 polynomial a*x + b*y + c*z.
Polynomial linear_form(const FiniteField& field, const std::array<Element, 3>& coeffs);

}  // namespace qrl
