#include "qrl/projective.hpp"

#include <algorithm>

#include "qrl/errors.hpp"

namespace qrl {

ProjectivePoint::ProjectivePoint(std::array<Element, 3> coords) : coords_(coords) {
    int last = -1;
    for (int i = 2; i >= 0; --i) {
        if (!coords_[static_cast<std::size_t>(i)].is_zero()) {
            last = i;
            break;
        }
    }
    if (last < 0) throw InputError("projective point with all coordinates zero");
    chart_ = last;
    const Element inv = coords_[static_cast<std::size_t>(last)].inverse();
    for (auto& c : coords_) c *= inv;
}

ProjectivePoint ProjectivePoint::map(const FieldEmbedding& emb) const {
    return ProjectivePoint(emb(coords_[0]), emb(coords_[1]), emb(coords_[2]));
}

std::string ProjectivePoint::to_string() const {
    return "[" + coords_[0].to_string() + ":" + coords_[1].to_string() + ":" + coords_[2].to_string() + "]";
}

std::vector<RationalPoint> extension_points(const HomogeneousPoly& form, unsigned d) {
    return extension_points(form, form.field().extension(d));
}

std::vector<RationalPoint> extension_points(const HomogeneousPoly& form, const FieldEmbedding& emb) {
    const FiniteField& k = emb.target;
    const HomogeneousPoly f = form.map(emb);
    std::vector<RationalPoint> out;
    auto push = [&](const ProjectivePoint& p) {
        out.push_back({p, minimal_field_degree(emb, {p[0], p[1], p[2]})});
    };

    const Element zero = k.zero();
    const Element one = k.one();
    const auto elems = k.elements();
    const int deg = f.degree();

    // Chart z = 1, sweeping x.
    for (const auto& x0 : elems) {
        std::vector<Element> c(static_cast<std::size_t>(deg) + 1, zero);
        for (const auto& [m, coef] : f.poly().terms()) c[static_cast<std::size_t>(m[1])] += coef * x0.pow(m[0]);
        const UniPoly g(k, c);
        if (g.is_zero()) {
            for (const auto& y0 : elems) push(ProjectivePoint(x0, y0, one));
        } else {
            for (const auto& y0 : g.roots()) push(ProjectivePoint(x0, y0, one));
        }
    }
    // Line z = 0.
    for (const auto& x0 : elems)
        if (f.evaluate({x0, one, zero}).is_zero()) push(ProjectivePoint(x0, one, zero));
    if (f.evaluate({one, zero, zero}).is_zero()) push(ProjectivePoint(one, zero, zero));

    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
    return out;
}

std::vector<Element> restrict_to_line(const Polynomial& form, int degree, const ProjectivePoint& a,
                                      const ProjectivePoint& b) {
    const FiniteField& k = form.field();
    std::array<UniPoly, 3> lin{UniPoly(k, {b[0], a[0]}), UniPoly(k, {b[1], a[1]}), UniPoly(k, {b[2], a[2]})};
    UniPoly acc(k);
    for (const auto& [m, c] : form.terms())
        acc = acc + lin[0].pow(static_cast<unsigned>(m[0])) * lin[1].pow(static_cast<unsigned>(m[1])) *
                        lin[2].pow(static_cast<unsigned>(m[2])) * c;
    // acc(s) = F(s*a + b); coefficient of s^j belongs to s^j t^(degree-j).
    std::vector<Element> out(static_cast<std::size_t>(degree) + 1, k.zero());
    for (int j = 0; j <= degree; ++j) out[static_cast<std::size_t>(degree - j)] = acc.coefficient(j);
    return out;
}

std::array<Element, 3> line_through(const ProjectivePoint& a, const ProjectivePoint& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Polynomial linear_form(const FiniteField& field, const std::array<Element, 3>& coeffs) {
    Polynomial p(field);
    p.add_term({1, 0, 0}, coeffs[0]);
    p.add_term({0, 1, 0}, coeffs[1]);
    p.add_term({0, 0, 1}, coeffs[2]);
    return p;
}

}  // namespace qrl
