#include "qrl/differentials.hpp"

#include <algorithm>
#include <sstream>

#include "qrl/errors.hpp"
#include "qrl/linalg.hpp"
#include "qrl/parser.hpp"
#include "qrl/quartic.hpp"

namespace qrl {

RationalDifferential::RationalDifferential(FiniteField field) : field_(field), poly_(field) {}

RationalDifferential& RationalDifferential::add_pole_term(const Element& a, int k, const Element& c) {
    if (k < 1) throw InputError("pole order must be at least 1");
    auto& v = poles_[a];
    if (static_cast<int>(v.size()) < k) v.resize(static_cast<std::size_t>(k), field_.zero());
    v[static_cast<std::size_t>(k - 1)] += c;
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    if (v.empty()) poles_.erase(a);
    return *this;
}

RationalDifferential& RationalDifferential::add_polynomial_term(int n, const Element& c) {
    if (n < 0) throw InputError("polynomial exponent must be non-negative");
    poly_ = poly_ + UniPoly::monomial(field_, n, c);
    return *this;
}

RationalDifferential RationalDifferential::operator+(const RationalDifferential& rhs) const {
    RationalDifferential out = *this;
    for (const auto& [a, cs] : rhs.poles_)
        for (std::size_t k = 0; k < cs.size(); ++k) out.add_pole_term(a, static_cast<int>(k) + 1, cs[k]);
    out.poly_ = out.poly_ + rhs.poly_;
    return out;
}

RationalDifferential RationalDifferential::operator*(const Element& c) const {
    RationalDifferential out(field_);
    for (const auto& [a, cs] : poles_)
        for (std::size_t k = 0; k < cs.size(); ++k) out.add_pole_term(a, static_cast<int>(k) + 1, cs[k] * c);
    out.poly_ = poly_ * c;
    return out;
}

LaurentDifferential RationalDifferential::expand_at(const Element& a, int truncation) const {
    int max_k = 0;
    for (const auto& [b, cs] : poles_) max_k = std::max(max_k, static_cast<int>(cs.size()));
    const int work = truncation + max_k + 2;
    LaurentSeries acc(field_, work);
    for (const auto& [b, cs] : poles_) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const int k = static_cast<int>(i) + 1;
            if (cs[i].is_zero()) continue;
            if (b == a) {
                acc = acc + LaurentSeries::monomial(field_, -k, cs[i], work);
            } else {
                // (s + (a - b))^(-k)
                const LaurentSeries lin = LaurentSeries::from_poly(UniPoly(field_, {a - b, field_.one()}), work);
                acc = acc + lin.inverse().pow(k) * cs[i];
            }
        }
    }
    // P(a + s) by Horner in s.
    UniPoly shifted(field_);
    const UniPoly s_plus_a(field_, {a, field_.one()});
    const auto& pc = poly_.coefficients();
    for (std::size_t i = pc.size(); i-- > 0;) shifted = shifted * s_plus_a + UniPoly::constant(field_, pc[i]);
    acc = acc + LaurentSeries::from_poly(shifted, work);
    return LaurentDifferential(acc.truncated(truncation), "s");
}

LaurentDifferential RationalDifferential::expand_at_infinity(int truncation) const {
    const int work = truncation + poly_.degree() + 4;
    LaurentSeries acc(field_, work);
    for (const auto& [b, cs] : poles_) {
        // c / (t - b)^k = c u^k (1 - b u)^(-k)
        const LaurentSeries inv = LaurentSeries::from_poly(UniPoly(field_, {field_.one(), -b}), work).inverse();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const int k = static_cast<int>(i) + 1;
            if (cs[i].is_zero()) continue;
            acc = acc + LaurentSeries::monomial(field_, k, cs[i], work) * inv.pow(k);
        }
    }
    const auto& pc = poly_.coefficients();
    for (std::size_t i = 0; i < pc.size(); ++i)
        acc = acc + LaurentSeries::monomial(field_, -static_cast<int>(i), pc[i], work);
    const LaurentSeries dt = LaurentSeries::monomial(field_, -2, -field_.one(), work);
    return LaurentDifferential((acc * dt).truncated(truncation), "u");
}

RationalDifferential RationalDifferential::coefficient_derivative() const {
    RationalDifferential out(field_);
    for (const auto& [a, cs] : poles_)
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const int k = static_cast<int>(i) + 1;
            out.add_pole_term(a, k + 1, cs[i] * field_.from_int(-k));
        }
    out.poly_ = poly_.derivative();
    return out;
}

Element RationalDifferential::coefficient_at(const Element& t) const {
    Element v = poly_.evaluate(t);
    for (const auto& [a, cs] : poles_) {
        if (a == t) throw InputError("coefficient evaluated at a pole");
        const Element inv = (t - a).inverse();
        Element p = inv;
        for (const auto& c : cs) {
            v += c * p;
            p *= inv;
        }
    }
    return v;
}

std::vector<std::pair<std::optional<Element>, Element>> RationalDifferential::residues() const {
    std::vector<std::pair<std::optional<Element>, Element>> out;
    for (const auto& [a, cs] : poles_) out.emplace_back(a, residue(expand_at(a)));
    out.emplace_back(std::nullopt, residue(expand_at_infinity()));
    return out;
}

std::string RationalDifferential::to_string() const {
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first) out << " + ";
        first = false;
    };
    if (!poly_.is_zero()) {
        sep();
        out << "(" << poly_.to_string() << ")";
    }
    for (const auto& [a, cs] : poles_)
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i].is_zero()) continue;
            sep();
            out << cs[i].to_string() << "/(t - " << a.to_string() << ")^" << i + 1;
        }
    if (first) out << "0";
    out << " dt";
    return out.str();
}

// ---------------------------------------------------------------------------

namespace {

void check_branches(const BranchDifferential& d, std::size_t n) {
    if (d.branches.size() != n)
        throw InputError("expected " + std::to_string(n) + " branch(es), got " + std::to_string(d.branches.size()));
    for (const auto& b : d.branches)
        if (!(b.field() == d.branches.front().field())) throw InputError("branches over different fields");
}

}  // namespace

RegularityVerdict is_regular_at_node(const BranchDifferential& d) {
    check_branches(d, 2);
    for (const auto& b : d.branches)
        if (b.pole_order() > 1) return {false, "pole order " + std::to_string(b.pole_order()) + " exceeds 1"};
    const Element sum = residue(d.branches[0]) + residue(d.branches[1]);
    if (!sum.is_zero()) return {false, "residue sum " + sum.to_string() + " is nonzero"};
    return {true, "residues cancel"};
}

RegularityVerdict is_regular_at_cusp(const BranchDifferential& d) {
    check_branches(d, 1);
    const auto& b = d.branches[0];
    if (b.pole_order() > 2) return {false, "pole order " + std::to_string(b.pole_order()) + " exceeds 2"};
    const Element r = residue(b);
    if (!r.is_zero()) return {false, "residue " + r.to_string() + " is nonzero"};
    return {true, "residue vanishes"};
}

std::array<RationalDifferential, 3> w_basis_r3(const FiniteField& field) {
    RationalDifferential s1(field), s2(field), s3(field);
    s1.add_pole_term(field.zero(), 2, field.one());
    s2.add_pole_term(field.one(), 2, field.one());
    s3.add_polynomial_term(0, field.one());
    return {s1, s2, s3};
}

int expected_h0(int r) {
    if (r < 1 || r > 3) throw InputError("expected_h0 is defined for r in 1..3, got " + std::to_string(r));
    return r + 2;
}

std::size_t appendix_matrix_rank(const Element& p) {
    const FiniteField k = p.field();
    if (p.is_zero() || p == k.one()) throw InputError("p must differ from 0 and 1");
    const Element a = p.inverse(), b = (p - k.one()).inverse();
    return rank({{a * a, b * b, k.one()}, {a * a * a, b * b * b, k.zero()}}, k);
}

// ---------------------------------------------------------------------------

bool AppendixReport::all_passed() const {
    return std::none_of(items.begin(), items.end(), [](const AppendixItem& i) { return i.status == "fail"; });
}

AppendixReport verify_tricuspidal(const FiniteField& field) {
    AppendixReport rep;
    rep.field = field.to_string();
    const PlaneQuartic quartic = PlaneQuartic::parse("(x*y+y*z+z*x)^2 - 4*x*y*z*(x+y+z)", field);
    const bool char2 = field.characteristic() == 2;
    auto pass = [](bool ok) { return std::string(ok ? "pass" : "fail"); };

    // (1) Homogenized parametrization [(T-S)^2 S^2 : T^2 S^2 : T^2 (T-S)^2] in (T, S) = (x, y).
    const Polynomial T = Polynomial::variable(field, 0), S = Polynomial::variable(field, 1);
    const std::array<Polynomial, 3> param = {(T - S).pow(2) * S.pow(2), T.pow(2) * S.pow(2), T.pow(2) * (T - S).pow(2)};
    const Polynomial image = quartic.form().poly().compose(param);
    rep.items.push_back({"parametrization_on_quartic", pass(image.is_zero()),
                         image.is_zero() ? "F((t-1)^2, t^2, t^2 (t-1)^2) expands to 0"
                                         : "residual " + image.to_string()});

    // (2) t = 0, 1, infinity.
    const Element o = field.one(), z = field.zero();
    const std::array<std::pair<std::array<Element, 2>, ProjectivePoint>, 3> marks = {{
        {{z, o}, ProjectivePoint(o, z, z)},
        {{o, o}, ProjectivePoint(z, o, z)},
        {{o, z}, ProjectivePoint(z, z, o)},
    }};
    bool ok2 = true;
    std::string d2;
    std::vector<ProjectivePoint> images;
    for (const auto& [ts, target] : marks) {
        const std::array<Element, 3> at = {ts[0], ts[1], z};
        const ProjectivePoint got(param[0].evaluate(at), param[1].evaluate(at), param[2].evaluate(at));
        images.push_back(got);
        ok2 = ok2 && got == target;
        d2 += (d2.empty() ? "" : ", ") + got.to_string();
    }
    rep.items.push_back({"marked_points", pass(ok2), "t = 0, 1, oo map to " + d2});

    // (3) Each image point is an ordinary cusp.
    const bool reduced = is_reduced(quartic.form());
    if (!reduced) {
        rep.items.push_back({"cusps", "not_applicable",
                             is_double_smooth_conic(quartic.form()) ? "form is a double smooth conic"
                                                                    : "form is not reduced"});
    } else {
        bool ok3 = true;
        std::string d3;
        for (const auto& p : images) {
            const auto cls = classify_singularity(quartic.form(), p);
            ok3 = ok3 && cls.type == SingularityType::A2;
            d3 += (d3.empty() ? "" : ", ") + p.to_string() + " " + to_string(cls.type);
        }
        rep.items.push_back({"cusps", pass(ok3), d3});
    }

    // (4) Characteristic 2: the form is (xy+yz+zx)^2 and f' vanishes identically.
    if (char2) {
        const Polynomial sq = parse_polynomial("(x*y+y*z+z*x)^2", field);
        bool zero_derivative = true;
        for (const auto& s : w_basis_r3(field)) {
            const auto d = s.coefficient_derivative();
            zero_derivative = zero_derivative && d.poles().empty() && d.polynomial_part().is_zero();
        }
        const bool ok4 = sq == quartic.form().poly() && zero_derivative;
        rep.items.push_back({"char_two_degeneration", pass(ok4),
                             std::string("form ") + (sq == quartic.form().poly() ? "equals" : "differs from") +
                                 " (xy+yz+zx)^2; f'(t) " + (zero_derivative ? "is identically zero" : "is nonzero")});
    } else {
        rep.items.push_back({"char_two_degeneration", "not_applicable", "characteristic is not 2"});
    }

    // Independence of the conditions at 2p, p outside {0, 1, oo}.
    if (!char2 && field.size() <= 25) {
        bool ok = true;
        std::size_t checked = 0;
        for (const auto& p : field.elements()) {
            if (p.is_zero() || p == o) continue;
            ++checked;
            ok = ok && appendix_matrix_rank(p) == 2;
        }
        rep.items.push_back({"double_point_conditions", pass(ok),
                             "matrix M has rank 2 at all " + std::to_string(checked) + " points p"});
    } else {
        rep.items.push_back({"double_point_conditions", "not_applicable",
                             char2 ? "characteristic 2" : "field larger than 25 elements"});
    }

    rep.git_status = to_string(git_status(quartic, kCompleteSearchDepth).status);
    return rep;
}

nlohmann::json to_json(const AppendixReport& r) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& i : r.items) items.push_back({{"name", i.name}, {"status", i.status}, {"detail", i.detail}});
    return {{"field", r.field}, {"items", items}, {"git_status", r.git_status}, {"all_passed", r.all_passed()}};
}

}  // namespace qrl
