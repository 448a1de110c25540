#include "qrl/quartic.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "qrl/errors.hpp"
#include "qrl/linalg.hpp"
#include "qrl/parser.hpp"

namespace qrl {

unsigned default_search_depth() {
    const char* env = std::getenv("QRL_SEARCH_DEPTH");
    if (!env || !*env) return kDefaultSearchDepth;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 64)
        throw InputError(std::string("QRL_SEARCH_DEPTH must be an integer in 1..64, got '") + env + "'");
    return static_cast<unsigned>(v);
}

PlaneQuartic::PlaneQuartic(HomogeneousPoly form) : form_(std::move(form)) {
    if (form_.degree() != 4) throw InputError("expected a quartic form, got degree " + std::to_string(form_.degree()));
}

PlaneQuartic PlaneQuartic::parse(const std::string& text, const FiniteField& field) {
    return PlaneQuartic(parse_poly(text, field));
}

std::string to_string(SingularityType t) {
    switch (t) {
        case SingularityType::A1: return "A1";
        case SingularityType::A2: return "A2";
        case SingularityType::worse: return "worse";
    }
    return "?";
}

std::string to_string(GitStatus s) {
    switch (s) {
        case GitStatus::stable: return "stable";
        case GitStatus::semistable_not_stable: return "semistable_not_stable";
        case GitStatus::unstable: return "unstable";
    }
    return "?";
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

Polynomial var(const FiniteField& k, int i) { return Polynomial::variable(k, i); }
Polynomial cst(const FiniteField& k, const Element& c) { return Polynomial::constant(k, c); }

// f(s) = sum b_i s^(m-i), the binary form at t = 1.
UniPoly dehomogenize(const std::vector<Element>& b, const FiniteField& k) {
    const std::size_t m = b.size() - 1;
    std::vector<Element> c(b.size(), k.zero());
    for (std::size_t i = 0; i <= m; ++i) c[m - i] = b[i];
    return UniPoly(k, c);
}

ProjectivePoint combine(const Element& s, const ProjectivePoint& a, const Element& t, const ProjectivePoint& b) {
    return ProjectivePoint(s * a[0] + t * b[0], s * a[1] + t * b[1], s * a[2] + t * b[2]);
}

std::array<Element, 3> frobenius(const std::array<Element, 3>& c, std::uint64_t q) {
    return {c[0].pow(static_cast<std::int64_t>(q)), c[1].pow(static_cast<std::int64_t>(q)),
            c[2].pow(static_cast<std::int64_t>(q))};
}

// Two basis points spanning a line not through p.
std::pair<ProjectivePoint, ProjectivePoint> complementary_basis(const ProjectivePoint& p) {
    const FiniteField k = p.field();
    const Element o = k.one(), z = k.zero();
    const std::array<ProjectivePoint, 3> e = {ProjectivePoint(o, z, z), ProjectivePoint(z, o, z),
                                              ProjectivePoint(z, z, o)};
    const int c = p.chart();  // p[c] = 1
    std::vector<ProjectivePoint> rest;
    for (int i = 0; i < 3; ++i)
        if (i != c) rest.push_back(e[static_cast<std::size_t>(i)]);
    return {rest[0], rest[1]};
}

// Two independent points on the line a x + b y + c z = 0.
std::pair<ProjectivePoint, ProjectivePoint> points_on_line(const std::array<Element, 3>& l) {
    const FiniteField k = l[0].field();
    const auto ker = kernel({{l[0], l[1], l[2]}}, 3, k);
    return {ProjectivePoint(ker[0][0], ker[0][1], ker[0][2]), ProjectivePoint(ker[1][0], ker[1][1], ker[1][2])};
}

// Smallest extension degree whose field has more than n elements.
unsigned degree_exceeding(const FiniteField& f, std::uint64_t n) {
    unsigned d = 1;
    while (ipow(f.size(), d) <= n) ++d;
    return d;
}

bool is_smooth_conic(const Polynomial& c) {
    const FiniteField& k = c.field();
    const Element a = c.coefficient({2, 0, 0}), b = c.coefficient({0, 2, 0}), cc = c.coefficient({0, 0, 2});
    const Element d = c.coefficient({1, 1, 0}), e = c.coefficient({1, 0, 1}), f = c.coefficient({0, 1, 1});
    if (k.characteristic() == 2) {
        // Gradient (dy+ez, dx+fz, ex+fy) vanishes exactly at (f, e, d).
        if (d.is_zero() && e.is_zero() && f.is_zero()) return false;
        return !c.evaluate({f, e, d}).is_zero();
    }
    const Element two = k.from_int(2);
    return rank({{two * a, d, e}, {d, two * b, f}, {e, f, two * cc}}, k) == 3;
}

}  // namespace

bool binary_form_squarefree(const std::vector<Element>& b) {
    if (b.empty()) return false;
    std::size_t k = 0;
    while (k < b.size() && b[k].is_zero()) ++k;
    if (k == b.size() || k >= 2) return false;
    const FiniteField field = b[k].field();
    const UniPoly g = dehomogenize(b, field);
    if (g.degree() < 1) return true;
    const UniPoly dg = g.derivative();
    if (dg.is_zero()) return false;
    return gcd(g, dg).degree() == 0;
}

bool is_reduced(const HomogeneousPoly& form) {
    const int m = form.degree();
    if (form.is_zero()) return false;
    if (m <= 1) return true;
    // The discriminant of the restriction to z = a x + b y has degree <= m(2m-2)
    // in (a, b); over a larger field some line misses its zero set.
    const auto bound = static_cast<std::uint64_t>(m * (2 * m - 2));
    const unsigned d = degree_exceeding(form.field(), bound);
    const auto emb = form.field().extension(d);
    const FiniteField& k = emb.target;
    const Polynomial f = form.poly().map(emb);
    const auto els = k.elements();
    for (const auto& a : els)
        for (const auto& b : els) {
            const ProjectivePoint p(k.one(), k.zero(), a), q(k.zero(), k.one(), b);
            if (binary_form_squarefree(restrict_to_line(f, m, p, q))) return true;
        }
    return false;
}

std::optional<Polynomial> polynomial_sqrt(const Polynomial& p) {
    const FiniteField& k = p.field();
    if (p.is_zero()) return p;
    if (k.characteristic() == 2) {
        Polynomial r(k);
        for (const auto& [m, c] : p.terms()) {
            if (m[0] % 2 || m[1] % 2 || m[2] % 2) return std::nullopt;
            r.add_term({m[0] / 2, m[1] / 2, m[2] / 2}, *c.sqrt());
        }
        return r;
    }
    const auto& [m0, c0] = *p.terms().begin();
    if (m0[0] % 2 || m0[1] % 2 || m0[2] % 2) return std::nullopt;
    const auto s0 = c0.sqrt();
    if (!s0) return std::nullopt;
    const Monomial lead{m0[0] / 2, m0[1] / 2, m0[2] / 2};
    Polynomial root = Polynomial::monomial(k, lead, *s0);
    const Element inv = (*s0 + *s0).inverse();
    for (std::size_t iter = 0; iter < p.terms().size() + 64; ++iter) {
        const Polynomial rem = p - root * root;
        if (rem.is_zero()) return root;
        const auto& [m, c] = *rem.terms().begin();
        const Monomial t{m[0] - lead[0], m[1] - lead[1], m[2] - lead[2]};
        if (t[0] < 0 || t[1] < 0 || t[2] < 0 || !(t < lead)) return std::nullopt;
        root = root + Polynomial::monomial(k, t, c * inv);
    }
    return std::nullopt;
}

bool is_double_smooth_conic(const HomogeneousPoly& form) {
    if (form.degree() != 4) return false;
    const Polynomial monic = form.poly().monic();
    const auto c = polynomial_sqrt(monic);
    return c && is_smooth_conic(*c);
}

// ---------------------------------------------------------------------------

SingularityClass classify_local(const Polynomial& f) {
    const FiniteField& k = f.field();
    for (const auto& [m, c] : f.terms())
        if (m[2] != 0) throw InputError("local equation must be in x and y only");
    if (!f.coefficient({0, 0, 0}).is_zero()) throw InputError("point is not on the curve");
    if (f.is_zero()) return {SingularityType::worse, 0, "non_ordinary"};
    const int mult = f.order();
    if (mult < 2) throw InputError("point is not singular");
    auto cone_shape = [&](int m) {
        std::vector<Element> b;
        for (int i = 0; i <= m; ++i) b.push_back(f.coefficient({m - i, i, 0}));
        return binary_form_squarefree(b) ? std::string("ordinary") : std::string("non_ordinary");
    };
    if (mult >= 3) return {SingularityType::worse, mult, cone_shape(mult)};
    const Element a = f.coefficient({2, 0, 0}), b = f.coefficient({1, 1, 0}), c = f.coefficient({0, 2, 0});
    Element ku, kv;  // kernel direction of the double line
    if (k.characteristic() == 2) {
        if (!b.is_zero()) return {SingularityType::A1, 2, "two_lines"};
        ku = *c.sqrt();
        kv = *a.sqrt();
    } else {
        const Element disc = b * b - k.from_int(4) * a * c;
        if (!disc.is_zero()) return {SingularityType::A1, 2, "two_lines"};
        if (!a.is_zero()) {
            ku = b / (a + a);
            kv = -k.one();
        } else {
            ku = k.one();
            kv = k.zero();
        }
    }
    const Polynomial f3 = f.homogeneous_part(3);
    if (!f3.evaluate({ku, kv, k.one()}).is_zero()) return {SingularityType::A2, 2, "cuspidal"};
    return {SingularityType::worse, 2, "double_line"};
}

SingularityClass classify_singularity(const HomogeneousPoly& form, const ProjectivePoint& p) {
    const FiniteField& k = form.field();
    if (!(p.field() == k)) throw InputError("point and form live over different fields");
    const int c = p.chart();
    std::array<Polynomial, 3> subs{Polynomial(k), Polynomial(k), Polynomial(k)};
    int local = 0;
    for (int i = 0; i < 3; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (i == c)
            subs[ui] = cst(k, k.one());
        else
            subs[ui] = var(k, local++) + cst(k, p[ui]);
    }
    return classify_local(form.poly().compose(subs));
}

// ---------------------------------------------------------------------------

namespace {

// Coefficient of y^j as a polynomial in x, with z = 1.
std::vector<UniPoly> columns(const Polynomial& f, int degree) {
    const FiniteField& k = f.field();
    std::vector<std::vector<Element>> c(static_cast<std::size_t>(degree) + 1,
                                        std::vector<Element>(static_cast<std::size_t>(degree) + 1, k.zero()));
    for (const auto& [m, coef] : f.terms()) c[static_cast<std::size_t>(m[1])][static_cast<std::size_t>(m[0])] += coef;
    std::vector<UniPoly> out;
    for (auto& row : c) out.emplace_back(k, row);
    return out;
}

std::vector<ProjectivePoint> singular_points_at(const HomogeneousPoly& form, unsigned d) {
    const auto emb = form.field().extension(d);
    const FiniteField& k = emb.target;
    const std::uint64_t q = form.field().size();
    std::vector<Polynomial> polys;
    const Polynomial f = form.poly().map(emb);
    polys.push_back(f);
    for (int i = 0; i < 3; ++i) {
        Polynomial di = f.derivative(i);
        if (!di.is_zero()) polys.push_back(di);
    }
    std::vector<std::vector<UniPoly>> cols;
    for (auto& p : polys) cols.push_back(columns(p, form.degree()));

    std::set<ProjectivePoint> found;
    auto add_orbit = [&](const ProjectivePoint& p) {
        auto c = p.coords();
        for (unsigned i = 0; i < d; ++i) {
            found.insert(ProjectivePoint(c));
            c = frobenius(c, q);
        }
    };
    const Element one = k.one(), zero = k.zero();
    for (const auto& x0 : k.elements()) {
        // One representative per Frobenius orbit of x-coordinates.
        bool rep = true;
        Element conj = x0;
        for (unsigned i = 1; i < d && rep; ++i) {
            conj = conj.pow(static_cast<std::int64_t>(q));
            rep = conj.value() >= x0.value();
        }
        if (!rep) continue;
        UniPoly h(k);
        for (auto& col : cols) {
            std::vector<Element> c;
            for (auto& u : col) c.push_back(u.evaluate(x0));
            h = gcd(h, UniPoly(k, c));
            if (h.degree() == 0) break;
        }
        if (h.is_zero()) throw InvariantViolation("a whole line is singular on a reduced curve");
        for (const auto& y0 : h.roots()) add_orbit(ProjectivePoint(x0, y0, one));
    }
    auto singular = [&](const std::array<Element, 3>& pt) {
        return std::all_of(polys.begin(), polys.end(), [&](const Polynomial& p) { return p.evaluate(pt).is_zero(); });
    };
    for (const auto& x0 : k.elements())
        if (singular({x0, one, zero})) found.insert(ProjectivePoint(x0, one, zero));
    if (singular({one, zero, zero})) found.insert(ProjectivePoint(one, zero, zero));

    std::vector<ProjectivePoint> out;
    for (const auto& p : found)
        if (minimal_field_degree(emb, {p[0], p[1], p[2]}) == d) out.push_back(p);
    return out;
}

}  // namespace

SingularityReport singular_points(const PlaneQuartic& q, unsigned depth) {
    if (depth < 1) throw InputError("search depth must be at least 1");
    const HomogeneousPoly& form = q.form();
    SingularityReport r;
    const std::uint64_t size = form.field().size();
    // Degrees past kCompleteSearchDepth cannot hold singular points of a reduced quartic.
    const unsigned want = std::min(depth, kCompleteSearchDepth);
    unsigned eff = 0;
    while (eff < want && ipow(size, eff + 1) <= FiniteField::kMaxTableSize) ++eff;
    if (eff == 0) throw InputError("base field exceeds the table limit");
    r.search_depth = eff;
    r.is_reduced = is_reduced(form);
    if (!r.is_reduced) {
        r.is_double_conic = is_double_smooth_conic(form);
        return r;
    }
    r.searched = true;
    r.search_complete = eff >= kCompleteSearchDepth;
    for (unsigned d = 1; d <= eff; ++d) {
        const auto emb = form.field().extension(d);
        const HomogeneousPoly fk = form.map(emb);
        for (const auto& p : singular_points_at(form, d)) r.points.push_back({p, d, classify_singularity(fk, p)});
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

const std::array<std::pair<std::array<int, 3>, std::array<int, 3>>, 5> kProbeLines = {{
    {{1, 0, 0}, {0, 1, 0}},
    {{0, 1, 0}, {0, 0, 1}},
    {{1, 0, 0}, {0, 0, 1}},
    {{1, 0, 0}, {0, 1, 1}},
    {{0, 1, 0}, {1, 0, 1}},
}};

ProjectivePoint int_point(const FiniteField& k, const std::array<int, 3>& c) {
    return ProjectivePoint(k.from_int(c[0]), k.from_int(c[1]), k.from_int(c[2]));
}

// Lines through p contained in V(f), all over p's field.
std::vector<std::array<Element, 3>> lines_through(const Polynomial& f, int degree, const ProjectivePoint& p) {
    const FiniteField& k = f.field();
    const auto [u, v] = complementary_basis(p);
    std::array<Polynomial, 3> subs{Polynomial(k), Polynomial(k), Polynomial(k)};
    const Polynomial s = var(k, 0), t = var(k, 1);
    for (std::size_t i = 0; i < 3; ++i) subs[i] = cst(k, p[i]) + s * cst(k, u[i]) + s * t * cst(k, v[i]);
    const Polynomial g = f.compose(subs);
    std::vector<std::vector<Element>> rows(static_cast<std::size_t>(degree) + 1,
                                           std::vector<Element>(static_cast<std::size_t>(degree) + 1, k.zero()));
    for (const auto& [m, c] : g.terms()) rows[static_cast<std::size_t>(m[0])][static_cast<std::size_t>(m[1])] += c;
    UniPoly h(k);
    for (int j = 1; j <= degree; ++j) h = gcd(h, UniPoly(k, rows[static_cast<std::size_t>(j)]));
    if (h.is_zero()) throw InvariantViolation("every line through a point lies on the curve");
    std::vector<std::array<Element, 3>> out;
    auto push = [&](const ProjectivePoint& q) {
        const auto l = line_through(p, q);
        const ProjectivePoint n(l[0], l[1], l[2]);
        out.push_back(n.coords());
    };
    for (const auto& t0 : h.roots()) push(combine(k.one(), u, t0, v));
    const auto at_v = restrict_to_line(f, degree, p, v);
    if (std::all_of(at_v.begin(), at_v.end(), [](const Element& e) { return e.is_zero(); })) push(v);
    return out;
}

// F over W divided by every line component (with multiplicity); monic.
Polynomial strip_lines(const HomogeneousPoly& form, const std::vector<LineComponent>& lines, const FieldEmbedding& w) {
    Polynomial rest = form.poly().map(w);
    for (const auto& l : lines) {
        const auto e = embedding_between(l.embedding, w);
        const Polynomial lf = linear_form(w.target, {e(l.coeffs[0]), e(l.coeffs[1]), e(l.coeffs[2])});
        for (int i = 0; i < l.multiplicity; ++i) {
            auto qt = rest.divide_exact(lf);
            if (!qt) throw InvariantViolation("line component does not divide the form");
            rest = *qt;
        }
    }
    return rest.monic();
}

unsigned lcm_degree(const std::vector<LineComponent>& lines) {
    unsigned e = 1;
    for (const auto& l : lines) e = std::lcm(e, l.embedding.relative_degree);
    return e;
}

}  // namespace

std::vector<LineComponent> line_components(const HomogeneousPoly& form) {
    const FiniteField& base = form.field();
    const int deg = form.degree();
    const unsigned max_d = static_cast<unsigned>(std::max(1, deg));
    if (ipow(base.size(), max_d) > FiniteField::kMaxTableSize)
        throw InputError("field too large for the line search (q^" + std::to_string(max_d) + " exceeds " +
                         std::to_string(FiniteField::kMaxTableSize) + ")");
    // A probe line over the base that is not a component.
    std::optional<std::pair<ProjectivePoint, ProjectivePoint>> probe;
    for (const auto& [a, b] : kProbeLines) {
        const ProjectivePoint pa = int_point(base, a), pb = int_point(base, b);
        const auto r = restrict_to_line(form.poly(), deg, pa, pb);
        if (std::any_of(r.begin(), r.end(), [](const Element& e) { return !e.is_zero(); })) {
            probe.emplace(pa, pb);
            break;
        }
    }
    if (!probe) throw InvariantViolation("five distinct lines lie on a curve of degree at most 4");

    std::vector<LineComponent> out;
    for (unsigned d = 1; d <= max_d; ++d) {
        const auto emb = base.extension(d);
        const FiniteField& k = emb.target;
        const Polynomial f = form.poly().map(emb);
        const ProjectivePoint a = probe->first.map(emb), b = probe->second.map(emb);
        const auto r = restrict_to_line(f, deg, a, b);
        std::vector<ProjectivePoint> meet;
        if (r[0].is_zero()) meet.push_back(a);
        for (const auto& s : dehomogenize(r, k).roots()) meet.push_back(combine(s, a, k.one(), b));
        std::set<std::array<Element, 3>> lines;
        for (const auto& p : meet)
            for (const auto& l : lines_through(f, deg, p))
                if (minimal_field_degree(emb, {l[0], l[1], l[2]}) == d) lines.insert(l);
        for (const auto& l : lines) {
            const Polynomial lf = linear_form(k, l);
            int mult = 0;
            Polynomial rest = f;
            while (auto qt = rest.divide_exact(lf)) {
                ++mult;
                rest = *qt;
            }
            if (mult == 0) throw InvariantViolation("line through a curve point is not a factor");
            out.push_back({l, emb, mult});
        }
    }
    return out;
}

namespace {

struct ConicSplit {
    FieldEmbedding emb;
    Polynomial first;
    Polynomial second;
};

// Writes a quartic without line components as a product of two conics, if possible.
std::optional<ConicSplit> split_conics(const HomogeneousPoly& r) {
    const FiniteField& base = r.field();
    unsigned d = 2;
    while (ipow(base.size(), d) < 5) d += 2;
    if (ipow(base.size(), d) > kConicSearchCap)
        throw InputError("conic search field exceeds " + std::to_string(kConicSearchCap) + " elements");
    const auto emb = base.extension(d);
    const FiniteField& k = emb.target;
    const Polynomial f = r.poly().map(emb);
    const auto pts = extension_points(r, emb);
    // A conic component over k always has k-points.
    if (pts.empty()) return std::nullopt;
    const ProjectivePoint p1 = pts.front().point;
    const auto [u, v] = complementary_basis(p1);
    std::vector<std::vector<ProjectivePoint>> cand;
    const auto els = k.elements();
    for (std::size_t i = 0; cand.size() < 6 && i <= els.size(); ++i) {
        const ProjectivePoint q = i < els.size() ? combine(k.one(), u, els[i], v) : v;
        const auto c = restrict_to_line(f, 4, p1, q);
        std::vector<ProjectivePoint> on;
        const UniPoly g = dehomogenize(c, k);
        if (!g.is_zero())
            for (const auto& s : g.roots()) on.push_back(combine(s, p1, k.one(), q));
        cand.push_back(on);
    }
    auto conic_through = [&](const std::vector<ProjectivePoint>& five) -> std::optional<Polynomial> {
        Matrix m;
        for (const auto& p : five)
            m.push_back({p[0] * p[0], p[1] * p[1], p[2] * p[2], p[0] * p[1], p[0] * p[2], p[1] * p[2]});
        const auto ker = kernel(m, 6, k);
        if (ker.size() != 1) return std::nullopt;
        const std::array<Monomial, 6> mons = {Monomial{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
        Polynomial c(k);
        for (std::size_t i = 0; i < 6; ++i) c.add_term(mons[i], ker[0][i]);
        return c.monic();
    };
    const std::size_t n = cand.size();
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != 4) continue;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) idx.push_back(i);
        std::vector<std::size_t> choice(4, 0);
        while (true) {
            bool valid = true;
            for (std::size_t j = 0; j < 4; ++j) valid = valid && choice[j] < cand[idx[j]].size();
            if (valid) {
                std::vector<ProjectivePoint> five = {p1};
                for (std::size_t j = 0; j < 4; ++j) five.push_back(cand[idx[j]][choice[j]]);
                if (auto c = conic_through(five)) {
                    if (auto rest = f.divide_exact(*c)) return ConicSplit{emb, *c, rest->monic()};
                }
            }
            std::size_t j = 0;
            while (j < 4 && ++choice[j] >= std::max<std::size_t>(1, cand[idx[j]].size())) choice[j++] = 0;
            if (j == 4) break;
        }
    }
    return std::nullopt;
}

std::vector<Element> coefficient_values(const Polynomial& p) {
    std::vector<Element> v;
    for (const auto& [m, c] : p.terms()) v.push_back(c);
    return v;
}

// Moves a monic polynomial over emb.target to its minimal field of definition.
std::pair<Polynomial, FieldEmbedding> descend(const Polynomial& p, const FieldEmbedding& emb) {
    const unsigned m = minimal_field_degree(emb, coefficient_values(p));
    const auto small = emb.base.extension(m);
    const auto down = embedding_between(small, emb);
    auto pb = p.pull_back(down);
    if (!pb) throw InvariantViolation("factor does not descend to its field of definition");
    return {*pb, small};
}

}  // namespace

Factorization factor_absolutely(const HomogeneousPoly& form) {
    const FiniteField& base = form.field();
    if (base.size() > kFactorFieldBound)
        throw InputError("absolute factorization supports fields with at most " + std::to_string(kFactorFieldBound) +
                         " elements, got " + std::to_string(base.size()));
    if (form.degree() < 1 || form.degree() > 4) throw InputError("absolute factorization supports degrees 1 to 4");
    const auto lines = line_components(form);
    int line_deg = 0;
    for (const auto& l : lines) line_deg += l.multiplicity;

    // (polynomial over its minimal field, that field, multiplicity)
    struct Raw {
        Polynomial poly;
        FieldEmbedding emb;
        int mult;
    };
    std::vector<Raw> raw;
    for (const auto& l : lines) raw.push_back({linear_form(l.embedding.target, l.coeffs), l.embedding, l.multiplicity});

    const auto w_lines = base.extension(lcm_degree(lines));
    const Polynomial rest_w = strip_lines(form, lines, w_lines);
    const auto rest_opt = rest_w.pull_back(w_lines);
    if (!rest_opt) throw InvariantViolation("residual after removing lines is not defined over the base");
    const Polynomial rest = *rest_opt;
    const int rdeg = form.degree() - line_deg;
    if (rdeg == 1) throw InvariantViolation("residual line missed by the line search");
    const auto trivial = base.extension(1);
    if (rdeg == 2 || rdeg == 3) {
        raw.push_back({rest, trivial, 1});
    } else if (rdeg == 4) {
        if (auto split = split_conics(HomogeneousPoly(rest, 4))) {
            auto [c1, e1] = descend(split->first, split->emb);
            if (split->first == split->second) {
                raw.push_back({c1, e1, 2});
            } else {
                auto [c2, e2] = descend(split->second, split->emb);
                raw.push_back({c1, e1, 1});
                raw.push_back({c2, e2, 1});
            }
        } else {
            raw.push_back({rest, trivial, 1});
        }
    }
    unsigned e = 1;
    for (const auto& r : raw) e = std::lcm(e, r.emb.relative_degree);
    Factorization out{base.extension(e), base.one(), {}};
    const FiniteField& w = out.embedding.target;
    Polynomial product = Polynomial::constant(w, w.one());
    for (const auto& r : raw) {
        const auto up = embedding_between(r.emb, out.embedding);
        const Polynomial pw = r.poly.map(up);
        const int deg = pw.total_degree();
        out.factors.push_back({HomogeneousPoly(pw, deg), r.mult, deg, r.emb.relative_degree});
        product = product * pw.pow(static_cast<unsigned>(r.mult));
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const Factor& a, const Factor& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.field_degree != b.field_degree) return a.field_degree < b.field_degree;
        return a.form.poly().terms() > b.form.poly().terms();
    });
    const Polynomial fw = form.poly().map(out.embedding);
    out.scalar = fw.terms().begin()->second / product.terms().begin()->second;
    if (!(product * out.scalar == fw)) throw InvariantViolation("factors do not multiply back to the form");
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// b = lambda * (linear)^3 with lambda != 0.
bool is_nonzero_cube(const std::vector<Element>& b) {
    std::size_t k = 0;
    while (k < b.size() && b[k].is_zero()) ++k;
    if (k == b.size()) return false;
    if (k > 0) return k == 3;
    const UniPoly g = dehomogenize(b, b[0].field());
    for (const auto& r : g.roots())
        if (g.root_multiplicity(r) == 3) return true;
    return false;
}

}  // namespace

GitReport git_status(const PlaneQuartic& q, unsigned depth) {
    GitReport g{GitStatus::stable, "", q.field().characteristic() <= 7, singular_points(q, depth)};
    const auto& rep = g.singularities;
    if (!rep.is_reduced) {
        if (rep.is_double_conic) {
            g.status = GitStatus::semistable_not_stable;
            g.reason = "double smooth conic";
        } else {
            g.status = GitStatus::unstable;
            g.reason = "non-reduced and not a double smooth conic";
        }
        return g;
    }
    const bool mild = std::all_of(rep.points.begin(), rep.points.end(), [](const SingularPoint& p) {
        return p.kind.type != SingularityType::worse;
    });
    if (mild) {
        g.status = GitStatus::stable;
        g.reason = "reduced with only A1 and A2 singularities";
        if (!rep.search_complete) g.reason += " (search depth below 4: completeness not certified)";
        return g;
    }
    for (const auto& p : rep.points)
        if (p.kind.multiplicity >= 3) {
            g.status = GitStatus::unstable;
            g.reason = "point of multiplicity " + std::to_string(p.kind.multiplicity) + " at " + p.point.to_string();
            return g;
        }
    for (const auto& l : line_components(q.form())) {
        const FiniteField& k = l.embedding.target;
        const auto cubic = q.form().poly().map(l.embedding).divide_exact(linear_form(k, l.coeffs));
        if (!cubic) throw InvariantViolation("line component does not divide the form");
        const auto [a, b] = points_on_line(l.coeffs);
        if (is_nonzero_cube(restrict_to_line(*cubic, 3, a, b))) {
            g.status = GitStatus::unstable;
            g.reason = "line meeting the residual cubic in a single point (inflectional tangent)";
            return g;
        }
    }
    g.status = GitStatus::semistable_not_stable;
    g.reason = "double point worse than A2, no triple point, no inflectional tangent line component";
    return g;
}

SpecialFiber special_fiber_graph(const PlaneQuartic& q, unsigned depth) {
    const auto git = git_status(q, std::max(depth, kCompleteSearchDepth));
    if (git.status != GitStatus::stable)
        throw InputError("special fiber graph needs a GIT-stable quartic (status " + to_string(git.status) + ": " +
                         git.reason + ")");
    if (!git.singularities.search_complete)
        throw InputError("field too large for a complete singular point search");
    SpecialFiber out;
    out.singularities = git.singularities;
    const HomogeneousPoly& form = q.form();
    const FiniteField& base = form.field();
    const auto lines = line_components(form);
    for (const auto& l : lines)
        if (l.multiplicity != 1) throw InvariantViolation("repeated line on a reduced quartic");
    const int rdeg = 4 - static_cast<int>(lines.size());
    const auto w = base.extension(lcm_degree(lines));
    const auto rest = strip_lines(form, lines, w).pull_back(w);
    if (!rest) throw InvariantViolation("residual after removing lines is not defined over the base");

    // Component degrees, big component (degree >= 3) first.
    std::vector<int> degs;
    const auto& pts = out.singularities.points;
    bool big = false;
    if (rdeg == 4 && pts.size() >= 4) {
        degs = {2, 2};  // an irreducible quartic has at most 3 singular points
    } else if (rdeg >= 3) {
        degs = {rdeg};
        big = true;
    } else if (rdeg == 2) {
        degs = {2};
    }
    for (std::size_t i = 0; i < lines.size(); ++i) degs.push_back(1);

    std::vector<const SingularPoint*> self, shared;
    if (big) {
        const auto other = form.poly().divide_exact(*rest);
        if (!other) throw InvariantViolation("residual does not divide the form");
        for (const auto& p : pts) {
            const auto emb = base.extension(p.field_degree);
            const bool on_other = other->map(emb).evaluate(p.point.coords()).is_zero();
            (on_other ? shared : self).push_back(&p);
        }
    } else {
        for (const auto& p : pts) shared.push_back(&p);
    }
    int expected = 0;
    for (std::size_t i = 0; i < degs.size(); ++i)
        for (std::size_t j = i + 1; j < degs.size(); ++j) expected += degs[i] * degs[j];
    if (static_cast<int>(shared.size()) != expected)
        throw InvariantViolation("found " + std::to_string(shared.size()) + " intersection points, Bezout predicts " +
                                 std::to_string(expected));
    for (const auto* p : shared)
        if (p->kind.type != SingularityType::A1)
            throw InvariantViolation("components meet at a non-nodal point " + p->point.to_string());

    StableGraph g;
    for (std::size_t i = 0; i < degs.size(); ++i) {
        const int d = degs[i];
        ComponentInfo info;
        info.degree = d;
        info.arithmetic_genus = (d - 1) * (d - 2) / 2;
        info.delta = (big && i == 0) ? static_cast<int>(self.size()) : 0;
        info.geometric_genus = info.arithmetic_genus - info.delta;
        info.kind = d == 1 ? "line" : d == 2 ? "conic" : d == 3 ? "cubic" : "quartic";
        if (info.geometric_genus < 0) throw InvariantViolation("negative geometric genus");
        out.components.push_back(info);
        g.add_vertex(info.geometric_genus);
    }
    const int n = static_cast<int>(degs.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < degs[i] * degs[j]; ++k) g.add_edge({i, j, {}});
    int label = 1;
    for (const auto* p : self) {
        if (p->kind.type == SingularityType::A1) {
            g.add_edge({0, 0, {}});
        } else {
            g.add_leg({0, label++});
            out.leg_field_degrees.push_back(p->field_degree);
        }
    }
    out.graph = g;
    if (g.genus() + g.leg_count() != 3) throw InvariantViolation("genus ledger of the special fiber is not 3");
    return out;
}

// ---------------------------------------------------------------------------

Element cross_ratio(const std::array<std::array<Element, 2>, 4>& pts) {
    auto br = [&](int i, int j) { return pts[i][0] * pts[j][1] - pts[i][1] * pts[j][0]; };
    for (int i = 0; i < 4; ++i) {
        if (pts[i][0].is_zero() && pts[i][1].is_zero()) throw InputError("point (0, 0) is not on the projective line");
        for (int j = i + 1; j < 4; ++j)
            if (br(i, j).is_zero()) throw InputError("cross-ratio needs four distinct points");
    }
    return br(0, 2) * br(1, 3) / (br(0, 3) * br(1, 2));
}

std::vector<Element> cross_ratio_orbit(const Element& l) {
    const Element one = l.field().one();
    if (l.is_zero() || l == one) throw InputError("cross-ratio must differ from 0 and 1");
    std::vector<Element> v = {l, one - l, l.inverse(), (one - l).inverse(), (l - one) / l, l / (l - one)};
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool cross_ratio_orbit_equivalent(const std::array<std::array<Element, 2>, 4>& a,
                                  const std::array<std::array<Element, 2>, 4>& b) {
    const Element la = cross_ratio(a), lb = cross_ratio(b);
    if (!(la.field() == lb.field())) throw InputError("point quadruples live over different fields");
    const auto orbit = cross_ratio_orbit(la);
    return std::find(orbit.begin(), orbit.end(), lb) != orbit.end();
}

nlohmann::json to_json(const SingularityReport& r) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : r.points)
        pts.push_back({{"point", p.point.to_string()},
                       {"field_degree", p.field_degree},
                       {"type", to_string(p.kind.type)},
                       {"multiplicity", p.kind.multiplicity},
                       {"tangent_cone", p.kind.tangent_cone}});
    return {{"points", pts},
            {"is_reduced", r.is_reduced},
            {"is_double_conic", r.is_double_conic},
            {"searched", r.searched},
            {"search_depth", r.search_depth},
            {"search_complete", r.search_complete}};
}

}  // namespace qrl
