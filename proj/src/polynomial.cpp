#include "qrl/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "qrl/errors.hpp"

namespace qrl {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(const FiniteField& field, const Element& c) {
    return monomial(field, {0, 0, 0}, c);
}

Polynomial Polynomial::variable(const FiniteField& field, int index) {
    Monomial m{0, 0, 0};
    m.at(static_cast<std::size_t>(index)) = 1;
    return monomial(field, m, field.one());
}

Polynomial Polynomial::monomial(const FiniteField& field, const Monomial& m, const Element& c) {
    Polynomial p(field);
    p.add_term(m, c);
    return p;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2]);
    return d;
}

int Polynomial::order() const {
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first[0] + terms_.begin()->first[1] + terms_.begin()->first[2];
    for (const auto& [m, c] : terms_) d = std::min(d, m[0] + m[1] + m[2]);
    return d;
}

bool Polynomial::is_homogeneous() const { return total_degree() == order(); }

Element Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
}

Polynomial Polynomial::homogeneous_part(int d) const {
    Polynomial out(field_);
    for (const auto& [m, c] : terms_)
        if (m[0] + m[1] + m[2] == d) out.terms_.emplace(m, c);
    return out;
}

void Polynomial::add_term(const Monomial& m, const Element& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    Polynomial out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    Polynomial out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(field_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    Polynomial out(field_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : rhs.terms_)
            out.add_term({m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, c1 * c2);
    return out;
}

Polynomial Polynomial::operator*(const Element& c) const {
    Polynomial out(field_);
    if (c.is_zero()) return out;
    for (const auto& [m, a] : terms_) out.terms_.emplace(m, a * c);
    return out;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial result = constant(field_, field_.one());
    Polynomial base = *this;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Element Polynomial::evaluate(const std::array<Element, 3>& point) const {
    Element acc = field_.zero();
    for (const auto& [m, c] : terms_)
        acc += c * point[0].pow(m[0]) * point[1].pow(m[1]) * point[2].pow(m[2]);
    return acc;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial out(field_);
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [m, c] : terms_) {
        if (m[v] == 0) continue;
        Monomial d = m;
        d[v] -= 1;
        out.add_term(d, c * field_.from_int(m[v]));
    }
    return out;
}

Polynomial Polynomial::compose(const std::array<Polynomial, 3>& subs) const {
    Polynomial out(field_);
    std::array<std::vector<Polynomial>, 3> powers;
    for (std::size_t v = 0; v < 3; ++v) powers[v].push_back(constant(field_, field_.one()));
    for (const auto& [m, c] : terms_) {
        Polynomial term = constant(field_, c);
        for (std::size_t v = 0; v < 3; ++v) {
            while (powers[v].size() <= static_cast<std::size_t>(m[v]))
                powers[v].push_back(powers[v].back() * subs[v]);
            term = term * powers[v][static_cast<std::size_t>(m[v])];
        }
        out = out + term;
    }
    return out;
}

Polynomial Polynomial::map(const FieldEmbedding& emb) const {
    Polynomial out(emb.target);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, emb(c));
    return out;
}

std::optional<Polynomial> Polynomial::pull_back(const FieldEmbedding& emb) const {
    Polynomial out(emb.base);
    for (const auto& [m, c] : terms_) {
        auto b = emb.preimage(c);
        if (!b) return std::nullopt;
        out.terms_.emplace(m, *b);
    }
    return out;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& rhs) const {
    if (rhs.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial rem = *this;
    Polynomial quot(field_);
    const auto& [lm, lc] = *rhs.terms_.begin();
    const Element lc_inv = lc.inverse();
    while (!rem.is_zero()) {
        const auto [m, c] = *rem.terms_.begin();
        if (m[0] < lm[0] || m[1] < lm[1] || m[2] < lm[2]) return std::nullopt;
        const Monomial qm{m[0] - lm[0], m[1] - lm[1], m[2] - lm[2]};
        const Element qc = c * lc_inv;
        quot.add_term(qm, qc);
        rem = rem - monomial(field_, qm, qc) * rhs;
    }
    return quot;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    return *this * terms_.begin()->second.inverse();
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    static const char names[3] = {'x', 'y', 'z'};
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        const bool is_const = m[0] == 0 && m[1] == 0 && m[2] == 0;
        bool need_star = false;
        if (!c.is_one() || is_const) {
            const std::string cs = c.to_string();
            if (cs.find('+') != std::string::npos)
                out << '(' << cs << ')';
            else
                out << cs;
            need_star = true;
        }
        for (std::size_t v = 0; v < 3; ++v) {
            if (m[v] == 0) continue;
            if (need_star) out << '*';
            out << names[v];
            if (m[v] > 1) out << '^' << m[v];
            need_star = true;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// HomogeneousPoly

HomogeneousPoly::HomogeneousPoly(Polynomial p, int degree) : poly_(std::move(p)), degree_(degree) {
    if (degree < 0) throw InputError("form degree must be non-negative");
    for (const auto& [m, c] : poly_.terms())
        if (m[0] + m[1] + m[2] != degree)
            throw InputError("polynomial is not homogeneous of degree " + std::to_string(degree));
}

HomogeneousPoly::HomogeneousPoly(Polynomial p) : poly_(std::move(p)), degree_(0) {
    if (poly_.is_zero()) throw InputError("zero polynomial has no degree");
    if (!poly_.is_homogeneous()) throw InputError("polynomial is not homogeneous");
    degree_ = poly_.total_degree();
}

HomogeneousPoly HomogeneousPoly::derivative(int var) const {
    return HomogeneousPoly(poly_.derivative(var), std::max(degree_ - 1, 0));
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& rhs) const {
    return HomogeneousPoly(poly_ * rhs.poly_, degree_ + rhs.degree_);
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& rhs) const {
    if (degree_ != rhs.degree_) throw InputError("adding forms of different degrees");
    return HomogeneousPoly(poly_ + rhs.poly_, degree_);
}

HomogeneousPoly HomogeneousPoly::map(const FieldEmbedding& emb) const {
    return HomogeneousPoly(poly_.map(emb), degree_);
}

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(FiniteField field, std::vector<Element> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    normalize();
}

void UniPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const FiniteField& field, const Element& c) { return UniPoly(field, {c}); }

UniPoly UniPoly::linear(const FiniteField& field, const Element& a) {
    return UniPoly(field, {-a, field.one()});
}

UniPoly UniPoly::monomial(const FiniteField& field, int n, const Element& c) {
    std::vector<Element> v(static_cast<std::size_t>(n) + 1, field.zero());
    v.back() = c;
    return UniPoly(field, std::move(v));
}

Element UniPoly::coefficient(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return field_.zero();
    return c_[static_cast<std::size_t>(i)];
}

Element UniPoly::leading() const { return c_.empty() ? field_.zero() : c_.back(); }

UniPoly UniPoly::operator+(const UniPoly& rhs) const {
    std::vector<Element> r(std::max(c_.size(), rhs.c_.size()), field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) r[i] += rhs.c_[i];
    return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& rhs) const {
    std::vector<Element> r(std::max(c_.size(), rhs.c_.size()), field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) r[i] -= rhs.c_[i];
    return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& rhs) const {
    if (c_.empty() || rhs.c_.empty()) return UniPoly(field_);
    std::vector<Element> r(c_.size() + rhs.c_.size() - 1, field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) r[i + j] += c_[i] * rhs.c_[j];
    }
    return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator*(const Element& c) const {
    std::vector<Element> r = c_;
    for (auto& x : r) x *= c;
    return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::pow(unsigned n) const {
    UniPoly result = constant(field_, field_.one());
    UniPoly base = *this;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& rhs) const {
    if (rhs.is_zero()) throw std::domain_error("univariate division by zero");
    std::vector<Element> rem = c_;
    const int dr = rhs.degree();
    if (degree() < dr) return {UniPoly(field_), *this};
    std::vector<Element> quot(static_cast<std::size_t>(degree() - dr + 1), field_.zero());
    const Element inv = rhs.leading().inverse();
    for (int i = degree(); i >= dr; --i) {
        const Element c = rem[static_cast<std::size_t>(i)] * inv;
        if (c.is_zero()) continue;
        quot[static_cast<std::size_t>(i - dr)] = c;
        for (int j = 0; j <= dr; ++j)
            rem[static_cast<std::size_t>(i - dr + j)] -= c * rhs.c_[static_cast<std::size_t>(j)];
    }
    return {UniPoly(field_, std::move(quot)), UniPoly(field_, std::move(rem))};
}

UniPoly UniPoly::monic() const {
    if (c_.empty()) return *this;
    return *this * leading().inverse();
}

UniPoly UniPoly::derivative() const {
    std::vector<Element> r;
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.push_back(c_[i] * field_.from_int(static_cast<std::int64_t>(i)));
    return UniPoly(field_, std::move(r));
}

Element UniPoly::evaluate(const Element& t) const {
    Element acc = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

UniPoly UniPoly::map(const FieldEmbedding& emb) const {
    std::vector<Element> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(emb(x));
    return UniPoly(emb.target, std::move(r));
}

int UniPoly::root_multiplicity(const Element& a) const {
    if (is_zero()) throw std::domain_error("multiplicity of a root of the zero polynomial");
    int m = 0;
    UniPoly cur = *this;
    const UniPoly lin = linear(field_, a);
    while (true) {
        auto [q, r] = cur.divmod(lin);
        if (!r.is_zero()) return m;
        ++m;
        cur = q;
    }
}

UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UniPoly powmod(UniPoly base, std::uint64_t e, const UniPoly& m) {
    UniPoly result = UniPoly::constant(m.field(), m.field().one()) % m;
    base = base % m;
    while (e) {
        if (e & 1) result = (result * base) % m;
        e >>= 1;
        if (e) base = (base * base) % m;
    }
    return result;
}

namespace {

// Splits a monic product of distinct linear factors into its roots.
void split_linear(const UniPoly& g, std::vector<Element>& out) {
    const FiniteField& f = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(-g.coefficient(0) / g.coefficient(1));
        return;
    }
    const std::uint64_t q = f.size();
    const UniPoly t = UniPoly::monomial(f, 1, f.one());
    for (std::uint32_t s = 0; s < q; ++s) {
        const Element shift = f.element(s);
        UniPoly probe(f);
        if (f.characteristic() == 2) {
            // Trace of shift*t over GF(2): t' + t'^2 + ... + t'^(2^(n-1)).
            UniPoly term = t * shift % g;
            probe = term;
            for (std::uint64_t e = 2; e < q; e *= 2) {
                term = (term * term) % g;
                probe = probe + term;
            }
        } else {
            probe = powmod(t + UniPoly::constant(f, shift), (q - 1) / 2, g) -
                    UniPoly::constant(f, f.one());
        }
        UniPoly d = gcd(g, probe);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, out);
            split_linear(g.divmod(d).first.monic(), out);
            return;
        }
    }
    throw InvariantViolation("failed to split a product of linear factors");
}

}  // namespace

std::vector<Element> UniPoly::roots() const {
    if (is_zero()) throw std::domain_error("roots of the zero polynomial");
    std::vector<Element> out;
    if (degree() <= 0) return out;
    const UniPoly f = monic();
    const UniPoly t = monomial(field_, 1, field_.one());
    // gcd(f, t^q - t) collects the distinct roots in this field.
    const UniPoly tq = powmod(t, field_.size(), f);
    const UniPoly g = gcd(f, tq - t);
    split_linear(g, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string UniPoly::to_string(char var) const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        if (!c_[i].is_one() || i == 0) {
            const std::string cs = c_[i].to_string();
            out << (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs);
            if (i > 0) out << '*';
        }
        if (i > 0) out << var;
        if (i > 1) out << '^' << i;
    }
    return out.str();
}

}  // namespace qrl

namespace qrl {

FieldEmbedding embedding_between(const FieldEmbedding& a, const FieldEmbedding& b) {
    if (!(a.base == b.base) || b.relative_degree % a.relative_degree)
        throw InputError("no compatible embedding between " + a.target.to_string() + " and " + b.target.to_string());
    const FiniteField& src = a.target;
    const FiniteField& dst = b.target;
    const auto d = b.relative_degree / a.relative_degree;
    FieldEmbedding out{src, dst, d, {}, {}};
    const std::uint32_t p = src.characteristic();
    auto build = [&](const Element& r) {
        std::vector<std::uint32_t> image(src.size());
        for (std::uint32_t v = 0; v < src.size(); ++v) {
            std::uint32_t rest = v;
            Element acc = dst.zero(), power = dst.one();
            for (std::uint32_t i = 0; i < src.degree(); ++i, rest /= p) {
                acc += power * dst.from_int(rest % p);
                power *= r;
            }
            image[v] = acc.value();
        }
        return image;
    };
    std::vector<Element> candidates;
    if (src.degree() == 1) {
        candidates.push_back(dst.zero());
    } else {
        std::vector<Element> c;
        for (auto m : src.modulus()) c.push_back(dst.from_int(m));
        candidates = UniPoly(dst, c).roots();
    }
    for (const auto& r : candidates) {
        auto image = build(r);
        bool ok = true;
        if (a.base.degree() > 1) {
            const Element g = a.base.generator();
            ok = image[a(g).value()] == b(g).value();
        }
        if (!ok) continue;
        out.image_ = std::move(image);
        for (std::uint32_t v = 0; v < src.size(); ++v) out.preimage_.emplace(out.image_[v], v);
        return out;
    }
    throw InvariantViolation("no compatible embedding found");
}

}  // namespace qrl
