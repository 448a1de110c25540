#include "qrl/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include "qrl/errors.hpp"

namespace qrl {

namespace detail {

struct FieldImpl {
    std::uint32_t p = 2;
    std::uint32_t k = 1;
    std::uint32_t q = 2;
    std::vector<std::uint32_t> modulus;  // k+1 coefficients, monic
    std::uint32_t primitive = 1;
    // Only populated for k > 1.
    std::vector<std::uint32_t> exp;   // exp[i] = primitive^i, i < q-1
    std::vector<std::int32_t> log;    // log[0] = -1
    std::vector<std::int32_t> zech;   // log(1 + primitive^i), -1 when zero (p odd only)

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (k == 1) {
            std::uint32_t s = a + b;
            return s >= p ? s - p : s;
        }
        if (p == 2) return a ^ b;
        if (a == 0) return b;
        if (b == 0) return a;
        const std::uint32_t n = q - 1;
        const std::uint32_t la = static_cast<std::uint32_t>(log[a]);
        const std::uint32_t lb = static_cast<std::uint32_t>(log[b]);
        const std::uint32_t d = lb >= la ? lb - la : lb + n - la;
        const std::int32_t z = zech[d];
        if (z < 0) return 0;
        return exp[(la + static_cast<std::uint32_t>(z)) % n];
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (a == 0) return 0;
        if (k == 1) return p - a;
        if (p == 2) return a;
        const std::uint32_t n = q - 1;
        return exp[(static_cast<std::uint32_t>(log[a]) + n / 2) % n];
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        if (k == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
        const std::uint32_t n = q - 1;
        std::uint32_t s = static_cast<std::uint32_t>(log[a]) + static_cast<std::uint32_t>(log[b]);
        if (s >= n) s -= n;
        return exp[s];
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        if (k > 1) {
            const std::uint64_t n = q - 1;
            return exp[static_cast<std::uint32_t>(static_cast<std::uint64_t>(log[a]) * (e % n) % n)];
        }
        std::uint64_t r = 1, b = a;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("division by zero in finite field");
        if (k == 1) return pow(a, p - 2);
        const std::uint32_t n = q - 1;
        return exp[(n - static_cast<std::uint32_t>(log[a])) % n];
    }
};

}  // namespace detail

namespace {

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint64_t v, std::uint32_t p, std::uint32_t len) {
    Digits d(len, 0);
    for (std::uint32_t i = 0; i < len; ++i) {
        d[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
    }
    return d;
}

std::uint64_t from_digits(const Digits& d, std::uint32_t p) {
    std::uint64_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

void trim(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m, coefficients mod p.
Digits poly_mod(Digits a, const Digits& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = std::uint64_t{lead} * m[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Digits poly_mulmod(const Digits& a, const Digits& b, const Digits& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Digits r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    return poly_mod(std::move(r), m, p);
}

Digits poly_powmod(Digits base, std::uint64_t e, const Digits& m, std::uint32_t p) {
    Digits r{1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

bool is_irreducible(const Digits& f, std::uint32_t p) {
    const std::uint32_t k = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= k; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            Digits g = to_digits(c, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::shared_ptr<const detail::FieldImpl> build(std::uint32_t p, std::uint32_t k) {
    auto impl = std::make_shared<detail::FieldImpl>();
    impl->p = p;
    impl->k = k;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    impl->q = static_cast<std::uint32_t>(q);

    if (k == 1) {
        impl->modulus = {0, 1};
        const auto factors = prime_factors(p - 1);
        for (std::uint32_t g = 1; g < p; ++g) {
            bool ok = true;
            for (auto f : factors)
                if (impl->pow(g, (p - 1) / f) == 1 && p > 2) ok = false;
            if (ok) {
                impl->primitive = g;
                break;
            }
        }
        return impl;
    }

    for (std::uint64_t c = 0;; ++c) {
        Digits f = to_digits(c, p, k);
        f.push_back(1);
        if (f[0] != 0 && is_irreducible(f, p)) {
            impl->modulus = f;
            break;
        }
    }

    const auto factors = prime_factors(q - 1);
    for (std::uint64_t v = 2; v < q; ++v) {
        const Digits g = to_digits(v, p, k);
        bool ok = true;
        for (auto f : factors) {
            Digits r = poly_powmod(g, (q - 1) / f, impl->modulus, p);
            if (r.size() == 1 && r[0] == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            impl->primitive = static_cast<std::uint32_t>(v);
            break;
        }
    }

    const std::uint32_t n = impl->q - 1;
    impl->exp.resize(n);
    impl->log.assign(q, -1);
    Digits cur{1};
    const Digits g = to_digits(impl->primitive, p, k);
    for (std::uint32_t i = 0; i < n; ++i) {
        Digits padded = cur;
        padded.resize(k, 0);
        const auto v = static_cast<std::uint32_t>(from_digits(padded, p));
        impl->exp[i] = v;
        impl->log[v] = static_cast<std::int32_t>(i);
        cur = poly_mulmod(cur, g, impl->modulus, p);
    }
    if (p != 2) {
        impl->zech.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            Digits d = to_digits(impl->exp[i], p, k);
            d[0] = (d[0] + 1) % p;
            const auto v = static_cast<std::uint32_t>(from_digits(d, p));
            impl->zech[i] = v == 0 ? -1 : impl->log[v];
        }
    }
    return impl;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const detail::FieldImpl>>& registry() {
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const detail::FieldImpl>> r;
    return r;
}

std::shared_ptr<const detail::FieldImpl> intern(std::uint32_t p, std::uint32_t k) {
    std::lock_guard lock(registry_mutex());
    auto& r = registry();
    auto it = r.find({p, k});
    if (it != r.end()) return it->second;
    auto impl = build(p, k);
    r.emplace(std::make_pair(p, k), impl);
    return impl;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Element

Element Element::operator+(const Element& rhs) const { return {field_, field_->add(value_, rhs.value_)}; }
Element Element::operator-(const Element& rhs) const {
    return {field_, field_->add(value_, field_->neg(rhs.value_))};
}
Element Element::operator-() const { return {field_, field_->neg(value_)}; }
Element Element::operator*(const Element& rhs) const { return {field_, field_->mul(value_, rhs.value_)}; }
Element Element::operator/(const Element& rhs) const {
    return {field_, field_->mul(value_, field_->inv(rhs.value_))};
}
Element Element::inverse() const { return {field_, field_->inv(value_)}; }

Element Element::pow(std::int64_t n) const {
    if (n < 0) return inverse().pow(-n);
    return {field_, field_->pow(value_, static_cast<std::uint64_t>(n))};
}

Element Element::frobenius() const { return {field_, field_->pow(value_, field_->p)}; }

std::optional<Element> Element::sqrt() const {
    if (value_ == 0) return *this;
    const auto& f = *field_;
    if (f.p == 2) return Element{field_, f.pow(value_, f.q / 2)};
    if (f.k > 1) {
        const auto l = static_cast<std::uint32_t>(f.log[value_]);
        if (l % 2) return std::nullopt;
        return Element{field_, f.exp[l / 2]};
    }
    // Tonelli-Shanks over GF(p).
    const std::uint32_t p = f.p;
    if (f.pow(value_, (p - 1) / 2) != 1) return std::nullopt;
    std::uint32_t s = 0;
    std::uint64_t qq = p - 1;
    while (qq % 2 == 0) {
        qq /= 2;
        ++s;
    }
    std::uint32_t z = 2;
    while (f.pow(z, (p - 1) / 2) != p - 1) ++z;
    std::uint32_t m = s;
    std::uint32_t c = f.pow(z, qq);
    std::uint32_t t = f.pow(value_, qq);
    std::uint32_t r = f.pow(value_, (qq + 1) / 2);
    while (t != 1) {
        std::uint32_t i = 0;
        std::uint32_t tt = t;
        while (tt != 1) {
            tt = f.mul(tt, tt);
            ++i;
        }
        std::uint32_t b = c;
        for (std::uint32_t j = 0; j + i + 1 < m; ++j) b = f.mul(b, b);
        m = i;
        c = f.mul(b, b);
        t = f.mul(t, c);
        r = f.mul(r, b);
    }
    return Element{field_, r};
}

FiniteField Element::field() const { return FiniteField(field_->p, field_->k); }

std::string Element::to_string() const {
    const auto& f = *field_;
    if (f.k == 1) return std::to_string(value_);
    if (value_ == 0) return "0";
    const Digits d = to_digits(value_, f.p, f.k);
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!first) out << '+';
        first = false;
        if (i == 0) {
            out << d[i];
            continue;
        }
        if (d[i] != 1) out << d[i] << '*';
        out << 'a';
        if (i > 1) out << '^' << i;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// FiniteField

FiniteField::FiniteField(std::uint32_t p, std::uint32_t k) {
    if (!is_prime(p) || p >= (std::uint32_t{1} << 31))
        throw InputError("field characteristic " + std::to_string(p) + " is not a supported prime");
    if (k < 1) throw InputError("field extension degree must be positive");
    if (k > 1) {
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            q *= p;
            if (q > kMaxTableSize)
                throw InputError("field " + std::to_string(p) + "^" + std::to_string(k) +
                                 " exceeds the table limit of " + std::to_string(kMaxTableSize) +
                                 " elements");
        }
    }
    impl_ = intern(p, k);
}

FiniteField FiniteField::parse(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    const auto caret = s.find('^');
    auto parse_uint = [&](const std::string& t) -> std::uint32_t {
        if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), ::isdigit))
            throw InputError("malformed field spec '" + spec + "' (expected p or p^k)");
        return static_cast<std::uint32_t>(std::stoul(t));
    };
    if (caret == std::string::npos) return FiniteField(parse_uint(s), 1);
    return FiniteField(parse_uint(s.substr(0, caret)), parse_uint(s.substr(caret + 1)));
}

std::uint32_t FiniteField::characteristic() const noexcept { return impl_->p; }
std::uint32_t FiniteField::degree() const noexcept { return impl_->k; }
std::uint64_t FiniteField::size() const noexcept { return impl_->q; }
const std::vector<std::uint32_t>& FiniteField::modulus() const noexcept { return impl_->modulus; }

Element FiniteField::zero() const { return Element(impl_.get(), 0); }
Element FiniteField::one() const { return Element(impl_.get(), 1); }

Element FiniteField::from_int(std::int64_t n) const {
    const std::int64_t p = impl_->p;
    std::int64_t r = n % p;
    if (r < 0) r += p;
    return Element(impl_.get(), static_cast<std::uint32_t>(r));
}

Element FiniteField::element(std::uint32_t value) const {
    if (value >= impl_->q) throw std::out_of_range("field element encoding out of range");
    return Element(impl_.get(), value);
}

Element FiniteField::generator() const {
    return Element(impl_.get(), impl_->k > 1 ? impl_->p : 0);
}

Element FiniteField::primitive_element() const { return Element(impl_.get(), impl_->primitive); }

std::vector<Element> FiniteField::elements() const {
    std::vector<Element> out;
    out.reserve(impl_->q);
    for (std::uint32_t v = 0; v < impl_->q; ++v) out.push_back(Element(impl_.get(), v));
    return out;
}

std::string FiniteField::to_string() const {
    if (impl_->k == 1) return std::to_string(impl_->p);
    return std::to_string(impl_->p) + "^" + std::to_string(impl_->k);
}

FieldEmbedding FiniteField::extension(std::uint32_t d) const {
    if (d < 1) throw InputError("extension degree must be positive");
    FieldEmbedding emb{*this, FiniteField(impl_->p, impl_->k * d), d, {}, {}};
    const auto& base = *impl_;
    emb.image_.resize(base.q);
    if (base.k == 1) {
        for (std::uint32_t v = 0; v < base.q; ++v) emb.image_[v] = v;
    } else {
        // Least root of the base modulus in the target.
        const FiniteField& t = emb.target;
        Element beta;
        bool found = false;
        for (std::uint32_t v = 1; v < t.size() && !found; ++v) {
            const Element x = t.element(v);
            Element acc = t.zero();
            for (std::size_t i = base.modulus.size(); i-- > 0;)
                acc = acc * x + t.from_int(base.modulus[i]);
            if (acc.is_zero()) {
                beta = x;
                found = true;
            }
        }
        if (!found) throw InvariantViolation("no root of the base modulus in its extension");
        for (std::uint32_t v = 0; v < base.q; ++v) {
            const Digits dg = to_digits(v, base.p, base.k);
            Element acc = t.zero();
            for (std::size_t i = dg.size(); i-- > 0;) acc = acc * beta + t.from_int(dg[i]);
            emb.image_[v] = acc.value();
        }
    }
    for (std::uint32_t v = 0; v < base.q; ++v) emb.preimage_.emplace(emb.image_[v], v);
    return emb;
}

std::optional<Element> FieldEmbedding::preimage(const Element& y) const {
    auto it = preimage_.find(y.value());
    if (it == preimage_.end()) return std::nullopt;
    return base.element(it->second);
}

Element FieldEmbedding::relative_frobenius(const Element& y) const {
    return y.pow(static_cast<std::int64_t>(base.size()));
}

std::uint32_t minimal_field_degree(const FieldEmbedding& emb, const std::vector<Element>& values) {
    for (std::uint32_t d = 1; d <= emb.relative_degree; ++d) {
        if (emb.relative_degree % d) continue;
        std::int64_t e = 1;
        for (std::uint32_t i = 0; i < d; ++i) e *= static_cast<std::int64_t>(emb.base.size());
        const bool fixed = std::all_of(values.begin(), values.end(),
                                       [&](const Element& v) { return v.pow(e) == v; });
        if (fixed) return d;
    }
    return emb.relative_degree;
}

}  // namespace qrl
