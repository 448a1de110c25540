#include "qrl/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "qrl/errors.hpp"

namespace qrl {

LaurentSeries::LaurentSeries(FiniteField field, int truncation)
    : field_(std::move(field)), start_(truncation + 1), precision_(truncation + 1) {}

LaurentSeries LaurentSeries::monomial(const FiniteField& field, int n, const Element& c, int truncation) {
    LaurentSeries s(field, truncation);
    if (n <= truncation) s.set(n, c);
    return s;
}

LaurentSeries LaurentSeries::from_poly(const UniPoly& p, int truncation) {
    LaurentSeries s(p.field(), truncation);
    for (int i = 0; i <= p.degree() && i <= truncation; ++i) s.set(i, p.coefficient(i));
    return s;
}

void LaurentSeries::set(int n, const Element& c) {
    if (n >= precision_) return;
    if (coeffs_.empty()) {
        if (c.is_zero()) return;
        start_ = n;
        coeffs_.assign(static_cast<std::size_t>(precision_ - n), field_.zero());
    } else if (n < start_) {
        if (c.is_zero()) return;
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(start_ - n), field_.zero());
        start_ = n;
    }
    coeffs_[static_cast<std::size_t>(n - start_)] = c;
}

std::optional<int> LaurentSeries::valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return start_ + static_cast<int>(i);
    return std::nullopt;
}

Element LaurentSeries::coefficient(int n) const {
    if (n >= precision_)
        throw InputError("coefficient of exponent " + std::to_string(n) + " lies past the truncation order " +
                         std::to_string(truncation()));
    if (coeffs_.empty() || n < start_) return field_.zero();
    return coeffs_[static_cast<std::size_t>(n - start_)];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& rhs) const {
    LaurentSeries out(field_, std::min(truncation(), rhs.truncation()));
    const int lo = std::min(coeffs_.empty() ? precision_ : start_, rhs.coeffs_.empty() ? rhs.precision_ : rhs.start_);
    for (int n = lo; n < out.precision_; ++n) out.set(n, coefficient(n) + rhs.coefficient(n));
    return out;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& rhs) const { return *this + rhs * (-field_.one()); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& rhs) const {
    const auto va = valuation();
    const auto vb = rhs.valuation();
    // Known exactly below min(va + prec_b, vb + prec_a).
    const int pa = precision_, pb = rhs.precision_;
    int prec;
    if (va && vb)
        prec = std::min(*va + pb, *vb + pa);
    else if (va)
        prec = *va + pb;
    else if (vb)
        prec = *vb + pa;
    else
        prec = std::min(pa, pb);  // both zero to their precision
    if (!va || !vb) return LaurentSeries(field_, prec - 1);
    LaurentSeries out(field_, prec - 1);
    for (int i = *va; i < pa; ++i) {
        const Element a = coefficient(i);
        if (a.is_zero()) continue;
        for (int j = *vb; j < pb && i + j < prec; ++j) {
            const Element b = rhs.coefficient(j);
            if (b.is_zero()) continue;
            out.set(i + j, out.coefficient(i + j) + a * b);
        }
    }
    return out;
}

LaurentSeries LaurentSeries::operator*(const Element& c) const {
    LaurentSeries out(field_, truncation());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.set(start_ + static_cast<int>(i), coeffs_[i] * c);
    return out;
}

LaurentSeries LaurentSeries::inverse() const {
    const auto v = valuation();
    if (!v) throw std::domain_error("inverse of a Laurent series that is zero to its precision");
    const int rel = precision_ - *v;  // relative precision
    const Element inv0 = coefficient(*v).inverse();
    // Inverse of u = sum_{i>=0} u_i s^i with u_0 != 0, to rel terms.
    std::vector<Element> b(static_cast<std::size_t>(rel), field_.zero());
    b[0] = inv0;
    for (int n = 1; n < rel; ++n) {
        Element acc = field_.zero();
        for (int i = 1; i <= n; ++i) acc += coefficient(*v + i) * b[static_cast<std::size_t>(n - i)];
        b[static_cast<std::size_t>(n)] = -acc * inv0;
    }
    LaurentSeries out(field_, -*v + rel - 1);
    for (int n = 0; n < rel; ++n) out.set(n - *v, b[static_cast<std::size_t>(n)]);
    return out;
}

LaurentSeries LaurentSeries::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    LaurentSeries result = monomial(field_, 0, field_.one(), truncation());
    LaurentSeries base = *this;
    bool first = true;
    while (n) {
        if (n & 1) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

LaurentSeries LaurentSeries::derivative() const {
    LaurentSeries out(field_, truncation() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const int n = start_ + static_cast<int>(i);
        out.set(n - 1, coeffs_[i] * field_.from_int(n));
    }
    return out;
}

LaurentSeries LaurentSeries::truncated(int truncation) const {
    LaurentSeries out(field_, std::min(truncation, this->truncation()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.set(start_ + static_cast<int>(i), coeffs_[i]);
    return out;
}

std::string LaurentSeries::to_string(const std::string& var) const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        const int n = start_ + static_cast<int>(i);
        if (!first) out << " + ";
        first = false;
        out << coeffs_[i].to_string();
        if (n != 0) out << '*' << var << '^' << n;
    }
    if (first) out << '0';
    out << " + O(" << var << '^' << precision_ << ')';
    return out.str();
}

// ---------------------------------------------------------------------------

int LaurentDifferential::n_min() const {
    const auto v = coeff_.valuation();
    return v ? std::min(*v, 0) : 0;
}

LaurentDifferential LaurentDifferential::operator+(const LaurentDifferential& rhs) const {
    return {coeff_ + rhs.coeff_, parameter_};
}

LaurentDifferential LaurentDifferential::operator*(const Element& c) const { return {coeff_ * c, parameter_}; }

LaurentDifferential LaurentDifferential::exact(const LaurentSeries& f, std::string parameter) {
    return {f.derivative(), std::move(parameter)};
}

std::string LaurentDifferential::to_string() const {
    return "(" + coeff_.to_string(parameter_) + ") d" + parameter_;
}

Element residue(const LaurentDifferential& d) { return d.coefficient().coefficient(-1); }

}  // namespace qrl
