#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrl/field.hpp"

namespace qrl {

/// Exponents of x, y, z.
using Monomial = std::array<int, 3>;

/// Sparse polynomial in x, y, z over a finite field.  Zero coefficients are
/// never stored.  Terms are ordered lexicographically, highest first.
class Polynomial {
public:
    using Terms = std::map<Monomial, Element, std::greater<>>;

    explicit Polynomial(FiniteField field) : field_(std::move(field)) {}

    static Polynomial constant(const FiniteField& field, const Element& c);
    static Polynomial variable(const FiniteField& field, int index);
    static Polynomial monomial(const FiniteField& field, const Monomial& m, const Element& c);

    const FiniteField& field() const noexcept { return field_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// -1 for the zero polynomial.
    int total_degree() const;
    /// Least total degree of a term; -1 for zero.
    int order() const;
    bool is_homogeneous() const;
    Element coefficient(const Monomial& m) const;
    /// Sum of the terms of total degree d.
    Polynomial homogeneous_part(int d) const;

    void add_term(const Monomial& m, const Element& c);

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Element& c) const;
    Polynomial pow(unsigned n) const;
    bool operator==(const Polynomial& rhs) const { return terms_ == rhs.terms_; }

    Element evaluate(const std::array<Element, 3>& point) const;
    Polynomial derivative(int var) const;
    /// Replaces x, y, z by the given polynomials.
    Polynomial compose(const std::array<Polynomial, 3>& subs) const;
    /// Coefficient-wise image under a field embedding.
    Polynomial map(const FieldEmbedding& emb) const;
    /// Coefficient-wise preimage; nullopt if some coefficient is outside the base.
    std::optional<Polynomial> pull_back(const FieldEmbedding& emb) const;

    /// Exact quotient if rhs divides this polynomial.
    std::optional<Polynomial> divide_exact(const Polynomial& rhs) const;
    /// Scales so that the leading coefficient is 1; zero stays zero.
    Polynomial monic() const;

    /// Canonical text form: descending terms joined by '+', coefficients
    /// printed only when != 1, no minus signs.
    std::string to_string() const;

private:
    FiniteField field_;
    Terms terms_;
};

/// A nonzero-or-zero form whose stored monomials all have total degree d.
class HomogeneousPoly {
public:
    /// Throws InputError if p is not homogeneous of degree d.
    HomogeneousPoly(Polynomial p, int degree);
    /// Degree read off from p; throws InputError for zero or non-homogeneous input.
    explicit HomogeneousPoly(Polynomial p);

    const Polynomial& poly() const noexcept { return poly_; }
    const FiniteField& field() const noexcept { return poly_.field(); }
    int degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return poly_.is_zero(); }

    Element evaluate(const std::array<Element, 3>& point) const { return poly_.evaluate(point); }
    HomogeneousPoly derivative(int var) const;
    HomogeneousPoly operator*(const HomogeneousPoly& rhs) const;
    HomogeneousPoly operator+(const HomogeneousPoly& rhs) const;
    HomogeneousPoly map(const FieldEmbedding& emb) const;
    std::string to_string() const { return poly_.to_string(); }

private:
    Polynomial poly_;
    int degree_;
};

/// Dense univariate polynomial, coefficient of t^i at index i.
class UniPoly {
public:
    explicit UniPoly(FiniteField field) : field_(std::move(field)) {}
    UniPoly(FiniteField field, std::vector<Element> coeffs);

    static UniPoly constant(const FiniteField& field, const Element& c);
    /// t - a
    static UniPoly linear(const FiniteField& field, const Element& a);
    static UniPoly monomial(const FiniteField& field, int n, const Element& c);

    const FiniteField& field() const noexcept { return field_; }
    const std::vector<Element>& coefficients() const noexcept { return c_; }
    /// -1 for zero.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Element coefficient(int i) const;
    Element leading() const;

    UniPoly operator+(const UniPoly& rhs) const;
    UniPoly operator-(const UniPoly& rhs) const;
    UniPoly operator*(const UniPoly& rhs) const;
    UniPoly operator*(const Element& c) const;
    UniPoly pow(unsigned n) const;
    bool operator==(const UniPoly& rhs) const { return c_ == rhs.c_; }

    /// Quotient and remainder; throws on division by zero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& rhs) const;
    UniPoly operator%(const UniPoly& rhs) const { return divmod(rhs).second; }
    UniPoly monic() const;
    UniPoly derivative() const;
    Element evaluate(const Element& t) const;
    UniPoly map(const FieldEmbedding& emb) const;

    /// Distinct roots in the coefficient field, ascending by encoding.
    std::vector<Element> roots() const;
    /// Multiplicity of a as a root.
    int root_multiplicity(const Element& a) const;
    std::string to_string(char var = 't') const;

private:
    void normalize();
    FiniteField field_;
    std::vector<Element> c_;
};

UniPoly gcd(UniPoly a, UniPoly b);
/// base^e mod m.
UniPoly powmod(UniPoly base, std::uint64_t e, const UniPoly& m);

}  // namespace qrl

namespace qrl {

/// Embedding a.target -> b.target that commutes with a and b on their shared base.
/// Throws InputError unless a.base == b.base and a.relative_degree divides b.relative_degree.
FieldEmbedding embedding_between(const FieldEmbedding& a, const FieldEmbedding& b);

}  // namespace qrl
