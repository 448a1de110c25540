#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrl/polynomial.hpp"

namespace qrl {

/// Default number of coefficients kept past degree 0.
inline constexpr int kDefaultTruncation = 16;

/// A truncated Laurent series sum_{n >= start} a_n s^n, exact for every
/// exponent n <= truncation().
class LaurentSeries {
public:
    LaurentSeries(FiniteField field, int truncation = kDefaultTruncation);

    static LaurentSeries monomial(const FiniteField& field, int n, const Element& c,
                                  int truncation = kDefaultTruncation);
    static LaurentSeries from_poly(const UniPoly& p, int truncation = kDefaultTruncation);

    const FiniteField& field() const noexcept { return field_; }
    /// Highest exponent whose coefficient is known exactly.
    int truncation() const noexcept { return precision_ - 1; }
    /// Least exponent with nonzero coefficient, if any below the truncation.
    std::optional<int> valuation() const;
    Element coefficient(int n) const;
    bool is_zero() const { return !valuation().has_value(); }

    LaurentSeries operator+(const LaurentSeries& rhs) const;
    LaurentSeries operator-(const LaurentSeries& rhs) const;
    LaurentSeries operator*(const LaurentSeries& rhs) const;
    LaurentSeries operator*(const Element& c) const;
    /// Throws std::domain_error if the series is zero to its precision.
    LaurentSeries inverse() const;
    LaurentSeries pow(int n) const;
    /// Formal derivative with respect to the parameter.
    LaurentSeries derivative() const;
    /// Drops exact knowledge past the given truncation.
    LaurentSeries truncated(int truncation) const;

    std::string to_string(const std::string& var = "t") const;

private:
    void set(int n, const Element& c);
    FiniteField field_;
    int start_ = 0;
    int precision_;
    std::vector<Element> coeffs_;  // exponent start_ + i
};

/// f(s) ds for a truncated Laurent series f in the local parameter s.
class LaurentDifferential {
public:
    LaurentDifferential(LaurentSeries coefficient, std::string parameter = "t")
        : coeff_(std::move(coefficient)), parameter_(std::move(parameter)) {}

    const LaurentSeries& coefficient() const noexcept { return coeff_; }
    const std::string& parameter() const noexcept { return parameter_; }
    const FiniteField& field() const noexcept { return coeff_.field(); }
    int truncation() const noexcept { return coeff_.truncation(); }
    /// Least exponent with nonzero coefficient, or 0 if the series is regular.
    int n_min() const;
    /// max(0, -n_min).
    int pole_order() const { return -n_min(); }

    LaurentDifferential operator+(const LaurentDifferential& rhs) const;
    LaurentDifferential operator*(const Element& c) const;

    /// d(f) = f'(s) ds.
    static LaurentDifferential exact(const LaurentSeries& f, std::string parameter = "t");

    std::string to_string() const;

private:
    LaurentSeries coeff_;
    std::string parameter_;
};

/// The coefficient a_{-1}.
Element residue(const LaurentDifferential& d);

}  // namespace qrl
