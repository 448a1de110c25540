#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qrl/laurent.hpp"

namespace qrl {

/// f(t) dt on the projective line, f in partial-fraction form:
/// f = P(t) + sum over poles a, k >= 1 of c_{a,k} / (t - a)^k.
class RationalDifferential {
public:
    explicit RationalDifferential(FiniteField field);

    const FiniteField& field() const noexcept { return field_; }
    /// Adds c / (t - a)^k; k >= 1.
    RationalDifferential& add_pole_term(const Element& a, int k, const Element& c);
    /// Adds c t^n.
    RationalDifferential& add_polynomial_term(int n, const Element& c);

    const std::map<Element, std::vector<Element>>& poles() const noexcept { return poles_; }
    const UniPoly& polynomial_part() const noexcept { return poly_; }

    RationalDifferential operator+(const RationalDifferential& rhs) const;
    RationalDifferential operator*(const Element& c) const;

    /// Local expansion in s = t - a.
    LaurentDifferential expand_at(const Element& a, int truncation = kDefaultTruncation) const;
    /// Local expansion in u = 1/t, using dt = -u^(-2) du.
    LaurentDifferential expand_at_infinity(int truncation = kDefaultTruncation) const;

    /// f'(t) dt, the formal derivative of the coefficient function.
    RationalDifferential coefficient_derivative() const;
    /// f(t) at a point that is not a pole.
    Element coefficient_at(const Element& t) const;

    /// Residues at every finite pole (ascending) followed by the point at infinity.
    std::vector<std::pair<std::optional<Element>, Element>> residues() const;

    std::string to_string() const;

private:
    FiniteField field_;
    std::map<Element, std::vector<Element>> poles_;  // index k-1 holds c_{a,k}
    UniPoly poly_;
};

struct BranchDifferential {
    std::vector<LaurentDifferential> branches;
};

struct RegularityVerdict {
    bool regular;
    std::string reason;
};

/// Two branches: each pole order <= 1 and residues summing to zero.
/// Throws InputError for the wrong branch count or mixed fields.
RegularityVerdict is_regular_at_node(const BranchDifferential& d);
/// One branch: pole order <= 2 and residue zero.
RegularityVerdict is_regular_at_cusp(const BranchDifferential& d);

/// dt/t^2, dt/(t-1)^2, dt: the residue-free differentials with marked points 0, 1, infinity.
std::array<RationalDifferential, 3> w_basis_r3(const FiniteField& field);

/// r + 2 for r in 1..3; InputError otherwise.
int expected_h0(int r);

/// Rank of the 2x3 matrix of the conditions f(p) = 0, f'(p) = 0 on the span of
/// the W basis, p not in {0, 1}.  Throws InputError for p in {0, 1}.
std::size_t appendix_matrix_rank(const Element& p);

struct AppendixItem {
    std::string name;
    /// "pass", "fail" or "not_applicable".
    std::string status;
    std::string detail;
};

struct AppendixReport {
    std::string field;
    std::vector<AppendixItem> items;
    /// git_status of the image quartic.
    std::string git_status;
    bool all_passed() const;
};

/// Exact checks of the tricuspidal parametrization and its quartic.
AppendixReport verify_tricuspidal(const FiniteField& field);

nlohmann::json to_json(const AppendixReport& r);

}  // namespace qrl
