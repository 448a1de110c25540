#pragma once

#include <random>

#include "qrl/differentials.hpp"

namespace samples {

inline qrl::Element random_element(const qrl::FiniteField& k, std::mt19937_64& rng) {
    return k.element(static_cast<std::uint32_t>(rng() % k.size()));
}

/// Up to three poles of order up to 4 plus a polynomial part of degree up to 2.
inline qrl::RationalDifferential random_differential(const qrl::FiniteField& k, std::mt19937_64& rng) {
    qrl::RationalDifferential w(k);
    const int poles = static_cast<int>(rng() % 4);
    for (int i = 0; i < poles; ++i) w.add_pole_term(random_element(k, rng), 1 + static_cast<int>(rng() % 4), random_element(k, rng));
    const int deg = static_cast<int>(rng() % 4) - 1;
    for (int i = 0; i <= deg; ++i) w.add_polynomial_term(i, random_element(k, rng));
    return w;
}

/// Residues sum to zero and each finite residue is the simple-pole coefficient.
inline bool residue_theorem_holds(const qrl::RationalDifferential& w) {
    const auto& k = w.field();
    qrl::Element sum = k.zero(), simple = k.zero();
    const auto res = w.residues();
    for (const auto& [p, r] : res) {
        sum += r;
        if (p && !(r == w.poles().at(*p)[0])) return false;
    }
    for (const auto& [a, cs] : w.poles()) simple += cs[0];
    return sum.is_zero() && res.back().second == -simple && res.size() == w.poles().size() + 1;
}

/// Every element of the W span is regular at 0, 1 and infinity.
inline bool w_span_regular(const qrl::FiniteField& k, std::size_t& checked) {
    const auto basis = qrl::w_basis_r3(k);
    bool ok = true;
    for (const auto& a1 : k.elements())
        for (const auto& a2 : k.elements())
            for (const auto& a3 : k.elements()) {
                const auto w = basis[0] * a1 + basis[1] * a2 + basis[2] * a3;
                ok = ok && qrl::is_regular_at_cusp({{w.expand_at(k.zero())}}).regular &&
                     qrl::is_regular_at_cusp({{w.expand_at(k.one())}}).regular &&
                     qrl::is_regular_at_cusp({{w.expand_at_infinity()}}).regular;
                ++checked;
            }
    return ok;
}

}  // namespace samples
