#pragma once

// GIT-stable quartics built from the factor catalog: irreducible with 0-3
// nodes or cusps, line + cubic, conic + conic, conic + two lines, four lines.

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <random>
#include <string>
#include <vector>

#include "qrl/linalg.hpp"
#include "qrl/parser.hpp"
#include "qrl/quartic.hpp"

namespace catalog {

using qrl::Element;
using qrl::FiniteField;
using qrl::Monomial;
using qrl::PlaneQuartic;
using qrl::Polynomial;

struct Entry {
    std::string category;
    PlaneQuartic quartic;
    int nodes = 0;
    int cusps = 0;
};

inline Element random_element(const FiniteField& k, std::mt19937_64& rng) {
    return k.element(static_cast<std::uint32_t>(rng() % k.size()));
}

inline Polynomial random_form(const FiniteField& k, int degree, std::mt19937_64& rng,
                              const std::function<bool(const Monomial&)>& allowed = {}) {
    Polynomial f(k);
    for (int a = degree; a >= 0; --a)
        for (int b = degree - a; b >= 0; --b) {
            const Monomial m{a, b, degree - a - b};
            if (!allowed || allowed(m)) f.add_term(m, random_element(k, rng));
        }
    return f;
}

/// x, y, z replaced by a random invertible linear change of coordinates.
inline std::array<Polynomial, 3> random_substitution(const FiniteField& k, std::mt19937_64& rng) {
    while (true) {
        std::vector<std::vector<Element>> m(3, std::vector<Element>(3, k.zero()));
        for (auto& row : m)
            for (auto& c : row) c = random_element(k, rng);
        if (qrl::rank(m, k) != 3) continue;
        std::array<Polynomial, 3> out{Polynomial(k), Polynomial(k), Polynomial(k)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[i] = out[i] + Polynomial::variable(k, j) * m[i][j];
        return out;
    }
}

/// Quartics singular at the first k coordinate points: drop the monomials of
/// order < 2 there.
inline bool singular_at_coordinate_points(const Monomial& m, int k) {
    for (int i = 0; i < k; ++i)
        if (m[i] >= 3) return false;
    return true;
}

/// Category from the degrees of the absolute factors.
inline std::string classify(const PlaneQuartic& q) {
    std::vector<int> degs;
    for (const auto& f : qrl::factor_absolutely(q.form()).factors)
        for (int i = 0; i < f.multiplicity; ++i) degs.push_back(f.degree);
    std::sort(degs.begin(), degs.end());
    if (degs == std::vector<int>{4}) return "irreducible";
    if (degs == std::vector<int>{1, 3}) return "line_cubic";
    if (degs == std::vector<int>{2, 2}) return "conic_conic";
    if (degs == std::vector<int>{1, 1, 2}) return "conic_two_lines";
    return "four_lines";
}

inline std::vector<Entry> build(const FiniteField& k, std::uint64_t seed, int per_bucket = 2, int attempts = 80) {
    std::mt19937_64 rng(seed);
    std::vector<Entry> out;
    std::map<std::tuple<std::string, int, int>, int> seen;
    auto offer = [&](const Polynomial& f) {
        if (f.is_zero() || f.total_degree() != 4) return false;
        const PlaneQuartic q{qrl::HomogeneousPoly(f, 4)};
        const std::string category = classify(q);
        const auto git = qrl::git_status(q, qrl::kCompleteSearchDepth);
        if (git.status != qrl::GitStatus::stable) return false;
        int nodes = 0, cusps = 0;
        for (const auto& p : git.singularities.points) (p.kind.type == qrl::SingularityType::A1 ? nodes : cusps)++;
        auto& n = seen[{category, nodes, cusps}];
        if (n >= per_bucket) return false;
        ++n;
        out.push_back({category, q, nodes, cusps});
        return true;
    };
    auto lin = [&] { return random_form(k, 1, rng); };
    auto conic = [&] { return random_form(k, 2, rng); };

    for (int pts = 0; pts <= 3; ++pts)
        for (int i = 0; i < attempts; ++i) {
            const Polynomial f = random_form(k, 4, rng, [&](const Monomial& m) { return singular_at_coordinate_points(m, pts); });
            offer(f.compose(random_substitution(k, rng)));
        }
    // Tricuspidal seeds, moved around.
    const Polynomial tri = qrl::parse_polynomial("(x*y+y*z+z*x)^2 - 4*x*y*z*(x+y+z)", k);
    for (int i = 0; i < 4; ++i) offer(tri.compose(random_substitution(k, rng)));

    for (int i = 0; i < attempts; ++i) offer(lin() * random_form(k, 3, rng));
    for (int i = 0; i < attempts; ++i) offer(conic() * conic());
    for (int i = 0; i < attempts; ++i) offer(conic() * lin() * lin());
    for (int i = 0; i < attempts; ++i) offer(lin() * lin() * lin() * lin());
    return out;
}

}  // namespace catalog
