#include "doctest.h"

#include <set>

#include "qrl/errors.hpp"
#include "qrl/field.hpp"
#include "qrl/linalg.hpp"
#include "qrl/parser.hpp"
#include "qrl/polynomial.hpp"
#include "qrl/projective.hpp"

using namespace qrl;

namespace {

// Naive GF(p^k) arithmetic on digit vectors, independent of the library's tables.
std::vector<std::uint32_t> digits(std::uint32_t v, std::uint32_t p, std::uint32_t k) {
    std::vector<std::uint32_t> d(k);
    for (auto& x : d) {
        x = v % p;
        v /= p;
    }
    return d;
}

std::uint32_t naive_mul(std::uint32_t a, std::uint32_t b, const FiniteField& F) {
    const auto p = F.characteristic(), k = F.degree();
    const auto& mod = F.modulus();
    auto da = digits(a, p, k), db = digits(b, p, k);
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (int i = 2 * static_cast<int>(k) - 1; i >= static_cast<int>(k); --i) {
        const auto c = prod[i];
        if (!c) continue;
        for (std::uint32_t j = 0; j <= k; ++j) {
            auto& slot = prod[i - k + j];
            slot = (slot + p * p - (c * mod[j]) % p) % p;
        }
    }
    std::uint32_t v = 0;
    for (int i = static_cast<int>(k) - 1; i >= 0; --i) v = v * p + static_cast<std::uint32_t>(prod[i]);
    return v;
}

}  // namespace

TEST_CASE("field multiplication agrees with schoolbook polynomial arithmetic") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {3, 2}, {5, 1}, {7, 2}, {2, 4}, {3, 3}}) {
        FiniteField F(p, k);
        const auto els = F.elements();
        for (const auto& a : els)
            for (const auto& b : els) REQUIRE((a * b).value() == naive_mul(a.value(), b.value(), F));
    }
}

TEST_CASE("field axioms and primitive element") {
    for (auto spec : {"2^3", "3^2", "2^2", "5^2", "2^3", "11"}) {
        FiniteField F = FiniteField::parse(spec);
        const auto els = F.elements();
        for (const auto& a : els) {
            CHECK((a + (-a)).is_zero());
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
            CHECK(a.pow(static_cast<std::int64_t>(F.size())) == a);
            auto s = (a * a).sqrt();
            REQUIRE(s);
            CHECK(*s * *s == a * a);
        }
        std::set<std::uint32_t> powers;
        Element g = F.primitive_element(), x = F.one();
        for (std::uint64_t i = 0; i + 1 < F.size(); ++i, x *= g) powers.insert(x.value());
        CHECK(powers.size() == F.size() - 1);
    }
}

TEST_CASE("field parsing rejects bad input") {
    CHECK_THROWS_AS(FiniteField::parse("6"), InputError);
    CHECK_THROWS_AS(FiniteField::parse("9"), InputError);
    CHECK_THROWS_AS(FiniteField::parse("2^0"), InputError);
    CHECK_THROWS_AS(FiniteField::parse("abc"), InputError);
    CHECK_THROWS_AS(FiniteField::parse("2^30"), InputError);
    CHECK(FiniteField::parse("3^2") == FiniteField(3, 2));
}

TEST_CASE("embedding is a ring homomorphism fixing the base") {
    FiniteField F(2, 2);
    auto emb = F.extension(3);
    CHECK(emb.target.size() == 64);
    for (const auto& a : F.elements()) {
        CHECK(emb.preimage(emb(a)) == a);
        CHECK(emb.relative_frobenius(emb(a)) == emb(a));
        for (const auto& b : F.elements()) {
            CHECK(emb(a * b) == emb(a) * emb(b));
            CHECK(emb(a + b) == emb(a) + emb(b));
        }
    }
    std::size_t fixed = 0;
    for (const auto& y : emb.target.elements()) fixed += emb.relative_frobenius(y) == y;
    CHECK(fixed == 4);
}

TEST_CASE("univariate roots match exhaustive evaluation") {
    for (auto spec : {"7", "2^3", "3^2", "13"}) {
        FiniteField F = FiniteField::parse(spec);
        const auto els = F.elements();
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Element> c;
            for (int i = 0; i < 5; ++i) c.push_back(els[(trial * 7 + i * 13 + i * i * trial) % els.size()]);
            UniPoly f(F, c);
            if (f.is_zero()) continue;
            std::vector<Element> brute;
            for (const auto& a : els)
                if (f.evaluate(a).is_zero()) brute.push_back(a);
            CHECK(f.roots() == brute);
        }
    }
}

TEST_CASE("polynomial parsing and printing") {
    FiniteField F(7);
    auto p = parse_polynomial("(x+y)^2 - 2*x*y + 14*z^2", F);
    CHECK(p.to_string() == "x^2 + y^2");
    CHECK_THROWS_AS(parse_polynomial("x + w", F), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x + ", F), ParseError);
    CHECK_THROWS_AS(parse_poly("x^2 + y", F), InputError);
    CHECK_THROWS_AS(parse_poly("x - x", F), InputError);
    try {
        parse_polynomial("x + w", F);
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    auto q = parse_poly("x^4 + y^4 + z^4", F);
    CHECK(q.degree() == 4);
    auto r = parse_polynomial("x^2 - y^2", F);
    auto d = r.divide_exact(parse_polynomial("x - y", F));
    REQUIRE(d);
    CHECK(*d == parse_polynomial("x + y", F));
    CHECK_FALSE(r.divide_exact(parse_polynomial("x - 2*y", F)));
}

TEST_CASE("projective points on a conic match brute force") {
    FiniteField F(5);
    auto conic = parse_poly("x^2 + y^2 - z^2", F);
    auto pts = extension_points(conic, 1);
    CHECK(pts.size() == 6);  // smooth conic has q + 1 points
    auto pts2 = extension_points(conic, 2);
    CHECK(pts2.size() == 26);
    std::size_t deg1 = 0;
    for (auto& rp : pts2) deg1 += rp.field_degree == 1;
    CHECK(deg1 == 6);
}

TEST_CASE("rank and kernel") {
    FiniteField F(3);
    Matrix m = {{F.one(), F.from_int(2), F.zero()}, {F.from_int(2), F.one(), F.zero()}};
    CHECK(rank(m, F) == 1);
    auto k = kernel(m, 3, F);
    CHECK(k.size() == 2);
    for (auto& v : k)
        for (auto& row : m) {
            Element s = F.zero();
            for (int i = 0; i < 3; ++i) s += row[i] * v[i];
            CHECK(s.is_zero());
        }
}
