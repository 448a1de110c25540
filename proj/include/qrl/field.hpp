#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qrl {

namespace detail {
struct FieldImpl;
}

class FiniteField;

/// An element of GF(p^k).  The value is the base-p digit encoding of the
/// polynomial representative modulo the defining polynomial, so prime-field
/// elements are simply 0..p-1 in every field of characteristic p.
class Element {
public:
    Element() = default;

    std::uint32_t value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }
    bool is_one() const noexcept { return value_ == 1; }
    bool valid() const noexcept { return field_ != nullptr; }

    Element operator+(const Element& rhs) const;
    Element operator-(const Element& rhs) const;
    Element operator-() const;
    Element operator*(const Element& rhs) const;
    Element operator/(const Element& rhs) const;
    Element& operator+=(const Element& rhs) { return *this = *this + rhs; }
    Element& operator-=(const Element& rhs) { return *this = *this - rhs; }
    Element& operator*=(const Element& rhs) { return *this = *this * rhs; }
    Element& operator/=(const Element& rhs) { return *this = *this / rhs; }

    Element inverse() const;
    /// Negative exponents invert first.
    Element pow(std::int64_t n) const;
    /// x -> x^p.
    Element frobenius() const;
    /// Some square root if one exists in this field.
    std::optional<Element> sqrt() const;

    FiniteField field() const;
    std::string to_string() const;

    friend bool operator==(const Element& a, const Element& b) noexcept {
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept {
        return a.value_ <=> b.value_;
    }

private:
    friend class FiniteField;
    Element(const detail::FieldImpl* f, std::uint32_t v) : field_(f), value_(v) {}

    const detail::FieldImpl* field_ = nullptr;
    std::uint32_t value_ = 0;
};

struct FieldEmbedding;

/// GF(p^k) with the lexicographically least irreducible monic modulus.
/// Instances are interned: constructing the same (p, k) twice shares tables.
class FiniteField {
public:
    /// Throws InputError if p is not prime, k < 1, or p^k exceeds the table limit.
    FiniteField(std::uint32_t p, std::uint32_t k = 1);

    /// Parses "p" or "p^k".
    static FiniteField parse(const std::string& spec);

    static constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 21;

    std::uint32_t characteristic() const noexcept;
    std::uint32_t degree() const noexcept;
    std::uint64_t size() const noexcept;
    /// Coefficients of the defining polynomial, constant term first, monic.
    const std::vector<std::uint32_t>& modulus() const noexcept;

    Element zero() const;
    Element one() const;
    Element from_int(std::int64_t n) const;
    /// Element with the given digit encoding; throws if out of range.
    Element element(std::uint32_t value) const;
    /// The class of x modulo the defining polynomial; only meaningful for k > 1.
    Element generator() const;
    /// Generator of the multiplicative group.
    Element primitive_element() const;

    /// All elements in encoding order.
    std::vector<Element> elements() const;

    /// The degree-d extension of this field with a fixed embedding.
    FieldEmbedding extension(std::uint32_t d) const;

    std::string to_string() const;

    friend bool operator==(const FiniteField& a, const FiniteField& b) noexcept {
        return a.impl_ == b.impl_;
    }

    const detail::FieldImpl* impl() const noexcept { return impl_.get(); }

private:
    friend class Element;
    explicit FiniteField(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const detail::FieldImpl> impl_;
};

/// A field homomorphism base -> target with target of degree d over base.
struct FieldEmbedding {
    FiniteField base;
    FiniteField target;
    std::uint32_t relative_degree = 1;

    Element operator()(const Element& x) const { return target.element(image_[x.value()]); }
    /// The base element mapping to y, if y lies in the image.
    std::optional<Element> preimage(const Element& y) const;
    /// x -> x^{|base|}, the generator of Gal(target/base).
    Element relative_frobenius(const Element& y) const;

    std::vector<std::uint32_t> image_;
    std::unordered_map<std::uint32_t, std::uint32_t> preimage_;
};

/// Smallest d dividing relative_degree with frob^d fixing every value.
std::uint32_t minimal_field_degree(const FieldEmbedding& emb, const std::vector<Element>& values);

bool is_prime(std::uint64_t n);

}  // namespace qrl
