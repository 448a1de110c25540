#pragma once

#include <string>

#include "qrl/polynomial.hpp"

namespace qrl {

/// Parses the polynomial grammar
///
///   expr   := '-'? term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' uint)?
///   base   := 'x' | 'y' | 'z' | uint | '(' expr ')'
///
/// Whitespace is ignored.  Integer literals are reduced modulo p.
/// Throws ParseError with the byte offset of the offending character.
Polynomial parse_polynomial(const std::string& text, const FiniteField& field);

/// As parse_polynomial, additionally requiring a nonzero homogeneous result.
HomogeneousPoly parse_poly(const std::string& text, const FiniteField& field);

}  // namespace qrl
