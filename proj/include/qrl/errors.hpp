#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrl {

/// Bad user input: malformed text, invalid graph, unsupported parameters.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in polynomial or name input, with the byte offset of the problem.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A computed result contradicted a proven structural property.  Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qrl
