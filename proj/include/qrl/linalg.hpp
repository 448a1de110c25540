#pragma once

#include <vector>

#include "qrl/field.hpp"

namespace qrl {

using Matrix = std::vector<std::vector<Element>>;

/// Rank by Gaussian elimination.
std::size_t rank(Matrix m, const FiniteField& field);

/// Basis of the right kernel {v : m v = 0}; `columns` is needed when m has no rows.
std::vector<std::vector<Element>> kernel(Matrix m, std::size_t columns, const FiniteField& field);

}  // namespace qrl
