#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "flatpde/sym/rational.hpp"

namespace flatpde::sym {

using Vector = std::vector<RationalExpr>;
using Matrix = std::vector<Vector>;

/// Cofactor expansion up to 3x3, fraction-free Bareiss elimination above.
/// Throws NonSquareMatrix.
RationalExpr determinant(const Matrix& m);

struct Solution {
  Vector x;
};
struct Inconsistent {
  /// Index of an equation that reduces to 0 = nonzero.
  std::size_t row;
};
struct Underdetermined {
  /// Free unknowns set to zero.
  Vector particular;
  std::vector<Vector> kernel;
};
using LinearResult = std::variant<Solution, Inconsistent, Underdetermined>;

/// Gauss-Jordan elimination over the rational-function field.
///
/// Rows are processed in order; within a row the pivot is the nonzero entry
/// of lowest total degree (deg num + deg den), ties broken by column index.
LinearResult solve_linear(const Matrix& a, const Vector& b);

}  // namespace flatpde::sym
