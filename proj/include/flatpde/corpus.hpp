#pragma once

#include <cstdint>
#include <vector>

#include "flatpde/transform.hpp"

namespace flatpde {

/// Fixed-seed transformations: the identity first, then
/// X^l = x^l + (0..2 random monomials), Y = y + (1..2 random monomials),
/// monomials in (x, y) of degree 1..max_degree with coefficients in
/// {-2..2} \ {0}. Draws with vanishing Jacobian are rejected.
std::vector<PointTransformation> transformation_corpus(const JetContext& ctx, std::size_t count,
                                                       std::uint64_t seed = 1, unsigned max_degree = 2);

/// Cubic forms with random polynomial entries in (x, y) of degree <= 2.
std::vector<CubicForm> cubic_corpus(const JetContext& ctx, std::size_t count, std::uint64_t seed = 1);

}  // namespace flatpde
