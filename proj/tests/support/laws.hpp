#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "flatpde/jet.hpp"

namespace flatpde::testing {

/// Random polynomial in x[1..n], y and, if jets is set, dy[1..n]:
/// up to `terms` monomials of total degree <= max_deg, coefficients in -4..4.
Expr random_polynomial(std::mt19937_64& rng, const JetContext& ctx, int terms, unsigned max_deg, bool jets = false);
/// Quotient of two random polynomials with a nonzero denominator.
Expr random_rational(std::mt19937_64& rng, const JetContext& ctx, bool jets = false);

struct LawResult {
  std::string law;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// Ring and field laws, Leibniz, mixed partials, chain rule, canonical
/// idempotence and parse/print round trip, each on `cases` random inputs.
std::vector<LawResult> kernel_laws(std::uint64_t seed, std::size_t cases);

}  // namespace flatpde::testing
