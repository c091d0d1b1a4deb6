#include "flatpde/corpus.hpp"

#include <random>

namespace flatpde {

namespace {

Expr random_monomial(std::mt19937_64& rng, const JetContext& ctx, unsigned max_degree) {
  const int m = ctx.n() + 1;
  // Top degree three times out of four, so most draws are nonlinear.
  std::uniform_int_distribution<unsigned> degree(1, max_degree), top(0, 3);
  std::uniform_int_distribution<int> var(1, m), coeff(0, 3);
  static constexpr int kCoefficients[] = {-2, -1, 1, 2};
  Expr e(kCoefficients[coeff(rng)]);
  const unsigned d0 = top(rng) == 0 ? degree(rng) : max_degree;
  for (unsigned d = d0; d > 0; --d) e *= Expr::variable(ctx.coordinate(var(rng)));
  return e;
}

Expr random_entry(std::mt19937_64& rng, const JetContext& ctx) {
  std::uniform_int_distribution<int> terms(0, 2), coeff(-2, 2);
  Expr e(coeff(rng));
  for (int t = terms(rng); t > 0; --t) e += random_monomial(rng, ctx, 2);
  return e;
}

}  // namespace

std::vector<PointTransformation> transformation_corpus(const JetContext& ctx, std::size_t count,
                                                       std::uint64_t seed, unsigned max_degree) {
  std::mt19937_64 rng(seed);
  std::vector<PointTransformation> out;
  if (count == 0) return out;
  out.push_back(PointTransformation::identity(ctx));
  std::uniform_int_distribution<int> x_terms(0, 2), y_terms(1, 2);
  while (out.size() < count) {
    PointTransformation t = PointTransformation::identity(ctx);
    for (auto& x : t.X)
      for (int k = x_terms(rng); k > 0; --k) x += random_monomial(rng, ctx, max_degree);
    for (int k = y_terms(rng); k > 0; --k) t.Y += random_monomial(rng, ctx, max_degree);
    if (jacobian(t).is_zero()) continue;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<CubicForm> cubic_corpus(const JetContext& ctx, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = ctx.n();
  std::vector<CubicForm> out;
  while (out.size() < count) {
    CubicForm c(ctx);
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        c.set_G(i, j, random_entry(rng, ctx));
        for (int k = 1; k <= n; ++k) c.set_H(k, i, j, random_entry(rng, ctx));
      }
    for (int k = 1; k <= n; ++k) {
      for (int j = 1; j <= n; ++j) c.set_L(k, j, random_entry(rng, ctx));
      c.set_M(k, random_entry(rng, ctx));
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace flatpde
