#include "laws.hpp"

#include <functional>

#include "flatpde/cli/document.hpp"
#include "flatpde/sym/printer.hpp"

namespace flatpde::testing {

Expr random_polynomial(std::mt19937_64& rng, const JetContext& ctx, int terms, unsigned max_deg, bool jets) {
  std::vector<Expr> vars;
  for (int i = 1; i <= ctx.n(); ++i) vars.push_back(ctx.x(i));
  vars.push_back(ctx.y());
  if (jets)
    for (int i = 1; i <= ctx.n(); ++i) vars.push_back(ctx.p(i));
  std::uniform_int_distribution<int> coeff(-4, 4), pick(0, static_cast<int>(vars.size()) - 1),
      deg(0, static_cast<int>(max_deg)), count(1, terms);
  Expr out;
  for (int t = count(rng); t > 0; --t) {
    Expr m = coeff(rng);
    for (int d = deg(rng); d > 0; --d) m *= vars[pick(rng)];
    out += m;
  }
  return out;
}

Expr random_rational(std::mt19937_64& rng, const JetContext& ctx, bool jets) {
  Expr den;
  while (den.is_zero()) den = random_polynomial(rng, ctx, 2, 2, jets);
  return random_polynomial(rng, ctx, 3, 2, jets) / den;
}

namespace {

using Check = std::function<bool(std::mt19937_64&)>;

LawResult run_law(const std::string& law, std::mt19937_64& rng, std::size_t cases, const Check& check) {
  LawResult r{law, cases, 0, {}};
  for (std::size_t i = 0; i < cases; ++i) {
    if (!check(rng)) {
      if (!r.failures) r.first_failure = "case " + std::to_string(i);
      ++r.failures;
    }
  }
  return r;
}

}  // namespace

std::vector<LawResult> kernel_laws(std::uint64_t seed, std::size_t cases) {
  const JetContext ctx(2);
  std::mt19937_64 rng(seed);
  auto R = [&](std::mt19937_64& g) { return random_rational(g, ctx); };
  const sym::Var x1 = ctx.coordinate(1), x2 = ctx.coordinate(2), yv = ctx.coordinate(3);
  std::vector<LawResult> out;

  out.push_back(run_law("ring", rng, cases, [&](std::mt19937_64& g) {
    const Expr a = random_polynomial(g, ctx, 3, 3), b = random_polynomial(g, ctx, 3, 3),
               c = random_polynomial(g, ctx, 3, 3);
    return a + b == b + a && (a + b) + c == a + (b + c) && a * b == b * a && (a * b) * c == a * (b * c) &&
           a * (b + c) == a * b + a * c && a + Expr() == a && a * Expr(1) == a && (a - a).is_zero();
  }));
  out.push_back(run_law("field", rng, cases, [&](std::mt19937_64& g) {
    const Expr a = R(g), b = R(g), c = R(g);
    bool ok = a + b == b + a && (a + b) + c == a + (b + c) && a * (b + c) == a * b + a * c &&
              (a * b) * c == a * (b * c);
    if (!a.is_zero()) ok &= a * a.inverse() == Expr(1) && (b / a) * a == b;
    return ok;
  }));
  out.push_back(run_law("leibniz", rng, cases, [&](std::mt19937_64& g) {
    const Expr a = R(g), b = R(g);
    const sym::Var v = ctx.coordinate(1 + static_cast<int>(g() % 3));
    auto d = [&](const Expr& e) { return sym::differentiate(e, v); };
    return d(a * b) == d(a) * b + a * d(b) && d(a + b) == d(a) + d(b);
  }));
  out.push_back(run_law("mixed partials", rng, cases, [&](std::mt19937_64& g) {
    const Expr a = R(g);
    return sym::differentiate(sym::differentiate(a, x1), yv) == sym::differentiate(sym::differentiate(a, yv), x1) &&
           sym::differentiate(sym::differentiate(a, x1), x2) == sym::differentiate(sym::differentiate(a, x2), x1);
  }));
  out.push_back(run_law("chain rule", rng, cases, [&](std::mt19937_64& g) {
    // f(x, y) with y := h(x): d/dx1 f(x, h) = f_x1(x, h) + f_y(x, h) h_x1.
    const Expr f = random_polynomial(g, ctx, 3, 3);
    Expr h;
    while (h.is_zero()) h = random_polynomial(g, ctx, 2, 2);
    h = sym::substitute(h, {{yv, Expr(1)}});
    const std::vector<sym::Binding> at{{yv, h}};
    const Expr lhs = sym::differentiate(sym::substitute(f, at), x1);
    const Expr rhs = sym::substitute(sym::differentiate(f, x1), at) +
                     sym::substitute(sym::differentiate(f, yv), at) * sym::differentiate(h, x1);
    return lhs == rhs;
  }));
  out.push_back(run_law("canonical idempotence", rng, cases, [&](std::mt19937_64& g) {
    const Expr a = R(g), c = R(g);
    const Expr again = Expr::fraction(a.num(), a.den());
    bool ok = again == a && Expr::fraction(again.num(), again.den()) == again;
    if (!c.is_zero()) ok &= (a * c) / c == a;
    return ok;
  }));
  out.push_back(run_law("parse/print round trip", rng, cases, [&](std::mt19937_64& g) {
    const Expr a = random_rational(g, ctx, true);
    return cli::parse_expression(sym::render(a, ctx.universe()), ctx) == a;
  }));
  return out;
}

}  // namespace flatpde::testing
