#include "flatpde/jet.hpp"

namespace flatpde {

using sym::VarKind;

JetContext::JetContext(int n, std::vector<std::string> params) : n_(n) {
  if (n < 2) throw NRequiresAtLeastTwo(n);
  u_ = sym::VarUniverse::jet(n, std::move(params));
}

PdeSystem::PdeSystem(JetContext ctx, std::vector<std::vector<Expr>> f) : ctx_(std::move(ctx)), f_(std::move(f)) {
  const int n = ctx_.n();
  if (static_cast<int>(f_.size()) != n) throw Error("system table must be n x n");
  for (const auto& row : f_)
    if (static_cast<int>(row.size()) != n) throw Error("system table must be n x n");
  sym::VarSet forbidden = ctx_.universe().of_kind(VarKind::jet2) | ctx_.universe().of_kind(VarKind::theta);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (f_[i][j] != f_[j][i]) throw AsymmetricSystem(i + 1, j + 1);
      if ((f_[i][j].support() & forbidden).any())
        throw JetVariableNotAllowed("F[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                                    "] mentions a second-order jet variable");
    }
}

PdeSystem PdeSystem::zero(const JetContext& ctx) {
  return PdeSystem(ctx, std::vector<std::vector<Expr>>(ctx.n(), std::vector<Expr>(ctx.n())));
}

namespace {

template <class Coefficient>
Expr derivation(const JetContext& ctx, const Expr& e, int j, Coefficient&& jet_coefficient) {
  const auto& u = ctx.universe();
  sym::VarSet s = e.support();
  Expr out;
  if (s.test(u.x(j).index)) out += sym::differentiate(e, u.x(j));
  if (s.test(u.y().index)) out += ctx.p(j) * sym::differentiate(e, u.y());
  for (int l = 1; l <= ctx.n(); ++l)
    if (s.test(u.p(l).index)) out += jet_coefficient(l) * sym::differentiate(e, u.p(l));
  return out;
}

}  // namespace

Expr total_derivative(const PdeSystem& sys, const Expr& e, int j) {
  JetContext::check(j, sys.n());
  if ((e.support() & sys.ctx().universe().of_kind(VarKind::jet2)).any())
    throw JetVariableNotAllowed("total_derivative argument mentions a second-order jet variable");
  return derivation(sys.ctx(), e, j, [&](int l) -> const Expr& { return sys.F(j, l); });
}

Expr formal_total_derivative(const JetContext& ctx, const Expr& e, int j) {
  JetContext::check(j, ctx.n());
  return derivation(ctx, e, j, [&](int l) { return ctx.q(j, l); });
}

Expr IntegrabilityResiduals::at(int j1, int j2, int j3) const {
  if (j2 == j3) return {};
  if (j2 < j3) return residuals.at({j1, j2, j3});
  return -residuals.at({j1, j3, j2});
}

IntegrabilityResiduals integrability_residuals(const PdeSystem& sys, Execution ex) {
  const int n = sys.n();
  std::vector<Index> keys;
  for (int j1 = 1; j1 <= n; ++j1)
    for (int j2 = 1; j2 <= n; ++j2)
      for (int j3 = j2 + 1; j3 <= n; ++j3) keys.push_back({j1, j2, j3});
  return {evaluate_family(keys, ex, [&](const Index& k) {
    return total_derivative(sys, sys.F(k[0], k[1]), k[2]) - total_derivative(sys, sys.F(k[0], k[2]), k[1]);
  })};
}

}  // namespace flatpde
