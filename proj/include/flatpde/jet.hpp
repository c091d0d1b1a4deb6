#pragma once

#include <string>
#include <vector>

#include "flatpde/errors.hpp"
#include "flatpde/residuals.hpp"
#include "flatpde/sym/universe.hpp"

namespace flatpde {

/// Second-order jet space over n >= 2 independent variables. Index n+1
/// stands for y wherever indices run over 1..n+1.
class JetContext {
 public:
  explicit JetContext(int n, std::vector<std::string> params = {});

  int n() const { return n_; }
  const sym::VarUniverse& universe() const { return *u_; }
  const sym::UniversePtr& universe_ptr() const { return u_; }

  Expr x(int i) const { return Expr::variable(u_->x(check(i, n_))); }
  Expr y() const { return Expr::variable(u_->y()); }
  Expr p(int i) const { return Expr::variable(u_->p(check(i, n_))); }
  Expr q(int i, int j) const { return Expr::variable(u_->q(check(i, n_), check(j, n_))); }
  Expr theta(int a) const { return Expr::variable(u_->theta(check(a, n_ + 1))); }
  Expr param(std::size_t k) const { return Expr::variable(u_->param(k)); }

  /// x^i for i <= n, y for i = n+1.
  sym::Var coordinate(int i) const { return u_->coordinate(check(i, n_ + 1)); }
  /// Partial derivative along coordinate i in 1..n+1.
  Expr d(const Expr& e, int i) const { return sym::differentiate(e, coordinate(i)); }

  static int check(int i, int hi) {
    if (i < 1 || i > hi) throw IndexOutOfRange(i, hi);
    return i;
  }

  friend bool operator==(const JetContext& a, const JetContext& b) { return a.u_ == b.u_; }

 private:
  int n_;
  sym::UniversePtr u_;
};

/// y_{x^i x^j} = F^{i,j}(x, y, dy), F symmetric.
class PdeSystem {
 public:
  /// Full n x n table; throws AsymmetricSystem or JetVariableNotAllowed.
  PdeSystem(JetContext ctx, std::vector<std::vector<Expr>> f);
  static PdeSystem zero(const JetContext& ctx);

  const JetContext& ctx() const { return ctx_; }
  int n() const { return ctx_.n(); }
  const Expr& F(int i, int j) const {
    return f_[JetContext::check(i, n()) - 1][JetContext::check(j, n()) - 1];
  }

 private:
  JetContext ctx_;
  std::vector<std::vector<Expr>> f_;
};

/// D_j e = e_{x^j} + dy[j] e_y + sum_l F^{j,l} e_{dy[l]}.
Expr total_derivative(const PdeSystem& sys, const Expr& e, int j);

/// Formal total derivative on the second-order jet space:
/// D_j e = e_{x^j} + dy[j] e_y + sum_l ddy[j][l] e_{dy[l]}.
Expr formal_total_derivative(const JetContext& ctx, const Expr& e, int j);

/// residual(j1, j2, j3) = D_{j3} F^{j1,j2} - D_{j2} F^{j1,j3}, stored for j2 < j3.
struct IntegrabilityResiduals {
  Residuals residuals;
  /// Any (j1, j2, j3), reconstructed from the stored half.
  Expr at(int j1, int j2, int j3) const;
};

IntegrabilityResiduals integrability_residuals(const PdeSystem& sys, Execution ex = Execution::parallel);

}  // namespace flatpde
