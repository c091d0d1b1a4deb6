#pragma once

#include <vector>

#include "flatpde/cubic.hpp"

namespace flatpde {

/// (x, y) -> (X^1..X^n, Y), entries over (x, y).
struct PointTransformation {
  JetContext ctx;
  std::vector<Expr> X;
  Expr Y;

  static PointTransformation identity(const JetContext& ctx);
  /// X^l for l <= n, Y for l = n+1.
  const Expr& component(int l) const { return l == ctx.n() + 1 ? Y : X.at(JetContext::check(l, ctx.n()) - 1); }
};

/// Square functions keyed (k, j1, j2) with j1 <= j2, all indices in 1..n+1
/// (n+1 standing for y).
class SquareTable {
 public:
  SquareTable(int n, Residuals entries) : n_(n), entries_(std::move(entries)) {}
  int n() const { return n_; }
  const Expr& at(int k, int j1, int j2) const {
    return entries_.at({k, std::min(j1, j2), std::max(j1, j2)});
  }
  const Residuals& entries() const { return entries_; }

 private:
  int n_;
  Residuals entries_;
};

/// Keys (k, j1, j2), j1 <= j2, in lexicographic order.
std::vector<Index> square_keys(int n);

/// (n+1) x (n+1) Jacobian determinant; rows X^1..X^n, Y; columns x^1..x^n, y.
Expr jacobian(const PointTransformation& t);
SquareTable squares(const PointTransformation& t, Execution ex = Execution::parallel);

/// The bracketed form of the flat-equivalent system, built from any table.
PdeSystem synthesize_from_squares(const JetContext& ctx, const SquareTable& s);
PdeSystem synthesize(const PointTransformation& t, Execution ex = Execution::parallel);

CubicForm ghlm_from_table(const JetContext& ctx, const SquareTable& s);
CubicForm ghlm_from_squares(const PointTransformation& t, Execution ex = Execution::parallel);

/// Entries (k, i) of 0 = D_k(DX) Y_X - D_k(DY) after ddy[a][b] -> F^{a,b}.
Residuals pullback_residual(const PointTransformation& t, const PdeSystem& sys,
                            Execution ex = Execution::parallel);

/// sum_k XI^k d/dx^k + ETA d/dy with coefficients over (x, y).
struct VectorField {
  JetContext ctx;
  std::vector<Expr> Xi;
  Expr Eta;
};

/// Second-order prolongation coefficients Y2_{j1,j2}, keyed (j1, j2) for all
/// j1, j2 in 1..n.
Residuals prolong2(const VectorField& v, Execution ex = Execution::parallel);

}  // namespace flatpde
