#pragma once

#include <vector>

#include "flatpde/transform.hpp"

namespace flatpde {

/// Pi^{k}_{j1,j2}, same layout as the square table: keys (k, j1, j2), j1 <= j2,
/// indices in 1..n+1.
using PiTable = SquareTable;

/// Theta^1..Theta^n, Theta^{n+1}.
struct ThetaFields {
  std::vector<Expr> theta;

  const Expr& at(int a) const { return theta.at(a - 1); }
  /// Theta^a = square^a_{a,a}.
  static ThetaFields from_squares(const SquareTable& s);
  /// The reserved Theta symbols of the jet universe.
  static ThetaFields symbolic(const JetContext& ctx);
};

/// Pi := square, entry by entry.
PiTable pi_from_squares(const SquareTable& s);

/// Keys (j1, j2, j3, k1), j2 < j3, all in 1..n+1:
///   d_{j3} Pi^{k1}_{j1,j2} - d_{j2} Pi^{k1}_{j1,j3}
///   + sum_{k2 <= n+1} (Pi^{k2}_{j1,j2} Pi^{k1}_{j3,k2} - Pi^{k2}_{j1,j3} Pi^{k1}_{j2,k2}).
Residuals cross_diff_residuals(const JetContext& ctx, const PiTable& p, Execution ex = Execution::parallel);

/// The cross-differentiation relations split along {1..n} and {n+1}, each as
/// left side minus right side; every j and k1 in 1..n.
struct SplitFamilies {
  Residuals f1;  // k1 = n+1, keys (j1, j2, j3)
  Residuals f2;  // k1 = n+1, j3 = n+1, keys (j1, j2)
  Residuals f3;  // k1 = n+1, (n+1, j1, n+1), keys (j1)
  Residuals f4;  // keys (j1, j2, j3, k1)
  Residuals f5;  // j3 = n+1, keys (j1, j2, k1)
  Residuals f6;  // (n+1, j1, n+1), keys (j1, k1)
};

/// Throws std::logic_error if the paired products of the third family fail to
/// cancel.
SplitFamilies split_families(const JetContext& ctx, const PiTable& p, Execution ex = Execution::parallel);

/// Pi expressed through (G, H, L, M) and Theta.
PiTable quasi_invert(const CubicForm& c, const ThetaFields& th);

/// split_families of quasi_invert(c, th), each family solved for the
/// derivatives of Theta and written in (G, H, L, M). Residual = left side minus
/// right side ("0 = E" gives E). fam1 is (I'); fam2 = -2 f2, fam3 = f3,
/// fam4 = f4, fam5 = f5, fam6 = 2 f6 identically. Index ranges as in
/// SplitFamilies.
struct SixFamilyResiduals {
  Residuals fam1, fam2, fam3, fam4, fam5, fam6;
};

SixFamilyResiduals six_family_residuals(const CubicForm& c, const ThetaFields& th,
                                        Execution ex = Execution::parallel);

/// Right-hand sides of the second auxiliary system.
class ThetaGradient {
 public:
  ThetaGradient(const CubicForm& c, const ThetaFields& th) : c_(c), th_(th) {}

  /// d Theta^{j1} / d x^{j2}.
  Expr x(int j1, int j2) const;
  /// d Theta^{j1} / d y.
  Expr y(int j1) const;
  /// d Theta^{n+1} / d x^{j1}.
  Expr top_x(int j1) const;
  /// d Theta^{n+1} / d y, written with the free index j1.
  Expr top_y(int j1) const;
  /// d Theta^a / d x^b, a and b in 1..n+1 (b = n+1 is y); top_y uses j1 = 1.
  Expr at(int a, int b) const;

 private:
  const CubicForm& c_;
  const ThetaFields& th_;
};

/// Partial derivative of th minus the matching ThetaGradient entry.
struct ThetaSystemResiduals {
  Residuals x;      // (j1, j2)
  Residuals y;      // (j1)
  Residuals top_x;  // (j1)
  Residuals top_y;  // (j1), one per choice of the free index
};

ThetaSystemResiduals theta_system_residuals(const CubicForm& c, const ThetaFields& th,
                                            Execution ex = Execution::parallel);

/// Compatibility conditions of the second auxiliary system.
struct CompatResiduals {
  Residuals f1;          // expanded closed form, keys (j1, j2, j3)
  Residuals f1_derived;  // cross-differentiated, keys (j1, j2, j3)
  Residuals f2;          // keys (j1, j2)
  Residuals f3;          // keys (j1, j2)
  Residuals f4;          // keys (j2)
};

/// Cross-differentiates the gradients with Theta kept symbolic. When c
/// satisfies (I')..(IV') the derived families must be free of Theta and a
/// remaining Theta symbol throws ThetaNotEliminated; otherwise Theta symbols
/// are left in the residuals.
CompatResiduals compat_residuals(const CubicForm& c, Execution ex = Execution::parallel);

}  // namespace flatpde
