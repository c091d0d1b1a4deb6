#pragma once

#include <string>
#include <variant>
#include <vector>

#include "flatpde/jet.hpp"

namespace flatpde {

/// Coefficient tables of
///   F^{j1,j2} = G_{j1,j2} + sum_k dy[k] (H^k_{j1,j2} + 1/2 dy[j1] L^k_{j2}
///               + 1/2 dy[j2] L^k_{j1} + dy[j1] dy[j2] M^k).
/// Entries are functions of (x, y). Setters keep G and H symmetric.
class CubicForm {
 public:
  explicit CubicForm(JetContext ctx);

  const JetContext& ctx() const { return ctx_; }
  int n() const { return ctx_.n(); }

  const Expr& G(int j1, int j2) const { return g_[at(j1, j2)]; }
  const Expr& H(int k, int j1, int j2) const { return h_[(idx(k) - 1) * n() * n() + at(j1, j2)]; }
  const Expr& L(int k, int j) const { return l_[at(k, j)]; }
  const Expr& M(int k) const { return m_[idx(k) - 1]; }

  void set_G(int j1, int j2, Expr v);
  void set_H(int k, int j1, int j2, Expr v);
  void set_L(int k, int j, Expr v) { l_[at(k, j)] = std::move(v); }
  void set_M(int k, Expr v) { m_[idx(k) - 1] = std::move(v); }

  bool is_zero() const;
  friend bool operator==(const CubicForm& a, const CubicForm& b) {
    return a.g_ == b.g_ && a.h_ == b.h_ && a.l_ == b.l_ && a.m_ == b.m_;
  }

 private:
  int idx(int i) const { return JetContext::check(i, n()); }
  std::size_t at(int i, int j) const { return static_cast<std::size_t>((idx(i) - 1) * n() + idx(j) - 1); }

  JetContext ctx_;
  std::vector<Expr> g_, h_, l_, m_;
};

PdeSystem expand_cubic(const CubicForm& c);

/// Solves the linear system mapping (G, H, L, M) to the jet-monomial
/// coefficients of every F^{j1,j2}. Throws NotCubicForm with a witness.
CubicForm extract_cubic(const PdeSystem& sys);

/// Conditions of a polynomial of degree <= 3 in dy[1..n]:
///   ()           A
///   (k)          B_k
///   (k1,k2)      C_{k1,k2} + C_{k2,k1}, k1 <= k2
///   (k1,k2,k3)   sum over the six orderings of D, k1 <= k2 <= k3
/// Throws DegreeTooHigh.
Residuals coefficient_annihilation(const JetContext& ctx, const Expr& p);

/// Families (I')..(IV') evaluated literally, every index in 1..n.
struct FlatnessResiduals {
  Residuals fam1, fam2, fam3, fam4;
};

FlatnessResiduals flatness_residuals(const CubicForm& c, Execution ex = Execution::parallel);

/// Oracle: coefficient_annihilation of each integrability residual of
/// expand_cubic(c). Keys are (j1, j2, j3) followed by the condition key.
Residuals derived_flatness_residuals(const CubicForm& c, Execution ex = Execution::parallel);

/// S^{alpha sigma}_{beta rho} at the identity fiber, keyed
/// (alpha, sigma, beta, rho).
Residuals chern_tensor_identity(const PdeSystem& sys, Execution ex = Execution::parallel);

struct Flat {};
struct NotCubic {
  std::string witness;
};
struct CubicButNotIntegrable {
  std::string family;
  Index index;
  Expr value;
};
using FlatVerdict = std::variant<Flat, NotCubic, CubicButNotIntegrable>;

FlatVerdict is_flat(const PdeSystem& sys, Execution ex = Execution::parallel);

}  // namespace flatpde
