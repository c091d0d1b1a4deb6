#include "flatpde/auxiliary.hpp"

#include <stdexcept>

namespace flatpde {

using sym::Scalar;

namespace {

// Shorthand over a cubic form and Theta values; every index is 1-based and
// n+1 stands for y.
struct Sym {
  const CubicForm& c;
  const ThetaFields& th;
  const JetContext& ctx;
  int n;
  Expr half{Scalar(1, 2)}, quarter{Scalar(1, 4)}, third{Scalar(1, 3)}, two_thirds{Scalar(2, 3)},
      four_thirds{Scalar(4, 3)};

  Sym(const CubicForm& c, const ThetaFields& th) : c(c), th(th), ctx(c.ctx()), n(c.n()) {}

  const Expr& G(int a, int b) const { return c.G(a, b); }
  const Expr& H(int k, int a, int b) const { return c.H(k, a, b); }
  const Expr& L(int k, int a) const { return c.L(k, a); }
  const Expr& M(int k) const { return c.M(k); }
  const Expr& T(int a) const { return th.at(a); }
  int N() const { return n + 1; }
  Expr d(const Expr& e, int b) const { return ctx.d(e, b); }
  Expr dy(const Expr& e) const { return ctx.d(e, n + 1); }
  template <class F>
  Expr sum(F&& f) const {
    Expr s;
    for (int l = 1; l <= n; ++l) s += f(l);
    return s;
  }
};

}  // namespace

ThetaFields ThetaFields::from_squares(const SquareTable& s) {
  ThetaFields th;
  for (int a = 1; a <= s.n() + 1; ++a) th.theta.push_back(s.at(a, a, a));
  return th;
}

ThetaFields ThetaFields::symbolic(const JetContext& ctx) {
  ThetaFields th;
  for (int a = 1; a <= ctx.n() + 1; ++a) th.theta.push_back(ctx.theta(a));
  return th;
}

PiTable pi_from_squares(const SquareTable& s) { return s; }

Residuals cross_diff_residuals(const JetContext& ctx, const PiTable& p, Execution ex) {
  const int m = ctx.n() + 1;
  std::vector<Index> keys;
  for (const Index& t : all_tuples(4, m))
    if (t[1] < t[2]) keys.push_back(t);
  return evaluate_family(keys, ex, [&](const Index& t) {
    const int j1 = t[0], j2 = t[1], j3 = t[2], k1 = t[3];
    Expr r = ctx.d(p.at(k1, j1, j2), j3) - ctx.d(p.at(k1, j1, j3), j2);
    for (int k2 = 1; k2 <= m; ++k2) r += p.at(k2, j1, j2) * p.at(k1, j3, k2) - p.at(k2, j1, j3) * p.at(k1, j2, k2);
    return r;
  });
}

namespace {

// (Pi^k_{a,b})_{x^c} - (Pi^k_{a,c})_{x^b} = -sum ... as left minus right, with
// the k2 = n+1 products written out.
Expr split_relation(const JetContext& ctx, const PiTable& p, int a, int b, int c, int k) {
  const int n = ctx.n(), N = n + 1;
  Expr lhs = ctx.d(p.at(k, a, b), c) - ctx.d(p.at(k, a, c), b);
  Expr rhs;
  for (int k2 = 1; k2 <= n; ++k2) rhs += p.at(k2, a, c) * p.at(k, b, k2) - p.at(k2, a, b) * p.at(k, c, k2);
  rhs += p.at(N, a, c) * p.at(k, b, N) - p.at(N, a, b) * p.at(k, c, N);
  return lhs - rhs;
}

}  // namespace

SplitFamilies split_families(const JetContext& ctx, const PiTable& p, Execution ex) {
  const int n = ctx.n(), N = n + 1;
  SplitFamilies out;
  out.f1 = evaluate_family(all_tuples(3, n), ex,
                           [&](const Index& t) { return split_relation(ctx, p, t[0], t[1], t[2], N); });
  out.f2 = evaluate_family(all_tuples(2, n), ex,
                           [&](const Index& t) { return split_relation(ctx, p, t[0], t[1], N, N); });
  out.f3 = evaluate_family(all_tuples(1, n), ex, [&](const Index& t) {
    const int j1 = t[0];
    // The two marked products of the third family.
    Expr a = p.at(N, j1, N) * p.at(N, N, N);
    Expr b = p.at(N, N, N) * p.at(N, j1, N);
    if (a != b) throw std::logic_error("marked products of the third family do not cancel");
    Expr lhs = ctx.d(p.at(N, j1, N), N) - ctx.d(p.at(N, N, N), j1);
    Expr rhs;
    for (int k2 = 1; k2 <= n; ++k2) rhs += p.at(k2, N, N) * p.at(N, j1, k2) - p.at(k2, j1, N) * p.at(N, N, k2);
    return lhs - rhs;
  });
  out.f4 = evaluate_family(all_tuples(4, n), ex,
                           [&](const Index& t) { return split_relation(ctx, p, t[0], t[1], t[2], t[3]); });
  out.f5 = evaluate_family(all_tuples(3, n), ex,
                           [&](const Index& t) { return split_relation(ctx, p, t[0], t[1], N, t[2]); });
  out.f6 = evaluate_family(all_tuples(2, n), ex,
                           [&](const Index& t) { return split_relation(ctx, p, N, t[0], N, t[1]); });
  return out;
}

PiTable quasi_invert(const CubicForm& c, const ThetaFields& th) {
  const Sym s(c, th);
  const int n = s.n, N = n + 1;
  const Expr& h = s.half;
  Residuals e;
  for (const Index& key : square_keys(n)) {
    const int k = key[0], j1 = key[1], j2 = key[2];
    Expr v;
    if (k <= n && j2 <= n)
      v = s.H(k, j1, j2) - h * delta(k, j1) * s.H(j2, j2, j2) - h * delta(k, j2) * s.H(j1, j1, j1) +
          h * delta(k, j1) * s.T(j2) + h * delta(k, j2) * s.T(j1);
    else if (k <= n && j1 <= n)
      v = h * s.L(k, j1) + h * delta(k, j1) * s.T(N);
    else if (k <= n)
      v = s.M(k);
    else if (j2 <= n)
      v = -s.G(j1, j2);
    else if (j1 <= n)
      v = -h * s.H(j1, j1, j1) + h * s.T(j1);
    else
      v = s.T(N);
    e.emplace(key, std::move(v));
  }
  return PiTable(n, std::move(e));
}

Expr ThetaGradient::x(int j1, int j2) const {
  const Sym s(c_, th_);
  const Expr& h = s.half;
  const int N = s.N();
  Expr r = -2 * s.dy(s.G(j1, j2)) + s.d(s.H(j1, j1, j1), j2);
  r += s.sum([&](int l) { return s.G(j2, l) * s.L(l, j1); });
  r += h * s.H(j1, j1, j1) * s.H(j2, j2, j2);
  r -= s.sum([&](int l) { return s.H(l, j1, j2) * s.H(l, l, l); });
  r -= s.G(j1, j2) * s.T(N);
  r -= h * s.H(j1, j1, j1) * s.T(j2) + h * s.H(j2, j2, j2) * s.T(j1);
  r += s.sum([&](int l) { return s.H(l, j1, j2) * s.T(l); });
  r += h * s.T(j1) * s.T(j2);
  return r;
}

Expr ThetaGradient::y(int j1) const {
  const Sym s(c_, th_);
  const int N = s.N();
  Expr r = -s.third * s.dy(s.H(j1, j1, j1)) + s.two_thirds * s.d(s.L(j1, j1), j1);
  r += s.four_thirds * s.G(j1, j1) * s.M(j1);
  r += s.two_thirds * s.sum([&](int l) { return s.G(j1, l) * s.M(l); });
  r -= s.half * s.sum([&](int l) { return s.H(l, l, l) * s.L(l, j1); });
  r += s.two_thirds * s.sum([&](int l) { return s.H(j1, j1, l) * s.L(l, j1); });
  r -= s.two_thirds * s.sum([&](int l) { return s.H(l, j1, j1) * s.L(j1, l); });
  r -= s.half * s.H(j1, j1, j1) * s.T(N);
  r += s.half * s.sum([&](int l) { return s.L(l, j1) * s.T(l); });
  r += s.half * s.T(j1) * s.T(N);
  return r;
}

Expr ThetaGradient::top_x(int j1) const {
  const Sym s(c_, th_);
  const int N = s.N();
  Expr r = -s.two_thirds * s.dy(s.H(j1, j1, j1)) + s.third * s.d(s.L(j1, j1), j1);
  r += s.two_thirds * s.G(j1, j1) * s.M(j1);
  r += s.four_thirds * s.sum([&](int l) { return s.G(j1, l) * s.M(l); });
  r -= s.half * s.sum([&](int l) { return s.H(l, l, l) * s.L(l, j1); });
  r += s.third * s.sum([&](int l) { return s.H(j1, j1, l) * s.L(l, j1); });
  r -= s.third * s.sum([&](int l) { return s.H(l, j1, j1) * s.L(j1, l); });
  r -= s.half * s.H(j1, j1, j1) * s.T(N);
  r += s.half * s.sum([&](int l) { return s.L(l, j1) * s.T(l); });
  r += s.half * s.T(j1) * s.T(N);
  return r;
}

Expr ThetaGradient::top_y(int j1) const {
  const Sym s(c_, th_);
  const int N = s.N();
  Expr r = -s.dy(s.L(j1, j1)) + 2 * s.d(s.M(j1), j1);
  r += 2 * s.sum([&](int l) { return s.H(j1, j1, l) * s.M(l); });
  r -= s.sum([&](int l) { return s.H(l, l, l) * s.M(l); });
  r -= s.half * s.sum([&](int l) { return s.L(l, j1) * s.L(j1, l); });
  r += s.sum([&](int l) { return s.M(l) * s.T(l); });
  r += s.half * s.T(N) * s.T(N);
  return r;
}

Expr ThetaGradient::at(int a, int b) const {
  const int N = c_.n() + 1;
  if (a < N) return b < N ? x(a, b) : y(a);
  return b < N ? top_x(b) : top_y(1);
}

SixFamilyResiduals six_family_residuals(const CubicForm& c, const ThetaFields& th, Execution ex) {
  const Sym s(c, th);
  const int n = s.n, N = n + 1;
  const Expr &h = s.half, &q = s.quarter;
  const ThetaGradient grad(c, th);
  auto tx = [&](int a, int b) { return s.d(s.T(a), b); };
  SixFamilyResiduals out;

  out.fam1 = evaluate_family(all_tuples(3, n), ex, [&](const Index& t) {
    const int j1 = t[0], j2 = t[1], j3 = t[2];
    return s.d(s.G(j1, j2), j3) - s.d(s.G(j1, j3), j2) + s.sum([&](int k) { return s.G(j3, k) * s.H(k, j1, j2); }) -
           s.sum([&](int k) { return s.G(j2, k) * s.H(k, j1, j3); });
  });

  out.fam2 = evaluate_family(all_tuples(2, n), ex,
                            [&](const Index& t) { return tx(t[0], t[1]) - grad.x(t[0], t[1]); });

  out.fam3 = evaluate_family(all_tuples(1, n), ex, [&](const Index& t) {
    const int j1 = t[0];
    Expr lhs = -tx(N, j1) + h * tx(j1, N);
    Expr rhs = h * s.dy(s.H(j1, j1, j1)) - s.sum([&](int k) { return s.G(j1, k) * s.M(k); }) +
               q * s.sum([&](int k) { return s.H(k, k, k) * s.L(k, j1); }) + q * s.H(j1, j1, j1) * s.T(N) -
               q * s.sum([&](int k) { return s.L(k, j1) * s.T(k); }) - q * s.T(j1) * s.T(N);
    return lhs - rhs;
  });

  out.fam4 = evaluate_family(all_tuples(4, n), ex, [&](const Index& t) {
    const int j1 = t[0], j2 = t[1], j3 = t[2], k1 = t[3];
    const int a1 = delta(k1, j1), a2 = delta(k1, j2), a3 = delta(k1, j3);
    Expr lhs = h * a1 * tx(j2, j3) - h * a1 * tx(j3, j2) + h * a2 * tx(j1, j3) - h * a3 * tx(j1, j2);
    Expr rhs = -s.d(s.H(k1, j1, j2), j3) + s.d(s.H(k1, j1, j3), j2) - h * a1 * s.d(s.H(j3, j3, j3), j2) +
               h * a1 * s.d(s.H(j2, j2, j2), j3) - h * a3 * s.d(s.H(j1, j1, j1), j2) +
               h * a2 * s.d(s.H(j1, j1, j1), j3);
    // Sign of this G L pair fixed by substituting quasi_invert into split_families.
    rhs += h * s.G(j1, j2) * s.L(k1, j3) - h * s.G(j1, j3) * s.L(k1, j2) -
           q * a3 * s.H(j1, j1, j1) * s.H(j2, j2, j2) + q * a2 * s.H(j1, j1, j1) * s.H(j3, j3, j3);
    rhs += -s.sum([&](int k2) { return s.H(k2, j1, j2) * s.H(k1, j3, k2); }) +
           s.sum([&](int k2) { return s.H(k2, j1, j3) * s.H(k1, j2, k2); }) -
           h * a2 * s.sum([&](int k2) { return s.H(k2, j1, j3) * s.H(k2, k2, k2); }) +
           h * a3 * s.sum([&](int k2) { return s.H(k2, j1, j2) * s.H(k2, k2, k2); });
    rhs += -h * a2 * s.G(j1, j3) * s.T(N) + h * a3 * s.G(j1, j2) * s.T(N);
    rhs += -q * a2 * s.H(j1, j1, j1) * s.T(j3) + q * a3 * s.H(j1, j1, j1) * s.T(j2) -
           q * a2 * s.H(j3, j3, j3) * s.T(j1) + q * a3 * s.H(j2, j2, j2) * s.T(j1);
    rhs += -h * a3 * s.sum([&](int k2) { return s.H(k2, j1, j2) * s.T(k2); }) +
           h * a2 * s.sum([&](int k2) { return s.H(k2, j1, j3) * s.T(k2); });
    rhs += -q * a3 * s.T(j1) * s.T(j2) + q * a2 * s.T(j1) * s.T(j3);
    return lhs - rhs;
  });

  out.fam5 = evaluate_family(all_tuples(3, n), ex, [&](const Index& t) {
    const int j1 = t[0], j2 = t[1], k1 = t[2];
    const int a1 = delta(k1, j1), a2 = delta(k1, j2);
    Expr lhs = h * a1 * tx(j2, N) + h * a2 * tx(j1, N) - h * a1 * tx(N, j2);
    // First-order terms, recovered from split_families.
    Expr rhs = -s.dy(s.H(k1, j1, j2)) + h * a1 * s.dy(s.H(j2, j2, j2)) + h * a2 * s.dy(s.H(j1, j1, j1)) +
               h * s.d(s.L(k1, j1), j2);
    // H^{k1}_{j2,k2} L^{k2}_{j1}; a j1 in the H slot does not match split_families.
    rhs += s.G(j1, j2) * s.M(k1) + h * s.sum([&](int k2) { return s.H(k1, j2, k2) * s.L(k2, j1); }) -
               h * s.sum([&](int k2) { return s.H(k2, j1, j2) * s.L(k1, k2); }) -
               q * a2 * s.sum([&](int k2) { return s.H(k2, k2, k2) * s.L(k2, j1); });
    rhs += -q * a2 * s.H(j1, j1, j1) * s.T(N) + q * a2 * s.sum([&](int k2) { return s.L(k2, j1) * s.T(k2); }) +
           q * a2 * s.T(j1) * s.T(N);
    return lhs - rhs;
  });

  out.fam6 = evaluate_family(all_tuples(2, n), ex, [&](const Index& t) {
    const int j1 = t[0], k1 = t[1];
    const int a1 = delta(k1, j1);
    Expr lhs = a1 * tx(N, N);
    Expr rhs = -s.dy(s.L(k1, j1)) + 2 * s.d(s.M(k1), j1) +
               2 * s.sum([&](int k2) { return s.H(k1, j1, k2) * s.M(k2); }) -
               a1 * s.sum([&](int k2) { return s.H(k2, k2, k2) * s.M(k2); }) -
               h * s.sum([&](int k2) { return s.L(k2, j1) * s.L(k1, k2); }) +
               a1 * s.sum([&](int k2) { return s.M(k2) * s.T(k2); }) + h * a1 * s.T(N) * s.T(N);
    return lhs - rhs;
  });
  return out;
}

ThetaSystemResiduals theta_system_residuals(const CubicForm& c, const ThetaFields& th, Execution ex) {
  const JetContext& ctx = c.ctx();
  const int n = c.n(), N = n + 1;
  const ThetaGradient grad(c, th);
  ThetaSystemResiduals out;
  out.x = evaluate_family(all_tuples(2, n), ex, [&](const Index& t) {
    return ctx.d(th.at(t[0]), t[1]) - grad.x(t[0], t[1]);
  });
  out.y = evaluate_family(all_tuples(1, n), ex,
                            [&](const Index& t) { return ctx.d(th.at(t[0]), N) - grad.y(t[0]); });
  out.top_x = evaluate_family(all_tuples(1, n), ex,
                            [&](const Index& t) { return ctx.d(th.at(N), t[0]) - grad.top_x(t[0]); });
  out.top_y = evaluate_family(all_tuples(1, n), ex,
                            [&](const Index& t) { return ctx.d(th.at(N), N) - grad.top_y(t[0]); });
  return out;
}

namespace {

Expr compat_family1_expanded(const Sym& s, int j1, int j2, int j3) {
  const Expr &h = s.half, &t3 = s.third, &t23 = s.two_thirds, &t43 = s.four_thirds;
  auto sum = [&](auto&& f) { return s.sum(f); };
  auto sum2 = [&](auto&& f) {
    Expr r;
    for (int l = 1; l <= s.n; ++l)
      for (int p = 1; p <= s.n; ++p) r += f(l, p);
    return r;
  };
  const auto& G = [&](int a, int b) -> const Expr& { return s.G(a, b); };
  const auto& H = [&](int k, int a, int b) -> const Expr& { return s.H(k, a, b); };
  const auto& L = [&](int k, int a) -> const Expr& { return s.L(k, a); };
  const auto& M = [&](int k) -> const Expr& { return s.M(k); };
  auto d = [&](const Expr& e, int b) { return s.d(e, b); };
  auto dy = [&](const Expr& e) { return s.dy(e); };

  Expr r = -2 * dy(d(G(j1, j2), j3)) + 2 * dy(d(G(j1, j3), j2));
  r += -sum([&](int l) { return d(G(j3, l), j2) * L(l, j1); }) + sum([&](int l) { return d(G(j2, l), j3) * L(l, j1); }) -
       dy(G(j1, j2)) * H(j3, j3, j3) + dy(G(j1, j3)) * H(j2, j2, j2);
  r += -2 * sum([&](int l) { return dy(G(l, j3)) * H(l, j1, j2); }) +
       2 * sum([&](int l) { return dy(G(l, j2)) * H(l, j1, j3); }) -
       sum([&](int l) { return d(H(l, j1, j2), j3) * H(l, l, l); }) +
       sum([&](int l) { return d(H(l, j1, j3), j2) * H(l, l, l); });
  // Weight 1/3 on the L G pair, as cross-differentiation gives.
  r += -t23 * dy(H(j2, j2, j2)) * G(j1, j3) + t23 * dy(H(j3, j3, j3)) * G(j1, j2) -
       t3 * d(L(j3, j3), j3) * G(j1, j2) + t3 * d(L(j2, j2), j2) * G(j1, j3);
  r += -sum([&](int l) { return d(L(l, j1), j2) * G(j3, l); }) + sum([&](int l) { return d(L(l, j1), j3) * G(j2, l); });
  r += -t23 * G(j1, j2) * G(j3, j3) * M(j3) + t23 * G(j1, j3) * G(j2, j2) * M(j2) -
       t43 * sum([&](int l) { return G(j1, j2) * G(j3, l) * M(l); }) +
       t43 * sum([&](int l) { return G(j1, j3) * G(j2, l) * M(l); });
  r += -h * sum([&](int l) { return G(j3, l) * H(j1, j1, j1) * L(l, j2); }) +
       h * sum([&](int l) { return G(j2, l) * H(j1, j1, j1) * L(l, j3); });
  r += -h * sum([&](int l) { return G(j3, l) * H(j2, j2, j2) * L(l, j1); }) +
       h * sum([&](int l) { return G(j2, l) * H(j3, j3, j3) * L(l, j1); }) -
       h * sum([&](int l) { return G(j1, j3) * H(l, l, l) * L(l, j2); }) +
       h * sum([&](int l) { return G(j1, j2) * H(l, l, l) * L(l, j3); });
  r += -t3 * sum([&](int l) { return G(j1, j2) * H(j3, j3, l) * L(l, j3); }) +
       t3 * sum([&](int l) { return G(j1, j3) * H(j2, j2, l) * L(l, j2); });
  r += -t3 * sum([&](int l) { return G(j1, j3) * H(l, j2, j2) * L(j2, l); }) +
       t3 * sum([&](int l) { return G(j1, j2) * H(l, j3, j3) * L(j3, l); });
  r += -sum2([&](int l, int p) { return G(j2, p) * H(l, j1, j3) * L(p, l); }) +
       sum2([&](int l, int p) { return G(j3, p) * H(l, j1, j2) * L(p, l); });
  r += -sum2([&](int l, int p) { return H(l, j1, j2) * H(p, l, j3) * H(p, p, p); }) +
       sum2([&](int l, int p) { return H(l, j1, j3) * H(p, l, j2) * H(p, p, p); });
  return r;
}

}  // namespace

CompatResiduals compat_residuals(const CubicForm& c, Execution ex) {
  const JetContext& ctx = c.ctx();
  const int n = c.n(), N = n + 1;
  const ThetaFields th = ThetaFields::symbolic(ctx);
  const ThetaGradient grad(c, th);
  const Sym s(c, th);

  // Gradient table, then D_b e = d_b e + sum_a (de/dTheta^a) grad(a, b).
  std::vector<std::vector<Expr>> g(N, std::vector<Expr>(N));
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) g[a - 1][b - 1] = grad.at(a, b);
  auto D = [&](const Expr& e, int b) {
    Expr r = ctx.d(e, b);
    for (int a = 1; a <= N; ++a) {
      Expr da = sym::differentiate(e, ctx.universe().theta(a));
      if (!da.is_zero()) r += da * g[a - 1][b - 1];
    }
    return r;
  };
  auto cross = [&](int a, int b, int c2) { return D(g[a - 1][b - 1], c2) - D(g[a - 1][c2 - 1], b); };

  CompatResiduals out;
  out.f1 = evaluate_family(all_tuples(3, n), ex,
                           [&](const Index& t) { return compat_family1_expanded(s, t[0], t[1], t[2]); });
  out.f1_derived = evaluate_family(all_tuples(3, n), ex, [&](const Index& t) { return cross(t[0], t[1], t[2]); });
  out.f2 = evaluate_family(all_tuples(2, n), ex, [&](const Index& t) { return cross(t[0], t[1], N); });
  out.f3 = evaluate_family(all_tuples(2, n), ex, [&](const Index& t) { return cross(N, t[0], t[1]); });
  out.f4 = evaluate_family(all_tuples(1, n), ex, [&](const Index& t) { return cross(N, t[0], N); });

  // The Theta coefficients are combinations of (I')..(IV'), so they only
  // have to cancel when c satisfies them.
  const FlatnessResiduals fr = flatness_residuals(c, ex);
  if (all_zero(fr.fam1) && all_zero(fr.fam2) && all_zero(fr.fam3) && all_zero(fr.fam4)) {
    const sym::VarSet thetas = ctx.universe().of_kind(sym::VarKind::theta);
    const std::pair<const char*, const Residuals*> families[] = {
        {"1", &out.f1_derived}, {"2", &out.f2}, {"3", &out.f3}, {"4", &out.f4}};
    for (const auto& [name, fam] : families)
      for (const auto& [key, v] : *fam)
        if ((v.support() & thetas).any())
          throw ThetaNotEliminated(std::string("compatibility family ") + name + " keeps a Theta symbol");
  }
  return out;
}

}  // namespace flatpde
