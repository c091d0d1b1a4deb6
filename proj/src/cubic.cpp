#include "flatpde/cubic.hpp"

#include <algorithm>
#include <functional>

#include "flatpde/sym/linalg.hpp"
#include "flatpde/sym/printer.hpp"

namespace flatpde {

using sym::Monomial;
using sym::Polynomial;
using sym::Scalar;
using sym::VarKind;

CubicForm::CubicForm(JetContext ctx)
    : ctx_(std::move(ctx)),
      g_(static_cast<std::size_t>(n() * n())),
      h_(static_cast<std::size_t>(n() * n() * n())),
      l_(static_cast<std::size_t>(n() * n())),
      m_(static_cast<std::size_t>(n())) {}

void CubicForm::set_G(int j1, int j2, Expr v) {
  g_[at(j2, j1)] = v;
  g_[at(j1, j2)] = std::move(v);
}

void CubicForm::set_H(int k, int j1, int j2, Expr v) {
  const std::size_t base = static_cast<std::size_t>((idx(k) - 1) * n() * n());
  h_[base + at(j2, j1)] = v;
  h_[base + at(j1, j2)] = std::move(v);
}

bool CubicForm::is_zero() const {
  auto zero = [](const std::vector<Expr>& v) {
    return std::all_of(v.begin(), v.end(), [](const Expr& e) { return e.is_zero(); });
  };
  return zero(g_) && zero(h_) && zero(l_) && zero(m_);
}

PdeSystem expand_cubic(const CubicForm& c) {
  const JetContext& ctx = c.ctx();
  const int n = c.n();
  std::vector<std::vector<Expr>> f(n, std::vector<Expr>(n));
  for (int j1 = 1; j1 <= n; ++j1)
    for (int j2 = j1; j2 <= n; ++j2) {
      Expr e = c.G(j1, j2);
      for (int k = 1; k <= n; ++k) {
        Expr inner = c.H(k, j1, j2) + sym::half(ctx.p(j1) * c.L(k, j2)) + sym::half(ctx.p(j2) * c.L(k, j1)) +
                     ctx.p(j1) * ctx.p(j2) * c.M(k);
        e += ctx.p(k) * inner;
      }
      f[j1 - 1][j2 - 1] = e;
      f[j2 - 1][j1 - 1] = std::move(e);
    }
  return PdeSystem(ctx, std::move(f));
}

namespace {

// Sorted jet indices of a monomial in dy[1..n], e.g. dy[1]^2 dy[3] -> (1,1,3).
Index jet_indices(const JetContext& ctx, const Monomial& m) {
  Index out;
  for (int k = 1; k <= ctx.n(); ++k)
    for (unsigned e = 0; e < m[ctx.universe().p(k).index]; ++e) out.push_back(k);
  return out;
}

Monomial jet_monomial(const JetContext& ctx, const Index& ks) {
  Monomial m;
  for (int k : ks) m = m * Monomial::of(ctx.universe().p(k));
  return m;
}

// Nondecreasing tuples over 1..n of length 0..3, in lexicographic order.
std::vector<Index> sorted_keys(int n) {
  std::vector<Index> out{{}};
  for (int a = 1; a <= n; ++a) {
    out.push_back({a});
    for (int b = a; b <= n; ++b) {
      out.push_back({a, b});
      for (int c = b; c <= n; ++c) out.push_back({a, b, c});
    }
  }
  return out;
}

std::string entry_name(int i, int j) { return "F[" + std::to_string(i) + "][" + std::to_string(j) + "]"; }

std::string monomial_name(const JetContext& ctx, const Index& ks) {
  if (ks.empty()) return "1";
  return sym::render(Polynomial::term(jet_monomial(ctx, ks), 1), ctx.universe());
}

struct JetSplit {
  std::map<Index, Expr> coefficients;  // sorted jet indices -> coefficient over (x, y)
};

// Splits e into coefficients of jet monomials. Throws DegreeTooHigh when e is
// not a polynomial of degree <= 3 in the jet variables.
JetSplit split_jets(const JetContext& ctx, const Expr& e, const std::string& where) {
  const sym::VarSet jets = ctx.universe().of_kind(VarKind::jet1);
  if ((e.den().support() & jets).any()) throw DegreeTooHigh(where + ": denominator depends on dy");
  JetSplit out;
  for (auto& [m, coeff] : e.num().coefficients_in(jets)) {
    Index ks = jet_indices(ctx, m);
    if (ks.size() > 3)
      throw DegreeTooHigh(where + ": term in " + monomial_name(ctx, ks) + " has degree " +
                          std::to_string(ks.size()) + " > 3");
    out.coefficients.emplace(ks, Expr::fraction(coeff, e.den()));
  }
  return out;
}

// Number of distinct orderings of a sorted tuple.
int orderings(const Index& ks) {
  Index t = ks;
  int count = 0;
  do ++count;
  while (std::next_permutation(t.begin(), t.end()));
  return count;
}

}  // namespace

CubicForm extract_cubic(const PdeSystem& sys) {
  const JetContext& ctx = sys.ctx();
  const int n = sys.n();

  // Unknowns: G (j1 <= j2), H^k (j1 <= j2), L^k_j, M^k.
  struct Unknown {
    char table;
    int a, b, c;
  };
  std::vector<Unknown> unknowns;
  std::map<std::tuple<char, int, int, int>, std::size_t> column;
  auto add_unknown = [&](char t, int a, int b, int c) {
    column[{t, a, b, c}] = unknowns.size();
    unknowns.push_back({t, a, b, c});
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) add_unknown('G', i, j, 0);
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) add_unknown('H', k, i, j);
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) add_unknown('L', k, j, 0);
  for (int k = 1; k <= n; ++k) add_unknown('M', k, 0, 0);

  // One equation per (entry j1 <= j2, jet monomial of degree <= 3).
  const std::vector<Index> keys = sorted_keys(n);
  sym::Matrix a;
  sym::Vector b;
  std::vector<std::string> row_names;
  for (int j1 = 1; j1 <= n; ++j1)
    for (int j2 = j1; j2 <= n; ++j2) {
      JetSplit split;
      try {
        split = split_jets(ctx, sys.F(j1, j2), entry_name(j1, j2));
      } catch (const DegreeTooHigh& e) {
        throw NotCubicForm(e.what());
      }
      std::map<Index, std::size_t> row_of;
      for (const auto& key : keys) {
        row_of[key] = a.size();
        a.emplace_back(unknowns.size());
        auto it = split.coefficients.find(key);
        b.push_back(it == split.coefficients.end() ? Expr() : it->second);
        row_names.push_back(entry_name(j1, j2) + ": coefficient of " + monomial_name(ctx, key));
      }
      auto contribute = [&](Index ks, std::size_t col, const Expr& w) {
        std::sort(ks.begin(), ks.end());
        a[row_of.at(ks)][col] += w;
      };
      const int lo = std::min(j1, j2), hi = std::max(j1, j2);
      contribute({}, column.at({'G', lo, hi, 0}), 1);
      for (int k = 1; k <= n; ++k) {
        contribute({k}, column.at({'H', k, lo, hi}), 1);
        contribute({k, j1}, column.at({'L', k, j2, 0}), Expr(Scalar(1, 2)));
        contribute({k, j2}, column.at({'L', k, j1, 0}), Expr(Scalar(1, 2)));
        contribute({k, j1, j2}, column.at({'M', k, 0, 0}), 1);
      }
    }

  auto result = sym::solve_linear(a, b);
  if (auto* bad = std::get_if<sym::Inconsistent>(&result))
    throw NotCubicForm(row_names[bad->row] + " is not reachable by the cubic pattern");
  const sym::Vector& x = std::holds_alternative<sym::Solution>(result)
                             ? std::get<sym::Solution>(result).x
                             : std::get<sym::Underdetermined>(result).particular;

  CubicForm c(ctx);
  for (std::size_t i = 0; i < unknowns.size(); ++i) {
    const auto& u = unknowns[i];
    switch (u.table) {
      case 'G': c.set_G(u.a, u.b, x[i]); break;
      case 'H': c.set_H(u.a, u.b, u.c, x[i]); break;
      case 'L': c.set_L(u.a, u.b, x[i]); break;
      default: c.set_M(u.a, x[i]); break;
    }
  }
  return c;
}

Residuals coefficient_annihilation(const JetContext& ctx, const Expr& p) {
  JetSplit split = split_jets(ctx, p, "polynomial");
  Residuals out;
  for (const auto& key : sorted_keys(ctx.n())) {
    auto it = split.coefficients.find(key);
    if (it == split.coefficients.end()) {
      out.emplace(key, Expr());
      continue;
    }
    // The canonical coefficient of a monomial is the sum of the tensor
    // entries over its distinct orderings; the symmetric sum runs over all
    // key.size()! orderings.
    int full = key.size() == 3 ? 6 : key.size() == 2 ? 2 : 1;
    out.emplace(key, it->second * Expr(full / orderings(key)));
  }
  return out;
}

FlatnessResiduals flatness_residuals(const CubicForm& c, Execution ex) {
  const JetContext& ctx = c.ctx();
  const int n = c.n();
  const Expr half(Scalar(1, 2)), quarter(Scalar(1, 4));
  auto dx = [&](const Expr& e, int j) { return ctx.d(e, j); };
  auto dy = [&](const Expr& e) { return ctx.d(e, n + 1); };
  auto sum = [&](auto&& f) {
    Expr s;
    for (int k = 1; k <= n; ++k) s += f(k);
    return s;
  };
  const auto& G = [&](int a, int b) -> const Expr& { return c.G(a, b); };
  const auto& H = [&](int k, int a, int b) -> const Expr& { return c.H(k, a, b); };
  const auto& L = [&](int k, int a) -> const Expr& { return c.L(k, a); };
  const auto& M = [&](int k) -> const Expr& { return c.M(k); };

  FlatnessResiduals out;
  out.fam1 = evaluate_family(all_tuples(3, n), ex, [&](const Index& t) {
    const int j1 = t[0], j2 = t[1], j3 = t[2];
    return dx(G(j1, j2), j3) - dx(G(j1, j3), j2) + sum([&](int k1) { return H(k1, j1, j2) * G(k1, j3); }) -
           sum([&](int k1) { return H(k1, j1, j3) * G(k1, j2); });
  });

  out.fam2 = evaluate_family(all_tuples(4, n), ex, [&](const Index& t) {
    const int j1 = t[0], j2 = t[1], j3 = t[2], k1 = t[3];
    Expr r = delta(j3, k1) * dy(G(j1, j2)) - delta(j2, k1) * dy(G(j1, j3)) + dx(H(k1, j1, j2), j3) -
             dx(H(k1, j1, j3), j2);
    r += half * G(j1, j3) * L(k1, j2) - half * G(j1, j2) * L(k1, j3);
    if (j1 == k1) {
      r += half * sum([&](int k2) { return G(k2, j3) * L(k2, j2); });
      r -= half * sum([&](int k2) { return G(k2, j2) * L(k2, j3); });
    }
    if (j2 == k1) r += half * sum([&](int k2) { return G(k2, j3) * L(k2, j1); });
    if (j3 == k1) r -= half * sum([&](int k2) { return G(k2, j2) * L(k2, j1); });
    r += sum([&](int k2) { return H(k1, k2, j3) * H(k2, j1, j2); });
    r -= sum([&](int k2) { return H(k1, k2, j2) * H(k2, j1, j3); });
    return r;
  });

  // The garbled superscript of the first term is read as k_{sigma(2)}.
  out.fam3 = evaluate_family(all_tuples(5, n), ex, [&](const Index& t) {
    const int j1 = t[0], j2 = t[1], j3 = t[2];
    Expr total;
    for (int s = 0; s < 2; ++s) {
      const int a = s == 0 ? t[3] : t[4];
      const int b = s == 0 ? t[4] : t[3];
      Expr r = delta(j3, b) * dy(H(a, j1, j2)) - delta(j2, b) * dy(H(a, j1, j3));
      r += half * delta(j2, b) * dx(L(a, j1), j3) - half * delta(j3, b) * dx(L(a, j1), j2);
      r += half * delta(j1, b) * dx(L(a, j2), j3) - half * delta(j1, b) * dx(L(a, j3), j2);
      r += delta(j2, b) * G(j1, j3) * M(a) - delta(j3, b) * G(j1, j2) * M(a);
      if (j1 == a && j2 == b) r += sum([&](int k3) { return G(k3, j3) * M(k3); });
      if (j1 == a && j3 == b) r -= sum([&](int k3) { return G(k3, j2) * M(k3); });
      if (j1 == a) {
        r += half * sum([&](int k3) { return H(b, k3, j3) * L(k3, j2); });
        r -= half * sum([&](int k3) { return H(b, k3, j2) * L(k3, j3); });
      }
      if (j2 == a) r += half * sum([&](int k3) { return H(b, k3, j3) * L(k3, j1); });
      if (j3 == a) r -= half * sum([&](int k3) { return H(b, k3, j2) * L(k3, j1); });
      if (j3 == a) r += half * sum([&](int k3) { return H(k3, j1, j2) * L(b, k3); });
      if (j2 == a) r -= half * sum([&](int k3) { return H(k3, j1, j3) * L(b, k3); });
      total += r;
    }
    return total;
  });

  out.fam4 = evaluate_family(all_tuples(6, n), ex, [&](const Index& t) {
    const int j1 = t[0], j2 = t[1], j3 = t[2];
    Index perm{0, 1, 2};
    Expr total;
    do {
      const int a = t[3 + perm[0]], b = t[3 + perm[1]], c3 = t[3 + perm[2]];
      if (c3 == j3 && b == j1) total += half * dy(L(a, j2));
      if (c3 == j2 && b == j1) total -= half * dy(L(a, j3));
      if (c3 == j2 && b == j1) total += dx(M(a), j3);
      if (c3 == j3 && b == j1) total -= dx(M(a), j2);
      if (c3 == j2 && a == j1) total += sum([&](int k4) { return H(b, k4, j3) * M(k4); });
      if (c3 == j3 && a == j1) total -= sum([&](int k4) { return H(b, k4, j2) * M(k4); });
      if (a == j1 && c3 == j3) total += quarter * sum([&](int k4) { return L(b, k4) * L(k4, j2); });
      if (a == j1 && c3 == j2) total -= quarter * sum([&](int k4) { return L(b, k4) * L(k4, j3); });
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
  });
  return out;
}

Residuals derived_flatness_residuals(const CubicForm& c, Execution ex) {
  const JetContext& ctx = c.ctx();
  IntegrabilityResiduals ir = integrability_residuals(expand_cubic(c), ex);
  std::vector<Index> triples;
  for (const auto& [k, v] : ir.residuals) triples.push_back(k);
  std::vector<Residuals> parts(triples.size());
  parallel_for(triples.size(), ex,
               [&](std::size_t i) { parts[i] = coefficient_annihilation(ctx, ir.residuals.at(triples[i])); });
  Residuals out;
  for (std::size_t i = 0; i < triples.size(); ++i)
    for (auto& [key, v] : parts[i]) {
      Index full = triples[i];
      full.insert(full.end(), key.begin(), key.end());
      out.emplace(std::move(full), std::move(v));
    }
  return out;
}

Residuals chern_tensor_identity(const PdeSystem& sys, Execution ex) {
  const JetContext& ctx = sys.ctx();
  const auto& u = ctx.universe();
  const int n = sys.n();
  // dd[i][j][a][b] = F^{ij}_{dy[a] dy[b]}
  auto slot = [n](int i, int j, int a, int b) {
    return static_cast<std::size_t>((((i - 1) * n + (j - 1)) * n + (a - 1)) * n + (b - 1));
  };
  std::vector<Expr> dd(static_cast<std::size_t>(n * n * n * n));
  std::vector<Index> entries;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) entries.push_back({i, j, a, b});
  parallel_for(entries.size(), ex, [&](std::size_t e) {
    const auto& t = entries[e];
    dd[slot(t[0], t[1], t[2], t[3])] =
        sym::differentiate(sym::differentiate(sys.F(t[0], t[1]), u.p(t[2])), u.p(t[3]));
  });
  for (const auto& t : entries) {
    const Expr& v = dd[slot(t[0], t[1], t[2], t[3])];
    dd[slot(t[1], t[0], t[2], t[3])] = v;
    dd[slot(t[0], t[1], t[3], t[2])] = v;
    dd[slot(t[1], t[0], t[3], t[2])] = v;
  }
  // trace[b][a] = sum_g F^{g b}_{dy[g] dy[a]}
  std::vector<Expr> trace(static_cast<std::size_t>(n * n));
  Expr total;
  for (int b = 1; b <= n; ++b)
    for (int a = 1; a <= n; ++a) {
      Expr s;
      for (int g = 1; g <= n; ++g) s += dd[slot(g, b, g, a)];
      trace[(b - 1) * n + (a - 1)] = s;
    }
  for (int g = 1; g <= n; ++g)
    for (int d = 1; d <= n; ++d) total += dd[slot(g, d, g, d)];
  const Expr inv_n2(Scalar(1, n + 2));
  const Expr total_term = total * Expr(Scalar(1, (n + 1) * (n + 2)));
  auto tr = [&](int b, int a) -> const Expr& { return trace[(b - 1) * n + (a - 1)]; };

  return evaluate_family(all_tuples(4, n), ex, [&](const Index& t) {
    const int al = t[0], si = t[1], be = t[2], rh = t[3];
    Expr bracket = delta(si, rh) * tr(be, al) + delta(al, rh) * tr(be, si) + delta(si, be) * tr(rh, al) +
                   delta(al, be) * tr(rh, si);
    Expr s = inv_n2 * bracket - (delta(si, rh) * delta(al, be) + delta(al, rh) * delta(si, be)) * total_term -
             dd[slot(be, rh, al, si)];
    return s;
  });
}

FlatVerdict is_flat(const PdeSystem& sys, Execution ex) {
  CubicForm c(sys.ctx());
  try {
    c = extract_cubic(sys);
  } catch (const NotCubicForm& e) {
    return NotCubic{e.witness()};
  }
  FlatnessResiduals r = flatness_residuals(c, ex);
  const std::pair<const char*, const Residuals*> families[] = {
      {"I'", &r.fam1}, {"II'", &r.fam2}, {"III'", &r.fam3}, {"IV'", &r.fam4}};
  for (const auto& [name, fam] : families)
    if (auto hit = first_nonzero(*fam)) return CubicButNotIntegrable{name, hit->first, hit->second};
  return Flat{};
}

}  // namespace flatpde
