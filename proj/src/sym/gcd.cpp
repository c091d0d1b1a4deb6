// Multivariate gcd over Z.
//
// Pipeline: integer and monomial content, variable-support splitting,
// modular degree bounds (which prove coprimality in the common case and
// prune variables otherwise), cheap divisibility tests, the heuristic
// gcd of Char, Geddes and Gonnet, and finally a primitive PRS.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "flatpde/sym/polynomial.hpp"

namespace flatpde::sym {

namespace {

Polynomial positive(Polynomial p) {
  if (!p.is_zero() && p.leading_coeff() < 0) return -p;
  return p;
}

Integer igcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Var var_at(std::size_t i) { return Var{static_cast<std::uint16_t>(i)}; }

// ---------------------------------------------------------------------------
// Modular images.

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

using UPoly = std::vector<std::uint64_t>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly image(const Polynomial& a, Var x, const std::array<std::uint64_t, kMaxVars>& point) {
  UPoly r(a.degree_in(x) + 1, 0);
  for (const auto& t : a.terms()) {
    std::uint64_t c = mpz_fdiv_ui(t.coeff.get_mpz_t(), kPrime);
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      unsigned e = t.mono[v];
      if (e != 0 && v != x.index) c = mulmod(c, powmod(point[v], e));
    }
    auto& slot = r[t.mono[x.index]];
    slot = addmod(slot, c);
  }
  trim(r);
  return r;
}

std::size_t gcd_degree(UPoly a, UPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    std::uint64_t inv = invmod(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      std::uint64_t f = mulmod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = submod(a[shift + k], mulmod(f, b[k]));
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Upper bounds on deg_x gcd(a, b) for every variable x in the common support.
std::array<unsigned, kMaxVars> degree_bounds(const Polynomial& a, const Polynomial& b, const VarSet& vars) {
  std::array<unsigned, kMaxVars> bound{};
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    if (!vars.test(v)) continue;
    Var x = var_at(v);
    unsigned da = a.degree_in(x), db = b.degree_in(x);
    bound[v] = std::min(da, db);
    std::uint64_t seed = 0x5eed0000ull + v;
    for (int attempt = 0; attempt < 3 && bound[v] > 0; ++attempt) {
      std::array<std::uint64_t, kMaxVars> point{};
      for (auto& p : point) p = splitmix(seed) % kPrime;
      UPoly ia = image(a, x, point), ib = image(b, x, point);
      if (ia.size() != da + 1 && ib.size() != db + 1) continue;
      bound[v] = std::min<unsigned>(bound[v], static_cast<unsigned>(gcd_degree(ia, ib)));
      break;
    }
  }
  return bound;
}

// ---------------------------------------------------------------------------
// Heuristic gcd.

struct HeuGcd {
  Polynomial h, cff, cfg;
};

Integer isqrt(const Integer& a) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

Polynomial interpolate(Polynomial h, const Integer& xi, Var x) {
  Integer half = xi / 2;
  std::vector<Term> out;
  unsigned i = 0;
  while (!h.is_zero()) {
    std::vector<Term> low;
    for (const auto& t : h.terms()) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) low.push_back({t.mono, r});
    }
    Polynomial g = Polynomial::from_terms(low);
    for (const auto& t : g.terms()) out.push_back({t.mono * Monomial::of(x, i), t.coeff});
    h = (h - g).divided_by(xi);
    ++i;
  }
  Polynomial r = Polynomial::from_terms(std::move(out));
  return r;
}

std::optional<HeuGcd> heu_gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_constant() || g.is_constant()) {
    Integer h = igcd(f.content(), g.content());
    return HeuGcd{Polynomial(h), f.divided_by(h), g.divided_by(h)};
  }
  VarSet vars = f.support() | g.support();
  std::size_t last = 0;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if (vars.test(v)) last = v;
  Var x = var_at(last);

  Integer common = igcd(f.content(), g.content());
  Polynomial ff = f.divided_by(common), gg = g.divided_by(common);
  Integer fn = ff.max_norm(), gn = gg.max_norm();
  Integer b = 2 * std::min(fn, gn) + 29;
  Integer lf = abs(ff.leading_coeff()), lg = abs(gg.leading_coeff());
  Integer xi = std::max(std::min(b, Integer(99 * isqrt(b))), Integer(2 * std::min(Integer(fn / lf), Integer(gn / lg)) + 4));
  unsigned dmax = std::max(ff.degree_in(x), gg.degree_in(x));

  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (dmax + 1) > (1u << 22)) return std::nullopt;
    Polynomial fe = ff.evaluate(x, xi), ge = gg.evaluate(x, xi);
    if (!fe.is_zero() && !ge.is_zero()) {
      if (auto sub = heu_gcd(fe, ge)) {
        Polynomial h = interpolate(sub->h, xi, x);
        Integer hc = h.content();
        if (hc != 0) h = h.divided_by(hc);
        if (!h.is_zero()) {
          if (auto cf = ff.divide_exact(h))
            if (auto cg = gg.divide_exact(h)) return HeuGcd{h.scaled(common), *cf, *cg};
        }
        Polynomial cff = interpolate(sub->cff, xi, x);
        if (!cff.is_zero()) {
          if (auto hh = ff.divide_exact(cff))
            if (auto cg = gg.divide_exact(*hh)) return HeuGcd{hh->scaled(common), cff, *cg};
        }
        Polynomial cfg = interpolate(sub->cfg, xi, x);
        if (!cfg.is_zero()) {
          if (auto hh = gg.divide_exact(cfg))
            if (auto cf = ff.divide_exact(*hh)) return HeuGcd{hh->scaled(common), *cf, cfg};
        }
      }
    }
    xi = 73794 * xi * isqrt(isqrt(xi)) / 27011;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Primitive PRS, recursive in the chosen main variable.

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

Polynomial coefficient_of(const Polynomial& p, Var x, unsigned e) {
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (t.mono[x.index] == e) {
      Monomial m = t.mono;
      m.set(x.index, 0);
      out.push_back({m, t.coeff});
    }
  return Polynomial::from_terms(std::move(out));
}

Polynomial content_in(const Polynomial& p, Var x) {
  VarSet xs;
  xs.set(x.index);
  Polynomial c;
  for (const auto& [m, coeff] : p.coefficients_in(xs)) {
    c = gcd_impl(c, coeff);
    if (c.is_constant()) break;
  }
  return c;
}

Polynomial primitive_in(const Polynomial& p, Var x) {
  Polynomial c = content_in(p, x);
  if (c.is_constant()) return p.divided_by(c.constant_value());
  return *p.divide_exact(c);
}

Polynomial prem(Polynomial r, const Polynomial& b, Var x) {
  unsigned db = b.degree_in(x);
  Polynomial lcb = coefficient_of(b, x, db);
  while (!r.is_zero()) {
    unsigned dr = r.degree_in(x);
    if (dr < db) break;
    Polynomial lcr = coefficient_of(r, x, dr);
    r = r * lcb - (lcr * b).times_monomial(Monomial::of(x, dr - db));
  }
  return r;
}

Polynomial prs_gcd(const Polynomial& a, const Polynomial& b) {
  VarSet vars = a.support() & b.support();
  std::size_t pick = 0;
  unsigned best = ~0u;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if (vars.test(v)) {
      unsigned d = std::max(a.degree_in(var_at(v)), b.degree_in(var_at(v)));
      if (d < best) best = d, pick = v;
    }
  Var x = var_at(pick);
  Polynomial ca = content_in(a, x), cb = content_in(b, x);
  Polynomial c = gcd_impl(ca, cb);
  Polynomial r0 = primitive_in(a, x), r1 = primitive_in(b, x);
  if (r0.degree_in(x) < r1.degree_in(x)) std::swap(r0, r1);
  while (!r1.is_zero() && r1.degree_in(x) > 0) {
    Polynomial r = prem(r0, r1, x);
    if (r.is_zero()) break;
    r0 = std::move(r1);
    r1 = primitive_in(r, x);
  }
  Polynomial g = (r1.is_zero() || r1.degree_in(x) > 0) ? primitive_in(r1.is_zero() ? r0 : r1, x) : Polynomial(1);
  Integer gc = g.content();
  if (gc != 0) g = g.divided_by(gc);
  return positive(g * c);
}

// ---------------------------------------------------------------------------

Polynomial fold_gcd(const std::vector<const Polynomial*>& polys) {
  Polynomial g;
  for (const auto* p : polys) {
    g = gcd_impl(g, *p);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

// Inputs primitive, free of monomial factors, non-constant.
Polynomial gcd_core(Polynomial a, Polynomial b) {
  a = positive(std::move(a));
  b = positive(std::move(b));
  if (a == b) return a;
  VarSet sa = a.support(), sb = b.support();
  VarSet common = sa & sb;
  if (common.none()) return Polynomial(1);

  auto bounds = degree_bounds(a, b, common);
  VarSet live;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if (common.test(v) && bounds[v] > 0) live.set(v);
  if (live.none()) return Polynomial(1);

  // The gcd only involves `live` variables: it divides every coefficient
  // taken with respect to the others.
  VarSet dead_a = sa & ~live, dead_b = sb & ~live;
  if (dead_a.any() || dead_b.any()) {
    std::map<Monomial, Polynomial> ca, cb;
    std::vector<const Polynomial*> parts;
    if (dead_a.any()) {
      ca = a.coefficients_in(dead_a);
      for (auto& [m, p] : ca) parts.push_back(&p);
    } else {
      parts.push_back(&a);
    }
    if (dead_b.any()) {
      cb = b.coefficients_in(dead_b);
      for (auto& [m, p] : cb) parts.push_back(&p);
    } else {
      parts.push_back(&b);
    }
    std::sort(parts.begin(), parts.end(),
              [](const Polynomial* x, const Polynomial* y) { return x->size() < y->size(); });
    return positive(fold_gcd(parts));
  }

  if (a.degree() <= b.degree())
    if (b.divide_exact(a)) return a;
  if (b.degree() <= a.degree())
    if (a.divide_exact(b)) return b;

  if (auto h = heu_gcd(a, b)) return positive(h->h);
  return prs_gcd(a, b);
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return positive(b);
  if (b.is_zero()) return positive(a);
  Integer ca = a.content(), cb = b.content();
  Integer c = igcd(ca, cb);
  if (a.is_constant() || b.is_constant()) return Polynomial(c);
  Monomial ma = a.monomial_content(), mb = b.monomial_content();
  Monomial m = Monomial::gcd(ma, mb);
  Polynomial pa = a.divided_by(ca).divided_by(ma);
  Polynomial pb = b.divided_by(cb).divided_by(mb);
  Polynomial core = (pa.is_constant() || pb.is_constant()) ? Polynomial(1) : gcd_core(pa, pb);
  return core.times_monomial(m).scaled(c);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) { return gcd_impl(a, b); }

}  // namespace flatpde::sym
