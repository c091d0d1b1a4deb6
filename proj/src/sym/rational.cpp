#include "flatpde/sym/rational.hpp"

#include <map>

namespace flatpde::sym {

namespace {

Polynomial quotient(const Polynomial& a, const Polynomial& g) {
  if (g.is_constant()) {
    const Integer c = g.constant_value();
    return c == 1 ? a : a.divided_by(c);
  }
  return *a.divide_exact(g);
}

}  // namespace

RationalExpr::RationalExpr(const Scalar& c) {
  Scalar s = c;
  s.canonicalize();
  num_ = Polynomial(Integer(s.get_num()));
  den_ = Polynomial(Integer(s.get_den()));
}

RationalExpr RationalExpr::fraction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZeroExpr();
  if (num.is_zero()) return {};
  Polynomial g = gcd(num, den);
  if (!(g.is_constant() && g.constant_value() == 1)) {
    num = quotient(num, g);
    den = quotient(den, g);
  }
  if (den.leading_coeff() < 0) {
    num = -num;
    den = -den;
  }
  return RationalExpr(std::move(num), std::move(den), 0);
}

Scalar RationalExpr::constant_value() const {
  Scalar s(num_.constant_value(), den_.constant_value());
  s.canonicalize();
  return s;
}

RationalExpr RationalExpr::operator-() const { return RationalExpr(-num_, den_, 0); }

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    Polynomial n = a.num_ + b.num_;
    if (a.den_.is_constant() && a.den_.constant_value() == 1) return RationalExpr(std::move(n), a.den_, 0);
    return RationalExpr::fraction(std::move(n), a.den_);
  }
  // With g = gcd(b, d): a/b + c/d = (a*d' + c*b') / (b'*d), and the only
  // common factors left are those of g.
  Polynomial g = gcd(a.den_, b.den_);
  Polynomial b1 = quotient(a.den_, g), d1 = quotient(b.den_, g);
  Polynomial n = a.num_ * d1 + b.num_ * b1;
  if (n.is_zero()) return {};
  Polynomial den = b1 * b.den_;
  if (g.is_constant() && g.constant_value() == 1) {
    if (den.leading_coeff() < 0) return RationalExpr(-n, -den, 0);
    return RationalExpr(std::move(n), std::move(den), 0);
  }
  Polynomial g2 = gcd(n, g);
  if (!(g2.is_constant() && g2.constant_value() == 1)) {
    n = quotient(n, g2);
    den = quotient(den, g2);
  }
  if (den.leading_coeff() < 0) return RationalExpr(-n, -den, 0);
  return RationalExpr(std::move(n), std::move(den), 0);
}

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Polynomial g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  Polynomial n = quotient(a.num_, g1) * quotient(b.num_, g2);
  Polynomial d = quotient(a.den_, g2) * quotient(b.den_, g1);
  if (d.leading_coeff() < 0) return RationalExpr(-n, -d, 0);
  return RationalExpr(std::move(n), std::move(d), 0);
}

RationalExpr RationalExpr::inverse() const {
  if (is_zero()) throw DivisionByZeroExpr();
  if (num_.leading_coeff() < 0) return RationalExpr(-den_, -num_, 0);
  return RationalExpr(den_, num_, 0);
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) { return a * b.inverse(); }

RationalExpr RationalExpr::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  // Powers of coprime polynomials stay coprime.
  Polynomial n = num_.pow(static_cast<unsigned>(e)), d = den_.pow(static_cast<unsigned>(e));
  if (d.leading_coeff() < 0) return RationalExpr(-n, -d, 0);
  return RationalExpr(std::move(n), std::move(d), 0);
}

bool is_zero(const RationalExpr& e) { return e.is_zero(); }

RationalExpr differentiate(const RationalExpr& e, Var v) {
  if (v.index >= kMaxVars) throw UnknownVariable("#" + std::to_string(v.index));
  Polynomial da = e.num().derivative(v);
  Polynomial db = e.den().derivative(v);
  if (db.is_zero()) {
    if (da.is_zero()) return {};
    return RationalExpr::fraction(std::move(da), e.den());
  }
  // (a/b)' = (a' b/g - a b'/g) / (b * b/g) with g = gcd(b, b').
  Polynomial g = gcd(e.den(), db);
  Polynomial bg = quotient(e.den(), g);
  Polynomial n = da * bg - e.num() * quotient(db, g);
  return RationalExpr::fraction(std::move(n), e.den() * bg);
}

namespace {

struct Evaluated {
  Polynomial num;
  Polynomial den;
};

// Common-denominator evaluation: with binding v -> n_v/d_v and e_v = deg_v p,
// p = sum_t c_t prod_v n_v^{a_v} d_v^{e_v - a_v} / prod_v d_v^{e_v}.
Evaluated evaluate(const Polynomial& p, const std::vector<Binding>& bindings) {
  struct Slot {
    Var v;
    const RationalExpr* value;
    unsigned degree;
    std::vector<Polynomial> num_pow, den_pow;
  };
  std::vector<Slot> slots;
  for (const auto& [v, value] : bindings) {
    unsigned d = p.degree_in(v);
    if (d == 0) continue;
    Slot s{v, &value, d, {}, {}};
    s.num_pow.resize(d + 1);
    s.den_pow.resize(d + 1);
    s.num_pow[0] = Polynomial(1);
    s.den_pow[0] = Polynomial(1);
    for (unsigned k = 1; k <= d; ++k) {
      s.num_pow[k] = s.num_pow[k - 1] * value.num();
      s.den_pow[k] = s.den_pow[k - 1] * value.den();
    }
    slots.push_back(std::move(s));
  }
  if (slots.empty()) return {p, Polynomial(1)};

  Polynomial num;
  // Group terms by their exponents in the bound variables.
  std::map<std::vector<unsigned>, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    std::vector<unsigned> key;
    key.reserve(slots.size());
    Monomial m = t.mono;
    for (const auto& s : slots) {
      key.push_back(t.mono[s.v.index]);
      m.set(s.v.index, 0);
    }
    groups[key].push_back({m, t.coeff});
  }
  for (auto& [key, terms] : groups) {
    Polynomial f = Polynomial::from_terms(std::move(terms));
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& s = slots[i];
      f = f * s.num_pow[key[i]];
      if (s.degree > key[i]) f = f * s.den_pow[s.degree - key[i]];
    }
    num += f;
  }
  Polynomial den(1);
  for (const auto& s : slots) den = den * s.den_pow[s.degree];
  return {std::move(num), std::move(den)};
}

}  // namespace

RationalExpr substitute(const Polynomial& p, const std::vector<Binding>& bindings) {
  auto r = evaluate(p, bindings);
  return RationalExpr::fraction(std::move(r.num), std::move(r.den));
}

RationalExpr substitute(const RationalExpr& e, const std::vector<Binding>& bindings) {
  if (bindings.empty()) return e;
  auto top = evaluate(e.num(), bindings);
  auto bottom = evaluate(e.den(), bindings);
  if (bottom.num.is_zero()) throw SubstitutionSingularity();
  return RationalExpr::fraction(top.num * bottom.den, top.den * bottom.num);
}

}  // namespace flatpde::sym
