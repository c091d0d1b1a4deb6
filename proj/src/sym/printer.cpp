#include "flatpde/sym/printer.hpp"

namespace flatpde::sym {

namespace {

std::string monomial(const Monomial& m, const VarUniverse& u) {
  std::string s;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned e = m[i];
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += u.name(Var{static_cast<std::uint16_t>(i)});
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

// Single atom that needs no parentheses after '/'.
bool is_atom(const Polynomial& p) {
  if (!p.is_monomial()) return false;
  const auto& t = p.leading();
  if (t.mono.is_one()) return t.coeff > 0;
  return t.coeff == 1 && t.mono.support().count() == 1;
}

}  // namespace

std::string render(const Polynomial& p, const VarUniverse& u) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    Integer c = t.coeff;
    if (first) {
      if (c < 0) {
        s += '-';
        c = -c;
      }
    } else {
      s += c < 0 ? " - " : " + ";
      c = abs(c);
    }
    first = false;
    if (t.mono.is_one()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + '*';
      s += monomial(t.mono, u);
    }
  }
  return s;
}

std::string render(const RationalExpr& e, const VarUniverse& u) {
  std::string n = render(e.num(), u);
  if (e.is_polynomial() && e.den().constant_value() == 1) return n;
  if (e.num().size() > 1) n = '(' + n + ')';
  std::string d = render(e.den(), u);
  if (!is_atom(e.den())) d = '(' + d + ')';
  return n + '/' + d;
}

}  // namespace flatpde::sym
