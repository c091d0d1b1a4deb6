#pragma once

#include <utility>
#include <vector>

#include "flatpde/sym/errors.hpp"
#include "flatpde/sym/polynomial.hpp"

namespace flatpde::sym {

/// Exact rational function num/den over Z[vars].
///
/// Canonical form: gcd(num, den) = 1 (integer content included), the leading
/// coefficient of den is positive, and zero is 0/1. Rational constants such as
/// 1/2 therefore live in the denominator. Structural equality is equality.
class RationalExpr {
 public:
  RationalExpr() : den_(1) {}
  RationalExpr(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit RationalExpr(const Scalar& c);
  explicit RationalExpr(Polynomial p) : num_(std::move(p)), den_(1) {}

  static RationalExpr variable(Var v) { return RationalExpr(Polynomial::variable(v)); }
  /// Normalises num/den. Throws DivisionByZeroExpr when den is zero.
  static RationalExpr fraction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Requires is_constant().
  Scalar constant_value() const;
  VarSet support() const { return num_.support() | den_.support(); }

  RationalExpr operator-() const;
  RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
  RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
  RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
  RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }
  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }
  friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);

  /// Integer power; negative exponents invert.
  RationalExpr pow(int e) const;
  RationalExpr inverse() const;

  friend bool operator==(const RationalExpr& a, const RationalExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalExpr& a, const RationalExpr& b) { return !(a == b); }

 private:
  RationalExpr(Polynomial num, Polynomial den, int /*trusted*/)
      : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

using Binding = std::pair<Var, RationalExpr>;

bool is_zero(const RationalExpr& e);
RationalExpr differentiate(const RationalExpr& e, Var v);
/// Simultaneous substitution. Throws SubstitutionSingularity when a
/// denominator becomes zero.
RationalExpr substitute(const RationalExpr& e, const std::vector<Binding>& bindings);
/// Same as substitute on a polynomial.
RationalExpr substitute(const Polynomial& p, const std::vector<Binding>& bindings);

/// Linear combination helpers used by the formula modules.
inline RationalExpr half(const RationalExpr& e) { return e * RationalExpr(Scalar(1, 2)); }

}  // namespace flatpde::sym
