#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "flatpde/sym/monomial.hpp"

namespace flatpde::sym {

using Integer = mpz_class;
using Scalar = mpq_class;

struct Term {
  Monomial mono;
  Integer coeff;
};

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are kept strictly descending in graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality. Rational
/// coefficients live one level up, in RationalExpr, as a constant factor of
/// the denominator.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(Integer c);

  static Polynomial variable(Var v);
  static Polynomial term(Monomial m, Integer c);
  /// Builds from unsorted terms, merging duplicates and dropping zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Requires is_constant().
  Integer constant_value() const { return terms_.empty() ? Integer(0) : terms_[0].coeff; }

  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  const Integer& leading_coeff() const { return terms_.front().coeff; }

  unsigned degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  unsigned degree_in(Var v) const;
  VarSet support() const;
  /// Largest absolute coefficient.
  Integer max_norm() const;
  /// Positive gcd of all coefficients (0 for the zero polynomial).
  Integer content() const;
  /// Gcd of all monomials.
  Monomial monomial_content() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(const Integer& c) const;
  Polynomial times_monomial(const Monomial& m) const;
  /// Divides every coefficient by c; requires exact divisibility.
  Polynomial divided_by(const Integer& c) const;
  Polynomial divided_by(const Monomial& m) const;
  Polynomial pow(unsigned e) const;

  /// Quotient when `divisor` divides *this exactly, otherwise nullopt.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  Polynomial derivative(Var v) const;
  /// Substitutes the integer `value` for variable v.
  Polynomial evaluate(Var v, const Integer& value) const;

  /// Coefficients with respect to the variables in `vars`: maps each monomial
  /// in those variables to its cofactor polynomial in the remaining ones.
  std::map<Monomial, Polynomial> coefficients_in(const VarSet& vars) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor in Z[vars], normalised to a positive leading
/// coefficient. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace flatpde::sym
