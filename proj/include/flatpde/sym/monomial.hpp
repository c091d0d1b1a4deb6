#pragma once

#include <array>
#include <bitset>
#include <compare>
#include <cstdint>
#include <cstring>
#include <stdexcept>

namespace flatpde::sym {

inline constexpr std::size_t kMaxVars = 64;

/// Index of a variable inside a VarUniverse.
struct Var {
  std::uint16_t index = 0;
  friend constexpr auto operator<=>(Var, Var) = default;
};

using VarSet = std::bitset<kMaxVars>;

/// Exponent vector over at most kMaxVars variables.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the lowest-indexed variable, and so on. Byte-wise memcmp on the exponent
/// array realises the lexicographic tie-break.
class Monomial {
 public:
  Monomial() = default;

  static Monomial of(Var v, unsigned e = 1) {
    Monomial m;
    m.set(v.index, e);
    return m;
  }

  unsigned operator[](std::size_t i) const { return exp_[i]; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned e) {
    if (e > 255) throw std::overflow_error("monomial exponent exceeds 255");
    deg_ = static_cast<std::uint16_t>(deg_ - exp_[i] + e);
    exp_[i] = static_cast<std::uint8_t>(e);
  }

  Monomial operator*(const Monomial& o) const {
    if (deg_ + o.deg_ > 255) check_product(o);
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      r.exp_[i] = static_cast<std::uint8_t>(exp_[i] + o.exp_[i]);
    r.deg_ = static_cast<std::uint16_t>(deg_ + o.deg_);
    return r;
  }

  /// True iff *this divides o.
  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }

  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      r.exp_[i] = static_cast<std::uint8_t>(exp_[i] - divisor.exp_[i]);
    r.deg_ = static_cast<std::uint16_t>(deg_ - divisor.deg_);
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = a.exp_[i] < b.exp_[i] ? a.exp_[i] : b.exp_[i];
      d += r.exp_[i];
    }
    r.deg_ = static_cast<std::uint16_t>(d);
    return r;
  }

  VarSet support() const {
    VarSet s;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] != 0) s.set(i);
    return s;
  }

  /// Keeps only the exponents of variables in `vars`.
  Monomial restrict_to(const VarSet& vars) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (vars.test(i) && exp_[i] != 0) r.set(i, exp_[i]);
    return r;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : exp_) h = (h ^ e) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg_ == b.deg_ && std::memcmp(a.exp_.data(), b.exp_.data(), kMaxVars) == 0;
  }

  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ <=> b.deg_;
    int c = std::memcmp(a.exp_.data(), b.exp_.data(), kMaxVars);
    return c <=> 0;
  }

 private:
  void check_product(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] + o.exp_[i] > 255) throw std::overflow_error("monomial exponent exceeds 255");
  }

  std::array<std::uint8_t, kMaxVars> exp_{};
  std::uint16_t deg_ = 0;
};

}  // namespace flatpde::sym
