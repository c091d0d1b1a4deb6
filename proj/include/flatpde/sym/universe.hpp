#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "flatpde/sym/monomial.hpp"

namespace flatpde::sym {

enum class VarKind { base, dependent, jet1, jet2, theta, param };

/// Fixed, ordered set of named variables.
///
/// Layout: x[1..n], y, dy[1..n], ddy[i][j] (i <= j), Theta[1..n+1], then any
/// extra parameter symbols. The order is the monomial order.
class VarUniverse {
 public:
  static std::shared_ptr<const VarUniverse> jet(int n, std::vector<std::string> params = {});

  int n() const { return n_; }
  std::size_t size() const { return names_.size(); }

  /// 1-based accessors.
  Var x(int i) const { return at(i - 1); }
  Var y() const { return at(n_); }
  Var p(int i) const { return at(n_ + i); }
  Var q(int i, int j) const;
  Var theta(int a) const { return at(theta_offset_ + a - 1); }
  Var param(std::size_t k) const { return at(param_offset_ + k); }
  std::size_t param_count() const { return names_.size() - param_offset_; }
  /// x^i for i <= n, y for i = n+1.
  Var coordinate(int i) const { return i == n_ + 1 ? y() : x(i); }

  const std::string& name(Var v) const;
  VarKind kind(Var v) const { return kinds_.at(v.index); }
  /// Throws UnknownVariable.
  Var lookup(std::string_view name) const;

  VarSet of_kind(VarKind k) const;

 private:
  static Var at(int i) { return Var{static_cast<std::uint16_t>(i)}; }

  int n_ = 0;
  int theta_offset_ = 0;
  int param_offset_ = 0;
  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
  std::unordered_map<std::string, Var> index_;
};

using UniversePtr = std::shared_ptr<const VarUniverse>;

}  // namespace flatpde::sym
