#include "flatpde/sym/universe.hpp"

#include <stdexcept>
#include <utility>

#include "flatpde/sym/errors.hpp"

namespace flatpde::sym {

std::shared_ptr<const VarUniverse> VarUniverse::jet(int n, std::vector<std::string> params) {
  if (n < 1) throw std::invalid_argument("universe needs n >= 1");
  auto u = std::make_shared<VarUniverse>();
  u->n_ = n;
  auto add = [&](std::string name, VarKind k) {
    u->names_.push_back(std::move(name));
    u->kinds_.push_back(k);
  };
  for (int i = 1; i <= n; ++i) add("x[" + std::to_string(i) + "]", VarKind::base);
  add("y", VarKind::dependent);
  for (int i = 1; i <= n; ++i) add("dy[" + std::to_string(i) + "]", VarKind::jet1);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      add("ddy[" + std::to_string(i) + "][" + std::to_string(j) + "]", VarKind::jet2);
  u->theta_offset_ = static_cast<int>(u->names_.size());
  for (int a = 1; a <= n + 1; ++a) add("Theta[" + std::to_string(a) + "]", VarKind::theta);
  u->param_offset_ = static_cast<int>(u->names_.size());
  for (auto& p : params) add(std::move(p), VarKind::param);
  if (u->names_.size() > kMaxVars)
    throw std::length_error("universe exceeds " + std::to_string(kMaxVars) + " variables");
  for (std::size_t i = 0; i < u->names_.size(); ++i) {
    if (!u->index_.emplace(u->names_[i], at(static_cast<int>(i))).second)
      throw std::invalid_argument("duplicate variable name '" + u->names_[i] + "'");
  }
  return u;
}

Var VarUniverse::q(int i, int j) const {
  if (i > j) std::swap(i, j);
  // Row i of the upper triangle starts after rows 1..i-1.
  int offset = (i - 1) * n_ - (i - 1) * (i - 2) / 2;
  return at(2 * n_ + 1 + offset + (j - i));
}

const std::string& VarUniverse::name(Var v) const {
  if (v.index >= names_.size()) throw UnknownVariable("#" + std::to_string(v.index));
  return names_[v.index];
}

Var VarUniverse::lookup(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw UnknownVariable(std::string(name));
  return it->second;
}

VarSet VarUniverse::of_kind(VarKind k) const {
  VarSet s;
  for (std::size_t i = 0; i < kinds_.size(); ++i)
    if (kinds_[i] == k) s.set(i);
  return s;
}

}  // namespace flatpde::sym
