#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "flatpde/parallel.hpp"
#include "flatpde/sym/rational.hpp"

namespace flatpde {

using Expr = sym::RationalExpr;
/// 1-based index tuple.
using Index = std::vector<int>;
/// Residual family keyed by index tuple, ordered lexicographically.
using Residuals = std::map<Index, Expr>;

inline std::size_t count_nonzero(const Residuals& r) {
  std::size_t k = 0;
  for (const auto& [i, e] : r) k += !e.is_zero();
  return k;
}

inline bool all_zero(const Residuals& r) { return count_nonzero(r) == 0; }

inline std::optional<std::pair<Index, Expr>> first_nonzero(const Residuals& r) {
  for (const auto& [i, e] : r)
    if (!e.is_zero()) return std::make_pair(i, e);
  return std::nullopt;
}

/// Evaluates f(key) for every key, possibly in parallel, and assembles the
/// family in key order.
template <class F>
Residuals evaluate_family(const std::vector<Index>& keys, Execution ex, F&& f) {
  std::vector<Expr> values(keys.size());
  parallel_for(keys.size(), ex, [&](std::size_t i) { values[i] = f(keys[i]); });
  Residuals out;
  for (std::size_t i = 0; i < keys.size(); ++i) out.emplace_hint(out.end(), keys[i], std::move(values[i]));
  return out;
}

/// All tuples in {1..hi}^len, lexicographic.
inline std::vector<Index> all_tuples(int len, int hi) {
  if (len == 0) return {Index{}};
  std::vector<Index> out;
  Index t(len, 1);
  while (true) {
    out.push_back(t);
    int pos = len - 1;
    while (pos >= 0 && t[pos] == hi) t[pos--] = 1;
    if (pos < 0) break;
    ++t[pos];
  }
  return out;
}

inline int delta(int a, int b) { return a == b ? 1 : 0; }

}  // namespace flatpde
