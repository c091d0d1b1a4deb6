#pragma once

#include <string>

#include "flatpde/cli/document.hpp"

namespace flatpde::testing {

inline Expr E(const JetContext& ctx, const std::string& s) { return cli::parse_expression(s, ctx); }

inline PdeSystem system_n2(const JetContext& ctx, const std::string& f11, const std::string& f12,
                           const std::string& f22) {
  const Expr a = E(ctx, f11), b = E(ctx, f12), c = E(ctx, f22);
  return PdeSystem(ctx, {{a, b}, {b, c}});
}

inline PointTransformation transform_n2(const JetContext& ctx, const std::string& X1, const std::string& X2,
                                        const std::string& Y) {
  return {ctx, {E(ctx, X1), E(ctx, X2)}, E(ctx, Y)};
}

}  // namespace flatpde::testing
