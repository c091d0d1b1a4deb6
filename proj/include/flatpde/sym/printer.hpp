#pragma once

#include <string>

#include "flatpde/sym/rational.hpp"
#include "flatpde/sym/universe.hpp"

namespace flatpde::sym {

/// Renders in the input grammar, e.g. "-2*dy[1]/(x[1] + 1)".
std::string render(const Polynomial& p, const VarUniverse& u);
std::string render(const RationalExpr& e, const VarUniverse& u);

}  // namespace flatpde::sym
