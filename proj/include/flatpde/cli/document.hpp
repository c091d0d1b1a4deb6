#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flatpde/auxiliary.hpp"

namespace flatpde::cli {

/// Malformed input, with a 1-based source position.
class InputError : public Error {
 public:
  InputError(int line, int col, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_, col_;
};

class MissingBlock : public Error {
 public:
  explicit MissingBlock(const std::string& block) : Error("input has no '" + block + ":' block") {}
};

struct TransformBlock {
  std::vector<std::optional<Expr>> X;
  std::optional<Expr> Y;
};

struct VectorFieldBlock {
  std::vector<std::optional<Expr>> XI;
  std::optional<Expr> ETA;
};

/// Parsed input. Table blocks store only the assigned entries; keys are
/// normalized (G, H and PI sorted in their symmetric pair).
struct InputDocument {
  JetContext ctx;
  std::optional<std::map<Index, Expr>> system;  // (i, j), i <= j
  std::optional<TransformBlock> transform;
  std::optional<VectorFieldBlock> vectorfield;
  std::optional<std::map<std::string, std::map<Index, Expr>>> cubic;  // "G", "H", "L", "M"
  std::optional<std::map<Index, Expr>> pi;                           // (k, j1, j2), j1 <= j2
  std::optional<std::map<Index, Expr>> theta;                        // (a)

  int n() const { return ctx.n(); }

  /// Block accessors throw MissingBlock; system and transform also require
  /// every entry.
  PdeSystem system_or_throw() const;
  PointTransformation transform_or_throw() const;
  VectorField vectorfield_or_throw() const;
  CubicForm cubic_or_throw() const;
  PiTable pi_or_throw() const;
  ThetaFields theta_or_throw() const;
};

InputDocument parse(std::string_view text);

/// Parses one expression over x[i], y and, if allowed, dy[i].
Expr parse_expression(std::string_view text, const JetContext& ctx, bool allow_jets = true);

}  // namespace flatpde::cli
