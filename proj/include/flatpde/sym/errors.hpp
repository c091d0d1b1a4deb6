#pragma once

#include <stdexcept>
#include <string>

namespace flatpde::sym {

/// Base class of every error raised by the algebra kernel.
class SymError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZeroExpr : public SymError {
 public:
  DivisionByZeroExpr() : SymError("division by the zero expression") {}
};

class UnknownVariable : public SymError {
 public:
  explicit UnknownVariable(const std::string& name)
      : SymError("unknown variable '" + name + "'") {}
};

class SubstitutionSingularity : public SymError {
 public:
  SubstitutionSingularity()
      : SymError("substitution makes a denominator identically zero") {}
};

class NonSquareMatrix : public SymError {
 public:
  NonSquareMatrix(std::size_t rows, std::size_t cols)
      : SymError("matrix is " + std::to_string(rows) + "x" +
                 std::to_string(cols) + ", expected square") {}
};

}  // namespace flatpde::sym
