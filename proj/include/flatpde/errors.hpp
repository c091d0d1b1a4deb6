#pragma once

#include <stdexcept>
#include <string>

namespace flatpde {

/// Base of the errors raised by the jet-space layers and the CLI.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NRequiresAtLeastTwo : public Error {
 public:
  explicit NRequiresAtLeastTwo(int n) : Error("n = " + std::to_string(n) + ", but n >= 2 is required") {}
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(int i, int hi)
      : Error("index " + std::to_string(i) + " outside 1.." + std::to_string(hi)) {}
};

class AsymmetricSystem : public Error {
 public:
  AsymmetricSystem(int i, int j)
      : Error("F[" + std::to_string(i) + "][" + std::to_string(j) + "] differs from F[" + std::to_string(j) +
              "][" + std::to_string(i) + "]") {}
};

class JetVariableNotAllowed : public Error {
 public:
  using Error::Error;
};

class NotCubicForm : public Error {
 public:
  explicit NotCubicForm(std::string witness) : Error("not of cubic form: " + witness), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

class DegreeTooHigh : public Error {
 public:
  using Error::Error;
};

class DegenerateJacobian : public Error {
 public:
  DegenerateJacobian() : Error("Jacobian determinant vanishes identically") {}
};

class ThetaNotEliminated : public Error {
 public:
  using Error::Error;
};

}  // namespace flatpde
