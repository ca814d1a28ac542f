#pragma once

#include <stdexcept>
#include <string>

namespace geo {

enum class ErrorKind {
  kShape,        // operand shapes incompatible
  kContract,     // precondition violated (tangency, base mismatch, ranges)
  kDomain,       // input outside the operation's domain
  kConvergence,  // iterative solver failed to converge
};

/// Base of every exception raised by the library. `code()` is a short
/// machine-readable identifier such as "cut_locus" or "not_spd".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message,
                         std::string code = "contract")
      : Error(ErrorKind::kContract, std::move(code), message) {}

 protected:
  ContractError(ErrorKind kind, std::string code, const std::string& message)
      : Error(kind, std::move(code), message) {}
};

/// Incompatible operand shapes. A special case of a violated precondition, so
/// handlers for ContractError also see it.
class ShapeError : public ContractError {
 public:
  explicit ShapeError(const std::string& message)
      : ContractError(ErrorKind::kShape, "shape", message) {}
};

class DomainError : public Error {
 public:
  DomainError(std::string code, const std::string& message)
      : Error(ErrorKind::kDomain, std::move(code), message) {}
};

/// Raised by the logarithm when the target lies on the cut locus of the base.
class CutLocusError : public DomainError {
 public:
  explicit CutLocusError(const std::string& message)
      : DomainError("cut_locus", message) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double residual)
      : Error(ErrorKind::kConvergence, "no_convergence", message),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace geo
