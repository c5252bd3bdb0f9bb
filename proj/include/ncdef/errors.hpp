#pragma once

#include <stdexcept>
#include <string>

namespace ncdef {

/// Failure categories; the CLI maps them onto exit statuses 2, 3 and 4.
enum class ErrorKind { scenario, hypothesis, invariant };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}
  ErrorKind kind() const { return kind_; }
  /// Short machine-readable tag such as "NotAssociative".
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

/// Malformed or inconsistent input.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string code, const std::string& what)
      : Error(ErrorKind::scenario, std::move(code), what) {}
};

/// Input is well-formed but violates a mathematical hypothesis of the
/// requested computation (incomplete simple family, non-split module, ...).
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(std::string code, const std::string& what)
      : Error(ErrorKind::hypothesis, std::move(code), what) {}
};

/// An internal consistency check failed. Always a defect.
class InvariantBreach : public Error {
 public:
  InvariantBreach(std::string code, const std::string& what)
      : Error(ErrorKind::invariant, std::move(code), what) {}
};

}  // namespace ncdef
