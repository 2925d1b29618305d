#pragma once

#include <stdexcept>
#include <string>

namespace riskocc {

// Malformed input file (bad JSON, wrong shape).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input violating a domain invariant; message names the field.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad weight/config combination (e.g. ordering violation).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Planner failures, tagged with a stable wire code.
class PlanError : public std::runtime_error {
 public:
  PlanError(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace riskocc
