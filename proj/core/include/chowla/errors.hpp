#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace chowla {

// Invalid user input: a flag, a polynomial, or a combination of them.
// `field` names the offending configuration entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A computation would exceed a configured resource limit.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace chowla
