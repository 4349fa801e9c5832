#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nomavlc {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// EPA cannot meet the SINR target for every non-strongest rank.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bisection bracket does not straddle the root.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Carries every violation found while parsing or checking a scenario.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<std::string> violations_;
};

}  // namespace nomavlc
