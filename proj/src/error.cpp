#include "nomavlc/error.hpp"

namespace nomavlc {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "invalid configuration";
  for (const auto& s : v) {
    out += "\n  - ";
    out += s;
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

}  // namespace nomavlc
