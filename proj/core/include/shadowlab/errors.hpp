#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace shadowlab {

/// Malformed document, rational literal, or threshold literal.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally well-formed document that describes an invalid system.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& violations) {
    std::string out = "invalid system";
    for (const auto& v : violations) {
      out += "\n  - " + v;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// Exploration exceeded the configured state budget (or a hard engine limit).
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shadowlab
