#pragma once

#include <memory>
#include <string>

namespace lct {

// Tiny arithmetic language for custom coefficient families:
//   numbers, + - * /, unary minus, parentheses,
//   sin cos tan exp ln, the variable t, and the names m, omega, pi.
class Expression {
 public:
  struct Node;

  // Throws ConfigError with the offending position on malformed input.
  static Expression parse(const std::string& text);

  double operator()(double t, double mass, double omega) const;

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace lct
