#include "shadowlab/threshold.hpp"

#include <stdexcept>

#include "shadowlab/errors.hpp"

namespace shadowlab {

Threshold Threshold::from_value(const Rational& value) {
  if (sgn(value) < 0) throw std::invalid_argument("threshold value must be nonnegative");
  Threshold t;
  t.sq_ = value * value;
  return t;
}

Threshold Threshold::from_square(const Rational& square) {
  if (sgn(square) < 0) throw std::invalid_argument("threshold square must be nonnegative");
  Threshold t;
  t.sq_ = square;
  return t;
}

Threshold Threshold::unbounded() {
  Threshold t;
  t.unbounded_ = true;
  return t;
}

const Rational& Threshold::square() const {
  if (unbounded_) throw std::logic_error("unbounded threshold has no square");
  return sq_;
}

std::optional<Rational> Threshold::exact_value() const {
  if (unbounded_) return std::nullopt;
  return exact_sqrt(sq_);
}

Threshold Threshold::halved() const {
  if (unbounded_) return *this;
  return from_square(sq_ / 4);
}

Threshold Threshold::doubled() const {
  if (unbounded_) return *this;
  return from_square(sq_ * 4);
}

std::string Threshold::str() const {
  if (unbounded_) return "unbounded";
  if (auto v = exact_sqrt(sq_)) return format_rational(*v);
  return "sqrt(" + format_rational(sq_) + ")";
}

Threshold Threshold::parse(const std::string& text) {
  if (text == "unbounded") return unbounded();
  if (text.size() > 6 && text.compare(0, 5, "sqrt(") == 0 && text.back() == ')') {
    return from_square(parse_rational(text.substr(5, text.size() - 6)));
  }
  const Rational value = parse_rational(text);
  if (sgn(value) < 0) throw ParseError("threshold must be nonnegative: \"" + text + "\"");
  return from_value(value);
}

}  // namespace shadowlab
