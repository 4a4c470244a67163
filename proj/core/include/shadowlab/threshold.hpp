#pragma once

#include <optional>
#include <string>

#include "shadowlab/rational.hpp"

namespace shadowlab {

/// Exact nonnegative cutoff for strict distance comparisons, or UNBOUNDED
/// (greater than every rational). The canonical payload is the *squared*
/// value, so realized Euclidean distances (square roots of rationals) stay
/// representable exactly. All comparisons happen at the squared scale.
class Threshold {
 public:
  Threshold() : unbounded_(false), sq_(0) {}

  static Threshold from_value(const Rational& value);   // value >= 0
  static Threshold from_square(const Rational& square); // square >= 0
  static Threshold unbounded();
  static Threshold zero() { return Threshold(); }

  bool is_unbounded() const { return unbounded_; }
  bool is_zero() const { return !unbounded_ && sgn(sq_) == 0; }
  bool is_positive() const { return unbounded_ || sgn(sq_) > 0; }

  /// Squared value; pre: !is_unbounded().
  const Rational& square() const;

  /// The value itself when it happens to be rational.
  std::optional<Rational> exact_value() const;

  /// Strict "d < threshold" with d supplied as a squared distance.
  bool admits_sq(const Rational& squared_distance) const {
    return unbounded_ || squared_distance < sq_;
  }

  Threshold halved() const;   // value / 2; UNBOUNDED stays UNBOUNDED
  Threshold doubled() const;  // value * 2; UNBOUNDED stays UNBOUNDED

  friend bool operator==(const Threshold& a, const Threshold& b) {
    if (a.unbounded_ != b.unbounded_) return false;
    return a.unbounded_ || a.sq_ == b.sq_;
  }
  friend bool operator!=(const Threshold& a, const Threshold& b) { return !(a == b); }
  friend bool operator<(const Threshold& a, const Threshold& b) {
    if (a.unbounded_) return false;
    if (b.unbounded_) return true;
    return a.sq_ < b.sq_;
  }
  friend bool operator>(const Threshold& a, const Threshold& b) { return b < a; }
  friend bool operator<=(const Threshold& a, const Threshold& b) { return !(b < a); }
  friend bool operator>=(const Threshold& a, const Threshold& b) { return !(a < b); }

  /// "p/q", "sqrt(p/q)" for irrational values, or "unbounded".
  std::string str() const;

  /// Inverse of str(); plain rationals denote the value (not its square).
  static Threshold parse(const std::string& text);

 private:
  bool unbounded_;
  Rational sq_;
};

}  // namespace shadowlab
