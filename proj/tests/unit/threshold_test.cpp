#include <doctest.h>

#include <stdexcept>

#include "shadowlab/errors.hpp"
#include "shadowlab/threshold.hpp"

using namespace shadowlab;

namespace {

Rational rq(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("thresholds carry their exact square") {
  const Threshold t = Threshold::from_value(rq(3, 2));
  CHECK(t.square() == rq(9, 4));
  CHECK(t.exact_value() == rq(3, 2));
  CHECK(t.str() == "3/2");

  const Threshold s = Threshold::from_square(rq(2));
  CHECK(s.square() == rq(2));
  CHECK_FALSE(s.exact_value().has_value());
  CHECK(s.str() == "sqrt(2)");
}

TEST_CASE("from_value rejects negatives and unbounded has no square") {
  CHECK_THROWS_AS(Threshold::from_value(rq(-1)), std::invalid_argument);
  CHECK_THROWS_AS(Threshold::from_square(rq(-1)), std::invalid_argument);
  CHECK_THROWS_AS(Threshold::unbounded().square(), std::logic_error);
}

TEST_CASE("parse round-trips str and accepts all three spellings") {
  for (const char* text : {"0", "1/3", "3/2", "sqrt(2)", "sqrt(1/2)", "unbounded"}) {
    CAPTURE(text);
    CHECK(Threshold::parse(text).str() == text);
  }
  // A square-root spelling of a perfect square folds to the rational form.
  CHECK(Threshold::parse("sqrt(9/4)") == Threshold::from_value(rq(3, 2)));
  CHECK(Threshold::parse("sqrt(9/4)").str() == "3/2");
}

TEST_CASE("parse rejects malformed and negative text") {
  CHECK_THROWS_AS(Threshold::parse("-1/3"), ParseError);
  CHECK_THROWS_AS(Threshold::parse("sqrt()"), ParseError);
  CHECK_THROWS_AS(Threshold::parse("sqrt(2/4)"), ParseError);
  CHECK_THROWS_AS(Threshold::parse("Unbounded"), ParseError);
  CHECK_THROWS_AS(Threshold::parse(""), ParseError);
}

TEST_CASE("admits_sq is strict") {
  const Threshold third = Threshold::from_value(rq(1, 3));  // square 1/9
  CHECK(third.admits_sq(rq(0)));
  CHECK(third.admits_sq(rq(1, 10)));
  CHECK_FALSE(third.admits_sq(rq(1, 9)));  // equality is excluded
  CHECK_FALSE(third.admits_sq(rq(1)));

  CHECK(Threshold::unbounded().admits_sq(rq(1'000'000)));
  CHECK_FALSE(Threshold::zero().admits_sq(rq(0)));
}

TEST_CASE("halved and doubled act on the value, stored as the square") {
  const Threshold t = Threshold::from_value(rq(1, 3));
  CHECK(t.halved() == Threshold::from_value(rq(1, 6)));
  CHECK(t.doubled() == Threshold::from_value(rq(2, 3)));
  CHECK(Threshold::from_square(rq(2)).doubled().square() == rq(8));
  CHECK(Threshold::unbounded().halved().is_unbounded());
  CHECK(Threshold::unbounded().doubled().is_unbounded());
}

TEST_CASE("ordering puts unbounded above everything") {
  const Threshold a = Threshold::from_value(rq(1, 2));
  const Threshold b = Threshold::from_square(rq(1, 2));  // value 1/sqrt(2) > 1/2
  CHECK(a < b);
  CHECK(b < Threshold::unbounded());
  CHECK(Threshold::zero() < a);
  CHECK_FALSE(Threshold::unbounded() < Threshold::unbounded());
  CHECK(Threshold::unbounded() == Threshold::unbounded());
  CHECK(a <= a);
  CHECK(b >= a);
}

TEST_CASE("state predicates") {
  CHECK(Threshold::zero().is_zero());
  CHECK_FALSE(Threshold::zero().is_positive());
  CHECK(Threshold::from_value(rq(1)).is_positive());
  CHECK(Threshold::unbounded().is_positive());
  CHECK_FALSE(Threshold::unbounded().is_zero());
}
