#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "shadowlab/generators.hpp"
#include "shadowlab/system.hpp"
#include "shadowlab/system_io.hpp"

using namespace shadowlab;

namespace {

Rational rq(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("cycle family") {
  const FiniteSystem three = gen_cycle(3);
  CHECK(three.size() == 3);
  CHECK(three.label(0) == "a");
  CHECK(three.label(2) == "c");
  CHECK(three.map() == std::vector<PointId>{1, 2, 0});
  CHECK(three.squared_distance(0, 2) == rq(1));
  CHECK(three.validate().ok());
  CHECK(three.meta().at("generator") == "cycle(k=3)");

  const FiniteSystem one = gen_cycle(1);
  CHECK(one.size() == 1);
  CHECK(one.image(0) == 0);

  CHECK(gen_cycle(27).label(26) == "p26");
  CHECK_THROWS_AS(gen_cycle(0), std::invalid_argument);
}

TEST_CASE("two fixed points") {
  const FiniteSystem sys = gen_two_fixed(rq(1, 3));
  CHECK(sys.size() == 2);
  CHECK(sys.metric_kind() == MetricKind::Euclidean);
  CHECK(sys.squared_distance(0, 1) == rq(1, 9));
  CHECK(sys.image(0) == 0);
  CHECK(sys.image(1) == 1);
  CHECK_THROWS_AS(gen_two_fixed(rq(0)), std::invalid_argument);
  CHECK_THROWS_AS(gen_two_fixed(rq(-1)), std::invalid_argument);
}

TEST_CASE("merge family") {
  const FiniteSystem sys = gen_merge();
  CHECK(sys.size() == 3);
  CHECK(sys.squared_distance(0, 1) == rq(1));
  CHECK(sys.squared_distance(0, 2) == rq(4));
  CHECK(sys.squared_distance(1, 2) == rq(4));
  CHECK(sys.map() == std::vector<PointId>{2, 2, 2});
  CHECK(sys.validate().ok());
}

TEST_CASE("truncated doubling chain") {
  const FiniteSystem sys = gen_not_onto(3);
  REQUIRE(sys.size() == 7);
  CHECK(sys.label(0) == "-1");
  CHECK(sys.label(1) == "-1/2");
  CHECK(sys.label(2) == "0");
  CHECK(sys.label(3) == "1");
  CHECK(sys.label(6) == "1/8");
  CHECK(sys.map() == std::vector<PointId>{1, 2, 2, 3, 3, 4, 5});
  CHECK_FALSE(sys.is_surjective());  // -1 is never hit
  CHECK(sys.validate().ok());
  CHECK(sys.meta().count("map_note") == 1);
  CHECK_THROWS_AS(gen_not_onto(0), std::invalid_argument);
}

TEST_CASE("identity system on the dyadic chain") {
  const FiniteSystem sys = gen_identity_cantor(3);
  REQUIRE(sys.size() == 5);
  CHECK(sys.label(0) == "1");
  CHECK(sys.label(3) == "1/8");
  CHECK(sys.label(4) == "0");
  for (PointId x = 0; x < sys.size(); ++x) CHECK(sys.image(x) == x);
  CHECK(sys.validate().ok());
}

TEST_CASE("periodic shift: points are primitive words in canonical order") {
  const FiniteSystem sys = gen_periodic_shift(2, 2, ShiftSide::Two);
  REQUIRE(sys.size() == 4);
  CHECK(sys.label(0) == "0");
  CHECK(sys.label(1) == "1");
  CHECK(sys.label(2) == "01");
  CHECK(sys.label(3) == "10");
  // Left shift rotates the primitive word.
  CHECK(sys.image(0) == 0);
  CHECK(sys.image(2) == 3);
  CHECK(sys.image(3) == 2);
  // First disagreement of 0^inf and (01)^inf sits at index +-1.
  CHECK(sys.squared_distance(0, 2) == rq(1, 4));
  // 0^inf and 1^inf, and (01)^inf and (10)^inf, split at the origin.
  CHECK(sys.squared_distance(0, 1) == rq(1));
  CHECK(sys.squared_distance(2, 3) == rq(1));
  CHECK(sys.validate().ok());

  // One-sided reading never looks left, so (01)^inf vs 0^inf still differs
  // first at index 1.
  const FiniteSystem one = gen_periodic_shift(2, 2, ShiftSide::One);
  CHECK(one.squared_distance(0, 2) == rq(1, 4));
  CHECK(one.validate().ok());

  // Period three over two letters: 2 fixed words plus 2 + 6 rotations.
  CHECK(gen_periodic_shift(2, 3, ShiftSide::Two).size() == 10);
  CHECK(gen_periodic_shift(3, 1, ShiftSide::Two).size() == 3);

  CHECK_THROWS_AS(gen_periodic_shift(1, 2, ShiftSide::Two), std::invalid_argument);
  CHECK_THROWS_AS(gen_periodic_shift(11, 2, ShiftSide::Two), std::invalid_argument);
  CHECK_THROWS_AS(gen_periodic_shift(2, 0, ShiftSide::Two), std::invalid_argument);
}

TEST_CASE("clustered plane family: layout and funnel map") {
  const FiniteSystem sys = gen_n_expansive(2, 3, 1);
  REQUIRE(sys.size() == 16);

  const auto id = [&](const char* label) { return *sys.find_label(label); };
  // The deepest cluster funnels one level up; level one advances and climbs.
  CHECK(sys.image(id("(3/8,0)")) == id("(3/4,0)"));
  CHECK(sys.image(id("(1/2,0)")) == id("(3/4,0)"));
  CHECK(sys.image(id("(3/4,0)")) == id("(3/2,0)"));
  CHECK(sys.image(id("(3/2,0)")) == id("(3,0)"));
  CHECK(sys.image(id("(2,0)")) == id("(3,0)"));
  CHECK(sys.image(id("(0,0)")) == id("(0,0)"));
  CHECK(sys.image(id("(3,0)")) == id("(3,0)"));
  CHECK(sys.image(id("(0,-2)")) == id("(0,-2)"));
  CHECK(sys.image(id("(0,-1)")) == id("(0,0)"));
  CHECK(sys.image(id("(3/8,-1)")) == id("(1/2,0)"));

  CHECK(sys.meta().at("preimage_free") ==
        "(3/8,0) (0,-1) (3/8,-1) (1/2,-1) (3/4,-1) (1,-1) (3/2,-1) (2,-1)");
  CHECK(sys.validate().ok());

  CHECK(gen_n_expansive(3, 4, 1).size() == 28);
  CHECK(gen_n_expansive(2, 3, 0).size() == 9);

  // Looped truncation pins the deepest cluster instead of orphaning it.
  const FiniteSystem looped = gen_n_expansive(2, 3, 1, TruncationBoundary::Loop);
  CHECK(looped.image(*looped.find_label("(3/8,0)")) == *looped.find_label("(3/8,0)"));
  CHECK(looped.image(*looped.find_label("(1/2,0)")) == *looped.find_label("(1/2,0)"));
  CHECK(looped.meta().at("preimage_free").find("(3/8,0)") == std::string::npos);

  CHECK_THROWS_AS(gen_n_expansive(1, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_n_expansive(2, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_n_expansive(2, 1, 100), std::invalid_argument);
}

TEST_CASE("random systems are valid, deterministic, and seed-sensitive") {
  for (const RandomMode mode : {RandomMode::Plane, RandomMode::Matrix}) {
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
      const FiniteSystem sys = gen_random(seed, 7, mode);
      CAPTURE(sys.meta().at("generator"));
      CHECK(sys.size() == 7);
      CHECK(sys.validate().ok());
      CHECK(sys == gen_random(seed, 7, mode));
      CHECK(save_system(sys) == save_system(gen_random(seed, 7, mode)));
    }
  }
  CHECK(gen_random(1, 7, RandomMode::Plane) != gen_random(2, 7, RandomMode::Plane));
  CHECK(gen_random(3, 1, RandomMode::Matrix).size() == 1);

  // Plane coordinates live on the thousandth grid inside the unit square.
  const FiniteSystem plane = gen_random(9, 8, RandomMode::Plane);
  for (const Point& p : plane.points()) {
    REQUIRE(p.coords.has_value());
    for (const Rational& c : *p.coords) {
      CHECK(c >= 0);
      CHECK(c <= 1);
      CHECK(Rational(rq(1000) * c).get_den() == 1);
    }
  }

  CHECK_THROWS_AS(gen_random(1, 0, RandomMode::Plane), std::invalid_argument);
  CHECK_THROWS_AS(gen_random(1, 11, RandomMode::Plane), std::invalid_argument);
}

TEST_CASE("generator metadata names the family and parameters") {
  CHECK(gen_not_onto(2).meta().at("generator") == "not_onto(N=2)");
  CHECK(gen_periodic_shift(2, 2, ShiftSide::One).meta().at("generator") ==
        "periodic_shift(alphabet=2,period=2,side=one)");
  CHECK(gen_n_expansive(2, 3, 1).meta().at("generator") ==
        "n_expansive(n=2,K=3,M=1,boundary=open)");
  CHECK(gen_random(5, 6, RandomMode::Matrix).meta().at("generator") ==
        "random(seed=5,npoints=6,mode=matrix)");
}
