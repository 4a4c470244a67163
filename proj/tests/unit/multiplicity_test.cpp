#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "replay.hpp"
#include "shadowlab/generators.hpp"
#include "shadowlab/lattice.hpp"
#include "shadowlab/multiplicity.hpp"
#include "shadowlab/system.hpp"

using namespace shadowlab;

namespace {

Rational rq(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Threshold th(long num, long den = 1) { return Threshold::from_value(rq(num, den)); }

std::vector<std::string> labels_of(const FiniteSystem& sys, const std::vector<PointId>& ids) {
  std::vector<std::string> out;
  for (const PointId id : ids) out.push_back(sys.label(id));
  return out;
}

}  // namespace

TEST_CASE("merge system: two eternal shadowers at a generous epsilon") {
  const FiniteSystem sys = gen_merge();
  const Threshold eps = th(3, 2);
  const Threshold delta = th(1, 2);

  const CountDecision one = count_at_most(sys, 1, eps, delta);
  REQUIRE_FALSE(one.holds);
  REQUIRE(one.witness.has_value());
  CHECK(one.witness->origins.size() == 2);
  CHECK(testing::replay_count_witness(sys, 1, eps, delta, *one.witness, /*two_sided=*/false));

  CHECK(count_at_most(sys, 2, eps, delta).holds);

  const CountReport report = max_shadower_count(sys, eps, delta);
  CHECK(report.max_count == 2);
  CHECK_FALSE(report.at_least);
  REQUIRE(report.witness.has_value());
  CHECK(labels_of(sys, report.witness->stem) == std::vector<std::string>{"p"});
  CHECK(labels_of(sys, report.witness->cycle) == std::vector<std::string>{"r"});
  CHECK(labels_of(sys, report.witness->origins) == std::vector<std::string>{"p", "q"});
}

TEST_CASE("merge system: all three points shadow when epsilon swallows the space") {
  const FiniteSystem sys = gen_merge();
  const CountReport full = max_shadower_count(sys, th(5, 2), th(1, 2));
  CHECK(full.max_count == 3);
  CHECK_FALSE(full.at_least);
  CHECK(testing::replay_count_witness(sys, full.max_count - 1, th(5, 2), th(1, 2), *full.witness,
                                      false));

  // A low cap stops the scan honestly.
  const CountReport capped = max_shadower_count(sys, th(5, 2), th(1, 2), /*cap=*/2);
  CHECK(capped.at_least);
  CHECK(capped.max_count == 2);
}

TEST_CASE("two-sided counting only sees extendable pseudo-orbits") {
  const FiniteSystem sys = gen_merge();
  // Forward counting finds two shadowers, but the initial p is not
  // left-extendable at delta = 1/2, so the two-sided count stays at one.
  CHECK_FALSE(count_at_most(sys, 1, th(3, 2), th(1, 2)).holds);
  CHECK(two_sided_count_at_most(sys, 1, th(3, 2), th(1, 2)).holds);

  // Two fixed points shadow each other's constant pseudo-orbits on both sides.
  const FiniteSystem fixed = gen_two_fixed(rq(1));
  const CountDecision ts = two_sided_count_at_most(fixed, 1, th(2), th(1, 2));
  REQUIRE_FALSE(ts.holds);
  REQUIRE(ts.witness.has_value());
  CHECK(testing::replay_count_witness(fixed, 1, th(2), th(1, 2), *ts.witness, /*two_sided=*/true));
  // The forward decision agrees here since every point is left-extendable.
  CHECK_FALSE(count_at_most(fixed, 1, th(2), th(1, 2)).holds);
}

TEST_CASE("below the smallest pairwise distance every count collapses") {
  for (const FiniteSystem& sys : {gen_merge(), gen_not_onto(2), gen_random(41, 6, RandomMode::Plane)}) {
    CAPTURE(sys.meta().at("generator"));
    const Threshold eta = trivial_eta(sys);
    REQUIRE(eta.is_positive());
    CHECK(count_at_most(sys, 1, eta.halved(), Threshold::unbounded()).holds);
  }
  CHECK(trivial_eta(gen_merge()) == th(1));
  CHECK(trivial_eta(gen_cycle(1)).is_unbounded());
}

TEST_CASE("unique h-shadowing fails exactly where two trackers land together") {
  const FiniteSystem sys = gen_merge();
  const UniqueHDecision bad = decide_unique_h(sys, th(3, 2), th(1, 2));
  REQUIRE_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(labels_of(sys, bad.witness->stem) == std::vector<std::string>{"p", "r"});
  CHECK(labels_of(sys, bad.witness->origins) == std::vector<std::string>{"p", "q"});
  CHECK(testing::replay_unique_h_witness(sys, th(3, 2), th(1, 2), *bad.witness));

  // On the identity system with minimal steps, trackers are frozen in place
  // and the exact-hit requirement pins the single shadower.
  const FiniteSystem cantor = gen_identity_cantor(3);
  const Threshold delta_min = *edge_lattice(cantor).smallest_positive();
  CHECK(decide_unique_h(cantor, th(1, 4), delta_min).holds);
}

TEST_CASE("n-shadow modulus joins shadowing with the count bound") {
  const FiniteSystem sys = gen_merge();
  CHECK(n_shadow_modulus(sys, 1, th(3, 2)).is_zero());
  CHECK(n_shadow_modulus(sys, 2, th(3, 2)) == th(2));
}

TEST_CASE("count reports serialize the lasso witness") {
  const FiniteSystem sys = gen_merge();
  const CountReport report = max_shadower_count(sys, th(3, 2), th(1, 2));
  const std::string json = to_json_string(report, sys);
  CHECK(json.find("\"epsilon\": \"3/2\"") != std::string::npos);
  CHECK(json.find("\"delta\": \"1/2\"") != std::string::npos);
  CHECK(json.find("\"max_count\": 2") != std::string::npos);
  CHECK(json.find("\"stem\"") != std::string::npos);
  CHECK(json.find("\"cycle\"") != std::string::npos);
  CHECK(json.find("\"origins\"") != std::string::npos);

  const CountReport capped = max_shadower_count(sys, th(5, 2), th(1, 2), 2);
  CHECK(to_json_string(capped, sys).find("\"at_least\": 2") != std::string::npos);
}

TEST_CASE("degenerate parameters are rejected") {
  const FiniteSystem sys = gen_merge();
  CHECK_THROWS_AS(count_at_most(sys, 0, th(1), th(1)), std::invalid_argument);
  CHECK_THROWS_AS(two_sided_count_at_most(sys, 0, th(1), th(1)), std::invalid_argument);
  CHECK_THROWS_AS(max_shadower_count(sys, th(1), th(1), 0), std::invalid_argument);
  CHECK_THROWS_AS(count_at_most(sys, 1, Threshold::zero(), th(1)), std::invalid_argument);
  CHECK_THROWS_AS(decide_unique_h(sys, th(1), Threshold::zero()), std::invalid_argument);
}
