#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "replay.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/generators.hpp"
#include "shadowlab/lattice.hpp"
#include "shadowlab/shadowing.hpp"
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

TEST_CASE("shadow kind names round-trip") {
  for (const ShadowKind kind : {ShadowKind::Forward, ShadowKind::Backward, ShadowKind::TwoSided,
                                ShadowKind::H, ShadowKind::SLimit}) {
    CHECK(parse_shadow_kind(to_string(kind)) == kind);
  }
  CHECK(to_string(ShadowKind::TwoSided) == "twosided");
  CHECK(to_string(ShadowKind::SLimit) == "slimit");
  CHECK_THROWS_AS(parse_shadow_kind("sideways"), ParseError);
}

TEST_CASE("pseudo-orbit graph keeps true edges and honors strictness") {
  const FiniteSystem sys = gen_merge();
  // Below every positive edge weight only the true edges x -> r remain.
  const PseudoOrbitGraph tight = pseudo_graph(sys, th(1, 2));
  for (PointId x = 0; x < sys.size(); ++x) {
    CHECK(tight.out[x] == std::vector<PointId>{sys.image(x)});
  }
  // Above the largest edge weight the graph is complete.
  const PseudoOrbitGraph loose = pseudo_graph(sys, th(5, 2));
  for (PointId x = 0; x < sys.size(); ++x) {
    CHECK(loose.out[x].size() == sys.size());
  }
  CHECK_THROWS_AS(pseudo_graph(sys, Threshold::zero()), std::invalid_argument);
}

TEST_CASE("left-extendable set matches the independent fixpoint oracle") {
  const FiniteSystem systems[] = {gen_merge(), gen_not_onto(3), gen_random(11, 7, RandomMode::Plane),
                                  gen_random(12, 7, RandomMode::Matrix)};
  for (const FiniteSystem& sys : systems) {
    CAPTURE(sys.meta().at("generator"));
    const ValueLattice edges = edge_lattice(sys);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Threshold delta = edges.threshold_at(i);
      if (!delta.is_positive()) continue;
      CHECK(left_extendable_set(pseudo_graph(sys, delta)) ==
            testing::oracle_left_extendable(sys, delta));
    }
    CHECK(left_extendable_set(pseudo_graph(sys, Threshold::unbounded())) ==
          testing::oracle_left_extendable(sys, Threshold::unbounded()));
  }
}

TEST_CASE("merge system: forward shadowing up to the fixed point's distance") {
  const FiniteSystem sys = gen_merge();
  const Threshold eps = th(3, 2);

  CHECK(decide_forward(sys, eps, th(2)).holds);
  const DecideResult loose = decide_forward(sys, eps, Threshold::unbounded());
  REQUIRE_FALSE(loose.holds);
  REQUIRE(loose.witness.has_value());
  CHECK(testing::replay_shadow_witness(sys, ShadowKind::Forward, eps, Threshold::unbounded(),
                                       loose.witness->nodes));

  const ModulusReport report = modulus(sys, ShadowKind::Forward, eps);
  CHECK(report.modulus == th(2));
  CHECK(report.witness_delta == Threshold::unbounded());
  REQUIRE(report.witness.has_value());
  CHECK(labels_of(sys, report.witness->nodes) == std::vector<std::string>{"p", "p"});
}

TEST_CASE("not-onto chain: forward modulus collapses to the truncation scale") {
  for (unsigned N : {1u, 2u, 3u}) {
    CAPTURE(N);
    const FiniteSystem sys = gen_not_onto(N);
    const ModulusReport report = modulus(sys, ShadowKind::Forward, th(1, 3));
    CHECK(report.modulus == Threshold::from_square(rq(1, 1l << (2 * N))));
    REQUIRE(report.witness_delta.has_value());
    REQUIRE(report.witness.has_value());

    // Replay the engine's witness and cross-check with the brute-force search.
    CHECK(testing::replay_shadow_witness(sys, ShadowKind::Forward, th(1, 3),
                                         *report.witness_delta, report.witness->nodes));
    const auto oracle = testing::oracle_unshadowed_forward(sys, th(1, 3), *report.witness_delta,
                                                           2 * sys.size());
    REQUIRE(oracle.has_value());
    CHECK(testing::replay_shadow_witness(sys, ShadowKind::Forward, th(1, 3), *report.witness_delta,
                                         *oracle));
    // At the modulus itself no pseudo-orbit escapes the oracle either.
    CHECK_FALSE(testing::oracle_unshadowed_forward(sys, th(1, 3), report.modulus, 2 * sys.size())
                    .has_value());
  }

  const FiniteSystem sys3 = gen_not_onto(3);
  const ModulusReport report = modulus(sys3, ShadowKind::Forward, th(1, 3));
  CHECK(report.modulus == th(1, 8));
  CHECK(labels_of(sys3, report.witness->nodes) ==
        std::vector<std::string>{"-1/2", "1/8", "1/4", "1/2"});
}

TEST_CASE("periodic shift: forward modulus at a quarter") {
  const FiniteSystem sys = gen_periodic_shift(2, 2, ShiftSide::Two);
  REQUIRE(sys.size() == 4);
  const ModulusReport report = modulus(sys, ShadowKind::Forward, th(1, 4));
  CHECK(report.modulus == th(1, 2));
  REQUIRE(report.witness.has_value());
  CHECK(labels_of(sys, report.witness->nodes) == std::vector<std::string>{"0", "01"});
  CHECK(testing::replay_shadow_witness(sys, ShadowKind::Forward, th(1, 4), *report.witness_delta,
                                       report.witness->nodes));
}

TEST_CASE("backward and two-sided deciders agree everywhere") {
  const FiniteSystem systems[] = {gen_merge(), gen_not_onto(2), gen_periodic_shift(2, 2, ShiftSide::Two),
                                  gen_random(21, 6, RandomMode::Plane)};
  for (const FiniteSystem& sys : systems) {
    CAPTURE(sys.meta().at("generator"));
    const ValueLattice pairs = pair_lattice(sys);
    const ValueLattice edges = edge_lattice(sys);
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const Threshold eps = pairs.threshold_at(pi);
      for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        const Threshold delta = edges.threshold_at(ei);
        if (!delta.is_positive()) continue;
        const DecideResult bw = decide_backward(sys, eps, delta);
        const DecideResult ts = decide_two_sided(sys, eps, delta);
        CHECK(bw.holds == ts.holds);
      }
    }
  }
}

TEST_CASE("two-sided witnesses start from left-extendable nodes") {
  const FiniteSystem sys = gen_not_onto(2);
  const ModulusReport report = modulus(sys, ShadowKind::TwoSided, th(1, 3));
  if (report.witness) {
    CHECK(testing::replay_shadow_witness(sys, ShadowKind::TwoSided, th(1, 3),
                                         *report.witness_delta, report.witness->nodes));
  }
  // Restricting starts can only help, so two-sided dominates forward.
  const ModulusReport fwd = modulus(sys, ShadowKind::Forward, th(1, 3));
  CHECK(report.modulus >= fwd.modulus);
}

TEST_CASE("h-shadowing demands the exact final hit") {
  const FiniteSystem sys = gen_identity_cantor(3);
  const Threshold eps = th(1, 4);
  const Threshold delta_min = *edge_lattice(sys).smallest_positive();
  CHECK(decide_h(sys, eps, delta_min).holds);

  // With generous steps a pseudo-orbit can drift further than any single
  // point's reach, so some h-failure appears; its witness must replay.
  const ModulusReport report = modulus(sys, ShadowKind::H, eps);
  REQUIRE(report.witness.has_value());
  CHECK(testing::replay_shadow_witness(sys, ShadowKind::H, eps, *report.witness_delta,
                                       report.witness->nodes));
  const auto oracle =
      testing::oracle_unshadowed_h(sys, eps, *report.witness_delta, 2 * sys.size());
  CHECK(oracle.has_value());
}

TEST_CASE("s-limit witnesses replay against the tail simulation") {
  const FiniteSystem sys = gen_not_onto(2);
  const ModulusReport report = modulus(sys, ShadowKind::SLimit, th(1, 3));
  if (report.witness) {
    CHECK(testing::replay_shadow_witness(sys, ShadowKind::SLimit, th(1, 3), *report.witness_delta,
                                         report.witness->nodes));
  }
  // s-limit is at least as demanding as plain forward shadowing.
  CHECK(modulus(sys, ShadowKind::Forward, th(1, 3)).modulus >= report.modulus);
}

TEST_CASE("the generic dispatcher matches the named deciders") {
  const FiniteSystem sys = gen_merge();
  const Threshold eps = th(3, 2);
  for (const ShadowKind kind : {ShadowKind::Forward, ShadowKind::Backward, ShadowKind::TwoSided,
                                ShadowKind::H, ShadowKind::SLimit}) {
    const DecideResult via_dispatch = decide(sys, kind, eps, th(2));
    const DecideResult direct = [&] {
      switch (kind) {
        case ShadowKind::Forward: return decide_forward(sys, eps, th(2));
        case ShadowKind::Backward: return decide_backward(sys, eps, th(2));
        case ShadowKind::TwoSided: return decide_two_sided(sys, eps, th(2));
        case ShadowKind::H: return decide_h(sys, eps, th(2));
        case ShadowKind::SLimit: return decide_s_limit(sys, eps, th(2));
      }
      throw std::logic_error("unreachable");
    }();
    CHECK(via_dispatch.holds == direct.holds);
  }
}

TEST_CASE("degenerate thresholds are rejected") {
  const FiniteSystem sys = gen_merge();
  CHECK_THROWS_AS(decide_forward(sys, Threshold::zero(), th(1)), std::invalid_argument);
  CHECK_THROWS_AS(decide_forward(sys, th(1), Threshold::zero()), std::invalid_argument);
  CHECK_THROWS_AS(modulus(sys, ShadowKind::Forward, Threshold::zero()), std::invalid_argument);
}

TEST_CASE("systems beyond the mask width raise BudgetError") {
  std::vector<Point> points;
  std::vector<PointId> map;
  for (long i = 0; i < 65; ++i) {
    points.push_back(Point{"g" + std::to_string(i), std::vector<Rational>{rq(i)}});
    map.push_back(static_cast<PointId>(i));
  }
  const FiniteSystem big = FiniteSystem::euclidean(std::move(points), std::move(map));
  CHECK_THROWS_AS(decide_forward(big, th(1), th(1)), BudgetError);
}

TEST_CASE("modulus reports serialize with labeled witnesses") {
  const FiniteSystem sys = gen_merge();
  const ModulusReport report = modulus(sys, ShadowKind::Forward, th(3, 2));
  const std::string json = to_json_string(report, sys);
  CHECK(json.find("\"kind\"") != std::string::npos);
  CHECK(json.find("\"forward\"") != std::string::npos);
  CHECK(json.find("\"epsilon\"") != std::string::npos);
  CHECK(json.find("\"3/2\"") != std::string::npos);
  CHECK(json.find("\"modulus\"") != std::string::npos);
  CHECK(json.find("\"witness\"") != std::string::npos);

  // A report that never fails omits the witness.
  const ModulusReport calm = modulus(gen_cycle(1), ShadowKind::Forward, th(1));
  CHECK(calm.modulus.is_unbounded());
  CHECK(to_json_string(calm, gen_cycle(1)).find("witness") == std::string::npos);
}
