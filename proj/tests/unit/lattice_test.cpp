#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "shadowlab/generators.hpp"
#include "shadowlab/lattice.hpp"
#include "shadowlab/system.hpp"

using namespace shadowlab;

namespace {

Rational rq(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Threshold th(long num, long den = 1) { return Threshold::from_value(rq(num, den)); }

Point pt(const char* label, std::vector<Rational> coords) {
  return Point{label, std::move(coords)};
}

/// Points 0, 1, 3 on the line with 0 -> 1 -> 2 -> 2: realized edge squares
/// {0, 1, 4, 9} and pair squares {1, 4, 9}.
FiniteSystem line3() {
  return FiniteSystem::euclidean({pt("a", {rq(0)}), pt("b", {rq(1)}), pt("c", {rq(3)})},
                                 {1, 2, 2});
}

}  // namespace

TEST_CASE("construction sorts and deduplicates") {
  const ValueLattice lat(LatticeKind::Pair, {rq(4), rq(1), rq(4), rq(9), rq(1)});
  CHECK(lat.size() == 3);
  CHECK(lat.squares() == std::vector<Rational>{rq(1), rq(4), rq(9)});
  CHECK(lat.threshold_at(1) == th(2));
}

TEST_CASE("edge lattice realizes d(f(x), y) and always holds zero") {
  const ValueLattice edges = edge_lattice(line3());
  CHECK(edges.squares() == std::vector<Rational>{rq(0), rq(1), rq(4), rq(9)});

  // With every point mapped to one fixed point, only its distances appear.
  const ValueLattice merged = edge_lattice(gen_merge());
  CHECK(merged.squares() == std::vector<Rational>{rq(0), rq(4)});
}

TEST_CASE("pair lattice realizes positive pairwise distances only") {
  CHECK(pair_lattice(line3()).squares() == std::vector<Rational>{rq(1), rq(4), rq(9)});
  CHECK(pair_lattice(gen_merge()).squares() == std::vector<Rational>{rq(1), rq(4)});
  CHECK(pair_lattice(gen_cycle(1)).empty());
}

TEST_CASE("membership, successor, smallest positive") {
  const ValueLattice lat = edge_lattice(line3());
  CHECK(lat.contains(th(2)));
  CHECK_FALSE(lat.contains(th(5, 2)));
  CHECK(lat.index_of(th(1)) == std::size_t{1});
  CHECK(lat.smallest_positive() == th(1));
  CHECK(lat.successor(th(0)) == th(1));
  CHECK(lat.successor(th(5, 2)) == th(3));
  CHECK(lat.successor(th(3)) == Threshold::unbounded());
  CHECK_FALSE(lat.successor(Threshold::unbounded()).has_value());
  CHECK_FALSE(pair_lattice(gen_cycle(1)).smallest_positive().has_value());
}

TEST_CASE("monotone sweep finds the exact supremum of an antitone predicate") {
  const ValueLattice lat = edge_lattice(line3());

  SUBCASE("interior supremum with early exit") {
    int calls = 0;
    const SweepResult r = monotone_sweep(lat, [&](const Threshold& t) {
      ++calls;
      return t <= th(2);
    });
    CHECK(r.supremum == th(2));
    CHECK(r.failure_at == th(3));
    CHECK(calls == 3);  // unbounded, 3, 2 — then stop
  }

  SUBCASE("predicate holding everywhere is settled by the unbounded probe") {
    int calls = 0;
    const SweepResult r = monotone_sweep(lat, [&](const Threshold&) {
      ++calls;
      return true;
    });
    CHECK(r.supremum.is_unbounded());
    CHECK_FALSE(r.failure_at.has_value());
    CHECK(calls == 1);
  }

  SUBCASE("predicate failing everywhere yields zero and the smallest probe") {
    const SweepResult r = monotone_sweep(lat, [](const Threshold&) { return false; });
    CHECK(r.supremum.is_zero());
    CHECK(r.failure_at == th(1));
  }

  SUBCASE("zero-valued members are never evaluated") {
    monotone_sweep(lat, [](const Threshold& t) {
      CHECK(t.is_positive());
      return false;
    });
  }

  SUBCASE("supremum at the top member points its failure at unbounded") {
    const SweepResult r = monotone_sweep(lat, [](const Threshold& t) { return !t.is_unbounded(); });
    CHECK(r.supremum == th(3));
    CHECK(r.failure_at == Threshold::unbounded());
  }
}

TEST_CASE("checked sweep rejects a non-antitone predicate") {
  const ValueLattice lat = edge_lattice(line3());
  // Holds only at 3: true above the falses at 1 and 2.
  auto planted = [](const Threshold& t) { return t == th(3); };
  CHECK_THROWS_AS(monotone_sweep_checked(lat, planted), std::logic_error);

  // The checked variant agrees with the plain one on genuine antitone input.
  auto antitone = [](const Threshold& t) { return t <= th(1); };
  const SweepResult a = monotone_sweep(lat, antitone);
  const SweepResult b = monotone_sweep_checked(lat, antitone);
  CHECK(a.supremum == b.supremum);
  CHECK(a.failure_at == b.failure_at);
  CHECK(a.supremum == th(1));
}
