#pragma once

#include <cstdint>

#include "shadowlab/rational.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab {

/// All generators are deterministic: identical parameters produce identical
/// systems (point order, labels, metric, map, meta). Each records its
/// parameters under meta["generator"].

/// k-cycle with unit pairwise distances; single point when k = 1.
FiniteSystem gen_cycle(unsigned k);

/// Two fixed points on the line at distance d > 0.
FiniteSystem gen_two_fixed(const Rational& d);

/// Three points p, q, r with d(p,q) = 1, d(p,r) = d(q,r) = 2 and every point
/// mapped to the fixed point r.
FiniteSystem gen_merge();

/// Line system {-1, -1/2, 0} with the powers 1, 1/2, ..., 1/2^N; doubling on
/// the powers (truncated at 1/2^N), -1 -> -1/2 -> 0, fixed points 0 and 1.
/// Not onto: -1 has no preimage. pre: N >= 1.
FiniteSystem gen_not_onto(unsigned N);

/// Identity map on {1, 1/2, ..., 1/2^N, 0} (N + 2 points).
FiniteSystem gen_identity_cantor(unsigned N);

enum class ShiftSide { One, Two };

/// All periodic sequences of least period <= period_bound over a digit
/// alphabet (size 2..10), under the left shift. A sequence is encoded by its
/// primitive word w, with s_i = w[i mod |w|] (also for negative i on the
/// two-sided reading). Metric 2^(-m), m the least |i| (TWO) or least i >= 0
/// (ONE) where two sequences disagree.
FiniteSystem gen_periodic_shift(unsigned alphabet, unsigned period_bound, ShiftSide side);

enum class TruncationBoundary { Open, Loop };

/// Planar family with n-point equidistant clusters Y_j spanning
/// [3/2^j, 4/2^j] at depth j = 1..K, anchors (0,0) and (3,0), M downward
/// copies losing their rightmost point level by level, a descending chain at
/// x = 0, and the far fixed point (0,-2). Each Y_j funnels to the leftmost
/// point of Y_{j-1}; copied levels advance one position while climbing.
/// OPEN leaves the deepest points without preimages (recorded in
/// meta["preimage_free"]); LOOP pins the deepest Y level fixed instead.
/// pre: n >= 2, K >= 1.
FiniteSystem gen_n_expansive(unsigned n, unsigned K, unsigned M,
                             TruncationBoundary boundary = TruncationBoundary::Open);

enum class RandomMode { Plane, Matrix };

/// Seeded pseudo-random system: PLANE places points on the grid
/// {k/1000} x {k/1000} inside the unit square; MATRIX draws distances in
/// [1/32, 3] and repairs them to a metric by shortest paths. The map is
/// uniform. pre: 1 <= npoints <= 10.
FiniteSystem gen_random(std::uint64_t seed, unsigned npoints, RandomMode mode);

}  // namespace shadowlab
