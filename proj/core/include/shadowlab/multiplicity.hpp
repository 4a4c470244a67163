#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shadowlab/shadowing.hpp"
#include "shadowlab/system.hpp"
#include "shadowlab/threshold.hpp"

namespace shadowlab {

/// Certificate that several distinct points track one pseudo-orbit forever:
/// the pseudo-orbit is a lasso (stem, then cycle repeated), and simulating
/// the origins along stem + one cycle traversal returns to the same tracker
/// configuration, so survival continues indefinitely.
struct TupleWitness {
  std::vector<PointId> stem;     // nodes before the cycle entry
  std::vector<PointId> cycle;    // nodes of one full cycle traversal
  std::vector<PointId> origins;  // pairwise distinct starting trackers
};

struct CountDecision {
  bool holds = true;
  std::optional<TupleWitness> witness;
};

/// Is every delta-pseudo-orbit epsilon-shadowed by at most n distinct points?
/// Trackers start pairwise distinct and may merge later; failure means some
/// initial tuple survives into a cycle of the tuple automaton. pre: n >= 1.
CountDecision count_at_most(const FiniteSystem& sys, unsigned n, const Threshold& epsilon,
                            const Threshold& delta, const Budget& budget = {});

/// Two-sided variant: the n+1 trackers must extend to full orbits tracking a
/// bi-infinite pseudo-orbit. A violating tuple is one with distinct positions
/// both reachable from a cycle and able to reach a cycle of the allowed tuple
/// graph. pre: n >= 1.
CountDecision two_sided_count_at_most(const FiniteSystem& sys, unsigned n,
                                      const Threshold& epsilon, const Threshold& delta,
                                      const Budget& budget = {});

/// max_count is exact when at_least is false; otherwise cap many shadowers
/// were reached and the scan stopped. The witness exhibits max_count eternal
/// shadowers (or cap of them when at_least).
struct CountReport {
  Threshold epsilon;
  Threshold delta;
  unsigned max_count = 1;
  bool at_least = false;
  std::optional<TupleWitness> witness;
};

/// Largest m <= cap such that some delta-pseudo-orbit has m eternal
/// epsilon-shadowers, found by scanning count_at_most upward. pre: cap >= 1.
CountReport max_shadower_count(const FiniteSystem& sys, const Threshold& epsilon,
                               const Threshold& delta, unsigned cap = 8,
                               const Budget& budget = {});

/// sup { delta : forward shadowing and count_at_most(n) both hold }, swept
/// over realized edge values; both conjuncts only get harder as delta grows.
Threshold n_shadow_modulus(const FiniteSystem& sys, unsigned n, const Threshold& epsilon,
                           const Budget& budget = {});

struct UniqueHDecision {
  bool holds = true;
  /// On failure: stem is the pseudo-orbit; origins are two distinct trackers
  /// with exact final hits (empty when plain h-shadowing already failed).
  std::optional<TupleWitness> witness;
};

/// Holds iff h-shadowing holds and no finite pseudo-orbit has two distinct
/// exact-hit trackers (pair automaton reaching p = q = current node).
UniqueHDecision decide_unique_h(const FiniteSystem& sys, const Threshold& epsilon,
                                const Threshold& delta, const Budget& budget = {});

/// Smallest positive pairwise distance: below it all balls are singletons,
/// so every shadower count collapses to 1. UNBOUNDED for one-point systems.
Threshold trivial_eta(const FiniteSystem& sys);

/// {"epsilon", "delta", "max_count" (integer, or {"at_least": cap}),
///  "witness": {"stem", "cycle", "origins"} with point labels}.
std::string to_json_string(const CountReport& report, const FiniteSystem& sys);

}  // namespace shadowlab
