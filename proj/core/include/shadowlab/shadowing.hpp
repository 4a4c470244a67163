#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shadowlab/system.hpp"
#include "shadowlab/threshold.hpp"

namespace shadowlab {

/// Shadowing-style properties decided by the survivor automaton.
enum class ShadowKind { Forward, Backward, TwoSided, H, SLimit };

std::string to_string(ShadowKind kind);
ShadowKind parse_shadow_kind(const std::string& text);

/// Caps the number of automaton states kept by a single decision; exceeding it
/// raises BudgetError rather than returning a wrong answer.
struct Budget {
  std::size_t max_states = 5'000'000;
};

/// Directed graph of admissible single steps: an edge x -> y exists when a
/// delta-pseudo-orbit at x may continue with y, i.e. d(f(x), y) < delta.
/// Every node keeps its true edge x -> f(x), so out-degrees are >= 1.
struct PseudoOrbitGraph {
  Threshold delta;
  std::vector<std::vector<PointId>> out;  // ascending successor ids per node
};

/// Throws std::invalid_argument unless delta is positive (UNBOUNDED allowed).
PseudoOrbitGraph pseudo_graph(const FiniteSystem& sys, const Threshold& delta);

/// Nodes admitting arbitrarily long walks arriving at them, ascending ids.
/// Computed by pruning nodes of in-degree zero to a fixpoint.
std::vector<PointId> left_extendable_set(const PseudoOrbitGraph& graph);

/// A pseudo-orbit, as consecutive node ids, that defeats every candidate
/// shadower for the property under test.
struct Witness {
  std::vector<PointId> nodes;
};

struct DecideResult {
  bool holds = true;
  std::optional<Witness> witness;
};

/// Each decider answers: does the property hold at this exact (epsilon, delta)
/// pair? Both thresholds must be positive (UNBOUNDED allowed for either);
/// zero thresholds raise std::invalid_argument. Systems larger than 64 points
/// exceed the survivor-mask width and raise BudgetError.
DecideResult decide_forward(const FiniteSystem& sys, const Threshold& epsilon,
                            const Threshold& delta, const Budget& budget = {});
DecideResult decide_backward(const FiniteSystem& sys, const Threshold& epsilon,
                             const Threshold& delta, const Budget& budget = {});
DecideResult decide_two_sided(const FiniteSystem& sys, const Threshold& epsilon,
                              const Threshold& delta, const Budget& budget = {});
DecideResult decide_h(const FiniteSystem& sys, const Threshold& epsilon,
                      const Threshold& delta, const Budget& budget = {});
DecideResult decide_s_limit(const FiniteSystem& sys, const Threshold& epsilon,
                            const Threshold& delta, const Budget& budget = {});

/// S-limit check restricted to left-extendable starts; used by consistency
/// harnesses rather than exposed as a ShadowKind.
DecideResult decide_two_sided_s_limit(const FiniteSystem& sys, const Threshold& epsilon,
                                      const Threshold& delta, const Budget& budget = {});

DecideResult decide(const FiniteSystem& sys, ShadowKind kind, const Threshold& epsilon,
                    const Threshold& delta, const Budget& budget = {});

/// Largest admissible step bound for a fixed epsilon, together with the
/// evidence gathered at the first threshold past it.
struct ModulusReport {
  ShadowKind kind = ShadowKind::Forward;
  Threshold epsilon;
  Threshold modulus;
  std::optional<Threshold> witness_delta;  // first lattice value where it fails
  std::optional<Witness> witness;          // failing pseudo-orbit at that delta
};

/// Sweeps the edge-value lattice of the system; the supremum is exact because
/// the decider's verdict can only change at realized edge values.
ModulusReport modulus(const FiniteSystem& sys, ShadowKind kind, const Threshold& epsilon,
                      const Budget& budget = {});

/// {"kind", "epsilon", "modulus", "witness"}; witness (point labels) is
/// omitted when the property holds at every bound.
std::string to_json_string(const ModulusReport& report, const FiniteSystem& sys);

}  // namespace shadowlab
