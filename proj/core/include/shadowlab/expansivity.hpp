#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/shadowing.hpp"
#include "shadowlab/system.hpp"
#include "shadowlab/threshold.hpp"

namespace shadowlab {

enum class GammaMode { Positive, TwoSided };

std::string to_string(GammaMode mode);

/// Points whose orbit stays strictly within `radius` of the center's orbit.
struct GammaSet {
  PointId center = 0;
  Threshold radius;
  GammaMode mode = GammaMode::Positive;
  std::vector<PointId> members;  // ascending ids; contains center when radius > 0
};

/// table[x][y] = sup over k >= 0 of d(f^k x, f^k y)^2. The sup is attained
/// within the joint pair orbit, which repeats after finitely many steps.
std::vector<std::vector<Rational>> separation_table(const FiniteSystem& sys);

/// Forward-orbit tracking set at strict radius r; pre: r > 0.
GammaSet gamma_plus(const FiniteSystem& sys, PointId x, const Threshold& r);

/// Full-orbit tracking set; defined only through points with two-sided
/// orbits, so x must lie in the surjective core (std::invalid_argument
/// otherwise) and members are core points.
GammaSet gamma_two_sided(const FiniteSystem& sys, PointId x, const Threshold& r);

struct PositiveExpansivityDecision {
  bool holds = true;
  std::optional<GammaSet> violation;  // a Gamma+ set with more than n members
};

/// Does every Gamma+(x, r) hold at most n points? pre: n >= 1, r > 0.
PositiveExpansivityDecision is_positively_n_expansive_at(const FiniteSystem& sys, unsigned n,
                                                         const Threshold& r);

/// Supremum radius at which positive n-expansivity holds; swept over the
/// realized pair distances, UNBOUNDED when no radius defeats it.
Threshold positive_expansivity_radius(const FiniteSystem& sys, unsigned n);

/// Anchor orbit plus companions tracking it on both sides; companions are
/// pairwise distinct and sorted (they are interchangeable).
struct OrbitTuple {
  PointId anchor = 0;
  std::vector<PointId> companions;
};

struct NExpansivityDecision {
  bool holds = true;
  bool vacuous = false;  // too few points carry two-sided orbits to violate
  std::optional<OrbitTuple> violation;
};

/// Two-sided n-expansivity at radius r: no anchor orbit is tracked on both
/// sides by n+1 pairwise distinct companions. A violating tuple must recur
/// (lie on a cycle of the coordinatewise map through allowed tuples), which
/// is exactly two-sided extendability in a deterministic system.
NExpansivityDecision is_n_expansive_at(const FiniteSystem& sys, unsigned n, const Threshold& r,
                                       const Budget& budget = {});

struct NExpansivityReport {
  unsigned n = 1;
  Threshold radius;
  bool vacuous = false;
  std::size_t core_size = 0;
  std::optional<Threshold> witness_radius;  // first lattice r where it fails
  std::optional<OrbitTuple> witness;
};

NExpansivityReport n_expansivity_radius(const FiniteSystem& sys, unsigned n,
                                        const Budget& budget = {});

/// Largest subset on which f is surjective: the intersection of the iterated
/// images, reached after stabilization_index applications.
struct CoreReport {
  std::vector<PointId> core;  // ascending ids
  std::size_t stabilization_index = 0;
};

CoreReport surjective_core(const FiniteSystem& sys);

/// Subsystem induced on the surjective core; labels, relative order, metric
/// kind and meta are preserved.
FiniteSystem restrict_to_core(const FiniteSystem& sys);

/// All {x, y}, x < y, whose orbits eventually coincide exactly (on a finite
/// space, distances converging to zero must reach zero).
std::vector<std::pair<PointId, PointId>> asymptotic_pairs(const FiniteSystem& sys);

/// A finite system is transitive iff f is a single cyclic permutation, and
/// mixing iff it is a single point. Both run the pointwise definitional check
/// alongside the characterization and throw std::logic_error on disagreement.
bool is_transitive(const FiniteSystem& sys);
bool is_mixing(const FiniteSystem& sys);

/// Limit shadowing always holds on finite systems: an exactly-converging
/// pseudo-orbit tail eventually enters the periodic part, which has
/// preimages of every order. Uniqueness is equivalent to injectivity.
struct LimitShadowingReport {
  bool limit_shadowing = true;
  bool unique_limit = false;
  bool injective = false;
  std::size_t asymptotic_pair_count = 0;
};

LimitShadowingReport limit_shadowing_report(const FiniteSystem& sys);

std::string to_json_string(const GammaSet& gamma, const FiniteSystem& sys);
std::string to_json_string(const CoreReport& report, const FiniteSystem& sys);

}  // namespace shadowlab
