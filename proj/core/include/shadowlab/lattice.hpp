#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "shadowlab/system.hpp"
#include "shadowlab/threshold.hpp"

namespace shadowlab {

enum class LatticeKind { Edge, Pair };

/// The finite set of realized distance values of one kind, ascending and
/// deduplicated (stored as exact squares). Threshold-indexed properties are
/// constant between consecutive members, so exact suprema are attained here
/// or at UNBOUNDED.
class ValueLattice {
 public:
  ValueLattice(LatticeKind kind, std::vector<Rational> squares);

  LatticeKind kind() const { return kind_; }
  std::size_t size() const { return squares_.size(); }
  bool empty() const { return squares_.empty(); }
  const Rational& square_at(std::size_t i) const { return squares_.at(i); }
  Threshold threshold_at(std::size_t i) const { return Threshold::from_square(squares_.at(i)); }
  const std::vector<Rational>& squares() const { return squares_; }

  bool contains(const Threshold& t) const;
  std::optional<std::size_t> index_of(const Threshold& t) const;

  /// Smallest member with positive value; nullopt when there is none.
  std::optional<Threshold> smallest_positive() const;
  /// Smallest member strictly above t (UNBOUNDED input has no successor).
  std::optional<Threshold> successor(const Threshold& t) const;

 private:
  LatticeKind kind_;
  std::vector<Rational> squares_;
};

/// Realized edge weights d(f(x), y) over all x, y. Always contains 0.
ValueLattice edge_lattice(const FiniteSystem& sys);

/// Realized pairwise distances d(x, y), x != y. All positive; empty iff |X| <= 1.
ValueLattice pair_lattice(const FiniteSystem& sys);

struct SweepResult {
  /// Exact supremum: a lattice member, zero, or UNBOUNDED; the predicate holds
  /// at the supremum itself unless the supremum is zero.
  Threshold supremum;
  /// The evaluation point just above the supremum, where the predicate was
  /// seen to fail; absent when the supremum is UNBOUNDED.
  std::optional<Threshold> failure_at;
};

/// Largest value at which an antitone predicate holds: UNBOUNDED is probed
/// first, then lattice members descend with early exit. Zero-valued members
/// are never evaluated.
SweepResult monotone_sweep(const ValueLattice& lattice,
                           const std::function<bool(const Threshold&)>& holds);

/// Same contract, but every member is evaluated and a non-antitone
/// observation (true above false) raises std::logic_error.
SweepResult monotone_sweep_checked(const ValueLattice& lattice,
                                   const std::function<bool(const Threshold&)>& holds);

}  // namespace shadowlab
