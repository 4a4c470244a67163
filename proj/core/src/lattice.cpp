#include "shadowlab/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace shadowlab {

ValueLattice::ValueLattice(LatticeKind kind, std::vector<Rational> squares)
    : kind_(kind), squares_(std::move(squares)) {
  std::sort(squares_.begin(), squares_.end());
  squares_.erase(std::unique(squares_.begin(), squares_.end()), squares_.end());
}

bool ValueLattice::contains(const Threshold& t) const { return index_of(t).has_value(); }

std::optional<std::size_t> ValueLattice::index_of(const Threshold& t) const {
  if (t.is_unbounded()) return std::nullopt;
  const auto it = std::lower_bound(squares_.begin(), squares_.end(), t.square());
  if (it == squares_.end() || *it != t.square()) return std::nullopt;
  return static_cast<std::size_t>(it - squares_.begin());
}

std::optional<Threshold> ValueLattice::smallest_positive() const {
  for (const Rational& sq : squares_) {
    if (sgn(sq) > 0) return Threshold::from_square(sq);
  }
  return std::nullopt;
}

std::optional<Threshold> ValueLattice::successor(const Threshold& t) const {
  if (t.is_unbounded()) return std::nullopt;
  const auto it = std::upper_bound(squares_.begin(), squares_.end(), t.square());
  if (it == squares_.end()) return Threshold::unbounded();
  return Threshold::from_square(*it);
}

ValueLattice edge_lattice(const FiniteSystem& sys) {
  std::vector<Rational> squares;
  squares.reserve(static_cast<std::size_t>(sys.size()) * sys.size());
  for (PointId x = 0; x < sys.size(); ++x) {
    const PointId fx = sys.image(x);
    for (PointId y = 0; y < sys.size(); ++y) {
      squares.push_back(sys.squared_table()[fx][y]);
    }
  }
  return ValueLattice(LatticeKind::Edge, std::move(squares));
}

ValueLattice pair_lattice(const FiniteSystem& sys) {
  std::vector<Rational> squares;
  for (PointId x = 0; x < sys.size(); ++x) {
    for (PointId y = x + 1; y < sys.size(); ++y) {
      squares.push_back(sys.squared_table()[x][y]);
    }
  }
  return ValueLattice(LatticeKind::Pair, std::move(squares));
}

namespace {

SweepResult sweep_impl(const ValueLattice& lattice,
                       const std::function<bool(const Threshold&)>& holds, bool checked) {
  const bool top = holds(Threshold::unbounded());
  if (top && !checked) return {Threshold::unbounded(), std::nullopt};

  // Descending evaluation; an antitone predicate shows falses first, then
  // trues. A false below a true is an internal-consistency failure.
  std::optional<std::size_t> best;
  bool seen_true = top;
  for (std::size_t idx = lattice.size(); idx-- > 0;) {
    if (sgn(lattice.square_at(idx)) == 0) continue;  // thresholds are positive
    const bool ok = holds(lattice.threshold_at(idx));
    if (ok) {
      if (!best) best = idx;
      seen_true = true;
      if (!checked) break;
    } else if (seen_true) {
      throw std::logic_error("monotone_sweep: predicate not antitone across the lattice");
    }
  }

  if (top) return {Threshold::unbounded(), std::nullopt};
  if (!best) {
    SweepResult result;
    result.supremum = Threshold::zero();
    if (auto sp = lattice.smallest_positive()) {
      result.failure_at = *sp;
    } else {
      result.failure_at = Threshold::unbounded();
    }
    return result;
  }
  SweepResult result;
  result.supremum = lattice.threshold_at(*best);
  result.failure_at = lattice.successor(result.supremum);
  return result;
}

}  // namespace

SweepResult monotone_sweep(const ValueLattice& lattice,
                           const std::function<bool(const Threshold&)>& holds) {
  return sweep_impl(lattice, holds, false);
}

SweepResult monotone_sweep_checked(const ValueLattice& lattice,
                                   const std::function<bool(const Threshold&)>& holds) {
  return sweep_impl(lattice, holds, true);
}

}  // namespace shadowlab
