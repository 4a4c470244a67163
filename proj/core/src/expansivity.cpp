#include "shadowlab/expansivity.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "shadowlab/errors.hpp"
#include "shadowlab/lattice.hpp"

namespace shadowlab {

std::string to_string(GammaMode mode) {
  switch (mode) {
    case GammaMode::Positive: return "positive";
    case GammaMode::TwoSided: return "twosided";
  }
  throw std::logic_error("unreachable gamma mode");
}

namespace {

void require_point(const FiniteSystem& sys, PointId x) {
  if (x >= sys.size()) {
    throw std::invalid_argument("point id out of range: " + std::to_string(x));
  }
}

void require_positive_n(unsigned n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
}

void require_positive_radius(const Threshold& r) {
  if (!r.is_positive()) throw std::invalid_argument("radius must be positive");
}

/// Max squared distance along the joint orbit of (x, y); the walk stops when
/// the pair repeats or the orbits merge (distance stays zero afterwards).
Rational pair_separation(const FiniteSystem& sys, PointId x, PointId y) {
  Rational best(0);
  PointId u = x;
  PointId v = y;
  std::unordered_set<std::uint64_t> seen;
  while (u != v && seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) {
    const Rational& d = sys.squared_distance(u, v);
    if (d > best) best = d;
    u = sys.image(u);
    v = sys.image(v);
  }
  return best;
}

std::vector<char> core_membership(const FiniteSystem& sys, std::size_t* stabilization) {
  const PointId n = sys.size();
  std::vector<char> current(n, 1);
  std::size_t index = 0;
  while (true) {
    std::vector<char> next(n, 0);
    for (PointId x = 0; x < n; ++x) {
      if (current[x]) next[sys.image(x)] = 1;
    }
    if (next == current) break;
    current = std::move(next);
    ++index;
  }
  if (stabilization != nullptr) *stabilization = index;
  return current;
}

}  // namespace

std::vector<std::vector<Rational>> separation_table(const FiniteSystem& sys) {
  const PointId n = sys.size();
  std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n, Rational(0)));
  for (PointId x = 0; x < n; ++x) {
    for (PointId y = x + 1; y < n; ++y) {
      const Rational sep = pair_separation(sys, x, y);
      table[x][y] = sep;
      table[y][x] = sep;
    }
  }
  return table;
}

GammaSet gamma_plus(const FiniteSystem& sys, PointId x, const Threshold& r) {
  require_point(sys, x);
  require_positive_radius(r);
  GammaSet gamma;
  gamma.center = x;
  gamma.radius = r;
  gamma.mode = GammaMode::Positive;
  for (PointId y = 0; y < sys.size(); ++y) {
    if (r.admits_sq(pair_separation(sys, x, y))) gamma.members.push_back(y);
  }
  return gamma;
}

GammaSet gamma_two_sided(const FiniteSystem& sys, PointId x, const Threshold& r) {
  require_point(sys, x);
  require_positive_radius(r);
  const std::vector<char> core = core_membership(sys, nullptr);
  if (!core[x]) {
    throw std::invalid_argument("point '" + sys.label(x) + "' has no two-sided orbit");
  }
  // Core points are periodic, so the pair separation is already the max over
  // the joint cycle, which covers both orbit directions.
  GammaSet gamma;
  gamma.center = x;
  gamma.radius = r;
  gamma.mode = GammaMode::TwoSided;
  for (PointId y = 0; y < sys.size(); ++y) {
    if (core[y] && r.admits_sq(pair_separation(sys, x, y))) gamma.members.push_back(y);
  }
  return gamma;
}

PositiveExpansivityDecision is_positively_n_expansive_at(const FiniteSystem& sys, unsigned n,
                                                         const Threshold& r) {
  require_positive_n(n);
  require_positive_radius(r);
  const auto table = separation_table(sys);
  for (PointId x = 0; x < sys.size(); ++x) {
    std::vector<PointId> members;
    for (PointId y = 0; y < sys.size(); ++y) {
      if (r.admits_sq(table[x][y])) members.push_back(y);
    }
    if (members.size() > n) {
      PositiveExpansivityDecision decision;
      decision.holds = false;
      decision.violation = GammaSet{x, r, GammaMode::Positive, std::move(members)};
      return decision;
    }
  }
  return {};
}

Threshold positive_expansivity_radius(const FiniteSystem& sys, unsigned n) {
  require_positive_n(n);
  const auto table = separation_table(sys);
  const ValueLattice lattice = pair_lattice(sys);
  const SweepResult sweep = monotone_sweep(lattice, [&](const Threshold& r) {
    for (PointId x = 0; x < sys.size(); ++x) {
      unsigned count = 0;
      for (PointId y = 0; y < sys.size(); ++y) {
        if (r.admits_sq(table[x][y])) ++count;
      }
      if (count > n) return false;
    }
    return true;
  });
  return sweep.supremum;
}

namespace {

struct TupleState {
  PointId anchor = 0;
  std::vector<PointId> companions;  // sorted

  bool operator==(const TupleState&) const = default;
  bool operator<(const TupleState& other) const {
    if (anchor != other.anchor) return anchor < other.anchor;
    return companions < other.companions;
  }
};

class TupleSearch {
 public:
  TupleSearch(const FiniteSystem& sys, unsigned n, const Threshold& r, const Budget& budget)
      : sys_(sys), n_(n), r_(r), budget_(budget) {
    std::size_t stab = 0;
    const auto membership = core_membership(sys, &stab);
    for (PointId x = 0; x < sys.size(); ++x) {
      if (membership[x]) core_.push_back(x);
    }
  }

  std::size_t core_size() const { return core_.size(); }

  /// First violating tuple in enumeration order, if any. Every tuple on an
  /// allowed cycle is itself enumerated as a start, so following each start's
  /// deterministic forward path until it leaves the allowed universe, merges
  /// companions, or closes a cycle is exhaustive.
  std::optional<OrbitTuple> find_violation() {
    if (core_.size() <= n_) return std::nullopt;  // vacuous; caller flags it
    std::vector<std::size_t> pick(n_ + 1);
    for (std::size_t i = 0; i <= n_; ++i) pick[i] = i;
    while (true) {
      for (const PointId anchor : core_) {
        TupleState start;
        start.anchor = anchor;
        for (const std::size_t i : pick) start.companions.push_back(core_[i]);
        if (allowed(start)) {
          if (auto hit = follow(start)) return hit;
        }
      }
      if (!next_combination(pick)) break;
    }
    return std::nullopt;
  }

 private:
  bool allowed(const TupleState& t) const {
    for (const PointId b : t.companions) {
      if (!r_.admits_sq(sys_.squared_distance(t.anchor, b))) return false;
    }
    return true;
  }

  static bool distinct(const std::vector<PointId>& sorted) {
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  TupleState step(const TupleState& t) const {
    TupleState next;
    next.anchor = sys_.image(t.anchor);
    next.companions.reserve(t.companions.size());
    for (const PointId b : t.companions) next.companions.push_back(sys_.image(b));
    std::sort(next.companions.begin(), next.companions.end());
    return next;
  }

  void charge() {
    if (++steps_ > budget_.max_states) {
      throw BudgetError("tuple budget exceeded (" + std::to_string(budget_.max_states) +
                        " tuple steps)");
    }
  }

  std::optional<OrbitTuple> follow(TupleState cur) {
    std::set<TupleState> on_path;
    while (true) {
      charge();
      if (!on_path.insert(cur).second) {
        // Revisited tuples lie on the cycle: allowed and companion-distinct
        // at every recurrence, i.e. a two-sided violation.
        return OrbitTuple{cur.anchor, cur.companions};
      }
      cur = step(cur);
      if (!distinct(cur.companions) || !allowed(cur)) return std::nullopt;
    }
  }

  bool next_combination(std::vector<std::size_t>& pick) const {
    const std::size_t k = pick.size();
    const std::size_t m = core_.size();
    std::size_t i = k;
    while (i-- > 0) {
      if (pick[i] + (k - i) < m) {
        ++pick[i];
        for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  const FiniteSystem& sys_;
  unsigned n_;
  Threshold r_;
  Budget budget_;
  std::vector<PointId> core_;
  std::size_t steps_ = 0;
};

}  // namespace

NExpansivityDecision is_n_expansive_at(const FiniteSystem& sys, unsigned n, const Threshold& r,
                                       const Budget& budget) {
  require_positive_n(n);
  require_positive_radius(r);
  TupleSearch search(sys, n, r, budget);
  NExpansivityDecision decision;
  if (search.core_size() <= n) {
    decision.vacuous = true;
    return decision;
  }
  if (auto violation = search.find_violation()) {
    decision.holds = false;
    decision.violation = std::move(violation);
  }
  return decision;
}

NExpansivityReport n_expansivity_radius(const FiniteSystem& sys, unsigned n,
                                        const Budget& budget) {
  require_positive_n(n);
  NExpansivityReport report;
  report.n = n;
  const CoreReport core = surjective_core(sys);
  report.core_size = core.core.size();
  if (core.core.size() <= n) {
    report.vacuous = true;
    report.radius = Threshold::unbounded();
    return report;
  }
  const ValueLattice lattice = pair_lattice(sys);
  const SweepResult sweep = monotone_sweep(lattice, [&](const Threshold& r) {
    return is_n_expansive_at(sys, n, r, budget).holds;
  });
  report.radius = sweep.supremum;
  report.witness_radius = sweep.failure_at;
  if (sweep.failure_at) {
    NExpansivityDecision at_failure = is_n_expansive_at(sys, n, *sweep.failure_at, budget);
    if (at_failure.holds) {
      throw std::logic_error("n_expansivity_radius: holds at the failure threshold");
    }
    report.witness = std::move(at_failure.violation);
  }
  return report;
}

CoreReport surjective_core(const FiniteSystem& sys) {
  CoreReport report;
  const auto membership = core_membership(sys, &report.stabilization_index);
  for (PointId x = 0; x < sys.size(); ++x) {
    if (membership[x]) report.core.push_back(x);
  }
  // Independent characterization: the eventual image is exactly the set of
  // periodic points of a finite functional graph.
  for (PointId x = 0; x < sys.size(); ++x) {
    const bool periodic = sys.orbit_profile(x).preperiod == 0;
    if (periodic != (membership[x] != 0)) {
      throw std::logic_error("surjective core disagrees with the periodic point set");
    }
  }
  return report;
}

FiniteSystem restrict_to_core(const FiniteSystem& sys) {
  const CoreReport report = surjective_core(sys);
  std::vector<PointId> new_id(sys.size(), 0);
  for (std::size_t i = 0; i < report.core.size(); ++i) new_id[report.core[i]] = static_cast<PointId>(i);
  std::vector<Point> points;
  std::vector<PointId> map;
  points.reserve(report.core.size());
  map.reserve(report.core.size());
  for (const PointId old : report.core) {
    points.push_back(sys.point(old));
    map.push_back(new_id[sys.image(old)]);  // f(core) = core, image stays inside
  }
  if (sys.metric_kind() == MetricKind::Euclidean) {
    return FiniteSystem::euclidean(std::move(points), std::move(map), sys.meta());
  }
  std::vector<std::vector<Rational>> sq(report.core.size(),
                                        std::vector<Rational>(report.core.size(), Rational(0)));
  for (std::size_t i = 0; i < report.core.size(); ++i) {
    for (std::size_t j = 0; j < report.core.size(); ++j) {
      sq[i][j] = sys.squared_distance(report.core[i], report.core[j]);
    }
  }
  return FiniteSystem::matrix(std::move(points), std::move(sq), std::move(map), sys.meta());
}

std::vector<std::pair<PointId, PointId>> asymptotic_pairs(const FiniteSystem& sys) {
  std::vector<std::pair<PointId, PointId>> pairs;
  for (PointId x = 0; x < sys.size(); ++x) {
    for (PointId y = x + 1; y < sys.size(); ++y) {
      PointId u = x;
      PointId v = y;
      std::unordered_set<std::uint64_t> seen;
      while (u != v && seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) {
        u = sys.image(u);
        v = sys.image(v);
      }
      if (u == v) pairs.emplace_back(x, y);
    }
  }
  return pairs;
}

bool is_transitive(const FiniteSystem& sys) {
  if (sys.size() == 0) throw std::invalid_argument("system has no points");
  // Definitional: every point must be reached from every point in >= 1 steps.
  bool definitional = true;
  for (PointId x = 0; x < sys.size() && definitional; ++x) {
    const auto profile = sys.orbit_profile(x);
    std::size_t reached = profile.orbit.size();
    if (profile.preperiod > 0) --reached;  // x itself is never revisited
    definitional = (reached == sys.size()) && profile.preperiod == 0;
  }
  const bool characterized =
      sys.is_injective() && sys.size() > 0 && sys.orbit_profile(0).period == sys.size();
  if (definitional != characterized) {
    throw std::logic_error("transitivity checks disagree");
  }
  return definitional;
}

bool is_mixing(const FiniteSystem& sys) {
  if (sys.size() == 0) throw std::invalid_argument("system has no points");
  // Definitional: for each (x, y), f^n(x) must equal y for all large n, i.e.
  // every orbit ends in the fixed point y -- possible only for a single y.
  bool definitional = true;
  for (PointId x = 0; x < sys.size() && definitional; ++x) {
    const auto profile = sys.orbit_profile(x);
    for (PointId y = 0; y < sys.size() && definitional; ++y) {
      definitional = profile.period == 1 && profile.orbit[profile.preperiod] == y;
    }
  }
  const bool characterized = sys.size() == 1;
  if (definitional != characterized) {
    throw std::logic_error("mixing checks disagree");
  }
  return definitional;
}

LimitShadowingReport limit_shadowing_report(const FiniteSystem& sys) {
  LimitShadowingReport report;
  const auto pairs = asymptotic_pairs(sys);
  report.asymptotic_pair_count = pairs.size();
  report.unique_limit = pairs.empty();
  report.injective = sys.is_injective();
  if (report.unique_limit != report.injective) {
    throw std::logic_error("unique limit shadowing must coincide with injectivity");
  }
  return report;
}

std::string to_json_string(const GammaSet& gamma, const FiniteSystem& sys) {
  nlohmann::ordered_json j;
  j["center"] = sys.label(gamma.center);
  j["radius"] = gamma.radius.str();
  j["mode"] = to_string(gamma.mode);
  auto members = nlohmann::ordered_json::array();
  for (const PointId id : gamma.members) members.push_back(sys.label(id));
  j["members"] = members;
  return j.dump(2) + "\n";
}

std::string to_json_string(const CoreReport& report, const FiniteSystem& sys) {
  nlohmann::ordered_json j;
  auto members = nlohmann::ordered_json::array();
  for (const PointId id : report.core) members.push_back(sys.label(id));
  j["core"] = members;
  j["stabilization_index"] = report.stabilization_index;
  return j.dump(2) + "\n";
}

}  // namespace shadowlab
