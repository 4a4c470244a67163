#include "shadowlab/shadowing.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "shadowlab/errors.hpp"
#include "shadowlab/lattice.hpp"

namespace shadowlab {

std::string to_string(ShadowKind kind) {
  switch (kind) {
    case ShadowKind::Forward: return "forward";
    case ShadowKind::Backward: return "backward";
    case ShadowKind::TwoSided: return "twosided";
    case ShadowKind::H: return "h";
    case ShadowKind::SLimit: return "slimit";
  }
  throw std::logic_error("unreachable shadow kind");
}

ShadowKind parse_shadow_kind(const std::string& text) {
  if (text == "forward") return ShadowKind::Forward;
  if (text == "backward") return ShadowKind::Backward;
  if (text == "twosided") return ShadowKind::TwoSided;
  if (text == "h") return ShadowKind::H;
  if (text == "slimit") return ShadowKind::SLimit;
  throw ParseError("unknown shadowing kind: " + text);
}

PseudoOrbitGraph pseudo_graph(const FiniteSystem& sys, const Threshold& delta) {
  if (!delta.is_positive()) throw std::invalid_argument("delta must be positive");
  PseudoOrbitGraph graph;
  graph.delta = delta;
  graph.out.resize(sys.size());
  for (PointId x = 0; x < sys.size(); ++x) {
    const auto& row = sys.squared_table()[sys.image(x)];
    for (PointId y = 0; y < sys.size(); ++y) {
      if (delta.admits_sq(row[y])) graph.out[x].push_back(y);
    }
  }
  return graph;
}

std::vector<PointId> left_extendable_set(const PseudoOrbitGraph& graph) {
  const PointId n = static_cast<PointId>(graph.out.size());
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& successors : graph.out) {
    for (PointId y : successors) ++indegree[y];
  }
  // Peel nodes nothing points at; what survives has an in-neighbor that also
  // survives, hence arbitrarily long incoming walks.
  std::vector<char> alive(n, 1);
  std::vector<PointId> stack;
  for (PointId x = 0; x < n; ++x) {
    if (indegree[x] == 0) stack.push_back(x);
  }
  while (!stack.empty()) {
    const PointId x = stack.back();
    stack.pop_back();
    alive[x] = 0;
    for (PointId y : graph.out[x]) {
      if (--indegree[y] == 0) stack.push_back(y);
    }
  }
  std::vector<PointId> result;
  for (PointId x = 0; x < n; ++x) {
    if (alive[x]) result.push_back(x);
  }
  return result;
}

namespace {

using Mask = std::uint64_t;

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

/// What makes a reached (node, survivors) state a counterexample.
enum class FailureRule { EmptySet, MissingCurrent, SLimit };

struct StateRec {
  PointId node = 0;
  Mask mask = 0;
  std::size_t parent = kNoParent;
};

struct PairKey {
  PointId node = 0;
  Mask mask = 0;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& key) const {
    std::uint64_t h = 1469598103934665603ULL;
    h = (h ^ key.mask) * 1099511628211ULL;
    h = (h ^ key.node) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

/// Breadth-first exploration of (node, survivor-set) states. The survivor set
/// holds every point whose orbit has stayed epsilon-close to the pseudo-orbit
/// built so far; a state failing the rule yields the witness pseudo-orbit by
/// following parent links.
class SurvivorEngine {
 public:
  SurvivorEngine(const FiniteSystem& sys, const Threshold& epsilon, const Threshold& delta,
                 bool restrict_initials, FailureRule rule, const Budget& budget)
      : sys_(sys), rule_(rule), budget_(budget), graph_(pseudo_graph(sys, delta)) {
    if (!epsilon.is_positive()) throw std::invalid_argument("epsilon must be positive");
    const PointId n = sys.size();
    if (n > 64) {
      throw BudgetError("survivor automaton supports at most 64 points; system has " +
                        std::to_string(n));
    }
    ball_.assign(n, 0);
    for (PointId x = 0; x < n; ++x) {
      for (PointId y = 0; y < n; ++y) {
        if (epsilon.admits_sq(sys.squared_table()[x][y])) ball_[x] |= Mask{1} << y;
      }
    }
    if (restrict_initials) {
      initials_ = left_extendable_set(graph_);
    } else {
      initials_.resize(n);
      std::iota(initials_.begin(), initials_.end(), PointId{0});
    }
    kept_.resize(n);
  }

  DecideResult run() {
    for (PointId x : initials_) {
      const Mask mask = ball_[x];
      if (fails(x, mask)) return failure(kNoParent, x, mask);
      push_state(x, mask, kNoParent);
    }
    for (std::size_t head = 0; head < states_.size(); ++head) {
      const PointId x = states_[head].node;
      const Mask stepped = step_mask(states_[head].mask);
      for (PointId y : graph_.out[x]) {
        const Mask mask = stepped & ball_[y];
        // Failure must be tested before subsumption: a dominated state cannot
        // fail unless its dominating subset also fails, but that subset's
        // failure may lie deeper in the search.
        if (fails(y, mask)) return failure(head, y, mask);
        if (dominated(y, mask)) continue;
        push_state(y, mask, head);
      }
    }
    return {};
  }

 private:
  Mask step_mask(Mask m) const {
    Mask r = 0;
    while (m != 0) {
      const int i = std::countr_zero(m);
      m &= m - 1;
      r |= Mask{1} << sys_.image(static_cast<PointId>(i));
    }
    return r;
  }

  /// A kept survivor subset at the same node fails whenever this one would.
  bool dominated(PointId node, Mask mask) const {
    for (const Mask kept : kept_[node]) {
      if ((kept & ~mask) == 0) return true;
    }
    return false;
  }

  void push_state(PointId node, Mask mask, std::size_t parent) {
    if (states_.size() >= budget_.max_states) {
      throw BudgetError("state budget exceeded (" + std::to_string(budget_.max_states) +
                        " states)");
    }
    states_.push_back({node, mask, parent});
    kept_[node].push_back(mask);
  }

  bool fails(PointId node, Mask mask) {
    switch (rule_) {
      case FailureRule::EmptySet:
        return mask == 0;
      case FailureRule::MissingCurrent:
        return ((mask >> node) & 1) == 0;
      case FailureRule::SLimit:
        return !slimit_ok(node, mask);
    }
    throw std::logic_error("unreachable failure rule");
  }

  /// Continue the pseudo-orbit along the true orbit of `node` (always an
  /// admissible step). Some survivor must eventually coincide with it, i.e.
  /// the orbit point must re-enter the survivor set; the continuation is
  /// deterministic, so if no coincidence happens before a (node, survivors)
  /// pair repeats, it never will.
  bool slimit_ok(PointId node, Mask mask) {
    std::vector<PairKey> path;
    std::unordered_set<PairKey, PairKeyHash> on_path;
    PairKey cur{node, mask};
    bool verdict = false;
    while (true) {
      if (const auto it = memo_.find(cur); it != memo_.end()) {
        verdict = it->second;
        break;
      }
      if ((cur.mask >> cur.node) & 1) {
        memo_.emplace(cur, true);
        verdict = true;
        break;
      }
      if (!on_path.insert(cur).second) {  // closed a coincidence-free loop
        verdict = false;
        break;
      }
      path.push_back(cur);
      const PointId next = sys_.image(cur.node);
      cur = PairKey{next, step_mask(cur.mask) & ball_[next]};
    }
    for (const PairKey& key : path) memo_.emplace(key, verdict);
    return verdict;
  }

  /// True-orbit continuation of a failing state, up to the first repeated
  /// (node, survivors) pair; appended to the witness so it exhibits the full
  /// coincidence-free loop.
  std::vector<PointId> slimit_continuation(PointId node, Mask mask) const {
    std::vector<PointId> nodes;
    std::unordered_set<PairKey, PairKeyHash> seen;
    PairKey cur{node, mask};
    seen.insert(cur);
    while (true) {
      const PointId next = sys_.image(cur.node);
      cur = PairKey{next, step_mask(cur.mask) & ball_[next]};
      nodes.push_back(next);
      if (!seen.insert(cur).second) break;
    }
    return nodes;
  }

  DecideResult failure(std::size_t parent, PointId node, Mask mask) const {
    std::vector<PointId> nodes;
    for (std::size_t i = parent; i != kNoParent; i = states_[i].parent) {
      nodes.push_back(states_[i].node);
    }
    std::reverse(nodes.begin(), nodes.end());
    nodes.push_back(node);
    if (rule_ == FailureRule::SLimit) {
      for (const PointId q : slimit_continuation(node, mask)) nodes.push_back(q);
    }
    DecideResult result;
    result.holds = false;
    result.witness = Witness{std::move(nodes)};
    return result;
  }

  const FiniteSystem& sys_;
  FailureRule rule_;
  Budget budget_;
  PseudoOrbitGraph graph_;
  std::vector<Mask> ball_;
  std::vector<PointId> initials_;
  std::vector<StateRec> states_;
  std::vector<std::vector<Mask>> kept_;
  std::unordered_map<PairKey, bool, PairKeyHash> memo_;
};

DecideResult run_engine(const FiniteSystem& sys, const Threshold& epsilon, const Threshold& delta,
                        bool restrict_initials, FailureRule rule, const Budget& budget) {
  SurvivorEngine engine(sys, epsilon, delta, restrict_initials, rule, budget);
  return engine.run();
}

}  // namespace

DecideResult decide_forward(const FiniteSystem& sys, const Threshold& epsilon,
                            const Threshold& delta, const Budget& budget) {
  return run_engine(sys, epsilon, delta, false, FailureRule::EmptySet, budget);
}

DecideResult decide_backward(const FiniteSystem& sys, const Threshold& epsilon,
                             const Threshold& delta, const Budget& budget) {
  // A finite compactness argument turns both left-infinite and bi-infinite
  // tracking into the same reachability question from left-extendable starts.
  return run_engine(sys, epsilon, delta, true, FailureRule::EmptySet, budget);
}

DecideResult decide_two_sided(const FiniteSystem& sys, const Threshold& epsilon,
                              const Threshold& delta, const Budget& budget) {
  return run_engine(sys, epsilon, delta, true, FailureRule::EmptySet, budget);
}

DecideResult decide_h(const FiniteSystem& sys, const Threshold& epsilon, const Threshold& delta,
                      const Budget& budget) {
  return run_engine(sys, epsilon, delta, false, FailureRule::MissingCurrent, budget);
}

DecideResult decide_s_limit(const FiniteSystem& sys, const Threshold& epsilon,
                            const Threshold& delta, const Budget& budget) {
  return run_engine(sys, epsilon, delta, false, FailureRule::SLimit, budget);
}

DecideResult decide_two_sided_s_limit(const FiniteSystem& sys, const Threshold& epsilon,
                                      const Threshold& delta, const Budget& budget) {
  return run_engine(sys, epsilon, delta, true, FailureRule::SLimit, budget);
}

DecideResult decide(const FiniteSystem& sys, ShadowKind kind, const Threshold& epsilon,
                    const Threshold& delta, const Budget& budget) {
  switch (kind) {
    case ShadowKind::Forward: return decide_forward(sys, epsilon, delta, budget);
    case ShadowKind::Backward: return decide_backward(sys, epsilon, delta, budget);
    case ShadowKind::TwoSided: return decide_two_sided(sys, epsilon, delta, budget);
    case ShadowKind::H: return decide_h(sys, epsilon, delta, budget);
    case ShadowKind::SLimit: return decide_s_limit(sys, epsilon, delta, budget);
  }
  throw std::logic_error("unreachable shadow kind");
}

ModulusReport modulus(const FiniteSystem& sys, ShadowKind kind, const Threshold& epsilon,
                      const Budget& budget) {
  if (!epsilon.is_positive()) throw std::invalid_argument("epsilon must be positive");
  const ValueLattice lattice = edge_lattice(sys);
  const SweepResult sweep = monotone_sweep(lattice, [&](const Threshold& delta) {
    return decide(sys, kind, epsilon, delta, budget).holds;
  });
  ModulusReport report;
  report.kind = kind;
  report.epsilon = epsilon;
  report.modulus = sweep.supremum;
  report.witness_delta = sweep.failure_at;
  if (sweep.failure_at) {
    DecideResult at_failure = decide(sys, kind, epsilon, *sweep.failure_at, budget);
    if (at_failure.holds) throw std::logic_error("modulus: decider held at the failure threshold");
    report.witness = std::move(at_failure.witness);
  }
  return report;
}

std::string to_json_string(const ModulusReport& report, const FiniteSystem& sys) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(report.kind);
  j["epsilon"] = report.epsilon.str();
  j["modulus"] = report.modulus.str();
  if (report.witness) {
    auto nodes = nlohmann::ordered_json::array();
    for (const PointId id : report.witness->nodes) nodes.push_back(sys.label(id));
    j["witness"] = nodes;
  }
  return j.dump(2) + "\n";
}

}  // namespace shadowlab
