#include "shadowlab/multiplicity.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "shadowlab/errors.hpp"
#include "shadowlab/lattice.hpp"

namespace shadowlab {
namespace {

std::vector<std::vector<char>> ball_table(const FiniteSystem& sys, const Threshold& epsilon) {
  if (!epsilon.is_positive()) throw std::invalid_argument("epsilon must be positive");
  const PointId n = sys.size();
  std::vector<std::vector<char>> admits(n, std::vector<char>(n, 0));
  for (PointId x = 0; x < n; ++x) {
    for (PointId y = 0; y < n; ++y) {
      admits[x][y] = epsilon.admits_sq(sys.squared_table()[x][y]) ? 1 : 0;
    }
  }
  return admits;
}

bool next_combination(std::vector<std::size_t>& pick, std::size_t m) {
  const std::size_t k = pick.size();
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

bool next_multiset(std::vector<std::size_t>& pick, std::size_t m) {
  std::size_t i = pick.size();
  while (i-- > 0) {
    if (pick[i] + 1 < m) {
      const std::size_t v = pick[i] + 1;
      for (std::size_t j = i; j < pick.size(); ++j) pick[j] = v;
      return true;
    }
  }
  return false;
}

struct TupleKey {
  PointId node = 0;
  std::vector<PointId> positions;  // canonical sorted order

  bool operator<(const TupleKey& other) const {
    if (node != other.node) return node < other.node;
    return positions < other.positions;
  }
};

/// Tuple automaton states in insertion order (which is the canonical
/// enumeration order), with forward adjacency by state index.
struct TupleGraph {
  std::vector<TupleKey> states;
  std::map<TupleKey, std::size_t> index;
  std::vector<std::vector<std::size_t>> succ;

  std::size_t intern(TupleKey key, const Budget& budget) {
    if (const auto it = index.find(key); it != index.end()) return it->second;
    if (states.size() >= budget.max_states) {
      throw BudgetError("tuple budget exceeded (" + std::to_string(budget.max_states) +
                        " states)");
    }
    const std::size_t id = states.size();
    index.emplace(key, id);
    states.push_back(std::move(key));
    succ.emplace_back();
    return id;
  }
};

/// Computes successors of every state from `from` onward; newly interned
/// targets are processed too, so the graph is successor-closed on return.
void close_forward(TupleGraph& g, const FiniteSystem& sys, const PseudoOrbitGraph& graph,
                   const std::vector<std::vector<char>>& admits, const Budget& budget) {
  for (std::size_t head = 0; head < g.states.size(); ++head) {
    const TupleKey key = g.states[head];  // copy: the vector may reallocate
    std::vector<PointId> images;
    images.reserve(key.positions.size());
    for (const PointId p : key.positions) images.push_back(sys.image(p));
    std::sort(images.begin(), images.end());
    for (const PointId next : graph.out[key.node]) {
      const bool inside = std::all_of(images.begin(), images.end(),
                                      [&](PointId p) { return admits[next][p] != 0; });
      if (!inside) continue;
      const std::size_t target = g.intern(TupleKey{next, images}, budget);
      g.succ[head].push_back(target);
    }
  }
}

/// States with an infinite forward run, i.e. able to reach a directed cycle:
/// survivors of iterated out-degree-zero removal.
std::vector<char> can_reach_cycle(const TupleGraph& g) {
  const std::size_t m = g.states.size();
  std::vector<std::size_t> outdeg(m);
  std::vector<std::vector<std::size_t>> preds(m);
  for (std::size_t i = 0; i < m; ++i) {
    outdeg[i] = g.succ[i].size();
    for (const std::size_t t : g.succ[i]) preds[t].push_back(i);
  }
  std::vector<char> alive(m, 1);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < m; ++i) {
    if (outdeg[i] == 0) stack.push_back(i);
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    alive[i] = 0;
    for (const std::size_t p : preds[i]) {
      if (alive[p] && --outdeg[p] == 0) stack.push_back(p);
    }
  }
  return alive;
}

/// States with arbitrarily long incoming chains, i.e. reachable from a
/// directed cycle: survivors of iterated in-degree-zero removal.
std::vector<char> reachable_from_cycle(const TupleGraph& g) {
  const std::size_t m = g.states.size();
  std::vector<std::size_t> indeg(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (const std::size_t t : g.succ[i]) ++indeg[t];
  }
  std::vector<char> alive(m, 1);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < m; ++i) {
    if (indeg[i] == 0) stack.push_back(i);
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    alive[i] = 0;
    for (const std::size_t t : g.succ[i]) {
      if (alive[t] && --indeg[t] == 0) stack.push_back(t);
    }
  }
  return alive;
}

/// Deterministic lasso through surviving states: always the first surviving
/// successor, until a state repeats.
TupleWitness lasso_from(const TupleGraph& g, const std::vector<char>& alive, std::size_t start) {
  std::vector<std::size_t> walk;
  std::map<std::size_t, std::size_t> position;
  std::size_t cur = start;
  while (true) {
    const auto [it, inserted] = position.try_emplace(cur, walk.size());
    if (!inserted) {
      const std::size_t entry = it->second;
      TupleWitness witness;
      for (std::size_t i = 0; i < entry; ++i) witness.stem.push_back(g.states[walk[i]].node);
      for (std::size_t i = entry; i < walk.size(); ++i) {
        witness.cycle.push_back(g.states[walk[i]].node);
      }
      witness.origins = g.states[start].positions;
      return witness;
    }
    walk.push_back(cur);
    std::size_t next = static_cast<std::size_t>(-1);
    for (const std::size_t t : g.succ[cur]) {
      if (alive[t]) {
        next = t;
        break;
      }
    }
    if (next == static_cast<std::size_t>(-1)) {
      throw std::logic_error("lasso walk left the surviving subgraph");
    }
    cur = next;
  }
}

std::vector<PointId> ball_points(const std::vector<std::vector<char>>& admits, PointId x,
                                 PointId n) {
  std::vector<PointId> ball;
  for (PointId y = 0; y < n; ++y) {
    if (admits[x][y]) ball.push_back(y);
  }
  return ball;
}

/// One-sided count with `m` trackers (m = n+1): fails iff some initial tuple
/// of pairwise-distinct ball members can survive into a cycle.
CountDecision count_core(const FiniteSystem& sys, std::size_t m, const Threshold& epsilon,
                         const Threshold& delta, const Budget& budget) {
  const PseudoOrbitGraph graph = pseudo_graph(sys, delta);
  const auto admits = ball_table(sys, epsilon);
  TupleGraph g;
  std::vector<std::size_t> initials;
  for (PointId x = 0; x < sys.size(); ++x) {
    const std::vector<PointId> ball = ball_points(admits, x, sys.size());
    if (ball.size() < m) continue;
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    do {
      TupleKey key;
      key.node = x;
      for (const std::size_t i : pick) key.positions.push_back(ball[i]);
      initials.push_back(g.intern(std::move(key), budget));
    } while (next_combination(pick, ball.size()));
  }
  close_forward(g, sys, graph, admits, budget);
  const std::vector<char> alive = can_reach_cycle(g);
  for (const std::size_t init : initials) {
    if (alive[init]) {
      CountDecision decision;
      decision.holds = false;
      decision.witness = lasso_from(g, alive, init);
      return decision;
    }
  }
  return {};
}

CountDecision two_sided_count_core(const FiniteSystem& sys, std::size_t m,
                                   const Threshold& epsilon, const Threshold& delta,
                                   const Budget& budget) {
  const PseudoOrbitGraph graph = pseudo_graph(sys, delta);
  const auto admits = ball_table(sys, epsilon);
  // Full allowed-tuple universe: positions may repeat, because trackers that
  // are distinct now were distinct at all earlier times but may merge later.
  TupleGraph g;
  for (PointId x = 0; x < sys.size(); ++x) {
    const std::vector<PointId> ball = ball_points(admits, x, sys.size());
    if (ball.empty()) continue;
    std::vector<std::size_t> pick(m, 0);
    do {
      TupleKey key;
      key.node = x;
      for (const std::size_t i : pick) key.positions.push_back(ball[i]);
      g.intern(std::move(key), budget);
    } while (next_multiset(pick, ball.size()));
  }
  close_forward(g, sys, graph, admits, budget);
  const std::vector<char> forward = can_reach_cycle(g);
  const std::vector<char> backward = reachable_from_cycle(g);
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    if (!forward[i] || !backward[i]) continue;
    const auto& positions = g.states[i].positions;
    if (std::adjacent_find(positions.begin(), positions.end()) != positions.end()) continue;
    CountDecision decision;
    decision.holds = false;
    decision.witness = lasso_from(g, forward, i);
    return decision;
  }
  return {};
}

}  // namespace

CountDecision count_at_most(const FiniteSystem& sys, unsigned n, const Threshold& epsilon,
                            const Threshold& delta, const Budget& budget) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return count_core(sys, n + 1, epsilon, delta, budget);
}

CountDecision two_sided_count_at_most(const FiniteSystem& sys, unsigned n,
                                      const Threshold& epsilon, const Threshold& delta,
                                      const Budget& budget) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return two_sided_count_core(sys, n + 1, epsilon, delta, budget);
}

CountReport max_shadower_count(const FiniteSystem& sys, const Threshold& epsilon,
                               const Threshold& delta, unsigned cap, const Budget& budget) {
  if (cap < 1) throw std::invalid_argument("cap must be positive");
  CountReport report;
  report.epsilon = epsilon;
  report.delta = delta;
  // A single tracker always survives along a true-orbit continuation, so the
  // one-tuple count fails and certifies "at least one shadower".
  CountDecision below = count_core(sys, 1, epsilon, delta, budget);
  if (below.holds) throw std::logic_error("single-tracker count cannot hold");
  for (unsigned k = 1; k + 1 <= cap; ++k) {
    CountDecision decision = count_core(sys, k + 1, epsilon, delta, budget);
    if (decision.holds) {
      report.max_count = k;
      report.witness = std::move(below.witness);
      return report;
    }
    below = std::move(decision);
  }
  report.max_count = cap;
  report.at_least = true;
  report.witness = std::move(below.witness);
  return report;
}

Threshold n_shadow_modulus(const FiniteSystem& sys, unsigned n, const Threshold& epsilon,
                           const Budget& budget) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!epsilon.is_positive()) throw std::invalid_argument("epsilon must be positive");
  const ValueLattice lattice = edge_lattice(sys);
  const SweepResult sweep = monotone_sweep(lattice, [&](const Threshold& delta) {
    return decide_forward(sys, epsilon, delta, budget).holds &&
           count_at_most(sys, n, epsilon, delta, budget).holds;
  });
  return sweep.supremum;
}

UniqueHDecision decide_unique_h(const FiniteSystem& sys, const Threshold& epsilon,
                                const Threshold& delta, const Budget& budget) {
  UniqueHDecision result;
  DecideResult h = decide_h(sys, epsilon, delta, budget);
  if (!h.holds) {
    result.holds = false;
    result.witness = TupleWitness{std::move(h.witness->nodes), {}, {}};
    return result;
  }
  const PseudoOrbitGraph graph = pseudo_graph(sys, delta);
  const auto admits = ball_table(sys, epsilon);
  struct Rec {
    PointId node = 0;
    PointId p = 0;
    PointId q = 0;
    std::size_t parent = static_cast<std::size_t>(-1);
  };
  std::vector<Rec> states;
  std::map<std::array<PointId, 3>, std::size_t> seen;
  const auto push = [&](PointId node, PointId p, PointId q, std::size_t parent) {
    const std::array<PointId, 3> key{node, p, q};
    if (seen.contains(key)) return;
    if (states.size() >= budget.max_states) {
      throw BudgetError("pair budget exceeded (" + std::to_string(budget.max_states) +
                        " states)");
    }
    seen.emplace(key, states.size());
    states.push_back({node, p, q, parent});
  };
  for (PointId x = 0; x < sys.size(); ++x) {
    const std::vector<PointId> ball = ball_points(admits, x, sys.size());
    for (std::size_t i = 0; i < ball.size(); ++i) {
      for (std::size_t j = i + 1; j < ball.size(); ++j) {
        push(x, ball[i], ball[j], static_cast<std::size_t>(-1));
      }
    }
  }
  for (std::size_t head = 0; head < states.size(); ++head) {
    const Rec rec = states[head];
    PointId pf = sys.image(rec.p);
    PointId qf = sys.image(rec.q);
    if (pf > qf) std::swap(pf, qf);
    for (const PointId next : graph.out[rec.node]) {
      if (!admits[next][pf] || !admits[next][qf]) continue;
      if (pf == qf && qf == next) {
        // Two distinct origins both hit the final node exactly.
        std::vector<PointId> stem;
        std::size_t i = head;
        std::size_t root = head;
        for (; i != static_cast<std::size_t>(-1); i = states[i].parent) {
          stem.push_back(states[i].node);
          root = i;
        }
        std::reverse(stem.begin(), stem.end());
        stem.push_back(next);
        result.holds = false;
        result.witness = TupleWitness{std::move(stem), {}, {states[root].p, states[root].q}};
        return result;
      }
      push(next, pf, qf, head);
    }
  }
  return result;
}

Threshold trivial_eta(const FiniteSystem& sys) {
  const ValueLattice lattice = pair_lattice(sys);
  if (const auto smallest = lattice.smallest_positive()) return *smallest;
  return Threshold::unbounded();
}

std::string to_json_string(const CountReport& report, const FiniteSystem& sys) {
  nlohmann::ordered_json j;
  j["epsilon"] = report.epsilon.str();
  j["delta"] = report.delta.str();
  if (report.at_least) {
    nlohmann::ordered_json bound;
    bound["at_least"] = report.max_count;
    j["max_count"] = bound;
  } else {
    j["max_count"] = report.max_count;
  }
  if (report.witness) {
    const auto labels = [&](const std::vector<PointId>& ids) {
      auto arr = nlohmann::ordered_json::array();
      for (const PointId id : ids) arr.push_back(sys.label(id));
      return arr;
    };
    nlohmann::ordered_json w;
    w["stem"] = labels(report.witness->stem);
    w["cycle"] = labels(report.witness->cycle);
    w["origins"] = labels(report.witness->origins);
    j["witness"] = w;
  }
  return j.dump(2) + "\n";
}

}  // namespace shadowlab
