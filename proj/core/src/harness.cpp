#include "shadowlab/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "shadowlab/errors.hpp"
#include "shadowlab/expansivity.hpp"
#include "shadowlab/lattice.hpp"
#include "shadowlab/multiplicity.hpp"

namespace shadowlab {

namespace {

using json = nlohmann::ordered_json;

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json check_to_json(const CheckRecord& rec) {
  json j;
  j["id"] = rec.id;
  json params = json::object();
  for (const auto& [key, value] : rec.params) params[key] = value;
  j["params"] = params;
  j["verdict"] = to_string(rec.verdict);
  if (!rec.reason.empty()) j["reason"] = rec.reason;
  if (!rec.evidence.empty()) j["evidence"] = json::parse(rec.evidence);
  return j;
}

/// Canonical document: everything except the fingerprint and wall times.
json report_body(const VerificationReport& report) {
  json j;
  j["suite"] = report.suite;
  json checks = json::array();
  for (const CheckRecord& rec : report.checks) checks.push_back(check_to_json(rec));
  j["checks"] = checks;
  return j;
}

void finalize(VerificationReport& report) {
  report.fingerprint = fnv1a64(report_body(report).dump(2));
}

template <typename Body>
void run_check(VerificationReport& report, std::string id,
               std::vector<std::pair<std::string, std::string>> params, Body&& body) {
  CheckRecord rec;
  rec.id = std::move(id);
  rec.params = std::move(params);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(rec);
  } catch (const BudgetError& e) {
    rec.verdict = Verdict::Skipped;
    rec.reason = std::string("budget: ") + e.what();
    rec.evidence.clear();
  }
  rec.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.checks.push_back(std::move(rec));
}

std::vector<Threshold> positive_values(const ValueLattice& lattice) {
  std::vector<Threshold> out;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (sgn(lattice.square_at(i)) == 0) continue;
    out.push_back(lattice.threshold_at(i));
  }
  return out;
}

std::vector<Threshold> grid_for(const FiniteSystem& sys, const SuiteOptions& opts) {
  if (!opts.eps.empty()) {
    std::vector<Threshold> out;
    for (const Threshold& eps : opts.eps)
      if (eps.is_positive()) out.push_back(eps);
    return out;
  }
  return epsilon_grid(sys, opts.policy);
}

json labels_json(const FiniteSystem& sys, const std::vector<PointId>& nodes) {
  json arr = json::array();
  for (const PointId x : nodes) arr.push_back(sys.label(x));
  return arr;
}

json tuple_witness_json(const FiniteSystem& sys, const TupleWitness& witness) {
  json j;
  j["stem"] = labels_json(sys, witness.stem);
  j["cycle"] = labels_json(sys, witness.cycle);
  j["origins"] = labels_json(sys, witness.origins);
  return j;
}

void mark(CheckRecord& rec, bool ok, std::string reason) {
  rec.verdict = ok ? Verdict::Pass : Verdict::Fail;
  rec.reason = std::move(reason);
}

/// Advances a strictly increasing index tuple; false once exhausted.
bool next_combination(std::vector<std::size_t>& pick, std::size_t universe) {
  std::size_t i = pick.size();
  while (i > 0) {
    --i;
    if (pick[i] + (pick.size() - i) < universe) {
      ++pick[i];
      for (std::size_t j = i + 1; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "unknown";
}

std::vector<Threshold> epsilon_grid(const FiniteSystem& sys, const EpsPolicy& policy) {
  const std::vector<Threshold> all = positive_values(pair_lattice(sys));
  if (policy.cap == 0 || all.size() <= policy.cap) return all;
  std::vector<Threshold> picked;
  for (std::size_t i = 0; i < policy.cap; ++i) {
    const std::size_t idx = i * (all.size() - 1) / (policy.cap - 1);
    if (picked.empty() || picked.back() < all[idx]) picked.push_back(all[idx]);
  }
  return picked;
}

VerificationReport verify_shadowing_hierarchy(const FiniteSystem& sys, const SuiteOptions& opts) {
  VerificationReport report;
  report.suite = "hierarchy";
  const std::vector<Threshold> grid = grid_for(sys, opts);
  const ValueLattice edges = edge_lattice(sys);
  const std::vector<Threshold> deltas = positive_values(edges);
  if (grid.empty()) {
    run_check(report, "hierarchy/setup", {}, [&](CheckRecord& rec) {
      rec.verdict = Verdict::Skipped;
      rec.reason = "no positive pair distances to test";
    });
    finalize(report);
    return report;
  }

  for (const Threshold& eps : grid) {
    run_check(report, "hierarchy/modulus-chain", {{"eps", eps.str()}}, [&](CheckRecord& rec) {
      const ModulusReport twosided = modulus(sys, ShadowKind::TwoSided, eps, opts.budget);
      const ModulusReport forward = modulus(sys, ShadowKind::Forward, eps, opts.budget);
      const ModulusReport halved = modulus(sys, ShadowKind::Forward, eps.halved(), opts.budget);
      json ev;
      ev["twosided"] = json::parse(to_json_string(twosided, sys));
      ev["forward"] = json::parse(to_json_string(forward, sys));
      ev["forward_at_half"] = json::parse(to_json_string(halved, sys));
      rec.evidence = ev.dump(2);
      const bool ok = twosided.modulus >= forward.modulus && forward.modulus >= halved.modulus;
      mark(rec, ok, "twosided " + twosided.modulus.str() + " >= forward " + forward.modulus.str() +
                        " >= forward-at-half " + halved.modulus.str());
    });

    run_check(report, "hierarchy/backward-equals-twosided", {{"eps", eps.str()}},
              [&](CheckRecord& rec) {
                for (const Threshold& delta : deltas) {
                  const DecideResult backward = decide_backward(sys, eps, delta, opts.budget);
                  const DecideResult twosided = decide_two_sided(sys, eps, delta, opts.budget);
                  if (backward.holds != twosided.holds) {
                    json ev;
                    ev["delta"] = delta.str();
                    ev["backward_holds"] = backward.holds;
                    ev["twosided_holds"] = twosided.holds;
                    if (backward.witness) ev["backward_witness"] = labels_json(sys, backward.witness->nodes);
                    if (twosided.witness) ev["twosided_witness"] = labels_json(sys, twosided.witness->nodes);
                    rec.evidence = ev.dump(2);
                    mark(rec, false, "deciders disagree at delta " + delta.str());
                    return;
                  }
                }
                mark(rec, true, "agree at " + std::to_string(deltas.size()) + " lattice deltas");
              });

    run_check(report, "hierarchy/delta-antitone", {{"eps", eps.str()}}, [&](CheckRecord& rec) {
      try {
        monotone_sweep_checked(edges, [&](const Threshold& delta) {
          return decide_forward(sys, eps, delta, opts.budget).holds;
        });
        monotone_sweep_checked(edges, [&](const Threshold& delta) {
          return decide_two_sided(sys, eps, delta, opts.budget).holds;
        });
        mark(rec, true, "forward and twosided deciders are antitone in delta");
      } catch (const std::logic_error& e) {
        mark(rec, false, e.what());
      }
    });
  }

  run_check(report, "hierarchy/onto-backward-implies-forward", {}, [&](CheckRecord& rec) {
    if (!sys.is_surjective()) {
      rec.verdict = Verdict::Skipped;
      rec.reason = "map is not onto; implication is vacuous";
      return;
    }
    for (const Threshold& eps : grid) {
      const ModulusReport backward = modulus(sys, ShadowKind::Backward, eps, opts.budget);
      if (!backward.modulus.is_positive()) continue;
      const ModulusReport forward = modulus(sys, ShadowKind::Forward, eps, opts.budget);
      if (!forward.modulus.is_positive()) {
        json ev;
        ev["eps"] = eps.str();
        ev["backward"] = json::parse(to_json_string(backward, sys));
        ev["forward"] = json::parse(to_json_string(forward, sys));
        rec.evidence = ev.dump(2);
        mark(rec, false, "positive backward modulus with zero forward modulus at eps " + eps.str());
        return;
      }
    }
    mark(rec, true, "positive backward moduli are matched by positive forward moduli");
  });

  finalize(report);
  return report;
}

VerificationReport verify_n_shadowing_theorem(const FiniteSystem& sys, const SuiteOptions& opts) {
  VerificationReport report;
  report.suite = "nshadow";
  const std::vector<Threshold> grid = grid_for(sys, opts);
  const ValueLattice edges = edge_lattice(sys);
  const std::optional<Threshold> delta_min = edges.smallest_positive();

  for (const unsigned n : opts.ns) {
    run_check(report, "nshadow/count-at-modulus", {{"n", std::to_string(n)}}, [&](CheckRecord& rec) {
      const Threshold radius = positive_expansivity_radius(sys, n);
      std::size_t scanned = 0;
      for (const Threshold& eps : grid) {
        if (!(eps.doubled() < radius)) continue;
        const ModulusReport forward = modulus(sys, ShadowKind::Forward, eps, opts.budget);
        if (!forward.modulus.is_positive()) continue;
        const CountDecision count = count_at_most(sys, n, eps, forward.modulus, opts.budget);
        if (!count.holds) {
          json ev;
          ev["eps"] = eps.str();
          ev["radius"] = radius.str();
          ev["modulus"] = forward.modulus.str();
          if (count.witness) ev["count_witness"] = tuple_witness_json(sys, *count.witness);
          rec.evidence = ev.dump(2);
          mark(rec, false, "more than " + std::to_string(n) + " shadowers at eps " + eps.str() +
                               ", delta " + forward.modulus.str());
          return;
        }
        ++scanned;
      }
      if (scanned == 0) {
        rec.verdict = Verdict::Skipped;
        rec.reason = "no lattice eps with 2*eps below the radius " + radius.str();
        return;
      }
      mark(rec, true, "count <= " + std::to_string(n) + " at the forward modulus for " +
                          std::to_string(scanned) + " eps values below radius " + radius.str());
    });
  }

  run_check(report, "nshadow/max-count-vs-gamma", {}, [&](CheckRecord& rec) {
    if (!delta_min) {
      rec.verdict = Verdict::Skipped;
      rec.reason = "no positive edge value to use as delta";
      return;
    }
    for (const Threshold& eps : grid) {
      std::size_t max_gamma = 0;
      PointId argmax = 0;
      for (PointId x = 0; x < sys.size(); ++x) {
        const GammaSet gamma = gamma_plus(sys, x, eps);
        if (gamma.members.size() > max_gamma) {
          max_gamma = gamma.members.size();
          argmax = x;
        }
      }
      const unsigned cap = std::max<unsigned>(2, static_cast<unsigned>(max_gamma) + 1);
      const CountReport count = max_shadower_count(sys, eps, *delta_min, cap, opts.budget);
      if (count.max_count < max_gamma) {
        json ev;
        ev["eps"] = eps.str();
        ev["max_gamma"] = max_gamma;
        ev["gamma"] = json::parse(to_json_string(gamma_plus(sys, argmax, eps), sys));
        ev["count_report"] = json::parse(to_json_string(count, sys));
        rec.evidence = ev.dump(2);
        mark(rec, false, "max shadower count below |gamma_plus| at eps " + eps.str());
        return;
      }
    }
    mark(rec, true, "max shadower count dominates |gamma_plus| at " + std::to_string(grid.size()) +
                        " eps values");
  });

  finalize(report);
  return report;
}

VerificationReport verify_two_sided_n(const FiniteSystem& sys, const SuiteOptions& opts) {
  VerificationReport report;
  report.suite = "twosided-n";
  const std::vector<Threshold> grid = grid_for(sys, opts);
  const std::vector<Threshold> deltas = positive_values(edge_lattice(sys));

  for (const unsigned n : opts.ns) {
    for (const Threshold& eps : grid) {
      run_check(report, "twosided-n/transfer", {{"n", std::to_string(n)}, {"eps", eps.str()}},
                [&](CheckRecord& rec) {
                  std::size_t antecedents = 0;
                  for (const Threshold& delta : deltas) {
                    if (!count_at_most(sys, n, eps, delta, opts.budget).holds) continue;
                    if (!decide_forward(sys, eps, delta, opts.budget).holds) continue;
                    ++antecedents;
                    const CountDecision two_count = two_sided_count_at_most(sys, n, eps, delta, opts.budget);
                    const DecideResult two_shadow = decide_two_sided(sys, eps, delta, opts.budget);
                    if (!two_count.holds || !two_shadow.holds) {
                      json ev;
                      ev["delta"] = delta.str();
                      ev["two_sided_count_holds"] = two_count.holds;
                      ev["two_sided_shadowing_holds"] = two_shadow.holds;
                      if (two_count.witness)
                        ev["count_witness"] = tuple_witness_json(sys, *two_count.witness);
                      if (two_shadow.witness)
                        ev["shadow_witness"] = labels_json(sys, two_shadow.witness->nodes);
                      rec.evidence = ev.dump(2);
                      mark(rec, false, "transfer fails at delta " + delta.str());
                      return;
                    }
                  }
                  mark(rec, true, "implication held at " + std::to_string(antecedents) + " of " +
                                      std::to_string(deltas.size()) + " lattice deltas");
                });
    }
  }

  finalize(report);
  return report;
}

VerificationReport verify_uniqueness_suite(const FiniteSystem& sys, const SuiteOptions& opts) {
  VerificationReport report;
  report.suite = "uniqueness";
  const std::vector<Threshold> grid = grid_for(sys, opts);
  const ValueLattice edges = edge_lattice(sys);
  const std::vector<Threshold> deltas = positive_values(edges);

  run_check(report, "uniqueness/h-implies-unique-h", {}, [&](CheckRecord& rec) {
    std::size_t antecedents = 0;
    for (const Threshold& eps : grid) {
      for (const Threshold& delta : deltas) {
        if (!count_at_most(sys, 1, eps, delta, opts.budget).holds) continue;
        if (!decide_h(sys, eps, delta, opts.budget).holds) continue;
        ++antecedents;
        const UniqueHDecision unique = decide_unique_h(sys, eps, delta, opts.budget);
        if (!unique.holds) {
          json ev;
          ev["eps"] = eps.str();
          ev["delta"] = delta.str();
          if (unique.witness) ev["witness"] = tuple_witness_json(sys, *unique.witness);
          rec.evidence = ev.dump(2);
          mark(rec, false, "unique h-shadowing fails at eps " + eps.str() + ", delta " + delta.str());
          return;
        }
      }
    }
    mark(rec, true, "implication held at " + std::to_string(antecedents) + " lattice points");
  });

  run_check(report, "uniqueness/limit-coherence", {}, [&](CheckRecord& rec) {
    const LimitShadowingReport limit = limit_shadowing_report(sys);
    json ev;
    ev["limit_shadowing"] = limit.limit_shadowing;
    ev["unique_limit"] = limit.unique_limit;
    ev["injective"] = limit.injective;
    ev["asymptotic_pairs"] = limit.asymptotic_pair_count;
    rec.evidence = ev.dump(2);
    const bool ok = limit.limit_shadowing && limit.unique_limit == limit.injective &&
                    limit.unique_limit == (limit.asymptotic_pair_count == 0);
    mark(rec, ok, ok ? "unique limit shadowing, injectivity and absence of asymptotic pairs agree"
                     : "limit report is incoherent");
  });

  run_check(report, "uniqueness/identity-crowding", {}, [&](CheckRecord& rec) {
    bool identity = true;
    for (PointId x = 0; x < sys.size() && identity; ++x) identity = (sys.image(x) == x);
    if (!identity) {
      rec.verdict = Verdict::Skipped;
      rec.reason = "map is not the identity; pattern does not apply";
      return;
    }
    const std::optional<Threshold> delta_min = edges.smallest_positive();
    const std::optional<Threshold> pair_min = pair_lattice(sys).smallest_positive();
    if (!delta_min || !pair_min) {
      rec.verdict = Verdict::Skipped;
      rec.reason = "fewer than two points; pattern is vacuous";
      return;
    }
    for (const Threshold& eps : grid) {
      const DecideResult h = decide_h(sys, eps, *delta_min, opts.budget);
      if (!h.holds) {
        json ev;
        ev["eps"] = eps.str();
        ev["delta"] = delta_min->str();
        if (h.witness) ev["witness"] = labels_json(sys, h.witness->nodes);
        rec.evidence = ev.dump(2);
        mark(rec, false, "h-shadowing fails at the smallest delta for eps " + eps.str());
        return;
      }
    }
    std::size_t crowded = 0;
    for (const Threshold& eps : grid) {
      if (!(eps > *pair_min)) continue;
      ++crowded;
      if (count_at_most(sys, 1, eps, *delta_min, opts.budget).holds) {
        json ev;
        ev["eps"] = eps.str();
        ev["delta"] = delta_min->str();
        rec.evidence = ev.dump(2);
        mark(rec, false, "count <= 1 unexpectedly holds at eps " + eps.str());
        return;
      }
    }
    mark(rec, true, "h-shadowing holds at delta " + delta_min->str() + " everywhere; count <= 1 fails at " +
                        std::to_string(crowded) + " eps values beyond the smallest pair distance");
  });

  finalize(report);
  return report;
}

VerificationReport verify_fiber_bound(const FiniteSystem& sys, const SuiteOptions& opts) {
  VerificationReport report;
  report.suite = "fiber";
  const std::vector<Threshold> grid = grid_for(sys, opts);

  std::vector<std::vector<PointId>> fiber(sys.size());
  for (PointId x = 0; x < sys.size(); ++x) fiber[sys.image(x)].push_back(x);
  std::size_t max_fiber = 0;
  for (const auto& f : fiber) max_fiber = std::max(max_fiber, f.size());

  if (max_fiber <= 1) {
    run_check(report, "fiber/crowding-blocks-expansivity", {}, [&](CheckRecord& rec) {
      mark(rec, true, "all fibers are singletons; vacuously satisfied");
    });
    finalize(report);
    return report;
  }

  for (unsigned n = 1; n < max_fiber; ++n) {
    run_check(report, "fiber/crowding-blocks-expansivity", {{"n", std::to_string(n)}},
              [&](CheckRecord& rec) {
                std::size_t crowded = 0;
                for (const Threshold& radius : grid) {
                  // Find a fiber holding n+1 points pairwise closer than the radius.
                  std::optional<PointId> found_y;
                  std::vector<PointId> found_subset;
                  for (PointId y = 0; y < sys.size() && !found_y; ++y) {
                    const std::vector<PointId>& members = fiber[y];
                    if (members.size() < n + 1) continue;
                    std::vector<std::size_t> pick(n + 1);
                    for (std::size_t i = 0; i <= n; ++i) pick[i] = i;
                    do {
                      bool close = true;
                      for (std::size_t a = 0; a + 1 <= n && close; ++a)
                        for (std::size_t b = a + 1; b <= n && close; ++b)
                          close = radius.admits_sq(
                              sys.squared_distance(members[pick[a]], members[pick[b]]));
                      if (close) {
                        found_y = y;
                        for (const std::size_t i : pick) found_subset.push_back(members[i]);
                        break;
                      }
                    } while (next_combination(pick, members.size()));
                  }
                  if (!found_y) continue;
                  ++crowded;
                  const PositiveExpansivityDecision decision =
                      is_positively_n_expansive_at(sys, n, radius);
                  if (decision.holds) {
                    json ev;
                    ev["r"] = radius.str();
                    ev["fiber_of"] = sys.label(*found_y);
                    ev["subset"] = labels_json(sys, found_subset);
                    rec.evidence = ev.dump(2);
                    mark(rec, false, "crowded fiber but positive " + std::to_string(n) +
                                         "-expansivity claimed at r " + radius.str());
                    return;
                  }
                }
                if (crowded == 0) {
                  mark(rec, true, "no crowded fiber at any lattice radius; vacuously satisfied");
                } else {
                  mark(rec, true, "crowded fibers refute positive " + std::to_string(n) +
                                      "-expansivity at " + std::to_string(crowded) + " radii");
                }
              });
  }

  finalize(report);
  return report;
}

VerificationReport run_suite(const FiniteSystem& sys, const std::string& suite,
                             const SuiteOptions& opts) {
  if (suite == "hierarchy") return verify_shadowing_hierarchy(sys, opts);
  if (suite == "nshadow") return verify_n_shadowing_theorem(sys, opts);
  if (suite == "twosided-n") return verify_two_sided_n(sys, opts);
  if (suite == "uniqueness") return verify_uniqueness_suite(sys, opts);
  if (suite == "fiber") return verify_fiber_bound(sys, opts);
  if (suite == "all") {
    VerificationReport merged;
    merged.suite = "all";
    for (const char* name : {"hierarchy", "nshadow", "twosided-n", "uniqueness", "fiber"}) {
      VerificationReport part = run_suite(sys, name, opts);
      for (CheckRecord& rec : part.checks) merged.checks.push_back(std::move(rec));
    }
    finalize(merged);
    return merged;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

std::string emit_report(const VerificationReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json body = report_body(report);
    json out;
    out["suite"] = body["suite"];
    out["fingerprint"] = report.fingerprint;
    out["checks"] = body["checks"];
    return out.dump(2) + "\n";
  }

  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const CheckRecord& rec : report.checks) {
    if (rec.verdict == Verdict::Pass) ++passed;
    else if (rec.verdict == Verdict::Fail) ++failed;
    else ++skipped;
  }
  std::string md = "# verification: " + report.suite + "\n\n";
  md += "- fingerprint: `" + report.fingerprint + "`\n";
  md += "- checks: " + std::to_string(report.checks.size()) + " (" + std::to_string(passed) +
        " pass, " + std::to_string(failed) + " fail, " + std::to_string(skipped) + " skipped)\n\n";
  md += "| check | params | verdict | reason | wall (ms) |\n";
  md += "| --- | --- | --- | --- | --- |\n";
  for (const CheckRecord& rec : report.checks) {
    std::string params;
    for (const auto& [key, value] : rec.params) {
      if (!params.empty()) params += ", ";
      params += key + "=" + value;
    }
    std::string verdict = to_string(rec.verdict);
    for (char& c : verdict) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.2f", rec.wall_ms);
    md += "| " + rec.id + " | " + params + " | " + verdict + " | " + rec.reason + " | " + wall +
          " |\n";
  }
  bool header_done = false;
  for (const CheckRecord& rec : report.checks) {
    if (rec.verdict != Verdict::Fail || rec.evidence.empty()) continue;
    if (!header_done) {
      md += "\n## failure evidence\n";
      header_done = true;
    }
    std::string params;
    for (const auto& [key, value] : rec.params) {
      if (!params.empty()) params += ", ";
      params += key + "=" + value;
    }
    md += "\n### " + rec.id + (params.empty() ? "" : " (" + params + ")") + "\n\n```json\n" +
          rec.evidence + "\n```\n";
  }
  return md;
}

}  // namespace shadowlab
