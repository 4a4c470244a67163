#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/shadowing.hpp"
#include "shadowlab/system.hpp"
#include "shadowlab/threshold.hpp"

namespace shadowlab {

enum class Verdict { Pass, Fail, Skipped };

std::string to_string(Verdict verdict);

/// One verified statement instance. Failing records always carry enough
/// evidence (thresholds and witness orbits) to replay the counterexample by
/// direct simulation.
struct CheckRecord {
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;  // insertion order
  Verdict verdict = Verdict::Pass;
  std::string reason;
  std::string evidence;  // JSON document; empty when there is none
  double wall_ms = 0.0;
};

/// How many pair-lattice values a suite examines per system; 0 means all.
/// Verdicts are constant between lattice values, so the full lattice is
/// exhaustive rather than a sample.
struct EpsPolicy {
  std::size_t cap = 24;
};

struct SuiteOptions {
  /// Explicit ε values; when empty the pair lattice (subsampled per policy)
  /// is used.
  std::vector<Threshold> eps;
  /// Multiplicity bounds exercised by the n-indexed suites.
  std::vector<unsigned> ns{1, 2};
  EpsPolicy policy;
  Budget budget;
};

struct VerificationReport {
  std::string suite;
  /// "fnv1a64:<16 hex digits>" over the canonical JSON body (no wall times),
  /// binding the verdicts to the exact inputs.
  std::string fingerprint;
  std::vector<CheckRecord> checks;
};

/// Positive pair-lattice thresholds, deterministically subsampled to the cap.
std::vector<Threshold> epsilon_grid(const FiniteSystem& sys, const EpsPolicy& policy = {});

/// Modulus chain twosided >= forward >= forward-at-half per ε, backward and
/// two-sided deciders agreeing at every lattice δ, and (for onto maps) a
/// positive backward modulus forcing a positive forward one.
VerificationReport verify_shadowing_hierarchy(const FiniteSystem& sys, const SuiteOptions& opts = {});

/// For each n: below half the positive expansivity radius, at most n
/// shadowers at the forward modulus; and at every ε the maximal shadower
/// count dominates the largest Γ₊ cell at the smallest positive δ.
VerificationReport verify_n_shadowing_theorem(const FiniteSystem& sys, const SuiteOptions& opts = {});

/// count ≤ n together with forward shadowing transfers to the two-sided
/// count and two-sided shadowing at every lattice (ε, δ).
VerificationReport verify_two_sided_n(const FiniteSystem& sys, const SuiteOptions& opts = {});

/// count ≤ 1 with h-shadowing forces unique h-shadowing; the limit report is
/// coherent; identity maps show the crowding pattern (h holds at the smallest
/// δ while count ≤ 1 fails beyond the smallest pairwise distance).
VerificationReport verify_uniqueness_suite(const FiniteSystem& sys, const SuiteOptions& opts = {});

/// A fiber holding n+1 points pairwise closer than r refutes positive
/// n-expansivity at r, over pair-lattice radii.
VerificationReport verify_fiber_bound(const FiniteSystem& sys, const SuiteOptions& opts = {});

/// suite: all | hierarchy | nshadow | twosided-n | uniqueness | fiber.
/// Throws std::invalid_argument for unknown names.
VerificationReport run_suite(const FiniteSystem& sys, const std::string& suite,
                             const SuiteOptions& opts = {});

enum class ReportFormat { Json, Markdown };

/// JSON omits wall times (byte-identical across runs); Markdown includes them.
std::string emit_report(const VerificationReport& report, ReportFormat format);

}  // namespace shadowlab
