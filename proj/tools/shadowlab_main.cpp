#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "shadowlab/errors.hpp"
#include "shadowlab/expansivity.hpp"
#include "shadowlab/generators.hpp"
#include "shadowlab/harness.hpp"
#include "shadowlab/multiplicity.hpp"
#include "shadowlab/shadowing.hpp"
#include "shadowlab/system_io.hpp"

namespace {

using nlohmann::ordered_json;
using namespace shadowlab;

struct GenArgs {
  std::string family = "cycle";
  unsigned k = 3;
  std::string d = "1";
  unsigned N = 3;
  unsigned n = 2;
  unsigned K = 3;
  unsigned M = 1;
  unsigned alphabet = 2;
  unsigned period = 2;
  std::string sided = "two";
  std::string boundary = "open";
  std::uint64_t seed = 1;
  unsigned points = 6;
  std::string mode = "plane";
  std::string out;
};

FiniteSystem build_system(const GenArgs& a) {
  if (a.family == "cycle") return gen_cycle(a.k);
  if (a.family == "two-fixed") return gen_two_fixed(parse_rational(a.d));
  if (a.family == "merge") return gen_merge();
  if (a.family == "not-onto") return gen_not_onto(a.N);
  if (a.family == "identity-cantor") return gen_identity_cantor(a.N);
  if (a.family == "periodic-shift") {
    if (a.sided != "one" && a.sided != "two")
      throw std::invalid_argument("--sided must be one or two");
    return gen_periodic_shift(a.alphabet, a.period,
                              a.sided == "one" ? ShiftSide::One : ShiftSide::Two);
  }
  if (a.family == "n-expansive") {
    if (a.boundary != "open" && a.boundary != "loop")
      throw std::invalid_argument("--boundary must be open or loop");
    return gen_n_expansive(a.n, a.K, a.M,
                           a.boundary == "open" ? TruncationBoundary::Open
                                                : TruncationBoundary::Loop);
  }
  if (a.family == "random") {
    if (a.mode != "plane" && a.mode != "matrix")
      throw std::invalid_argument("--mode must be plane or matrix");
    return gen_random(a.seed, a.points, a.mode == "plane" ? RandomMode::Plane : RandomMode::Matrix);
  }
  throw std::invalid_argument("unknown family: " + a.family);
}

int run_gen(const GenArgs& a) {
  const FiniteSystem sys = build_system(a);
  if (a.out.empty()) {
    std::cout << save_system(sys);
  } else {
    save_system_file(sys, a.out);
  }
  return 0;
}

int run_validate(const std::string& file) {
  const FiniteSystem sys = load_system_file(file, /*validate=*/false);
  const ValidationResult result = sys.validate();
  if (result.ok()) {
    std::cout << "valid\n";
    return 0;
  }
  for (const std::string& violation : result.violations) std::cout << violation << "\n";
  return 1;
}

int run_modulus(const std::string& file, const std::string& kind_text, const std::string& eps_text) {
  const FiniteSystem sys = load_system_file(file);
  const ShadowKind kind = parse_shadow_kind(kind_text);
  const Threshold eps = Threshold::parse(eps_text);
  const ModulusReport report = modulus(sys, kind, eps);
  std::cout << to_json_string(report, sys);
  return 0;
}

int run_expansivity(const std::string& file, const std::string& mode, unsigned n) {
  const FiniteSystem sys = load_system_file(file);
  ordered_json out;
  out["mode"] = mode;
  out["n"] = n;
  if (mode == "positive") {
    out["radius"] = positive_expansivity_radius(sys, n).str();
  } else if (mode == "twosided") {
    const NExpansivityReport report = n_expansivity_radius(sys, n);
    out["radius"] = report.radius.str();
    out["vacuous"] = report.vacuous;
    out["core_size"] = report.core_size;
    if (report.witness_radius) out["witness_radius"] = report.witness_radius->str();
    if (report.witness) {
      ordered_json w;
      w["anchor"] = sys.label(report.witness->anchor);
      ordered_json companions = ordered_json::array();
      for (const PointId c : report.witness->companions) companions.push_back(sys.label(c));
      w["companions"] = companions;
      out["witness"] = w;
    }
  } else {
    throw std::invalid_argument("--mode must be positive or twosided");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_gamma(const std::string& file, const std::string& label, const std::string& r_text,
              bool twosided) {
  const FiniteSystem sys = load_system_file(file);
  const auto id = sys.find_label(label);
  if (!id) throw std::invalid_argument("unknown point label: " + label);
  const Threshold r = Threshold::parse(r_text);
  const GammaSet gamma = twosided ? gamma_two_sided(sys, *id, r) : gamma_plus(sys, *id, r);
  std::cout << to_json_string(gamma, sys);
  return 0;
}

int run_count(const std::string& file, const std::string& eps_text, const std::string& delta_text,
              unsigned cap) {
  const FiniteSystem sys = load_system_file(file);
  const CountReport report =
      max_shadower_count(sys, Threshold::parse(eps_text), Threshold::parse(delta_text), cap);
  std::cout << to_json_string(report, sys);
  return 0;
}

int run_core(const std::string& file, bool restrict_system, const std::string& out) {
  const FiniteSystem sys = load_system_file(file);
  const CoreReport report = surjective_core(sys);
  std::cout << to_json_string(report, sys);
  if (restrict_system) {
    if (out.empty()) throw std::invalid_argument("--restrict requires -o FILE");
    save_system_file(restrict_to_core(sys), out);
  }
  return 0;
}

int run_verify(const std::string& file, const std::string& suite,
               const std::vector<std::string>& eps_list, std::size_t budget,
               const std::string& format) {
  const FiniteSystem sys = load_system_file(file);
  SuiteOptions opts;
  for (const std::string& text : eps_list) opts.eps.push_back(Threshold::parse(text));
  if (budget != 0) opts.budget.max_states = budget;
  if (format != "json" && format != "md")
    throw std::invalid_argument("--format must be json or md");
  const VerificationReport report = run_suite(sys, suite, opts);
  std::cout << emit_report(report,
                           format == "json" ? ReportFormat::Json : ReportFormat::Markdown);
  for (const CheckRecord& rec : report.checks)
    if (rec.verdict == Verdict::Fail) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact shadowing, expansivity and shadower-multiplicity analysis of finite metric systems"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate an example system");
  gen->add_option("--family", gen_args.family,
                  "cycle | two-fixed | merge | not-onto | identity-cantor | periodic-shift | "
                  "n-expansive | random")
      ->required();
  gen->add_option("--k", gen_args.k, "cycle length");
  gen->add_option("--d", gen_args.d, "two-fixed distance (rational)");
  gen->add_option("--N", gen_args.N, "truncation depth (not-onto, identity-cantor)");
  gen->add_option("--n", gen_args.n, "cluster size (n-expansive)");
  gen->add_option("--K", gen_args.K, "cluster depth (n-expansive)");
  gen->add_option("--M", gen_args.M, "copy depth (n-expansive)");
  gen->add_option("--alphabet", gen_args.alphabet, "alphabet size (periodic-shift)");
  gen->add_option("--period", gen_args.period, "period bound (periodic-shift)");
  gen->add_option("--sided", gen_args.sided, "one | two (periodic-shift)");
  gen->add_option("--boundary", gen_args.boundary, "open | loop (n-expansive)");
  gen->add_option("--seed", gen_args.seed, "seed (random)");
  gen->add_option("--points", gen_args.points, "point count (random)");
  gen->add_option("--mode", gen_args.mode, "plane | matrix (random)");
  gen->add_option("-o,--out", gen_args.out, "output file (stdout when absent)");

  std::string validate_file;
  CLI::App* validate = app.add_subcommand("validate", "check a system document");
  validate->add_option("file", validate_file, "system document")->required();

  std::string modulus_file, modulus_kind, modulus_eps;
  CLI::App* modulus_cmd = app.add_subcommand("modulus", "largest workable delta for one epsilon");
  modulus_cmd->add_option("--kind", modulus_kind, "forward | backward | twosided | h | slimit")
      ->required();
  modulus_cmd->add_option("--eps", modulus_eps, "epsilon (rational or sqrt(p/q))")->required();
  modulus_cmd->add_option("file", modulus_file, "system document")->required();

  std::string exp_file, exp_mode = "positive";
  unsigned exp_n = 1;
  CLI::App* expansivity_cmd = app.add_subcommand("expansivity", "largest n-expansivity radius");
  expansivity_cmd->add_option("--mode", exp_mode, "positive | twosided");
  expansivity_cmd->add_option("--n", exp_n, "multiplicity bound");
  expansivity_cmd->add_option("file", exp_file, "system document")->required();

  std::string gamma_file, gamma_point, gamma_r;
  bool gamma_twosided = false;
  CLI::App* gamma_cmd = app.add_subcommand("gamma", "points tracking a center within r forever");
  gamma_cmd->add_option("--point", gamma_point, "center label")->required();
  gamma_cmd->add_option("--r", gamma_r, "radius (rational or sqrt(p/q))")->required();
  gamma_cmd->add_flag("--twosided", gamma_twosided, "use two-sided orbits");
  gamma_cmd->add_option("file", gamma_file, "system document")->required();

  std::string count_file, count_eps, count_delta;
  unsigned count_cap = 8;
  CLI::App* count_cmd = app.add_subcommand("count", "maximal shadower count at (eps, delta)");
  count_cmd->add_option("--eps", count_eps, "epsilon")->required();
  count_cmd->add_option("--delta", count_delta, "delta")->required();
  count_cmd->add_option("--cap", count_cap, "search cap");
  count_cmd->add_option("file", count_file, "system document")->required();

  std::string core_file, core_out;
  bool core_restrict = false;
  CLI::App* core_cmd = app.add_subcommand("core", "surjective core (eventual image)");
  core_cmd->add_option("file", core_file, "system document")->required();
  core_cmd->add_flag("--restrict", core_restrict, "write the restricted system");
  core_cmd->add_option("-o,--out", core_out, "output file for --restrict");

  std::string verify_file, verify_suite = "all", verify_format = "json";
  std::vector<std::string> verify_eps;
  std::size_t verify_budget = 0;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("--suite", verify_suite,
                         "all | hierarchy | nshadow | twosided-n | uniqueness | fiber");
  verify_cmd->add_option("--eps-list", verify_eps, "explicit epsilon values")->delimiter(',');
  verify_cmd->add_option("--budget", verify_budget, "state budget (0 = default)");
  verify_cmd->add_option("--format", verify_format, "json | md");
  verify_cmd->add_option("file", verify_file, "system document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (validate->parsed()) return run_validate(validate_file);
    if (modulus_cmd->parsed()) return run_modulus(modulus_file, modulus_kind, modulus_eps);
    if (expansivity_cmd->parsed()) return run_expansivity(exp_file, exp_mode, exp_n);
    if (gamma_cmd->parsed()) return run_gamma(gamma_file, gamma_point, gamma_r, gamma_twosided);
    if (count_cmd->parsed()) return run_count(count_file, count_eps, count_delta, count_cap);
    if (core_cmd->parsed()) return run_core(core_file, core_restrict, core_out);
    if (verify_cmd->parsed())
      return run_verify(verify_file, verify_suite, verify_eps, verify_budget, verify_format);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
