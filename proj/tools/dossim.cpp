// dossim: command-line front end over the dosnet library.
//
// Verbs:
//   run <spec.json>   execute an experiment spec, emit CSV/JSON/plot outputs
//   bounds            print the outage bound pair for one parameter set
//   tc                print contention-density bounds and capacities
//   validate <suite>  run a named property suite (bounds-sandwich,
//                     reductions, asymptotics, ic)
//   presets           list bundled experiment specs
//
// Exit codes: 0 success, 1 property-suite failure, 2 parameter/schema error,
// 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dosnet/experiments.hpp"

using namespace dosnet;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct BoundsArgs {
  double alpha = 4, beta = 2, lambda = 1e-4, d = 8;
  double rho_c = 0, gamma = 0, rho_i = 0, delta = 0;
  double epsilon = 0.1, rate_b = 1.0;
  std::string scheme = "none";
  std::uint64_t seed = 1;
  bool with_ic = false;
  bool json_out = false;
};

NetworkConfig make_config(const BoundsArgs& a) {
  NetworkConfig c;
  c.alpha = a.alpha;
  c.beta = a.beta;
  c.lambda_t = a.lambda;
  c.epsilon = a.epsilon;
  c.rate_b = a.rate_b;
  c.distance = DistanceLaw::constant(a.d);
  c.validate();
  return c;
}

SchedulerKind make_kind(const BoundsArgs& a) {
  if (a.scheme == "none") return SchedulerKind::none();
  if (a.scheme == "dcas") return SchedulerKind::dcas({a.rho_c, a.gamma});
  if (a.scheme == "dias") return SchedulerKind::dias({a.rho_i, a.delta});
  if (a.scheme == "dicas")
    return SchedulerKind::dicas({a.rho_c, a.gamma}, {a.rho_i, a.delta});
  throw std::invalid_argument("scheme must be none|dcas|dias|dicas");
}

int cmd_bounds(const BoundsArgs& a) {
  const NetworkConfig config = make_config(a);
  const SchedulerKind kind = make_kind(a);
  const OutageBounds b = scheme_outage_bounds(a.lambda, config, kind);

  OutageBounds ic;
  bool have_ic = false;
  if (a.with_ic) {
    have_ic = true;
    const double p_i = kind.uses_interferer_test()
                           ? transmission_prob_dias(a.lambda, config,
                                                    *kind.interferer_policy)
                           : 1.0;
    switch (kind.tag) {
      case SchemeTag::none:
        ic = ic_outage_bounds_dias(a.lambda, config, 1.0);
        break;
      case SchemeTag::dcas:
        ic = ic_outage_bounds_dcas(a.lambda, config, *kind.channel_policy);
        break;
      case SchemeTag::dias:
        ic = ic_outage_bounds_dias(a.lambda, config, p_i);
        break;
      case SchemeTag::dicas:
        ic = ic_outage_bounds_dicas(a.lambda, config, *kind.channel_policy, p_i);
        break;
    }
  }

  if (a.json_out) {
    nlohmann::json o;
    o["scheme"] = a.scheme;
    o["lambda"] = fmt12(a.lambda);
    o["lower"] = fmt12(b.lower);
    o["upper"] = fmt12(b.upper);
    o["upper_clamped"] = b.upper_clamped;
    if (have_ic) {
      o["ic_lower"] = fmt12(ic.lower);
      o["ic_upper"] = fmt12(ic.upper);
      o["ic_upper_clamped"] = ic.upper_clamped;
    }
    std::cout << o.dump(2) << "\n";
  } else {
    std::cout << "scheme " << a.scheme << " at lambda " << fmt12(a.lambda) << "\n";
    std::cout << "  outage lower " << fmt12(b.lower) << "\n";
    std::cout << "  outage upper " << fmt12(b.upper)
              << (b.upper_clamped ? "  (clamped)" : "") << "\n";
    if (have_ic) {
      std::cout << "  ic outage lower " << fmt12(ic.lower) << "\n";
      std::cout << "  ic outage upper " << fmt12(ic.upper)
                << (ic.upper_clamped ? "  (clamped)" : "") << "\n";
    }
  }
  return kExitOk;
}

int cmd_tc(const BoundsArgs& a) {
  const NetworkConfig config = make_config(a);
  const SchedulerKind kind = make_kind(a);
  const DensityBounds db = invert_outage_for_density(config, kind);
  if (a.json_out) {
    nlohmann::json o;
    o["scheme"] = a.scheme;
    o["epsilon"] = fmt12(config.epsilon);
    o["lambda_lower"] = fmt12(db.lower);
    o["lambda_upper"] = fmt12(db.upper);
    o["lower_censored"] = db.lower_censored;
    o["upper_censored"] = db.upper_censored;
    o["tc_lower"] = fmt12(db.tc_lower);
    o["tc_upper"] = fmt12(db.tc_upper);
    std::cout << o.dump(2) << "\n";
  } else {
    std::cout << "scheme " << a.scheme << " epsilon " << fmt12(config.epsilon) << "\n";
    std::cout << "  lambda lower " << fmt12(db.lower)
              << (db.lower_censored ? " (censored)" : "") << "\n";
    std::cout << "  lambda upper " << fmt12(db.upper)
              << (db.upper_censored ? " (censored)" : "") << "\n";
    std::cout << "  tc lower " << fmt12(db.tc_lower) << "\n";
    std::cout << "  tc upper " << fmt12(db.tc_upper) << "\n";
  }
  return kExitOk;
}

int cmd_run(const std::string& spec_path, const std::string& out_dir,
            long trials_override, long seed_override, unsigned threads,
            bool json_out) {
  ExperimentSpec spec;
  try {
    spec = ExperimentSpec::from_json_file(spec_path);
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = "spec";
    err["detail"] = e.what();
    std::cout << err.dump() << "\n";
    return kExitUsage;
  }
  if (trials_override > 0) spec.mc.trials = static_cast<std::size_t>(trials_override);
  if (seed_override >= 0) spec.mc.master_seed = static_cast<std::uint64_t>(seed_override);
  if (threads > 0) spec.mc.threads = threads;

  std::vector<ResultRow> rows;
  try {
    rows = run_experiment(spec);
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = "numeric";
    err["detail"] = e.what();
    std::cout << err.dump() << "\n";
    return kExitNumeric;
  }

  fs::create_directories(out_dir);
  const fs::path base = fs::path(out_dir) / spec.name;
  for (const std::string& o : spec.outputs) {
    if (o == "csv") emit_results(rows, OutputFormat::csv, base.string() + ".csv");
    if (o == "json") emit_results(rows, OutputFormat::json, base.string() + ".json");
    if (o == "plot") emit_plot_script(spec, rows, base.string() + ".gp");
  }

  std::size_t flagged = 0, errors = 0;
  for (const ResultRow& r : rows) {
    flagged += r.sandwich_ok == 0;
    errors += r.status != "ok";
  }
  if (json_out) {
    nlohmann::json o;
    o["name"] = spec.name;
    o["rows"] = rows.size();
    o["trials"] = spec.mc.trials;
    o["seed"] = spec.mc.master_seed;
    o["sandwich_violations"] = flagged;
    o["point_errors"] = errors;
    std::cout << o.dump(2) << "\n";
  } else {
    std::cout << "experiment " << spec.name << ": " << rows.size() << " rows, "
              << flagged << " sandwich violations, " << errors
              << " point errors; outputs in " << out_dir << "\n";
  }
  return kExitOk;
}

int cmd_presets(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    std::cout << "no preset directory at " << dir << "\n";
    return kExitUsage;
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    try {
      const ExperimentSpec spec = ExperimentSpec::from_json_file(entry.path().string());
      std::cout << entry.path().filename().string() << "  " << spec.name << ": "
                << spec.schemes.size() << " schemes, "
                << to_string(spec.variable) << " sweep over " << spec.grid.size()
                << " points, " << spec.mc.trials << " trials, seed "
                << spec.mc.master_seed;
      if (!spec.notes.empty()) std::cout << "  -- " << spec.notes;
      std::cout << "\n";
    } catch (const std::exception& e) {
      std::cout << entry.path().filename().string() << "  INVALID: " << e.what()
                << "\n";
    }
  }
  return kExitOk;
}

// ---- validate suites --------------------------------------------------------

struct SuiteReport {
  int checks = 0;
  int failures = 0;
  void check(bool ok, const std::string& what) {
    ++checks;
    failures += !ok;
    std::cout << (ok ? "  [pass] " : "  [FAIL] ") << what << "\n";
  }
};

int suite_reductions() {
  std::cout << "suite reductions\n";
  SuiteReport rep;
  NetworkConfig config;
  config.distance = DistanceLaw::constant(8.0);

  const ThresholdPolicy channel{1.0, 1.0};
  for (int i = 0; i < 20; ++i) {
    const double lam = 1e-6 * std::pow(10.0, 3.0 * i / 19.0);
    const OutageBounds a = dicas_outage_bounds(lam, config, channel, 1.0);
    const OutageBounds b = dcas_outage_bounds(lam, config, channel);
    if (std::abs(a.lower - b.lower) > 1e-12 || std::abs(a.upper - b.upper) > 1e-12) {
      rep.check(false, "combined rule with unit interferer probability equals the "
                       "channel-only rule at lambda=" + fmt12(lam));
      break;
    }
    if (i == 19) rep.check(true, "combined rule with p_i=1 equals channel-only rule "
                                 "(20-point grid, 1e-12)");
  }

  {
    const ThresholdPolicy off{0.0, 0.0};
    const double lam = 1e-4;
    const OutageBounds b = dcas_outage_bounds(lam, config, off);
    const double collapse = 1.0 - dcas_factor_b(lam, config);
    rep.check(std::abs(b.lower - collapse) < 1e-15 &&
                  std::abs(b.upper - collapse) < 1e-15,
              "zero channel threshold collapses both bounds to 1-B");
  }

  {
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
      const double lam = 1e-6 * std::pow(10.0, 3.0 * i / 19.0);
      const double delta_c = channel(lam);
      const OutageBounds shot =
          shot_noise_ccdf_bounds(delta_c / config.beta, lam, config.alpha);
      const OutageBounds full = dcas_outage_bounds(lam, config, channel);
      const double one_minus_b = 1.0 - dcas_factor_b(lam, config);
      ok = std::abs(full.lower - shot.lower * one_minus_b) < 1e-12 &&
           std::abs(full.upper - shot.upper * one_minus_b) < 1e-12;
    }
    rep.check(ok, "channel-aware factors equal shot-noise CCDF bounds at "
                  "x=Delta_c/beta (1e-12)");
  }

  {
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
      const double lam = 1e-6 * std::pow(10.0, 3.0 * i / 19.0);
      const OutageBounds a = ic_outage_bounds_dicas(lam, config, channel, 1.0);
      const OutageBounds b = ic_outage_bounds_dcas(lam, config, channel);
      ok = std::abs(a.lower - b.lower) < 1e-12 && std::abs(a.upper - b.upper) < 1e-12;
    }
    rep.check(ok, "cancellation bounds: combined rule with p_i=1 equals "
                  "channel-only rule (20-point grid, 1e-12)");
  }

  {
    const auto id = [](double t) { return t; };
    const double g =
        gamma_mean_functional([](double) { return 2.0; }, 0.5, id);
    const double bfun =
        beta_mean_functional([](double) { return 2.0; }, 0.5, 0.5, id);
    rep.check(std::abs(g - 2.0) < 1e-8 && std::abs(bfun - 2.0) < 1e-8,
              "constant-intensity rule for the Gamma and Beta mean functionals");
  }

  std::cout << (rep.failures == 0 ? "reductions: all passed\n"
                                  : "reductions: FAILURES\n");
  return rep.failures == 0 ? kExitOk : kExitPropertyFailure;
}

int suite_asymptotics() {
  std::cout << "suite asymptotics\n";
  SuiteReport rep;
  NetworkConfig config;
  config.distance = DistanceLaw::constant(8.0);
  config.epsilon = 1e-3;

  const auto ratio_of = [&](const SchedulerKind& kind) {
    const DensityBounds db = invert_outage_for_density(config, kind);
    return db.upper / db.lower;
  };

  {
    const double expect = asymptotic_ratio(SchemeTag::dcas, 1.0, 0, 4.0, Regime::sparse);
    const double got = ratio_of(SchedulerKind::dcas({1.0, 1.0}));
    rep.check(std::abs(got / expect - 1.0) < 0.10,
              "channel-aware, exponent 1: ratio " + fmt12(got) + " vs limit " +
                  fmt12(expect));
  }
  {
    const double expect = asymptotic_ratio(SchemeTag::dcas, 0.0, 0, 4.0, Regime::sparse);
    const double got = ratio_of(SchedulerKind::dcas({1.0, 0.0}));
    rep.check(std::abs(got / expect - 1.0) < 0.10,
              "channel-aware, fixed threshold: ratio " + fmt12(got) + " vs limit " +
                  fmt12(expect));
  }
  {
    const double expect = asymptotic_ratio(SchemeTag::dias, 0, 0.2, 4.0, Regime::sparse);
    const double got = ratio_of(SchedulerKind::dias({0.015, 0.2}));
    rep.check(std::abs(got / expect - 1.0) < 0.10,
              "interferer-aware, exponent 0.2: ratio " + fmt12(got) + " vs limit " +
                  fmt12(expect));
  }

  std::cout << (rep.failures == 0 ? "asymptotics: all passed\n"
                                  : "asymptotics: FAILURES\n");
  return rep.failures == 0 ? kExitOk : kExitPropertyFailure;
}

int suite_ic(std::uint64_t seed) {
  std::cout << "suite ic\n";
  SuiteReport rep;
  NetworkConfig config;
  config.distance = DistanceLaw::constant(8.0);

  const ThresholdPolicy channel{1.0, 1.0};
  bool analytic_ok = true;
  for (int i = 0; i < 12 && analytic_ok; ++i) {
    const double lam = 1e-6 * std::pow(10.0, 3.0 * i / 11.0);
    const double p_i = 0.9;
    const OutageBounds plain = dicas_outage_bounds(lam, config, channel, p_i);
    const OutageBounds ic = ic_outage_bounds_dicas(lam, config, channel, p_i);
    analytic_ok = ic.lower <= plain.lower && ic.upper <= plain.upper;
  }
  rep.check(analytic_ok, "cancellation bounds never exceed plain bounds (12-point grid)");

  {
    config.lambda_t = 2e-4;
    McSettings mc;
    mc.trials = 4000;
    mc.master_seed = seed;
    const PairedOutage po =
        estimate_outage_paired_ic(config, SchedulerKind::none(), mc);
    rep.check(po.dominance_held, "paired trials: cancellation never increases outage");
    rep.check(po.with_ic.mean <= po.without_ic.mean + 1e-12,
              "cancellation estimate " + fmt12(po.with_ic.mean) +
                  " <= plain estimate " + fmt12(po.without_ic.mean));
  }

  std::cout << (rep.failures == 0 ? "ic: all passed\n" : "ic: FAILURES\n");
  return rep.failures == 0 ? kExitOk : kExitPropertyFailure;
}

int suite_bounds_sandwich(std::uint64_t seed) {
  std::cout << "suite bounds-sandwich (reduced trials)\n";
  SuiteReport rep;
  NetworkConfig config;
  config.distance = DistanceLaw::constant(8.0);

  struct Case {
    const char* label;
    SchedulerKind kind;
  };
  const Case cases[] = {
      {"none", SchedulerKind::none()},
      {"dcas exponent 1", SchedulerKind::dcas({1.0, 1.0})},
      {"dias 0.015*l^-0.01", SchedulerKind::dias({0.015, -0.01})},
      {"dicas", SchedulerKind::dicas({1.0, 1.0}, {1.0, 0.6})},
  };
  for (const Case& c : cases) {
    for (double lam_t : {1e-5, 1e-4, 5e-4}) {
      config.lambda_t = lam_t;
      McSettings mc;
      mc.trials = 4000;
      mc.master_seed = derive_key(seed, static_cast<std::uint64_t>(lam_t * 1e9));
      const double lam = solve_active_density(c.kind, config).value;
      const OutageBounds b = scheme_outage_bounds(lam, config, c.kind);
      const McEstimate est = estimate_outage(config, c.kind, mc);
      const bool ok = est.mean >= b.lower - est.half_width_99 &&
                      est.mean <= b.upper + est.half_width_99;
      rep.check(ok, std::string(c.label) + " alpha=4 beta=2 d=8 lambda_t=" +
                        fmt12(lam_t) + " trials=4000 seed=" +
                        std::to_string(mc.master_seed) + ": mc " + fmt12(est.mean) +
                        " in [" + fmt12(b.lower) + ", " + fmt12(b.upper) + "] +/- " +
                        fmt12(est.half_width_99));
    }
  }
  std::cout << (rep.failures == 0 ? "bounds-sandwich: all passed\n"
                                  : "bounds-sandwich: FAILURES (see rows above; "
                                    "expected for the channel-aware pairs, which do "
                                    "not bracket the conditioned-signal outage)\n");
  return rep.failures == 0 ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dosnet: distributed opportunistic scheduling analysis"};
  app.require_subcommand(1);

  // run
  std::string spec_path, out_dir = ".";
  long trials_override = 0, seed_override = -1;
  unsigned threads = 0;
  bool json_out = false;
  CLI::App* run = app.add_subcommand("run", "execute an experiment spec");
  run->add_option("spec", spec_path, "path to the experiment JSON")->required();
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_option("--trials", trials_override, "override Monte Carlo trials");
  run->add_option("--seed", seed_override, "override master seed");
  run->add_option("--threads", threads, "worker threads (0 = auto)");
  run->add_flag("--json", json_out, "machine-readable summary");

  // bounds / tc share flags
  BoundsArgs ba;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", ba.alpha, "path loss exponent (> 2)");
    cmd->add_option("--beta", ba.beta, "SIR threshold");
    cmd->add_option("--lambda-t", ba.lambda, "density the bounds are evaluated at");
    cmd->add_option("--d", ba.d, "constant link distance");
    cmd->add_option("--scheme", ba.scheme, "none|dcas|dias|dicas");
    cmd->add_option("--rho-c", ba.rho_c, "channel threshold coefficient");
    cmd->add_option("--gamma", ba.gamma, "channel threshold exponent");
    cmd->add_option("--rho-i", ba.rho_i, "interferer threshold coefficient");
    cmd->add_option("--delta", ba.delta, "interferer threshold exponent");
    cmd->add_option("--epsilon", ba.epsilon, "outage constraint");
    cmd->add_option("--rate-b", ba.rate_b, "per-link rate");
    cmd->add_flag("--json", ba.json_out, "machine-readable output");
  };
  CLI::App* bounds = app.add_subcommand("bounds", "print the outage bound pair");
  add_common(bounds);
  bounds->add_flag("--ic", ba.with_ic, "also print cancellation bounds");
  CLI::App* tc = app.add_subcommand("tc", "print contention density / capacity bounds");
  add_common(tc);

  // validate
  std::string suite;
  std::uint64_t vseed = 0;
  bool have_seed = false;
  CLI::App* validate = app.add_subcommand("validate", "run a property suite");
  validate->add_option("suite", suite, "bounds-sandwich|reductions|asymptotics|ic")
      ->required();
  CLI::Option* seed_opt = validate->add_option("--seed", vseed, "master seed");
  (void)seed_opt;

  // presets
  std::string presets_dir = "presets";
  CLI::App* presets = app.add_subcommand("presets", "list bundled experiment specs");
  presets->add_option("--dir", presets_dir, "preset directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  have_seed = validate->count("--seed") > 0;

  try {
    if (run->parsed())
      return cmd_run(spec_path, out_dir, trials_override, seed_override, threads,
                     json_out);
    if (bounds->parsed()) return cmd_bounds(ba);
    if (tc->parsed()) return cmd_tc(ba);
    if (presets->parsed()) return cmd_presets(presets_dir);
    if (validate->parsed()) {
      if (suite == "reductions") return suite_reductions();
      if (suite == "asymptotics") return suite_asymptotics();
      if (suite == "ic" || suite == "bounds-sandwich") {
        if (!have_seed) {
          std::cerr << "validate " << suite << ": --seed is required (no wall-clock "
                    << "seeding)\n";
          return kExitUsage;
        }
        return suite == "ic" ? suite_ic(vseed) : suite_bounds_sandwich(vseed);
      }
      std::cerr << "unknown suite '" << suite << "'\n";
      return kExitUsage;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
