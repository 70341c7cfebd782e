#include "dosnet/experiments.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace dosnet {

namespace {

using nlohmann::json;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok)
      throw std::invalid_argument("experiment spec: unknown key '" + it.key() +
                                  "' in " + where);
  }
}

DistanceLaw parse_distance(const json& j) {
  reject_unknown_keys(j, {"kind", "d", "values", "weights"}, "config.distance");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return DistanceLaw::constant(j.at("d").get<double>());
  if (kind == "atoms")
    return DistanceLaw::atoms(j.at("values").get<std::vector<double>>(),
                              j.at("weights").get<std::vector<double>>());
  throw std::invalid_argument("experiment spec: distance kind must be constant|atoms");
}

ThresholdPolicy parse_policy(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"rho", "exponent"}, where);
  return ThresholdPolicy{j.at("rho").get<double>(), j.at("exponent").get<double>()};
}

SchemeSpec parse_scheme(const json& j) {
  reject_unknown_keys(j, {"label", "tag", "channel", "interferer"}, "schemes[]");
  const std::string tag = j.at("tag").get<std::string>();
  SchemeSpec s;
  if (tag == "none") {
    s.kind = SchedulerKind::none();
  } else if (tag == "dcas") {
    s.kind = SchedulerKind::dcas(parse_policy(j.at("channel"), "channel"));
  } else if (tag == "dias") {
    s.kind = SchedulerKind::dias(parse_policy(j.at("interferer"), "interferer"));
  } else if (tag == "dicas") {
    s.kind = SchedulerKind::dicas(parse_policy(j.at("channel"), "channel"),
                                  parse_policy(j.at("interferer"), "interferer"));
  } else {
    throw std::invalid_argument("experiment spec: unknown scheme tag '" + tag + "'");
  }
  s.label = j.contains("label") ? j.at("label").get<std::string>() : tag;
  if (s.label.find(',') != std::string::npos)
    throw std::invalid_argument("experiment spec: scheme label must not contain ','");
  return s;
}

}  // namespace

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::lambda_t: return "lambda_t";
    case SweepVariable::epsilon: return "epsilon";
    case SweepVariable::exponent: return "exponent";
  }
  return "?";
}

void ExperimentSpec::validate() const {
  config.validate();
  if (name.empty()) throw std::invalid_argument("experiment spec: empty name");
  if (schemes.empty()) throw std::invalid_argument("experiment spec: no schemes");
  for (const SchemeSpec& s : schemes) s.kind.validate();
  if (grid.empty()) throw std::invalid_argument("experiment spec: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("experiment spec: grid must be strictly increasing");
  if (variable == SweepVariable::epsilon) {
    if (calibration_grid.size() < 2)
      throw std::invalid_argument(
          "experiment spec: epsilon sweep needs a calibration_grid");
    for (std::size_t i = 1; i < calibration_grid.size(); ++i)
      if (!(calibration_grid[i] > calibration_grid[i - 1]))
        throw std::invalid_argument(
            "experiment spec: calibration_grid must be strictly increasing");
    for (double e : grid)
      if (!(e > 0 && e < 1))
        throw std::invalid_argument("experiment spec: epsilon grid must lie in (0,1)");
  }
  if (outputs.empty()) throw std::invalid_argument("experiment spec: no outputs");
  for (const std::string& o : outputs)
    if (o != "csv" && o != "json" && o != "plot")
      throw std::invalid_argument("experiment spec: outputs must be csv|json|plot");
  mc.validate();
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  reject_unknown_keys(j,
                      {"name", "config", "schemes", "sweep", "calibration_grid", "mc",
                       "outputs", "notes"},
                      "top level");
  ExperimentSpec spec;
  spec.name = j.at("name").get<std::string>();

  const json& c = j.at("config");
  reject_unknown_keys(c, {"alpha", "beta", "lambda_t", "epsilon", "rate_b", "distance"},
                      "config");
  spec.config.alpha = c.at("alpha").get<double>();
  spec.config.beta = c.at("beta").get<double>();
  spec.config.lambda_t = c.at("lambda_t").get<double>();
  if (c.contains("epsilon")) spec.config.epsilon = c.at("epsilon").get<double>();
  if (c.contains("rate_b")) spec.config.rate_b = c.at("rate_b").get<double>();
  spec.config.distance = parse_distance(c.at("distance"));

  for (const json& s : j.at("schemes")) spec.schemes.push_back(parse_scheme(s));

  const json& sw = j.at("sweep");
  reject_unknown_keys(sw, {"variable", "grid"}, "sweep");
  const std::string var = sw.at("variable").get<std::string>();
  if (var == "lambda_t")
    spec.variable = SweepVariable::lambda_t;
  else if (var == "epsilon")
    spec.variable = SweepVariable::epsilon;
  else if (var == "exponent")
    spec.variable = SweepVariable::exponent;
  else
    throw std::invalid_argument("experiment spec: unknown sweep variable '" + var + "'");
  spec.grid = sw.at("grid").get<std::vector<double>>();

  if (j.contains("calibration_grid"))
    spec.calibration_grid = j.at("calibration_grid").get<std::vector<double>>();

  const json& m = j.at("mc");
  reject_unknown_keys(m, {"trials", "window_radius", "seed", "edge_policy", "threads"},
                      "mc");
  spec.mc.trials = m.at("trials").get<std::size_t>();
  if (m.contains("window_radius"))
    spec.mc.window_radius = m.at("window_radius").get<double>();
  spec.mc.master_seed = m.at("seed").get<std::uint64_t>();
  if (m.contains("edge_policy")) {
    const std::string e = m.at("edge_policy").get<std::string>();
    if (e == "mirror")
      spec.mc.edge_policy = EdgePolicy::mirror;
    else if (e == "none")
      spec.mc.edge_policy = EdgePolicy::none;
    else
      throw std::invalid_argument("experiment spec: edge_policy must be mirror|none");
  }
  if (m.contains("threads")) spec.mc.threads = m.at("threads").get<unsigned>();

  if (j.contains("outputs"))
    spec.outputs = j.at("outputs").get<std::vector<std::string>>();
  if (j.contains("notes")) spec.notes = j.at("notes").get<std::string>();

  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("experiment spec: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

namespace {

struct CalibrationCurve {
  std::vector<double> lambda_active;  // increasing
  std::vector<double> outage;         // Monte Carlo estimate at each density
  std::vector<double> ci;
};

// sup of the interpolated density with outage <= epsilon. Log-linear
// interpolation on a monotone envelope of the measured curve.
double invert_calibration(const CalibrationCurve& curve, double epsilon,
                          bool* censored) {
  *censored = false;
  std::vector<double> env(curve.outage);
  for (std::size_t i = 1; i < env.size(); ++i) env[i] = std::max(env[i], env[i - 1]);
  if (env.back() <= epsilon) {
    *censored = true;
    return curve.lambda_active.back();
  }
  if (env.front() > epsilon) return curve.lambda_active.front();
  std::size_t k = 0;
  while (k + 1 < env.size() && env[k + 1] <= epsilon) ++k;
  const double q0 = env[k], q1 = env[k + 1];
  const double l0 = std::log(curve.lambda_active[k]);
  const double l1 = std::log(curve.lambda_active[k + 1]);
  const double w = q1 > q0 ? (epsilon - q0) / (q1 - q0) : 0.0;
  return std::exp(l0 + w * (l1 - l0));
}

ResultRow lambda_point_row(const ExperimentSpec& spec, const SchemeSpec& scheme,
                           const NetworkConfig& config, double sweep_value,
                           std::uint64_t point_seed) {
  const auto t0 = std::chrono::steady_clock::now();
  ResultRow row;
  row.scheme = scheme.label;
  row.sweep_variable = to_string(spec.variable);
  row.sweep_value = sweep_value;
  row.lambda_t = config.lambda_t;
  row.mc_lambda_sup = kNan;
  row.mc_tc = kNan;
  row.mc_censored = 0;

  const FixedPointResult fp = solve_active_density(scheme.kind, config);
  row.lambda_active = fp.value;
  row.p_active = config.lambda_t > 0 ? fp.value / config.lambda_t : 1.0;

  const OutageBounds bounds =
      scheme_outage_bounds(row.lambda_active, config, scheme.kind);
  row.analytic_lower = bounds.lower;
  row.analytic_upper = bounds.upper;
  row.upper_clamped = bounds.upper_clamped;

  McSettings mc = spec.mc;
  mc.master_seed = point_seed;
  const McEstimate est = estimate_outage(config, scheme.kind, mc);
  row.mc_outage = est.mean;
  row.mc_ci99 = est.half_width_99;
  row.mc_trials = est.trials;
  row.sandwich_ok = (est.mean >= bounds.lower - est.half_width_99 &&
                     est.mean <= bounds.upper + est.half_width_99)
                        ? 1
                        : 0;

  const DensityBounds db = invert_outage_for_density(config, scheme.kind);
  row.lambda_lower = db.lower;
  row.lambda_upper = db.upper;
  row.lower_censored = db.lower_censored;
  row.upper_censored = db.upper_censored;
  row.tc_lower = db.tc_lower;
  row.tc_upper = db.tc_upper;

  row.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;

  if (spec.variable == SweepVariable::lambda_t ||
      spec.variable == SweepVariable::exponent) {
    for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
      for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
        const double value = spec.grid[gi];
        NetworkConfig config = spec.config;
        SchemeSpec scheme = spec.schemes[si];
        if (spec.variable == SweepVariable::lambda_t) {
          config.lambda_t = value;
        } else {
          if (scheme.kind.channel_policy)
            scheme.kind.channel_policy->exponent = value;
          else if (scheme.kind.interferer_policy)
            scheme.kind.interferer_policy->exponent = value;
        }
        // Common random numbers across schemes: the seed depends only on the
        // grid index, so every scheme sees the same parent networks.
        const std::uint64_t seed = derive_key(spec.mc.master_seed, 0x504f494eull, gi);
        try {
          rows.push_back(lambda_point_row(spec, scheme, config, value, seed));
        } catch (const std::exception& e) {
          ResultRow row;
          row.scheme = scheme.label;
          row.sweep_variable = to_string(spec.variable);
          row.sweep_value = value;
          row.lambda_t = config.lambda_t;
          row.lambda_active = row.p_active = kNan;
          row.analytic_lower = row.analytic_upper = kNan;
          row.mc_outage = row.mc_ci99 = kNan;
          row.lambda_lower = row.lambda_upper = kNan;
          row.tc_lower = row.tc_upper = kNan;
          row.mc_lambda_sup = row.mc_tc = kNan;
          row.status = std::string("error: ") + e.what();
          rows.push_back(row);
        }
      }
    }
    return rows;
  }

  // epsilon sweep: one calibration pass per scheme, then invert per epsilon.
  for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
    const SchemeSpec& scheme = spec.schemes[si];
    CalibrationCurve curve;
    for (std::size_t gi = 0; gi < spec.calibration_grid.size(); ++gi) {
      NetworkConfig config = spec.config;
      config.lambda_t = spec.calibration_grid[gi];
      const FixedPointResult fp = solve_active_density(scheme.kind, config);
      McSettings mc = spec.mc;
      mc.master_seed = derive_key(spec.mc.master_seed, 0x43414c49ull, gi);
      const McEstimate est = estimate_outage(config, scheme.kind, mc);
      curve.lambda_active.push_back(fp.value);
      curve.outage.push_back(est.mean);
      curve.ci.push_back(est.half_width_99);
    }

    for (double eps : spec.grid) {
      const auto t0 = std::chrono::steady_clock::now();
      ResultRow row;
      row.scheme = scheme.label;
      row.sweep_variable = "epsilon";
      row.sweep_value = eps;
      row.lambda_t = spec.config.lambda_t;
      row.lambda_active = row.p_active = kNan;
      row.analytic_lower = row.analytic_upper = kNan;
      row.mc_outage = row.mc_ci99 = kNan;
      row.mc_trials = spec.mc.trials;

      NetworkConfig config = spec.config;
      config.epsilon = eps;
      try {
        const DensityBounds db = invert_outage_for_density(config, scheme.kind);
        row.lambda_lower = db.lower;
        row.lambda_upper = db.upper;
        row.lower_censored = db.lower_censored;
        row.upper_censored = db.upper_censored;
        row.tc_lower = db.tc_lower;
        row.tc_upper = db.tc_upper;

        bool censored = false;
        row.mc_lambda_sup = invert_calibration(curve, eps, &censored);
        row.mc_censored = censored;
        row.mc_tc = transmission_capacity(row.mc_lambda_sup, config);
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
      row.runtime_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string csv_header() {
  return "scheme,sweep_variable,sweep_value,lambda_t,lambda_active,p_active,"
         "analytic_lower,analytic_upper,upper_clamped,mc_outage,mc_ci99,mc_trials,"
         "lambda_lower,lambda_upper,lower_censored,upper_censored,tc_lower,tc_upper,"
         "mc_lambda_sup,mc_censored,mc_tc,sandwich_ok,status,runtime_s";
}

void emit_results(const std::vector<ResultRow>& rows, OutputFormat format,
                  const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_results: no rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_results: cannot write " + path);

  if (format == OutputFormat::csv) {
    out << csv_header() << "\n";
    for (const ResultRow& r : rows) {
      out << r.scheme << ',' << r.sweep_variable << ',' << fmt(r.sweep_value) << ','
          << fmt(r.lambda_t) << ',' << fmt(r.lambda_active) << ',' << fmt(r.p_active)
          << ',' << fmt(r.analytic_lower) << ',' << fmt(r.analytic_upper) << ','
          << r.upper_clamped << ',' << fmt(r.mc_outage) << ',' << fmt(r.mc_ci99) << ','
          << r.mc_trials << ',' << fmt(r.lambda_lower) << ',' << fmt(r.lambda_upper)
          << ',' << r.lower_censored << ',' << r.upper_censored << ','
          << fmt(r.tc_lower) << ',' << fmt(r.tc_upper) << ',' << fmt(r.mc_lambda_sup)
          << ',' << r.mc_censored << ',' << fmt(r.mc_tc) << ',' << r.sandwich_ok << ','
          << r.status << ',' << fmt(r.runtime_s) << "\n";
    }
    return;
  }

  json arr = json::array();
  for (const ResultRow& r : rows) {
    json o;
    o["scheme"] = r.scheme;
    o["sweep_variable"] = r.sweep_variable;
    o["sweep_value"] = fmt(r.sweep_value);
    o["lambda_t"] = fmt(r.lambda_t);
    o["lambda_active"] = fmt(r.lambda_active);
    o["p_active"] = fmt(r.p_active);
    o["analytic_lower"] = fmt(r.analytic_lower);
    o["analytic_upper"] = fmt(r.analytic_upper);
    o["upper_clamped"] = r.upper_clamped;
    o["mc_outage"] = fmt(r.mc_outage);
    o["mc_ci99"] = fmt(r.mc_ci99);
    o["mc_trials"] = r.mc_trials;
    o["lambda_lower"] = fmt(r.lambda_lower);
    o["lambda_upper"] = fmt(r.lambda_upper);
    o["lower_censored"] = r.lower_censored;
    o["upper_censored"] = r.upper_censored;
    o["tc_lower"] = fmt(r.tc_lower);
    o["tc_upper"] = fmt(r.tc_upper);
    o["mc_lambda_sup"] = fmt(r.mc_lambda_sup);
    o["mc_censored"] = r.mc_censored;
    o["mc_tc"] = fmt(r.mc_tc);
    o["sandwich_ok"] = r.sandwich_ok;
    o["status"] = r.status;
    o["runtime_s"] = fmt(r.runtime_s);
    arr.push_back(o);
  }
  out << arr.dump(2) << "\n";
}

std::vector<ResultRow> read_results_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_results_json: cannot open " + path);
  json arr = json::parse(in);
  std::vector<ResultRow> rows;
  const auto num = [](const json& o, const char* k) {
    return std::strtod(o.at(k).get<std::string>().c_str(), nullptr);
  };
  for (const json& o : arr) {
    ResultRow r;
    r.scheme = o.at("scheme").get<std::string>();
    r.sweep_variable = o.at("sweep_variable").get<std::string>();
    r.sweep_value = num(o, "sweep_value");
    r.lambda_t = num(o, "lambda_t");
    r.lambda_active = num(o, "lambda_active");
    r.p_active = num(o, "p_active");
    r.analytic_lower = num(o, "analytic_lower");
    r.analytic_upper = num(o, "analytic_upper");
    r.upper_clamped = o.at("upper_clamped").get<int>();
    r.mc_outage = num(o, "mc_outage");
    r.mc_ci99 = num(o, "mc_ci99");
    r.mc_trials = o.at("mc_trials").get<std::size_t>();
    r.lambda_lower = num(o, "lambda_lower");
    r.lambda_upper = num(o, "lambda_upper");
    r.lower_censored = o.at("lower_censored").get<int>();
    r.upper_censored = o.at("upper_censored").get<int>();
    r.tc_lower = num(o, "tc_lower");
    r.tc_upper = num(o, "tc_upper");
    r.mc_lambda_sup = num(o, "mc_lambda_sup");
    r.mc_censored = o.at("mc_censored").get<int>();
    r.mc_tc = num(o, "mc_tc");
    r.sandwich_ok = o.at("sandwich_ok").get<int>();
    r.status = o.at("status").get<std::string>();
    r.runtime_s = num(o, "runtime_s");
    rows.push_back(r);
  }
  return rows;
}

void emit_plot_script(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
                      const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_plot_script: no rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot_script: cannot write " + path);

  std::vector<std::string> labels;
  for (const ResultRow& r : rows) {
    bool seen = false;
    for (const std::string& l : labels) seen = seen || l == r.scheme;
    if (!seen) labels.push_back(r.scheme);
  }
  const auto block_name = [](const std::string& label) {
    std::string s = label;
    for (char& c : s)
      if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return s;
  };

  const bool eps_sweep = spec.variable == SweepVariable::epsilon;
  out << "# gnuplot script generated by dossim for experiment '" << spec.name << "'\n";
  out << "set datafile missing 'nan'\n";
  out << "set key left top\n";
  if (eps_sweep) {
    out << "set xlabel 'outage constraint epsilon'\n";
    out << "set ylabel 'transmission capacity (b per m^2)'\n";
  } else {
    out << "set logscale xy\n";
    out << "set xlabel '" << to_string(spec.variable) << "'\n";
    out << "set ylabel 'outage probability'\n";
  }

  for (const std::string& label : labels) {
    out << "$data_" << block_name(label) << " << EOD\n";
    for (const ResultRow& r : rows) {
      if (r.scheme != label) continue;
      if (eps_sweep)
        out << fmt(r.sweep_value) << ' ' << fmt(r.tc_lower) << ' ' << fmt(r.tc_upper)
            << ' ' << fmt(r.mc_tc) << "\n";
      else
        out << fmt(r.sweep_value) << ' ' << fmt(r.analytic_lower) << ' '
            << fmt(r.analytic_upper) << ' ' << fmt(r.mc_outage) << ' '
            << fmt(r.mc_ci99) << "\n";
    }
    out << "EOD\n";
  }

  out << "plot \\\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string& l = labels[i];
    const std::string b = block_name(l);
    out << "  $data_" << b << " using 1:2:3 with filledcurves fs transparent solid "
        << "0.2 title '" << l << " bounds', \\\n";
    if (eps_sweep)
      out << "  $data_" << b << " using 1:4 with linespoints title '" << l << " mc'";
    else
      out << "  $data_" << b << " using 1:4:5 with yerrorbars title '" << l << " mc'";
    out << (i + 1 < labels.size() ? ", \\\n" : "\n");
  }
}

bool csv_equal_ignoring_runtime(const std::string& path_a, const std::string& path_b) {
  std::ifstream a(path_a), b(path_b);
  if (!a || !b) return false;
  std::string la, lb;
  const auto strip_runtime = [](std::string s) {
    const std::size_t pos = s.rfind(',');
    return pos == std::string::npos ? s : s.substr(0, pos);
  };
  while (true) {
    const bool ga = static_cast<bool>(std::getline(a, la));
    const bool gb = static_cast<bool>(std::getline(b, lb));
    if (ga != gb) return false;
    if (!ga) return true;
    if (strip_runtime(la) != strip_runtime(lb)) return false;
  }
}

}  // namespace dosnet
