// Declarative experiment sweeps: a config, a list of schemes, a swept
// variable and Monte Carlo settings, read from a strict JSON file (unknown
// keys are rejected so parameter typos cannot pass silently).
//
// Sweep kinds:
//   lambda_t  - per grid point: solve the active density, evaluate the bound
//               pair there, estimate outage by Monte Carlo, flag whether the
//               estimate is sandwiched.
//   epsilon   - per scheme: one Monte Carlo calibration pass over
//               calibration_grid (a lambda_t grid), then per epsilon the
//               analytic density inversion and the Monte-Carlo-calibrated
//               contention density with its capacity.
//   exponent  - per grid point: overwrite the scheme's policy exponent
//               (channel one when present, interferer otherwise) and proceed
//               as for a lambda_t point at config.lambda_t.

#pragma once

#include <string>
#include <vector>

#include "dosnet/montecarlo.hpp"

namespace dosnet {

enum class SweepVariable { lambda_t, epsilon, exponent };

std::string to_string(SweepVariable v);

struct SchemeSpec {
  SchedulerKind kind;
  std::string label;
};

struct ExperimentSpec {
  std::string name;
  NetworkConfig config;
  std::vector<SchemeSpec> schemes;
  SweepVariable variable = SweepVariable::lambda_t;
  std::vector<double> grid;
  std::vector<double> calibration_grid;  // required for epsilon sweeps
  McSettings mc;
  std::vector<std::string> outputs{"csv"};
  std::string notes;

  void validate() const;
  static ExperimentSpec from_json_file(const std::string& path);
  static ExperimentSpec from_json_text(const std::string& text);
};

struct ResultRow {
  std::string scheme;
  std::string sweep_variable;
  double sweep_value = 0;

  double lambda_t = 0;
  double lambda_active = 0;
  double p_active = 0;

  double analytic_lower = 0;
  double analytic_upper = 0;
  int upper_clamped = 0;

  double mc_outage = 0;
  double mc_ci99 = 0;
  std::size_t mc_trials = 0;

  double lambda_lower = 0;  // analytic density inversion at the row epsilon
  double lambda_upper = 0;
  int lower_censored = 0;
  int upper_censored = 0;
  double tc_lower = 0;
  double tc_upper = 0;

  double mc_lambda_sup = 0;  // Monte-Carlo-calibrated contention density
  int mc_censored = 0;
  double mc_tc = 0;

  int sandwich_ok = -1;  // 1 pass, 0 violation (flagged, never dropped), -1 n/a
  std::string status = "ok";
  double runtime_s = 0;
};

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

enum class OutputFormat { csv, json };

std::string csv_header();
void emit_results(const std::vector<ResultRow>& rows, OutputFormat format,
                  const std::string& path);
std::vector<ResultRow> read_results_json(const std::string& path);

// Plain-text gnuplot script with bound bands and error bars.
void emit_plot_script(const ExperimentSpec& spec, const std::vector<ResultRow>& rows,
                      const std::string& path);

// Byte comparison of two result CSVs ignoring the runtime_s column (the one
// column that cannot be reproducible).
bool csv_equal_ignoring_runtime(const std::string& path_a, const std::string& path_b);

}  // namespace dosnet
