#include "dosnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace dosnet {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // 99% two-sided normal quantile

template <class F>
void parallel_trials(std::size_t trials, unsigned threads, F&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || trials < 256) {
    for (std::size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (trials + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t t = lo; t < hi; ++t) body(t);
    });
  }
  for (auto& th : pool) th.join();
}

McEstimate binomial_estimate(const std::vector<std::uint8_t>& hits) {
  double successes = 0;
  for (std::uint8_t h : hits) successes += h;  // fixed-order reduction
  McEstimate e;
  e.trials = hits.size();
  e.mean = successes / static_cast<double>(hits.size());
  e.half_width_99 = binomial_halfwidth_99(successes, static_cast<double>(hits.size()));
  return e;
}

}  // namespace

double binomial_halfwidth_99(double successes, double n) {
  if (n <= 0) return 0;
  const double p = successes / n;
  if (successes >= 30 && (n - successes) >= 30)
    return kZ99 * std::sqrt(p * (1 - p) / n);
  // Wilson interval half width.
  const double z2 = kZ99 * kZ99;
  const double denom = 1.0 + z2 / n;
  return kZ99 * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
}

double auto_window_radius(const NetworkConfig& config) {
  const double tail = min_window_radius(config.alpha);
  const double desk = 60.0 * config.distance.mean();
  return std::max({tail, desk, 1.25 * config.distance.max_support()});
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DOSNET_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

struct TrialOutcome {
  std::uint8_t outage = 0;
  std::uint8_t outage_ic = 0;
  std::uint8_t ic_dominated = 1;
};

TrialOutcome run_outage_trial(const NetworkConfig& config, const SchedulerKind& kind,
                              double lambda_active, double window_radius,
                              EdgePolicy edge_policy, std::uint64_t trial_seed) {
  const Window window{window_radius};
  NetworkSample sample = sample_network(config, window, trial_seed);
  sample = apply_scheduler(sample, kind, config, lambda_active, trial_seed,
                           edge_policy, window_radius);

  const std::size_t ref = sample.reference_pair;
  const double alpha = config.alpha;
  const double signal =
      sample.signal_fades[ref] * path_gain(sample.link_distances[ref], alpha);

  double interference = 0;
  std::vector<double> contributions;
  contributions.reserve(sample.size());
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (j == ref || !sample.active_flags[j]) continue;
    const double fade = edge_fade(trial_seed, 0, j, ref);
    const double g = fade * path_gain_r2(squared_norm(sample.tx_positions[j]), alpha);
    contributions.push_back(g);
    interference += g;
  }

  TrialOutcome out;
  out.outage = interference > 0 && signal < config.beta * interference;

  // Single pass: each interferer judged against the full original I0.
  double cancelled = 0;
  for (double g : contributions) {
    const double residual_others = std::max(interference - g, 0.0) + signal;
    if (g >= config.beta * residual_others) cancelled += g;
  }
  const double residual = std::max(interference - cancelled, 0.0);
  out.outage_ic = residual > 0 && signal < config.beta * residual;
  out.ic_dominated = out.outage_ic <= out.outage;
  return out;
}

}  // namespace

PairedOutage estimate_outage_paired_ic(const NetworkConfig& config,
                                       const SchedulerKind& kind,
                                       const McSettings& settings) {
  config.validate();
  kind.validate();
  settings.validate();
  if (kind.uses_channel_test()) {
    // A threshold the conditioned signal can never meet makes the reference
    // pair unconditionable.
    const double probe = (*kind.channel_policy)(std::max(config.lambda_t, 1e-30));
    if (std::isinf(probe))
      throw std::invalid_argument("estimate_outage: infinite channel threshold");
  }

  const double lambda_active = solve_active_density(kind, config).value;
  const double radius = settings.window_radius > 0 ? settings.window_radius
                                                   : auto_window_radius(config);

  std::vector<TrialOutcome> outcomes(settings.trials);
  parallel_trials(settings.trials, resolve_thread_count(settings.threads),
                  [&](std::size_t t) {
                    const std::uint64_t seed =
                        derive_key(settings.master_seed, 0x4f555447ull, t);
                    outcomes[t] = run_outage_trial(config, kind, lambda_active, radius,
                                                   settings.edge_policy, seed);
                  });

  std::vector<std::uint8_t> plain(settings.trials), ic(settings.trials);
  bool dominated = true;
  for (std::size_t t = 0; t < settings.trials; ++t) {
    plain[t] = outcomes[t].outage;
    ic[t] = outcomes[t].outage_ic;
    dominated = dominated && outcomes[t].ic_dominated;
  }
  PairedOutage out;
  out.without_ic = binomial_estimate(plain);
  out.with_ic = binomial_estimate(ic);
  out.dominance_held = dominated;
  return out;
}

McEstimate estimate_outage(const NetworkConfig& config, const SchedulerKind& kind,
                           const McSettings& settings) {
  return estimate_outage_paired_ic(config, kind, settings).without_ic;
}

McEstimate estimate_outage_with_ic(const NetworkConfig& config,
                                   const SchedulerKind& kind,
                                   const McSettings& settings) {
  return estimate_outage_paired_ic(config, kind, settings).with_ic;
}

std::vector<McEstimate> estimate_shot_noise_ccdf(double density, double alpha,
                                                 std::span<const double> x_grid,
                                                 const McSettings& settings) {
  if (!(density >= 0)) throw std::invalid_argument("shot ccdf: density >= 0");
  if (!(alpha > 2)) throw std::invalid_argument("shot ccdf: alpha > 2");
  settings.validate();

  // The field beyond the window is replaced by its exact Campbell mean
  // 2 pi lambda R^(2-alpha) / (alpha - 2). Its fluctuation (variance
  // 4 pi lambda R^(2-2alpha) / (2 alpha - 2)) is what the window size must
  // control: with window_radius = 0 the radius is chosen so that the
  // neglected standard deviation is under 1% of the smallest probed level.
  double radius = settings.window_radius;
  if (radius <= 0) {
    double x_min = std::numeric_limits<double>::infinity();
    for (double x : x_grid)
      if (x > 0) x_min = std::min(x_min, x);
    radius = min_window_radius(alpha);
    if (density > 0 && std::isfinite(x_min)) {
      const double sigma_target = 0.01 * x_min;
      const double r_sigma =
          std::pow(4.0 * M_PI * density /
                       ((2.0 * alpha - 2.0) * sigma_target * sigma_target),
                   1.0 / (2.0 * alpha - 2.0));
      radius = std::max(std::pow(x_min, -1.0 / alpha) * 8.0, r_sigma);
    }
  }
  const double r2max = radius * radius;
  const double mean_count = density * M_PI * r2max;
  const double far_field_mean =
      2.0 * M_PI * density * std::pow(radius, 2.0 - alpha) / (alpha - 2.0);

  std::vector<double> noise(settings.trials);
  parallel_trials(settings.trials, resolve_thread_count(settings.threads),
                  [&](std::size_t t) {
                    RngStream rng =
                        RngStream::from(settings.master_seed, 0x53484f54ull, t);
                    const std::uint64_t n = rng.poisson(mean_count);
                    double total = far_field_mean;
                    for (std::uint64_t i = 0; i < n; ++i) {
                      const double r2 = r2max * rng.uniform(0.0, 1.0);
                      total += rng.exponential() * path_gain_r2(r2, alpha);
                    }
                    noise[t] = total;
                  });

  std::vector<McEstimate> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    std::vector<std::uint8_t> hits(settings.trials);
    for (std::size_t t = 0; t < settings.trials; ++t) hits[t] = noise[t] >= x;
    out.push_back(binomial_estimate(hits));
  }
  return out;
}

McEstimate estimate_coverage_area(double delta, const NetworkConfig& config,
                                  const McSettings& settings) {
  config.validate();
  settings.validate();
  if (!(delta >= 0)) throw std::invalid_argument("coverage: delta >= 0");

  // Disc radius from the coverage tail: beyond R the membership probability
  // is under beta E[D^alpha] r^-alpha, so the truncated area is bounded and
  // kept below 0.1% of the delta=0 closed form.
  const double mu0 = std::pow(config.beta, 2.0 / config.alpha) * psi(config.alpha) *
                     config.distance.second_moment();
  const double tail_target = 1e-3 * mu0 * (config.alpha - 2.0) /
                             (2.0 * M_PI * config.beta *
                              config.distance.moment(config.alpha));
  const double radius = std::max(std::pow(tail_target, 1.0 / (2.0 - config.alpha)),
                                 4.0 * config.distance.max_support());

  // Log-radial strata: the membership probability decays like r^-alpha, so
  // equal-area annuli would put nearly all of the integral into a couple of
  // strata. A central disc of unit radius plus log-spaced annuli keeps every
  // stratum's contribution (and hence the variance) balanced.
  const std::size_t strata = 96;
  const std::size_t per_stratum = std::max<std::size_t>(16, settings.trials / strata);
  std::vector<double> edges(strata + 1);
  edges[0] = 0.0;
  edges[1] = 1.0;
  for (std::size_t s = 2; s <= strata; ++s)
    edges[s] = std::pow(radius, static_cast<double>(s - 1) / (strata - 1));

  std::vector<double> means(strata), vars(strata), areas(strata);
  parallel_trials(strata, resolve_thread_count(settings.threads), [&](std::size_t s) {
    RngStream rng = RngStream::from(settings.master_seed, 0x434f5645ull, s);
    const double r2_lo = edges[s] * edges[s];
    const double r2_hi = edges[s + 1] * edges[s + 1];
    areas[s] = M_PI * (r2_hi - r2_lo);
    double hits = 0;
    for (std::size_t i = 0; i < per_stratum; ++i) {
      const double r2 = rng.uniform(r2_lo, r2_hi);
      const double d0 = config.distance.sample(rng);
      const double min_fade = delta * std::pow(d0, config.alpha);
      const double h0 = conditioned_signal_fade(min_fade, rng);
      const double ht = rng.exponential();
      const bool member = h0 * std::pow(d0, -config.alpha) <
                          ht * path_gain_r2(r2, config.alpha) * config.beta;
      hits += member;
    }
    const double p = hits / static_cast<double>(per_stratum);
    means[s] = p;
    vars[s] = p * (1 - p) / static_cast<double>(per_stratum);
  });

  McEstimate e;
  e.trials = strata * per_stratum;
  double area = 0, var = 0;
  for (std::size_t s = 0; s < strata; ++s) {
    area += areas[s] * means[s];
    var += areas[s] * areas[s] * vars[s];
  }
  e.mean = area;
  e.half_width_99 = kZ99 * std::sqrt(var);
  return e;
}

std::vector<McEstimate> estimate_conditional_weakness(std::span<const double> rho_grid,
                                                      const NetworkConfig& config,
                                                      const McSettings& settings) {
  config.validate();
  settings.validate();
  for (double rho : rho_grid)
    if (!(rho > 0)) throw std::invalid_argument("conditional weakness: rho > 0");

  const double radius = settings.window_radius > 0 ? settings.window_radius
                                                   : auto_window_radius(config);
  struct GainPair {
    double g_near = 0, g_second = 0;
    std::uint8_t valid = 0;
  };
  std::vector<GainPair> pairs(settings.trials);
  parallel_trials(settings.trials, resolve_thread_count(settings.threads),
                  [&](std::size_t t) {
                    const std::uint64_t seed =
                        derive_key(settings.master_seed, 0x434f4e44ull, t);
                    NetworkSample s = sample_network(config, {radius}, seed);
                    if (s.size() < 3) return;
                    NearestReceiver nn[2];
                    two_nearest_unintended(s, s.reference_pair, settings.edge_policy,
                                           radius, config.lambda_t, nn);
                    const double f1 =
                        edge_fade(seed, 0, s.reference_pair, nn[0].receiver_index);
                    const double f2 =
                        edge_fade(seed, 0, s.reference_pair, nn[1].receiver_index);
                    pairs[t] = {f1 * path_gain(nn[0].distance, config.alpha),
                                f2 * path_gain(nn[1].distance, config.alpha), 1};
                  });

  std::vector<McEstimate> out;
  out.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    double cond = 0, joint = 0;
    for (const GainPair& p : pairs) {
      if (!p.valid) continue;
      if (p.g_near <= rho) {
        cond += 1;
        joint += p.g_second <= rho;
      }
    }
    McEstimate e;
    e.trials = static_cast<std::size_t>(cond);
    e.mean = cond > 0 ? joint / cond : 0.0;
    e.half_width_99 = binomial_halfwidth_99(joint, std::max(cond, 1.0));
    out.push_back(e);
  }
  return out;
}

}  // namespace dosnet
