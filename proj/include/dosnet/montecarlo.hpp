// Trial-based estimation of every bounded quantity: the independent
// verification side of the library.
//
// Determinism contract: every trial derives its own substream from
// (master_seed, trial index); per-trial outcomes land in a trial-indexed
// buffer and are reduced in fixed order, so the estimate is identical for
// any thread count.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dosnet/analysis.hpp"
#include "dosnet/channel.hpp"
#include "dosnet/schedulers.hpp"

namespace dosnet {

struct McSettings {
  std::size_t trials = 20000;
  double window_radius = 0;  // 0: auto = max(tail rule, 60 * E[D])
  std::uint64_t master_seed = 1;
  EdgePolicy edge_policy = EdgePolicy::mirror;
  unsigned threads = 0;  // 0: DOSNET_THREADS env var, else hardware count

  void validate() const {
    if (trials < 100) throw std::invalid_argument("mc: need at least 100 trials");
    if (window_radius < 0) throw std::invalid_argument("mc: negative window radius");
  }
};

struct McEstimate {
  double mean = 0;
  double half_width_99 = 0;
  std::size_t trials = 0;
};

// 99% binomial half width: normal approximation with a Wilson fallback when
// either outcome count drops below 30.
double binomial_halfwidth_99(double successes, double n);

// Window radius used when settings.window_radius == 0.
double auto_window_radius(const NetworkConfig& config);

unsigned resolve_thread_count(unsigned requested);

// P[SIR < beta] at the reference receiver under `kind`, with the scheme's
// density fixed point solved once up front.
McEstimate estimate_outage(const NetworkConfig& config, const SchedulerKind& kind,
                           const McSettings& settings);

// Same trials evaluated twice: plainly, and with single-pass geometry-based
// interference cancellation (an active interferer k is removed when
// fade_k |X_k|^-alpha / (I0 - fade_k |X_k|^-alpha + signal) >= beta, judged
// against the full original I0). Shared randomness makes the comparison
// paired: cancellation can only remove interference, so per-trial dominance
// is structural and verified.
struct PairedOutage {
  McEstimate without_ic;
  McEstimate with_ic;
  bool dominance_held = true;  // outage_ic <= outage in every single trial
};
PairedOutage estimate_outage_paired_ic(const NetworkConfig& config,
                                       const SchedulerKind& kind,
                                       const McSettings& settings);
McEstimate estimate_outage_with_ic(const NetworkConfig& config,
                                   const SchedulerKind& kind,
                                   const McSettings& settings);

// Empirical CCDF of the shot noise of a homogeneous process at each level of
// x_grid, from settings.trials independent field draws.
std::vector<McEstimate> estimate_shot_noise_ccdf(double density, double alpha,
                                                 std::span<const double> x_grid,
                                                 const McSettings& settings);

// Monte Carlo area of the delta-level dominant-interferer coverage:
// stratified annular sampling of the membership probability with fresh fades
// and a rejection-sampled conditional signal fade.
McEstimate estimate_coverage_area(double delta, const NetworkConfig& config,
                                  const McSettings& settings);

// Empirical conditional probability that the gain toward the second-nearest
// unintended receiver is below rho, given the gain toward the nearest one is.
std::vector<McEstimate> estimate_conditional_weakness(std::span<const double> rho_grid,
                                                      const NetworkConfig& config,
                                                      const McSettings& settings);

}  // namespace dosnet
