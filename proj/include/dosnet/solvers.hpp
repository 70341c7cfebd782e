// Transmission probabilities and the post-thinning density fixed point
// lambda = lambda_t * p(lambda), plus shared root finding.

#pragma once

#include <functional>

#include "dosnet/config.hpp"
#include "dosnet/schedulers.hpp"

namespace dosnet {

struct FixedPointResult {
  double value = 0;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
  bool multiple_roots = false;  // more than one sign change seen on the scan grid
};

// P[H * D^-alpha >= Delta_c(lambda)] = E[exp(-D^alpha * Delta_c(lambda))].
double transmission_prob_dcas(double lambda_c, const NetworkConfig& config,
                              const ThresholdPolicy& channel_policy);

// Exponent applied to the scaled nearest-receiver variable inside the
// interferer-aware fixed point
//   p = 1 - Integral_0^inf exp( -Delta_i(lambda) * [p*u / (pi*lambda)]^kappa
//                               - u ) du .
// kappa = alpha/2 is the distance-power form: substituting u = pi*lambda_t*x^2
// into the nearest-receiver distance law reproduces exactly the acceptance
// probability of the sampled rule, so this is what the Monte Carlo engine
// realizes. kappa = 2/alpha is the closed form under which p is independent
// of lambda whenever Delta_i is proportional to lambda^(2/alpha); it is kept
// selectable so that identity can be stated and tested as written.
enum class DiasKernel { alpha_over_two, two_over_alpha };

double transmission_prob_dias(double lambda_i, const NetworkConfig& config,
                              const ThresholdPolicy& interferer_policy,
                              DiasKernel kernel = DiasKernel::alpha_over_two);

// Product p_c * p_i, both evaluated at the same density.
double transmission_prob(const SchedulerKind& kind, double lambda,
                         const NetworkConfig& config,
                         DiasKernel kernel = DiasKernel::alpha_over_two);

// Solves lambda = lambda_t * p(lambda) by damped iteration with a bisection
// fallback; solutions satisfy 0 < lambda <= lambda_t. If the scan grid shows
// several roots, the smallest is returned and flagged.
FixedPointResult solve_active_density(const SchedulerKind& kind,
                                      const NetworkConfig& config,
                                      DiasKernel kernel = DiasKernel::alpha_over_two);

// Deterministic bisection; fn must change sign on [lo, hi].
double bisect(const std::function<double(double)>& fn, double lo, double hi,
              double tolerance);

}  // namespace dosnet
