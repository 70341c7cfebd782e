#include "dosnet/solvers.hpp"

#include <cmath>
#include <stdexcept>

#include "dosnet/quadrature.hpp"

namespace dosnet {

double transmission_prob_dcas(double lambda_c, const NetworkConfig& config,
                              const ThresholdPolicy& channel_policy) {
  if (!(lambda_c >= 0)) throw std::invalid_argument("p_c: lambda must be >= 0");
  const double delta = channel_policy(lambda_c);
  if (delta == 0) return 1.0;
  if (std::isinf(delta)) return 0.0;
  return config.distance.expect(
      [&](double d) { return std::exp(-std::pow(d, config.alpha) * delta); });
}

double transmission_prob_dias(double lambda_i, const NetworkConfig& config,
                              const ThresholdPolicy& interferer_policy,
                              DiasKernel kernel) {
  if (!(lambda_i > 0)) throw std::invalid_argument("p_i: lambda must be > 0");
  const double delta = interferer_policy(lambda_i);
  if (std::isinf(delta)) return 1.0;
  if (delta <= 0) return 0.0;

  const double kappa =
      kernel == DiasKernel::alpha_over_two ? 0.5 * config.alpha : 2.0 / config.alpha;
  const double inv_pi_lambda = 1.0 / (M_PI * lambda_i);

  const auto iterate = [&](double p) {
    const double coeff = delta * std::pow(p * inv_pi_lambda, kappa);
    const double integral = integrate_zero_to_inf(
        [&](double u) { return std::exp(-coeff * std::pow(u, kappa) - u); });
    return 1.0 - integral;
  };

  // Damped fixed-point iteration started at p = 1. The map is nondecreasing
  // in p, so the iterates fall monotonically onto the largest fixed point in
  // (0, 1]; that is the branch continuous with p -> 1 as the gate loosens.
  // p = 0 solves the equation for every policy (it describes an infinitely
  // dense parent where the target density is unreachable); collapsing onto
  // it means no positive solution exists and 0 is returned.
  double p = 1.0;
  double residual = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double next = iterate(p);
    residual = std::abs(next - p);
    p = 0.5 * p + 0.5 * next;
    if (residual < 1e-12) return std::clamp(p, 0.0, 1.0);
    if (p < 1e-14) return 0.0;
  }
  if (residual < 1e-10) return std::clamp(p, 0.0, 1.0);
  throw std::runtime_error("p_i: fixed point did not converge, last residual " +
                           std::to_string(residual));
}

double transmission_prob(const SchedulerKind& kind, double lambda,
                         const NetworkConfig& config, DiasKernel kernel) {
  kind.validate();
  double p = 1.0;
  if (kind.uses_channel_test())
    p *= transmission_prob_dcas(lambda, config, *kind.channel_policy);
  if (kind.uses_interferer_test())
    p *= transmission_prob_dias(lambda, config, *kind.interferer_policy, kernel);
  return p;
}

double bisect(const std::function<double(double)>& fn, double lo, double hi,
              double tolerance) {
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect: no sign change on the bracket");
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

FixedPointResult solve_active_density(const SchedulerKind& kind,
                                      const NetworkConfig& config,
                                      DiasKernel kernel) {
  kind.validate();
  config.validate();
  const double lambda_t = config.lambda_t;
  if (!(lambda_t > 0)) throw std::invalid_argument("solve_active_density: lambda_t must be > 0");

  FixedPointResult res;
  if (kind.tag == SchemeTag::none) {
    res.value = lambda_t;
    res.converged = true;
    return res;
  }

  const auto p_of = [&](double lambda) {
    return transmission_prob(kind, std::max(lambda, 1e-300), config, kernel);
  };
  const double tol = 1e-10 * lambda_t;

  // Scan for multiple sign changes of g(lambda) = lambda - lambda_t p(lambda).
  // Decreasing interferer policies can in principle produce several roots; the
  // smallest is reported.
  const auto g = [&](double lambda) { return lambda - lambda_t * p_of(lambda); };
  {
    const int kScan = 48;
    int sign_changes = 0;
    double prev_lambda = lambda_t * 1e-9;
    double prev_g = g(prev_lambda);
    double first_lo = 0, first_hi = 0;
    for (int i = 1; i <= kScan; ++i) {
      const double lam = lambda_t * std::pow(1e9, static_cast<double>(i) / kScan - 1.0);
      const double gi = g(lam);
      if ((gi > 0) != (prev_g > 0)) {
        ++sign_changes;
        if (sign_changes == 1) {
          first_lo = prev_lambda;
          first_hi = lam;
        }
      }
      prev_lambda = lam;
      prev_g = gi;
    }
    if (sign_changes > 1) {
      res.multiple_roots = true;
      res.value = bisect(g, first_lo, first_hi, tol);
      res.residual = std::abs(res.value - lambda_t * p_of(res.value));
      res.converged = res.residual < tol;
      return res;
    }
  }

  // Damped iteration lambda <- (1-w) lambda + w lambda_t p(lambda), w = 1/2.
  double lambda = lambda_t * p_of(lambda_t);
  if (lambda <= 0) lambda = lambda_t * 0.5;
  const double w = 0.5;
  for (int it = 1; it <= 200; ++it) {
    const double mapped = lambda_t * p_of(lambda);
    const double next = (1 - w) * lambda + w * mapped;
    res.iterations = it;
    res.residual = std::abs(lambda - mapped);
    lambda = next;
    if (res.residual < tol) {
      res.value = lambda;
      res.residual = std::abs(lambda - lambda_t * p_of(lambda));
      res.converged = res.residual < 10 * tol;
      if (res.converged) return res;
      break;
    }
  }

  // Oscillation without convergence: bisection on g, which brackets a sign
  // change on (0, lambda_t] because g(0+) <= 0 and g(lambda_t) >= 0.
  double lo = lambda_t * 1e-12;
  double hi = lambda_t;
  if (g(hi) < 0) {
    res.value = hi;  // p == 1 everywhere: the map has its root at lambda_t
  } else {
    while (g(lo) > 0 && lo > 1e-300) lo *= 0.1;
    res.value = bisect(g, lo, hi, tol);
  }
  res.residual = std::abs(res.value - lambda_t * p_of(res.value));
  res.converged = res.residual < 10 * tol;
  if (!res.converged)
    throw std::runtime_error("solve_active_density: no convergence, residual " +
                             std::to_string(res.residual));
  return res;
}

}  // namespace dosnet
