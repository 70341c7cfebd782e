#include "dosnet/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dosnet/quadrature.hpp"

namespace dosnet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double require_alpha(double alpha) {
  if (!(alpha > 2)) throw std::domain_error("alpha must be > 2");
  return alpha;
}
}  // namespace

double psi(double alpha) {
  require_alpha(alpha);
  return M_PI * std::tgamma(1.0 + 2.0 / alpha) * std::tgamma(1.0 - 2.0 / alpha);
}

double a_function(double x, double lambda_n, double alpha) {
  require_alpha(alpha);
  if (!(x > 0)) throw std::invalid_argument("a_function: x must be > 0");
  if (!(lambda_n >= 0)) throw std::invalid_argument("a_function: negative intensity");
  return M_PI * std::pow(x, -2.0 / alpha) * std::tgamma(1.0 + 2.0 / alpha) * lambda_n;
}

double a_function(double x, const std::function<double(double)>& lambda_n,
                  double alpha) {
  require_alpha(alpha);
  if (!(x > 0)) throw std::invalid_argument("a_function: x must be > 0");
  const double inv_alpha = 1.0 / alpha;
  const double integral = integrate_zero_to_inf([&](double u) {
    return lambda_n(std::pow(u / x, inv_alpha)) * std::pow(u, 2.0 * inv_alpha - 1.0) *
           std::exp(-u);
  });
  return (2.0 * M_PI / alpha) * std::pow(x, -2.0 / alpha) * integral;
}

OutageBounds shot_noise_ccdf_bounds_from_a(double a_value, double alpha) {
  require_alpha(alpha);
  if (!(a_value >= 0)) throw std::invalid_argument("shot bounds: A must be >= 0");
  OutageBounds out;
  if (std::isinf(a_value)) {
    out.lower = out.upper = 1.0;
    out.upper_clamped = true;
    return out;
  }
  out.lower = -std::expm1(-a_value);
  const double margin = (alpha - 1.0) - a_value;
  if (margin <= 0) {
    out.upper = 1.0;
    out.upper_clamped = true;
    return out;
  }
  const double cheb = (alpha - 1.0) * a_value / (margin * margin);
  if (cheb >= 1.0) {
    out.upper = 1.0;
    out.upper_clamped = true;
  } else {
    out.upper = 1.0 - (1.0 - cheb) * std::exp(-a_value);
  }
  return out;
}

OutageBounds shot_noise_ccdf_bounds(double x, double lambda_n, double alpha) {
  return shot_noise_ccdf_bounds_from_a(a_function(x, lambda_n, alpha), alpha);
}

// --- scheme bounds ----------------------------------------------------------

double dcas_factor_a(double lambda_c, const NetworkConfig& config,
                     const ThresholdPolicy& channel_policy) {
  require_alpha(config.alpha);
  if (!(lambda_c >= 0)) throw std::invalid_argument("lambda must be >= 0");
  const double delta = channel_policy(lambda_c);
  if (delta == 0) return lambda_c > 0 ? kInf : 0.0;
  return M_PI * std::tgamma(1.0 + 2.0 / config.alpha) * lambda_c *
         std::pow(config.beta, 2.0 / config.alpha) *
         std::pow(delta, -2.0 / config.alpha);
}

double dcas_factor_b(double lambda_c, const NetworkConfig& config) {
  const double scale =
      lambda_c * std::pow(config.beta, 2.0 / config.alpha) * psi(config.alpha);
  return config.distance.expect([&](double d) { return std::exp(-scale * d * d); });
}

namespace {
OutageBounds assemble_pair_bounds(double a_value, double b_value, double alpha) {
  const OutageBounds first = shot_noise_ccdf_bounds_from_a(a_value, alpha);
  OutageBounds out;
  out.lower = first.lower * (1.0 - b_value);
  out.upper = first.upper * (1.0 - b_value);
  out.upper_clamped = first.upper_clamped;
  return out;
}
}  // namespace

OutageBounds dcas_outage_bounds(double lambda_c, const NetworkConfig& config,
                                const ThresholdPolicy& channel_policy) {
  return assemble_pair_bounds(dcas_factor_a(lambda_c, config, channel_policy),
                              dcas_factor_b(lambda_c, config), config.alpha);
}

OutageBounds dias_outage_bounds(double lambda_i, const NetworkConfig& config,
                                double p_i) {
  if (!(p_i > 0 && p_i <= 1)) throw std::invalid_argument("dias bounds: p_i in (0,1]");
  const double expo = lambda_i * std::pow(config.beta, 2.0 / config.alpha) *
                      psi(config.alpha) * config.distance.second_moment() * p_i;
  OutageBounds out;
  out.lower = -std::expm1(-expo);
  out.upper = -std::expm1(-2.0 * expo);
  return out;
}

OutageBounds dicas_outage_bounds(double lambda_ic, const NetworkConfig& config,
                                 const ThresholdPolicy& channel_policy, double p_i) {
  if (!(p_i > 0 && p_i <= 1)) throw std::invalid_argument("dicas bounds: p_i in (0,1]");
  const double a_ic = dcas_factor_a(lambda_ic, config, channel_policy) * p_i;
  const double scale =
      lambda_ic * psi(config.alpha) * std::pow(config.beta, 2.0 / config.alpha) * p_i;
  const double b_ic =
      config.distance.expect([&](double d) { return std::exp(-scale * d * d); });
  return assemble_pair_bounds(a_ic, b_ic, config.alpha);
}

OutageBounds scheme_outage_bounds(double lambda_active, const NetworkConfig& config,
                                  const SchedulerKind& kind, DiasKernel kernel) {
  kind.validate();
  switch (kind.tag) {
    case SchemeTag::none: {
      const double b = dcas_factor_b(lambda_active, config);
      return {1.0 - b, 1.0 - b, false};
    }
    case SchemeTag::dcas:
      return dcas_outage_bounds(lambda_active, config, *kind.channel_policy);
    case SchemeTag::dias: {
      const double p_i = lambda_active > 0
                             ? transmission_prob_dias(lambda_active, config,
                                                      *kind.interferer_policy, kernel)
                             : 1.0;
      return dias_outage_bounds(lambda_active, config, std::max(p_i, 1e-300));
    }
    case SchemeTag::dicas: {
      const double p_i = lambda_active > 0
                             ? transmission_prob_dias(lambda_active, config,
                                                      *kind.interferer_policy, kernel)
                             : 1.0;
      return dicas_outage_bounds(lambda_active, config, *kind.channel_policy,
                                 std::max(p_i, 1e-300));
    }
  }
  throw std::logic_error("scheme_outage_bounds: unknown tag");
}

// --- mean functionals --------------------------------------------------------

double gamma_mean_functional(const std::function<double(double)>& intensity,
                             double x,
                             const std::function<double(double)>& transform) {
  if (!(x > 0)) throw std::invalid_argument("gamma functional: x must be > 0");
  const double integral = integrate_zero_to_inf([&](double u) {
    return intensity(transform(u)) * std::pow(u, x - 1.0) * std::exp(-u);
  });
  return integral / std::tgamma(x);
}

double beta_mean_functional(const std::function<double(double)>& intensity,
                            double x, double y,
                            const std::function<double(double)>& transform) {
  if (!(x > 0 && y > 0))
    throw std::invalid_argument("beta functional: x, y must be > 0");
  const double integral = integrate_zero_to_inf([&](double t) {
    return intensity(transform(t)) * std::pow(t, x - 1.0) *
           std::pow(1.0 + t, -(x + y));
  });
  return integral * std::tgamma(x + y) / (std::tgamma(x) * std::tgamma(y));
}

double dominant_coverage_measure(double delta, const NetworkConfig& config) {
  require_alpha(config.alpha);
  if (!(delta >= 0)) throw std::invalid_argument("coverage: delta must be >= 0");
  const double base = std::pow(config.beta, 2.0 / config.alpha) * psi(config.alpha);
  if (delta == 0) return base * config.distance.second_moment();
  const double x = 2.0 / config.alpha;
  return base * config.distance.expect([&](double d) {
    const double d_alpha = std::pow(d, config.alpha);
    const double b = beta_mean_functional(
        [&](double t) { return std::exp(-delta * d_alpha * t); }, x, 1.0 - x,
        [](double t) { return t; });
    return d * d * b;
  });
}

// --- interference cancellation -------------------------------------------------

double cancelable_intensity(double r, double lambda, const NetworkConfig& config,
                            const ThresholdPolicy* channel_policy, double p_i,
                            CancelTermCoeff coeff) {
  require_alpha(config.alpha);
  if (!(r >= 0)) throw std::invalid_argument("cancelable intensity: r must be >= 0");
  if (!(lambda >= 0)) throw std::invalid_argument("cancelable intensity: lambda >= 0");
  const double beta_tilde = config.beta / (1.0 + config.beta);
  const double delta_c = channel_policy ? (*channel_policy)(lambda) : 0.0;
  const double c_delta = coeff == CancelTermCoeff::beta_tilde ? beta_tilde : config.beta;
  const double r_alpha = std::pow(r, config.alpha);
  const double expo = -M_PI * psi(config.alpha) *
                          std::pow(beta_tilde, 2.0 / config.alpha) * r * r * lambda *
                          p_i -
                      c_delta * delta_c * r_alpha;
  const double ratio = config.distance.expect([&](double d) {
    const double da = std::pow(d, config.alpha);
    return da / (da + beta_tilde * r_alpha);
  });
  return lambda * std::exp(expo) * ratio;
}

double cancelable_intensity_expanded_gamma_arg(double u, double lambda,
                                               const NetworkConfig& config,
                                               const ThresholdPolicy& channel_policy,
                                               double p_i) {
  const double delta_c = channel_policy(lambda);
  if (!(delta_c > 0))
    throw std::invalid_argument("expanded form needs a positive channel threshold");
  const double expo = -M_PI * psi(config.alpha) *
                          std::pow(config.beta * config.beta * u / delta_c,
                                   2.0 / config.alpha) *
                          lambda * p_i -
                      config.beta * config.beta * u;
  return lambda * std::exp(expo);
}

namespace {

struct HattedFactors {
  double a_hat;
  double b_hat;
};

HattedFactors ic_hatted_factors(double lambda, const NetworkConfig& config,
                                const ThresholdPolicy& channel_policy, double p_i,
                                CancelTermCoeff coeff) {
  const double alpha = config.alpha;
  const double x = 2.0 / alpha;
  const double delta_c = channel_policy(lambda);
  const double a_plain = dcas_factor_a(lambda, config, channel_policy) * p_i;

  const auto intensity = [&](double r) {
    return cancelable_intensity(r, lambda, config, &channel_policy, p_i, coeff);
  };

  double a_hat;
  if (delta_c == 0 || lambda == 0) {
    a_hat = a_plain;  // cancelable mass vanishes at the transformed argument
  } else {
    const double g = gamma_mean_functional(intensity, x, [&](double u) {
      return std::pow(config.beta * u / delta_c, 1.0 / alpha);
    });
    a_hat = a_plain * (1.0 - g / lambda);
  }

  const double scale = p_i * std::pow(config.beta, x) * psi(alpha);
  const double b_hat = config.distance.expect([&](double d) {
    double beta_fun = 0.0;
    if (lambda > 0) {
      beta_fun = beta_mean_functional(intensity, x, 1.0 - x, [&](double t) {
        return d * std::pow(config.beta * t, 1.0 / alpha);
      });
    }
    return std::exp(-scale * d * d * (lambda - beta_fun));
  });
  return {a_hat, b_hat};
}

}  // namespace

IcFactors ic_factors_dicas(double lambda_ic, const NetworkConfig& config,
                           const ThresholdPolicy& channel_policy, double p_i,
                           CancelTermCoeff coeff) {
  if (!(p_i > 0 && p_i <= 1)) throw std::invalid_argument("ic factors: p_i in (0,1]");
  const HattedFactors f =
      ic_hatted_factors(lambda_ic, config, channel_policy, p_i, coeff);
  IcFactors out;
  out.a_plain = dcas_factor_a(lambda_ic, config, channel_policy) * p_i;
  out.a_hat = f.a_hat;
  const double scale =
      lambda_ic * psi(config.alpha) * std::pow(config.beta, 2.0 / config.alpha) * p_i;
  out.b_plain =
      config.distance.expect([&](double d) { return std::exp(-scale * d * d); });
  out.b_hat = f.b_hat;
  return out;
}

OutageBounds ic_outage_bounds_dicas(double lambda_ic, const NetworkConfig& config,
                                    const ThresholdPolicy& channel_policy, double p_i,
                                    CancelTermCoeff coeff) {
  if (!(p_i > 0 && p_i <= 1)) throw std::invalid_argument("ic bounds: p_i in (0,1]");
  const HattedFactors f =
      ic_hatted_factors(lambda_ic, config, channel_policy, p_i, coeff);
  return assemble_pair_bounds(f.a_hat, f.b_hat, config.alpha);
}

OutageBounds ic_outage_bounds_dcas(double lambda_c, const NetworkConfig& config,
                                   const ThresholdPolicy& channel_policy) {
  return ic_outage_bounds_dicas(lambda_c, config, channel_policy, 1.0,
                                CancelTermCoeff::beta_tilde);
}

OutageBounds ic_outage_bounds_dias(double lambda_i, const NetworkConfig& config,
                                   double p_i) {
  if (!(p_i > 0 && p_i <= 1)) throw std::invalid_argument("ic bounds: p_i in (0,1]");
  require_alpha(config.alpha);
  const double alpha = config.alpha;
  const double x = 2.0 / alpha;
  const double beta_tilde = config.beta / (1.0 + config.beta);
  const double bb = beta_tilde * config.beta;

  const double mean_term = config.distance.expect([&](double d) {
    const auto h = [&](double t) {
      return std::exp(-M_PI * psi(alpha) * std::pow(bb * t, x) * d * d * lambda_i) /
             (1.0 + t * bb);
    };
    const double b = lambda_i > 0
                         ? beta_mean_functional(h, x, 1.0 - x,
                                                [](double t) { return t; })
                         : 1.0;
    return d * d * (1.0 - b);
  });

  const double expo =
      lambda_i * p_i * std::pow(config.beta, x) * psi(alpha) * mean_term;
  OutageBounds out;
  out.lower = -std::expm1(-expo);
  out.upper = -std::expm1(-2.0 * expo);
  return out;
}

// --- density inversion ---------------------------------------------------------

namespace {

// Largest density of the connected sub-epsilon region that starts at zero:
// a 512-point log-grid scan finds the first grid point where q exceeds
// epsilon, and bisection refines inside that bracket. For monotone q this is
// the global sup; for policies whose reachable density saturates (where
// q eventually falls back toward zero and the literal sup degenerates to the
// search cap) it matches the root semantics of the defining equations.
double sup_density_below(const std::function<double(double)>& q, double epsilon,
                         double lambda_max, bool* censored) {
  *censored = false;
  const double lambda_min = lambda_max * 1e-12;
  if (q(lambda_min) > epsilon) return lambda_min;

  const int n = 512;
  double below = lambda_min;
  double above = 0;
  for (int i = 1; i <= n; ++i) {
    const double lam = lambda_min * std::pow(lambda_max / lambda_min,
                                             static_cast<double>(i) / n);
    if (q(lam) > epsilon) {
      above = lam;
      break;
    }
    below = lam;
  }
  if (above == 0) {
    *censored = true;
    return lambda_max;
  }
  return bisect([&](double lam) { return q(lam) - epsilon; }, below, above,
                lambda_max * 1e-14);
}

}  // namespace

DensityBounds invert_outage_for_density(const NetworkConfig& config,
                                        const SchedulerKind& kind,
                                        double lambda_max, DiasKernel kernel) {
  config.validate();
  kind.validate();
  if (lambda_max <= 0) {
    lambda_max = 100.0 / (std::pow(config.beta, 2.0 / config.alpha) *
                          psi(config.alpha) * config.distance.second_moment());
  }

  const auto lower_bound_fn = [&](double lam) {
    return scheme_outage_bounds(lam, config, kind, kernel).lower;
  };
  const auto upper_bound_fn = [&](double lam) {
    return scheme_outage_bounds(lam, config, kind, kernel).upper;
  };

  DensityBounds out;
  out.upper = sup_density_below(lower_bound_fn, config.epsilon, lambda_max,
                                &out.upper_censored);
  out.lower = sup_density_below(upper_bound_fn, config.epsilon, lambda_max,
                                &out.lower_censored);
  out.tc_lower = transmission_capacity(out.lower, config);
  out.tc_upper = transmission_capacity(out.upper, config);
  return out;
}

double asymptotic_ratio(SchemeTag scheme, double gamma, double delta, double alpha,
                        Regime regime) {
  require_alpha(alpha);
  const double r = alpha / (alpha - 1.0);
  const double half_alpha = 0.5 * alpha;
  const double two_over_alpha = 2.0 / alpha;
  switch (scheme) {
    case SchemeTag::none:
      return 1.0;
    case SchemeTag::dcas:
      if (regime == Regime::sparse)
        return (gamma >= 0 && gamma < half_alpha)
                   ? std::pow(r, 1.0 / (2.0 - 2.0 * gamma / alpha))
                   : 1.0;
      return gamma >= half_alpha ? std::pow(r, alpha / (2.0 * gamma - alpha)) : 1.0;
    case SchemeTag::dias: {
      const bool formula = regime == Regime::sparse ? delta > two_over_alpha
                                                    : delta < two_over_alpha;
      return formula ? std::pow(2.0, (alpha - 2.0) / (alpha * (delta + 1.0) - 4.0))
                     : 2.0;
    }
    case SchemeTag::dicas: {
      if (regime == Regime::sparse) {
        if (delta > two_over_alpha && gamma > 0 && gamma < half_alpha) {
          const double denom = 2.0 * alpha *
                               ((delta - two_over_alpha) -
                                (gamma / alpha - 1.0) * (1.0 - two_over_alpha));
          return std::pow(r, (alpha - 2.0) / denom);
        }
        return 1.0;
      }
      if (delta < two_over_alpha && gamma > half_alpha) {
        const double denom = 2.0 * alpha *
                             ((two_over_alpha - delta) -
                              (1.0 - gamma / alpha) * (1.0 - two_over_alpha));
        return std::pow(r, (alpha - 2.0) / denom);
      }
      return 1.0;
    }
  }
  throw std::logic_error("asymptotic_ratio: unknown scheme");
}

double transmission_capacity(double density, const NetworkConfig& config) {
  if (!(density >= 0)) throw std::invalid_argument("tc: density must be >= 0");
  return config.rate_b * density * (1.0 - config.epsilon);
}

}  // namespace dosnet
