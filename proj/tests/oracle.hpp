// Independent oracles used by the tests: fixed-grid trapezoid integration,
// the alpha=4 stable-law closed forms, chi-square critical values and a
// Kolmogorov-Smirnov helper. Everything here deliberately avoids the
// library's own quadrature and bound code paths.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Trapezoid rule on (0, inf) after the substitution u = e^t, fixed grid.
inline double trapezoid_zero_to_inf(const std::function<double(double)>& f,
                                    double t_lo = -40.0, double t_hi = 40.0,
                                    int n = 400000) {
  const double h = (t_hi - t_lo) / n;
  double acc = 0;
  for (int i = 0; i <= n; ++i) {
    const double t = t_lo + h * i;
    const double u = std::exp(t);
    double v = f(u) * u;
    if (!std::isfinite(v)) v = 0;
    acc += (i == 0 || i == n) ? 0.5 * v : v;
  }
  return acc * h;
}

inline double trapezoid_interval(const std::function<double(double)>& f, double a,
                                 double b, int n = 200000) {
  const double h = (b - a) / n;
  double acc = 0;
  for (int i = 0; i <= n; ++i) {
    const double v = f(a + h * i);
    acc += (i == 0 || i == n) ? 0.5 * v : v;
  }
  return acc * h;
}

// For alpha = 4 the interference of a homogeneous field with unit-mean
// exponential marks follows the one-sided 1/2-stable law: with
// L_I(s) = exp(-c sqrt(s)), density f(y) = c/(2 sqrt(pi y^3)) e^{-c^2/(4y)}
// and CDF F(y) = erfc(c / (2 sqrt(y))).
struct StableHalf {
  double c;
  double pdf(double y) const {
    return y > 0 ? c / (2.0 * std::sqrt(M_PI * y * y * y)) *
                       std::exp(-c * c / (4.0 * y))
                 : 0.0;
  }
  double cdf(double y) const { return y > 0 ? std::erfc(c / (2.0 * std::sqrt(y))) : 0.0; }
};

// Exact outage of a link whose signal fade is Exp(1) conditioned to be at
// least `gate`, against alpha=4 interference with Laplace exponent c:
// P[H < beta d^alpha I | H >= gate].
inline double exact_conditional_outage_alpha4(double lambda, double psi, double beta,
                                              double d, double gate) {
  const double c = lambda * psi * d * d * std::sqrt(beta);  // for S = beta d^4 I
  const StableHalf s{c};
  // q = Int_gate^inf (1 - e^{gate-y}) f_S(y) dy, evaluated on a log grid in
  // the excess variable.
  return trapezoid_zero_to_inf(
      [&](double v) { return (1.0 - std::exp(-v)) * s.pdf(gate + v); });
}

// mu(C_delta) / mu(C_0) for a constant link distance at alpha = 4:
// e^x erfc(sqrt(x)) with x = delta d^alpha.
inline double coverage_ratio_alpha4(double delta, double d) {
  const double x = delta * d * d * d * d;
  return std::exp(x) * std::erfc(std::sqrt(x));
}

// Wilson-Hilferty approximation of the chi-square quantile.
inline double chi2_quantile(double dof, double z) {
  const double a = 2.0 / (9.0 * dof);
  const double w = 1.0 - a + z * std::sqrt(a);
  return dof * w * w * w;
}

// Two-sided Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

// Expectations over the joint law of the first and second nearest-neighbor
// distances of a homogeneous field: D1^2 = U/(pi lambda),
// D2^2 = (U+W)/(pi lambda) with U, W independent unit exponentials.
inline double expect_nn12(double lambda,
                          const std::function<double(double, double)>& g,
                          int n = 1200) {
  // Midpoint rule over (u, w) after u = e^s substitution on both axes.
  const double lo = -14.0, hi = 6.0;
  const double h = (hi - lo) / n;
  const double inv = 1.0 / (M_PI * lambda);
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    const double su = lo + h * (i + 0.5);
    const double u = std::exp(su);
    double inner = 0;
    for (int j = 0; j < n; ++j) {
      const double sw = lo + h * (j + 0.5);
      const double w = std::exp(sw);
      inner += g(std::sqrt(u * inv), std::sqrt((u + w) * inv)) *
               std::exp(-w + sw);
    }
    acc += inner * std::exp(-u + su);
  }
  return acc * h * h;
}

}  // namespace oracle
