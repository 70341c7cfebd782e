#include "dosnet/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace dosnet {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule. Standard G7-K15 pair.
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};
constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct RuleResult {
  double value;
  double error;
};

RuleResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double kron = 0, gauss = 0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(mid + half * kKronrodNodes[i]);
    kron += kKronrodWeights[i] * v;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * v;
  }
  kron *= half;
  gauss *= half;
  return {kron, std::abs(kron - gauss)};
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol_for_interval, double abs_floor, int depth,
                int max_depth) {
  const RuleResult r = gk15(f, a, b);
  if (r.error <= tol_for_interval || r.error <= abs_floor) return r.value;
  if (depth >= max_depth)
    throw std::runtime_error("quadrature: refinement limit reached (divergent or "
                             "pathological integrand)");
  const double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, 0.5 * tol_for_interval, abs_floor, depth + 1, max_depth) +
         adaptive(f, mid, b, 0.5 * tol_for_interval, abs_floor, depth + 1, max_depth);
}

}  // namespace

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, const QuadratureOptions& opt) {
  if (!(b > a)) return 0.0;
  const RuleResult coarse = gk15(f, a, b);
  const double tol =
      std::max(opt.abs_floor, opt.rel_tol * std::max(std::abs(coarse.value), opt.abs_floor));
  return adaptive(f, a, b, tol, opt.abs_floor, 0, opt.max_depth);
}

double integrate_zero_to_inf(const std::function<double(double)>& f,
                             const QuadratureOptions& opt) {
  const auto g = [&f](double t) {
    const double u = std::exp(t);
    const double v = f(u) * u;
    return std::isfinite(v) ? v : 0.0;
  };

  // Locate the t-range carrying the integrand's mass. A wide coarse probe
  // first (integrands of the form exp(-s u^kappa - u) can concentrate many
  // decades below u = 1 when s is large), then the hull of all probes above
  // the cutoff, with a margin.
  double scale = 0.0;
  double mass_lo = 0.0, mass_hi = 0.0;
  bool seen = false;
  for (double t = -120.0; t <= 24.0; t += 1.0) {
    const double raw = f(std::exp(t)) * std::exp(t);
    if (!std::isfinite(raw) && !std::isnan(raw))
      throw std::runtime_error("quadrature: integrand overflows (divergent)");
    const double v = std::isfinite(raw) ? std::abs(raw) : 0.0;
    scale = std::max(scale, v);
    if (v > 0) {
      if (!seen) mass_lo = t;
      mass_hi = t;
      seen = true;
    }
  }
  if (!seen || scale == 0.0) return 0.0;
  const auto raw_abs = [&f](double t) {
    const double v = f(std::exp(t)) * std::exp(t);
    return std::isnan(v) ? 0.0 : std::abs(v);
  };
  const double cutoff = scale * 1e-18;
  double lo = mass_lo, hi = mass_hi;
  while (lo > -730.0 && raw_abs(lo) > cutoff) lo -= 1.0;
  while (hi < 700.0 && raw_abs(hi) > cutoff) hi += 1.0;
  // A tail still carrying mass at the edge of double range is an endpoint
  // divergence (left: non-integrable singularity at zero; right: growth).
  if (raw_abs(lo) > scale * 1e-9 || raw_abs(hi) > scale * 1e-9)
    throw std::runtime_error("quadrature: tail does not decay (divergent integral)");
  lo -= 1.0;
  hi += 1.0;

  // Piecewise adaptive integration over panels keeps the tolerance local.
  double total = 0.0;
  const double panel = 6.0;
  for (double a = lo; a < hi; a += panel) {
    const double b = std::min(a + panel, hi);
    const RuleResult coarse = gk15(g, a, b);
    const double tol = std::max(opt.abs_floor,
                                opt.rel_tol * std::max(std::abs(coarse.value),
                                                       opt.rel_tol * scale));
    total += adaptive(g, a, b, tol, opt.abs_floor, 0, opt.max_depth);
  }
  return total;
}

}  // namespace dosnet
