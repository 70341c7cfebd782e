// Adaptive quadrature on [0, inf) for the Gamma/Beta-kernel integrands used
// throughout the analysis module.
//
// The substitution u = e^t turns integrands of the form u^(x-1) e^(-u) g(u)
// (x in (0,1), so an integrable endpoint singularity at u = 0) into smooth,
// doubly-exponentially decaying functions of t, which an adaptive
// Gauss-Kronrod rule then handles routinely.

#pragma once

#include <functional>

namespace dosnet {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_floor = 1e-14;
  int max_depth = 48;
};

// Integral of f over (0, inf). Throws std::runtime_error when the adaptive
// refinement cannot reach the requested tolerance (divergence indicator).
double integrate_zero_to_inf(const std::function<double(double)>& f,
                             const QuadratureOptions& opt = {});

// Integral of f over the finite interval [a, b].
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, const QuadratureOptions& opt = {});

}  // namespace dosnet
