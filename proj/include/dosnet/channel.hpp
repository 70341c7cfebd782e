// Path loss, aggregate interference and SIR at the reference receiver.
// Noise power is exactly zero: the network is interference-limited.

#pragma once

#include <span>

#include "dosnet/geometry.hpp"

namespace dosnet {

struct SirSample {
  double signal = 0;        // H0 * D0^-alpha
  double interference = 0;  // sum over active non-reference transmitters
  double sir = 0;           // +inf when interference == 0
};

// distance^-alpha. Distance 0 is a singularity and rejected.
double path_gain(double dist, double alpha);

// Fast d^-alpha given the squared distance (integer alpha/2 short-circuits).
double path_gain_r2(double r2, double alpha);

// Sum of fade * |X_j|^-alpha over active non-reference transmitters.
// `interferer_fades` holds one fresh unit-mean exponential per pair (the
// entries of inactive/reference pairs are ignored), indexed like the sample.
double interference_at_origin(const NetworkSample& sample, double alpha,
                              std::span<const double> interferer_fades);

// Convenience: draws the per-pair fades from (rng_seed, trial 0) edge keys.
double interference_at_origin(const NetworkSample& sample, double alpha,
                              std::uint64_t rng_seed);

SirSample sir_at_reference(const NetworkSample& sample, double alpha,
                           double interference);

inline bool in_outage(const SirSample& s, double beta) {
  // Zero interference decodes for every threshold.
  return s.interference > 0 && s.sir < beta;
}

}  // namespace dosnet
