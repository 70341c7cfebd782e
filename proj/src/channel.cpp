#include "dosnet/channel.hpp"

#include <limits>

namespace dosnet {

double path_gain(double dist, double alpha) {
  if (!(alpha > 2)) throw std::invalid_argument("path_gain: alpha must be > 2");
  if (!(dist > 0)) throw std::domain_error("path_gain: distance must be > 0");
  return std::pow(dist, -alpha);
}

double path_gain_r2(double r2, double alpha) {
  if (alpha == 4.0) return 1.0 / (r2 * r2);
  if (alpha == 3.0) return 1.0 / (r2 * std::sqrt(r2));
  return std::pow(r2, -0.5 * alpha);
}

double interference_at_origin(const NetworkSample& sample, double alpha,
                              std::span<const double> interferer_fades) {
  if (interferer_fades.size() < sample.size())
    throw std::invalid_argument("interference_at_origin: need one fade per pair");
  double total = 0;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (j == sample.reference_pair || !sample.active_flags[j]) continue;
    total += interferer_fades[j] * path_gain_r2(squared_norm(sample.tx_positions[j]), alpha);
  }
  return total;
}

double interference_at_origin(const NetworkSample& sample, double alpha,
                              std::uint64_t rng_seed) {
  double total = 0;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (j == sample.reference_pair || !sample.active_flags[j]) continue;
    const double fade = edge_fade(rng_seed, 0, j, sample.reference_pair);
    total += fade * path_gain_r2(squared_norm(sample.tx_positions[j]), alpha);
  }
  return total;
}

SirSample sir_at_reference(const NetworkSample& sample, double alpha,
                           double interference) {
  if (!sample.active_flags[sample.reference_pair])
    throw std::logic_error("sir_at_reference: reference pair is not active");
  if (!(interference >= 0))
    throw std::invalid_argument("sir_at_reference: negative interference");
  SirSample out;
  out.signal = sample.signal_fades[sample.reference_pair] *
               path_gain(sample.link_distances[sample.reference_pair], alpha);
  out.interference = interference;
  out.sir = interference > 0 ? out.signal / interference
                             : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace dosnet
