// The three distributed transmission rules and their application to a
// realized network.
//
// Channel-aware rule:    transmit iff H * D^-alpha >= Delta_c(lambda).
// Interferer-aware rule: transmit iff the fade-weighted gain at the nearest
//                        unintended receiver is <= Delta_i(lambda).
// Combined rule:         both tests, with the same solved density feeding
//                        both threshold policies.
//
// Thresholds always take the post-thinning density, which the caller obtains
// from the solvers module; apply_scheduler never solves a fixed point itself.

#pragma once

#include <limits>
#include <optional>
#include <string>

#include "dosnet/geometry.hpp"

namespace dosnet {

// Delta(lambda) = rho * lambda^exponent.
struct ThresholdPolicy {
  double rho = 0;
  double exponent = 0;

  double operator()(double lambda) const {
    if (!(rho >= 0)) throw std::invalid_argument("threshold policy: rho must be >= 0");
    if (rho == 0) return 0.0;
    return rho * std::pow(lambda, exponent);
  }
};

enum class SchemeTag { none, dcas, dias, dicas };

std::string to_string(SchemeTag tag);

struct SchedulerKind {
  SchemeTag tag = SchemeTag::none;
  std::optional<ThresholdPolicy> channel_policy;
  std::optional<ThresholdPolicy> interferer_policy;

  static SchedulerKind none() { return {}; }
  static SchedulerKind dcas(ThresholdPolicy channel) {
    return {SchemeTag::dcas, channel, std::nullopt};
  }
  static SchedulerKind dias(ThresholdPolicy interferer) {
    return {SchemeTag::dias, std::nullopt, interferer};
  }
  static SchedulerKind dicas(ThresholdPolicy channel, ThresholdPolicy interferer) {
    return {SchemeTag::dicas, channel, interferer};
  }

  bool uses_channel_test() const {
    return tag == SchemeTag::dcas || tag == SchemeTag::dicas;
  }
  bool uses_interferer_test() const {
    return tag == SchemeTag::dias || tag == SchemeTag::dicas;
  }

  void validate() const;
};

// --- Per-transmitter decisions -------------------------------------------

bool dcas_decision(double signal_fade, double link_distance, double threshold,
                   double alpha);

// True iff fade * nearest_distance^-alpha <= threshold.
bool dias_decision(double interferer_fade, double nearest_distance,
                   double threshold, double alpha);

bool dicas_decision(double signal_fade, double link_distance,
                    double channel_threshold, double interferer_fade,
                    double nearest_distance, double interferer_threshold,
                    double alpha);

// --- Nearest unintended receiver ------------------------------------------

struct NearestReceiver {
  std::size_t receiver_index = 0;
  double distance = 0;
};

// Nearest receiver of any pair k != tx_index (ties broken by lowest index).
// Throws when the sample holds a single pair.
NearestReceiver nearest_unintended_receiver(const NetworkSample& sample,
                                            std::size_t tx_index);

enum class EdgePolicy { mirror, none };

// --- Applying a rule to a whole sample ------------------------------------

// Returns a copy of `sample` with active flags set by `kind` evaluated at
// the solved density `active_density`. The reference pair stays active; under
// the channel-aware rules its signal fade is redrawn from the conditioned law
// H0 | H0 * D0^-alpha >= Delta_c (rejection sampling). Decision fades come
// from (rng_seed, pair index, receiver index) edge keys, so the gate fade of
// a transmitter whose nearest unintended receiver happens to be the reference
// receiver is the same fade that transmitter contributes to the reference
// interference. `window_radius` > 0 enables mirrored boundary ghosts for the
// nearest-receiver search under EdgePolicy::mirror.
NetworkSample apply_scheduler(const NetworkSample& sample, const SchedulerKind& kind,
                              const NetworkConfig& config, double active_density,
                              std::uint64_t rng_seed,
                              EdgePolicy edge_policy = EdgePolicy::mirror,
                              double window_radius = 0);

// Conditioned signal-fade draw: Exp(1) restricted to [min_fade, inf).
// Rejection sampling; for acceptance probabilities below e^-8 the exact
// memoryless shift min_fade + Exp(1) (the same law) is used instead.
double conditioned_signal_fade(double min_fade, RngStream& rng);

// Two nearest unintended receivers of one transmitter (distances sorted).
// receiver_index entries beyond sample.size() denote mirrored ghosts.
void two_nearest_unintended(const NetworkSample& sample, std::size_t tx_index,
                            EdgePolicy edge_policy, double window_radius,
                            double parent_density, NearestReceiver out[2]);

}  // namespace dosnet
