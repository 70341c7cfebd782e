// Marked Poisson point process sampling in a finite disc window.
//
// The window is a disc centered at the origin. Outage statistics are only
// ever read at the origin, so a finite window stands in for the plane once
// its radius passes the interference tail rule (min_window_radius).

#pragma once

#include <cstdint>
#include <vector>

#include "dosnet/config.hpp"

namespace dosnet {

struct Vec2 {
  double x = 0;
  double y = 0;
};

inline double squared_norm(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double distance(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

struct Window {
  double radius = 0;  // meters, disc centered at the origin
  void validate() const {
    if (!(radius > 0)) throw std::invalid_argument("window: radius must be > 0");
  }
};

struct PointSet {
  std::vector<Vec2> points;
};

// One realized network: transmitter marks (position, link distance, signal
// fade, active flag) plus receiver positions. Pair `reference_pair` is the
// conditioned pair whose receiver sits exactly at the origin.
struct NetworkSample {
  std::vector<Vec2> tx_positions;
  std::vector<Vec2> rx_positions;
  std::vector<double> link_distances;
  std::vector<double> signal_fades;
  std::vector<std::uint8_t> active_flags;
  std::size_t reference_pair = 0;

  std::size_t size() const { return tx_positions.size(); }
};

// Homogeneous PPP in the window: Poisson count, i.i.d. uniform positions.
PointSet sample_ppp(double density, Window window, std::uint64_t rng_seed);

// Palm construction: the reference receiver is pinned at the origin and its
// transmitter placed at distance D0; everything else is an unconditioned PPP
// of density config.lambda_t. Fades are unit-mean exponential; all pairs
// start active.
NetworkSample sample_network(const NetworkConfig& config, Window window,
                             std::uint64_t rng_seed);

// Dilation x -> sqrt(factor) * x. Maps a homogeneous process of density
// lambda to one of density lambda / factor.
PointSet scale_process(const PointSet& points, double factor);

// Smallest window radius for which the expected interference arriving from
// beyond the window is below rel_tail of the expected in-window interference
// (both from the Campbell mean, in-window part taken outside unit distance
// where the mean is finite for every alpha > 2).
double min_window_radius(double alpha, double rel_tail = 1e-4);

}  // namespace dosnet
