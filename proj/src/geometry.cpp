#include "dosnet/geometry.hpp"

#include <cmath>

namespace dosnet {

namespace {
constexpr std::uint64_t kPppTag = 0x50505031ull;      // point positions
constexpr std::uint64_t kNetworkTag = 0x4e455431ull;  // network marks
}  // namespace

PointSet sample_ppp(double density, Window window, std::uint64_t rng_seed) {
  window.validate();
  if (!(density >= 0)) throw std::invalid_argument("sample_ppp: density must be >= 0");

  RngStream rng = RngStream::from(rng_seed, kPppTag);
  const double area = M_PI * window.radius * window.radius;
  const std::uint64_t n = rng.poisson(density * area);

  PointSet out;
  out.points.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    // Area-uniform: radius from sqrt of a uniform, angle uniform.
    const double r = window.radius * std::sqrt(rng.uniform(0.0, 1.0));
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    out.points[i] = {r * std::cos(phi), r * std::sin(phi)};
  }
  return out;
}

NetworkSample sample_network(const NetworkConfig& config, Window window,
                             std::uint64_t rng_seed) {
  config.validate();
  window.validate();
  if (window.radius <= config.distance.max_support())
    throw std::invalid_argument("sample_network: window too small for the reference link");

  PointSet tx = sample_ppp(config.lambda_t, window, rng_seed);
  RngStream rng = RngStream::from(rng_seed, kNetworkTag);

  NetworkSample s;
  const std::size_t n = tx.points.size() + 1;
  s.tx_positions.reserve(n);
  s.rx_positions.reserve(n);
  s.link_distances.reserve(n);
  s.signal_fades.reserve(n);
  s.active_flags.assign(n, 1);
  s.reference_pair = 0;

  // Reference pair first: receiver at the origin, transmitter at distance D0
  // in a uniform direction.
  {
    const double d0 = config.distance.sample(rng);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    s.tx_positions.push_back({d0 * std::cos(phi), d0 * std::sin(phi)});
    s.rx_positions.push_back({0.0, 0.0});
    s.link_distances.push_back(d0);
    s.signal_fades.push_back(rng.exponential());
  }

  for (const Vec2& p : tx.points) {
    const double d = config.distance.sample(rng);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    s.tx_positions.push_back(p);
    s.rx_positions.push_back({p.x + d * std::cos(phi), p.y + d * std::sin(phi)});
    s.link_distances.push_back(d);
    s.signal_fades.push_back(rng.exponential());
  }
  return s;
}

PointSet scale_process(const PointSet& points, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("scale_process: factor must be > 0");
  const double c = std::sqrt(factor);
  PointSet out;
  out.points.reserve(points.points.size());
  for (const Vec2& p : points.points) out.points.push_back({c * p.x, c * p.y});
  return out;
}

double min_window_radius(double alpha, double rel_tail) {
  if (!(alpha > 2)) throw std::invalid_argument("min_window_radius: alpha must be > 2");
  if (!(rel_tail > 0 && rel_tail < 1))
    throw std::invalid_argument("min_window_radius: rel_tail must lie in (0,1)");
  // Campbell mean outside R over mean inside [1, R]:
  //   R^(2-alpha) / (1 - R^(2-alpha)) <= rel_tail.
  const double target = rel_tail / (1.0 + rel_tail);
  return std::pow(target, 1.0 / (2.0 - alpha));
}

}  // namespace dosnet
