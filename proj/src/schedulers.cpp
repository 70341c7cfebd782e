#include "dosnet/schedulers.hpp"

#include <algorithm>
#include <cmath>

#include "dosnet/channel.hpp"

namespace dosnet {

std::string to_string(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::none: return "none";
    case SchemeTag::dcas: return "dcas";
    case SchemeTag::dias: return "dias";
    case SchemeTag::dicas: return "dicas";
  }
  return "?";
}

void SchedulerKind::validate() const {
  const bool want_c = uses_channel_test();
  const bool want_i = uses_interferer_test();
  if (want_c != channel_policy.has_value())
    throw std::invalid_argument("scheduler: channel policy presence does not match tag");
  if (want_i != interferer_policy.has_value())
    throw std::invalid_argument("scheduler: interferer policy presence does not match tag");
  if (channel_policy && !(channel_policy->rho >= 0))
    throw std::invalid_argument("scheduler: channel rho must be >= 0");
  if (interferer_policy && !(interferer_policy->rho >= 0))
    throw std::invalid_argument("scheduler: interferer rho must be >= 0");
}

bool dcas_decision(double signal_fade, double link_distance, double threshold,
                   double alpha) {
  if (!(threshold >= 0)) throw std::invalid_argument("dcas_decision: threshold < 0");
  return signal_fade * path_gain(link_distance, alpha) >= threshold;
}

bool dias_decision(double interferer_fade, double nearest_distance,
                   double threshold, double alpha) {
  if (!(threshold >= 0)) throw std::invalid_argument("dias_decision: threshold < 0");
  if (std::isinf(threshold)) return true;
  return interferer_fade * path_gain(nearest_distance, alpha) <= threshold;
}

bool dicas_decision(double signal_fade, double link_distance,
                    double channel_threshold, double interferer_fade,
                    double nearest_distance, double interferer_threshold,
                    double alpha) {
  return dcas_decision(signal_fade, link_distance, channel_threshold, alpha) &&
         dias_decision(interferer_fade, nearest_distance, interferer_threshold, alpha);
}

NearestReceiver nearest_unintended_receiver(const NetworkSample& sample,
                                            std::size_t tx_index) {
  if (sample.size() < 2)
    throw std::invalid_argument("nearest_unintended_receiver: need at least two pairs");
  const Vec2 q = sample.tx_positions[tx_index];
  NearestReceiver best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < sample.size(); ++k) {
    if (k == tx_index) continue;
    const double d = distance(q, sample.rx_positions[k]);
    if (d < best.distance) best = {k, d};
  }
  return best;
}

namespace {

// Uniform cell grid over candidate receivers (plus mirrored boundary ghosts)
// answering nearest / two-nearest queries with ring expansion.
class ReceiverGrid {
 public:
  struct Entry {
    Vec2 pos;
    std::size_t pair_index;   // owner pair
    std::uint64_t fade_key;   // receiver id used for fade derivation
  };

  ReceiverGrid(const NetworkSample& sample, EdgePolicy policy,
               double window_radius, double parent_density) {
    entries_.reserve(sample.size());
    for (std::size_t k = 0; k < sample.size(); ++k)
      entries_.push_back({sample.rx_positions[k], k, k});

    double extent = 0;
    for (const Entry& e : entries_)
      extent = std::max(extent, std::max(std::abs(e.pos.x), std::abs(e.pos.y)));

    if (policy == EdgePolicy::mirror && window_radius > 0 && parent_density > 0) {
      // Radial reflection across the window boundary for receivers within one
      // expected nearest-neighbor distance of it; restores the intensity a
      // boundary transmitter would see on an unbounded plane.
      const double guard = std::min(0.5 / std::sqrt(parent_density), 0.5 * window_radius);
      const std::size_t n = sample.size();
      for (std::size_t k = 0; k < n; ++k) {
        const Vec2 p = sample.rx_positions[k];
        const double r = std::sqrt(squared_norm(p));
        if (r > window_radius - guard && r > 0) {
          const double rm = 2.0 * window_radius - r;
          entries_.push_back({{p.x * rm / r, p.y * rm / r}, k, n + k});
          extent = std::max(extent, rm);
        }
      }
    }

    extent = std::max(extent, 1.0) * 1.0001;
    lo_ = -extent;
    const std::size_t target = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::sqrt(static_cast<double>(entries_.size()) / 2.0)));
    cells_per_side_ = std::min<std::size_t>(512, target);
    cell_ = 2.0 * extent / static_cast<double>(cells_per_side_);

    bins_.assign(cells_per_side_ * cells_per_side_, {});
    for (std::size_t i = 0; i < entries_.size(); ++i)
      bins_[bin_of(entries_[i].pos)].push_back(i);
  }

  // Up to `want` nearest entries whose pair_index != exclude, sorted by
  // distance (ties by entry order, i.e. lowest pair index first).
  void nearest(Vec2 q, std::size_t exclude, int want, Entry* out, double* dist,
               int& found) const {
    found = 0;
    double worst = std::numeric_limits<double>::infinity();
    const long cx = coord(q.x), cy = coord(q.y);
    const long max_ring = static_cast<long>(cells_per_side_);
    for (long ring = 0; ring <= max_ring; ++ring) {
      if (found == want && (static_cast<double>(ring) - 1.0) * cell_ > worst) break;
      for_ring(cx, cy, ring, [&](std::size_t bin) {
        for (std::size_t idx : bins_[bin]) {
          const Entry& e = entries_[idx];
          if (e.pair_index == exclude) continue;
          const double d = distance(q, e.pos);
          if (found < want) {
            out[found] = e;
            dist[found] = d;
            ++found;
            sort_found(out, dist, found);
            worst = dist[found - 1];
          } else if (d < worst) {
            out[found - 1] = e;
            dist[found - 1] = d;
            sort_found(out, dist, found);
            worst = dist[found - 1];
          }
        }
      });
    }
  }

 private:
  static void sort_found(Entry* out, double* dist, int n) {
    for (int i = n - 1; i > 0 && dist[i] < dist[i - 1]; --i) {
      std::swap(dist[i], dist[i - 1]);
      std::swap(out[i], out[i - 1]);
    }
  }

  long coord(double v) const {
    const long c = static_cast<long>(std::floor((v - lo_) / cell_));
    return std::clamp(c, 0L, static_cast<long>(cells_per_side_) - 1);
  }
  std::size_t bin_of(Vec2 p) const {
    return static_cast<std::size_t>(coord(p.y)) * cells_per_side_ +
           static_cast<std::size_t>(coord(p.x));
  }

  template <class F>
  void for_ring(long cx, long cy, long ring, F&& f) const {
    const long n = static_cast<long>(cells_per_side_);
    auto visit = [&](long x, long y) {
      if (x >= 0 && x < n && y >= 0 && y < n)
        f(static_cast<std::size_t>(y) * cells_per_side_ + static_cast<std::size_t>(x));
    };
    if (ring == 0) {
      visit(cx, cy);
      return;
    }
    for (long x = cx - ring; x <= cx + ring; ++x) {
      visit(x, cy - ring);
      visit(x, cy + ring);
    }
    for (long y = cy - ring + 1; y <= cy + ring - 1; ++y) {
      visit(cx - ring, y);
      visit(cx + ring, y);
    }
  }

  std::vector<Entry> entries_;
  std::vector<std::vector<std::size_t>> bins_;
  double lo_ = 0, cell_ = 1;
  std::size_t cells_per_side_ = 1;
};

}  // namespace

double conditioned_signal_fade(double min_fade, RngStream& rng) {
  if (!(min_fade > 0)) return rng.exponential();
  if (min_fade <= 8.0) {
    for (;;) {
      const double h = rng.exponential();
      if (h >= min_fade) return h;
    }
  }
  // Acceptance below e^-8: switch to the memoryless shift, the identical law.
  return min_fade + rng.exponential();
}

NetworkSample apply_scheduler(const NetworkSample& sample, const SchedulerKind& kind,
                              const NetworkConfig& config, double active_density,
                              std::uint64_t rng_seed, EdgePolicy edge_policy,
                              double window_radius) {
  kind.validate();
  if (!(active_density >= 0))
    throw std::invalid_argument("apply_scheduler: active_density must be >= 0");

  NetworkSample out = sample;
  const std::size_t ref = out.reference_pair;
  const double alpha = config.alpha;

  const double delta_c =
      kind.uses_channel_test() ? (*kind.channel_policy)(active_density) : 0.0;
  const double delta_i = kind.uses_interferer_test()
                             ? (*kind.interferer_policy)(active_density)
                             : std::numeric_limits<double>::infinity();

  std::optional<ReceiverGrid> grid;
  if (kind.uses_interferer_test() && out.size() >= 2)
    grid.emplace(out, edge_policy, window_radius, config.lambda_t);

  for (std::size_t j = 0; j < out.size(); ++j) {
    if (j == ref) continue;
    bool active = true;
    if (kind.uses_channel_test())
      active = dcas_decision(out.signal_fades[j], out.link_distances[j], delta_c, alpha);
    if (active && kind.uses_interferer_test()) {
      if (out.size() < 2) {
        // No unintended receiver exists; the gate cannot bind.
      } else {
        ReceiverGrid::Entry e[1];
        double d[1];
        int found = 0;
        grid->nearest(out.tx_positions[j], j, 1, e, d, found);
        const double fade = edge_fade(rng_seed, 0, j, e[0].fade_key);
        active = dias_decision(fade, d[0], delta_i, alpha);
      }
    }
    out.active_flags[j] = active ? 1 : 0;
  }

  // Palm conditioning of the reference pair: it is scheduled by construction.
  // The interferer-aware gate of the reference transmitter is independent of
  // every quantity measured at the reference receiver, so conditioning on it
  // needs no redraw; the channel gate conditions the signal fade itself.
  out.active_flags[ref] = 1;
  if (kind.uses_channel_test() && delta_c > 0) {
    RngStream rng = RngStream::from(rng_seed, 0x52454643ull, ref);
    const double min_fade =
        delta_c * std::pow(out.link_distances[ref], alpha);
    out.signal_fades[ref] = conditioned_signal_fade(min_fade, rng);
  }
  return out;
}

// Exposed for the conditional-weakness estimator: the two nearest unintended
// receivers of one transmitter, using the same grid machinery.
void two_nearest_unintended(const NetworkSample& sample, std::size_t tx_index,
                            EdgePolicy edge_policy, double window_radius,
                            double parent_density, NearestReceiver out[2]) {
  if (sample.size() < 3)
    throw std::invalid_argument("two_nearest_unintended: need at least three pairs");
  ReceiverGrid grid(sample, edge_policy, window_radius, parent_density);
  ReceiverGrid::Entry e[2];
  double d[2];
  int found = 0;
  grid.nearest(sample.tx_positions[tx_index], tx_index, 2, e, d, found);
  out[0] = {e[0].fade_key, d[0]};
  out[1] = {e[1].fade_key, d[1]};
}

}  // namespace dosnet
