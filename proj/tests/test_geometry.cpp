#include <doctest.h>

#include <cmath>

#include "dosnet/geometry.hpp"
#include "oracle.hpp"

using namespace dosnet;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("zero intensity gives an empty set, negative intensity throws") {
  CHECK(sample_ppp(0.0, {500.0}, 1).points.empty());
  CHECK_THROWS_AS(sample_ppp(-1e-6, {500.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_ppp(1e-6, {0.0}, 1), std::invalid_argument);
}

TEST_CASE("point count matches the analytic Poisson mean within 1%") {
  const double density = 1e-3, radius = 500.0;
  const double expected = density * M_PI * radius * radius;  // ~785.4
  double total = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    total += static_cast<double>(sample_ppp(density, {radius}, 1000 + i).points.size());
  CHECK(std::abs(total / draws / expected - 1.0) < 0.01);
}

TEST_CASE("count variance equals the mean within 5%") {
  const double density = 1e-4, radius = 100.0;
  const double mean_expected = density * M_PI * radius * radius;
  double sum = 0, sq = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const double n = static_cast<double>(sample_ppp(density, {radius}, 77 + i).points.size());
    sum += n;
    sq += n * n;
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  CHECK(std::abs(var / mean_expected - 1.0) < 0.05);
}

TEST_CASE("all sampled points lie inside the window") {
  const PointSet p = sample_ppp(2e-3, {200.0}, 5);
  for (const Vec2& v : p.points) CHECK(squared_norm(v) <= 200.0 * 200.0);
}

TEST_CASE("quadrant counts behave like independent Poisson cells") {
  // Conditional on the total, counts in the four quadrants of the inscribed
  // square are multinomial(1/4); the aggregated Pearson statistic over all
  // draws is chi-square with 3 dof per draw.
  const double density = 1e-3, radius = 150.0;
  const double s = radius / std::sqrt(2.0);
  const int draws = 10000;
  double pearson = 0;
  double used_draws = 0;
  std::vector<double> left_counts, right_counts;
  for (int i = 0; i < draws; ++i) {
    const PointSet p = sample_ppp(density, {radius}, 31337 + i);
    double q[4] = {0, 0, 0, 0};
    for (const Vec2& v : p.points) {
      if (std::abs(v.x) > s || std::abs(v.y) > s) continue;
      q[(v.x >= 0 ? 1 : 0) + (v.y >= 0 ? 2 : 0)] += 1;
    }
    const double n = q[0] + q[1] + q[2] + q[3];
    left_counts.push_back(q[0] + q[2]);
    right_counts.push_back(q[1] + q[3]);
    if (n == 0) continue;
    for (int k = 0; k < 4; ++k) pearson += (q[k] - n / 4) * (q[k] - n / 4) / (n / 4);
    used_draws += 1;
  }
  CHECK(pearson < oracle::chi2_quantile(3 * used_draws, 2.326));  // 1% level

  // Counts in disjoint halves are uncorrelated.
  double ml = 0, mr = 0;
  for (std::size_t i = 0; i < left_counts.size(); ++i) {
    ml += left_counts[i];
    mr += right_counts[i];
  }
  ml /= left_counts.size();
  mr /= right_counts.size();
  double cov = 0, vl = 0, vr = 0;
  for (std::size_t i = 0; i < left_counts.size(); ++i) {
    cov += (left_counts[i] - ml) * (right_counts[i] - mr);
    vl += (left_counts[i] - ml) * (left_counts[i] - ml);
    vr += (right_counts[i] - mr) * (right_counts[i] - mr);
  }
  const double corr = cov / std::sqrt(vl * vr);
  CHECK(std::abs(corr) < 3.0 / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("network sample: constant distance law and reference pair at origin") {
  NetworkConfig config;
  config.lambda_t = 1e-3;
  config.distance = DistanceLaw::constant(8.0);
  const NetworkSample s = sample_network(config, {200.0}, 99);
  CHECK(s.rx_positions[s.reference_pair].x == 0.0);
  CHECK(s.rx_positions[s.reference_pair].y == 0.0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    CHECK(s.link_distances[j] == 8.0);
    CHECK(std::abs(distance(s.tx_positions[j], s.rx_positions[j]) - 8.0) < 1e-9);
    CHECK(s.active_flags[j] == 1);
    CHECK(s.signal_fades[j] >= 0.0);
  }
}

TEST_CASE("signal fades are unit-mean exponential across draws") {
  NetworkConfig config;
  config.lambda_t = 1e-3;
  double sum = 0;
  std::size_t count = 0;
  for (int i = 0; count < 100000; ++i) {
    const NetworkSample s = sample_network(config, {200.0}, 5000 + i);
    for (double f : s.signal_fades) sum += f;
    count += s.size();
  }
  CHECK(sum / static_cast<double>(count) > 0.99);
  CHECK(sum / static_cast<double>(count) < 1.01);
}

TEST_CASE("mixture distance law visits its atoms with the right frequencies") {
  NetworkConfig config;
  config.lambda_t = 2e-3;
  config.distance = DistanceLaw::atoms({2.0, 10.0}, {0.25, 0.75});
  std::size_t lo = 0, hi = 0;
  for (int i = 0; i < 300; ++i) {
    const NetworkSample s = sample_network(config, {150.0}, 640 + i);
    for (double d : s.link_distances) {
      REQUIRE((d == 2.0 || d == 10.0));
      (d == 2.0 ? lo : hi) += 1;
    }
  }
  const double frac = static_cast<double>(lo) / static_cast<double>(lo + hi);
  CHECK(std::abs(frac - 0.25) < 0.01);
  CHECK(config.distance.second_moment() == doctest::Approx(0.25 * 4 + 0.75 * 100));
}

TEST_CASE("window too small for the reference link throws") {
  NetworkConfig config;
  config.distance = DistanceLaw::constant(8.0);
  CHECK_THROWS_AS(sample_network(config, {5.0}, 1), std::invalid_argument);
}

TEST_CASE("distance law support below 1 is rejected") {
  CHECK_THROWS_AS(DistanceLaw::constant(0.5), std::invalid_argument);
  CHECK_THROWS_AS(DistanceLaw::atoms({0.9, 3.0}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("scale_process identity, coordinates and composition") {
  PointSet p;
  p.points = {{3.0, 4.0}, {-1.0, 2.0}};
  const PointSet same = scale_process(p, 1.0);
  CHECK(same.points[0].x == 3.0);
  CHECK(same.points[1].y == 2.0);

  const PointSet scaled = scale_process(p, 4.0);
  CHECK(scaled.points[0].x == 6.0);
  CHECK(scaled.points[0].y == 8.0);

  // Exact composition for perfect-square factors, tight tolerance otherwise.
  const PointSet ab = scale_process(scale_process(p, 4.0), 9.0);
  const PointSet once = scale_process(p, 36.0);
  CHECK(ab.points[0].x == once.points[0].x);
  CHECK(ab.points[1].y == once.points[1].y);
  const PointSet gen = scale_process(scale_process(p, 2.7), 3.1);
  const PointSet gen_once = scale_process(p, 2.7 * 3.1);
  CHECK(gen.points[0].x == doctest::Approx(gen_once.points[0].x).epsilon(1e-14));

  CHECK_THROWS_AS(scale_process(p, 0.0), std::invalid_argument);
}

TEST_CASE("dilation by kappa reduces the empirical density kappa-fold") {
  const double radius = 10.0;
  double count = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    count += static_cast<double>(scale_process(sample_ppp(1.0, {radius}, 71 + i), 4.0)
                                     .points.size());
  // Image points live in a disc of radius 2R; density should be 1/4.
  const double density = count / draws / (M_PI * 4.0 * radius * radius);
  CHECK(std::abs(density / 0.25 - 1.0) < 0.02);
}

TEST_CASE("sampling is bit-reproducible for identical seeds") {
  NetworkConfig config;
  config.lambda_t = 1e-3;
  const NetworkSample a = sample_network(config, {200.0}, 4242);
  const NetworkSample b = sample_network(config, {200.0}, 4242);
  REQUIRE(a.size() == b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a.tx_positions[j].x == b.tx_positions[j].x);
    CHECK(a.signal_fades[j] == b.signal_fades[j]);
  }
}

TEST_CASE("window tail rule yields the documented radii") {
  // alpha = 4: R = (1e-4/1.0001)^(-1/2) just above 100 m.
  CHECK(min_window_radius(4.0) == doctest::Approx(100.005).epsilon(1e-4));
  // The defining inequality holds with equality at the returned radius.
  const double r3 = min_window_radius(3.0);
  const double tail = std::pow(r3, -1.0);
  CHECK(tail / (1.0 - tail) == doctest::Approx(1e-4).epsilon(1e-6));
  CHECK_THROWS_AS(min_window_radius(2.0), std::invalid_argument);
}

TEST_SUITE_END();
