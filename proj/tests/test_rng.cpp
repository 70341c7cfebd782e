#include <doctest.h>

#include <cmath>
#include <vector>

#include "dosnet/rng.hpp"

using namespace dosnet;

TEST_SUITE_BEGIN("rng");

TEST_CASE("streams are reproducible and key-separated") {
  RngStream a = RngStream::from(42, 1, 2, 3);
  RngStream b = RngStream::from(42, 1, 2, 3);
  RngStream c = RngStream::from(42, 1, 2, 4);
  bool same = true, different = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    same = same && va == b.next_u64();
    different = different || va != c.next_u64();
  }
  CHECK(same);
  CHECK(different);
}

TEST_CASE("uniform stays in (0,1] and has the right mean") {
  RngStream rng = RngStream::from(7);
  double sum = 0;
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0);
    REQUIRE(u <= 1);
    sum += u;
  }
  CHECK(std::abs(sum / 200000 - 0.5) < 0.003);
}

TEST_CASE("exponential has unit mean and variance") {
  RngStream rng = RngStream::from(9);
  double sum = 0, sq = 0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const double e = rng.exponential();
    sum += e;
    sq += e * e;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 1.0) < 0.01);
  CHECK(std::abs(sq / n - mean * mean - 1.0) < 0.03);
}

TEST_CASE("poisson matches mean and variance, small and large") {
  for (double mu : {0.5, 7.0, 120.0}) {
    RngStream rng = RngStream::from(11, static_cast<std::uint64_t>(mu * 10));
    const int n = 60000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(mu));
      sum += k;
      sq += k * k;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean / mu - 1.0) < 0.02);
    CHECK(std::abs(var / mu - 1.0) < 0.05);
  }
}

TEST_CASE("edge fades are deterministic per (trial, tx, rx) and exponential") {
  CHECK(edge_fade(5, 1, 10, 3) == edge_fade(5, 1, 10, 3));
  CHECK(edge_fade(5, 1, 10, 3) != edge_fade(5, 2, 10, 3));
  CHECK(edge_fade(5, 1, 10, 3) != edge_fade(5, 1, 11, 3));
  CHECK(edge_fade(5, 1, 10, 3) != edge_fade(5, 1, 10, 4));
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += edge_fade(123, i, 17, 0);
  CHECK(std::abs(sum / n - 1.0) < 0.01);
}

TEST_SUITE_END();
