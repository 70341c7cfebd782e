// Physical and statistical parameters of the network under study.

#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dosnet/rng.hpp"

namespace dosnet {

// Law of the transmitter->receiver link distance. Constant distances cover
// the headline configurations; finite mixtures cover everything the tests
// need from a "general" law while keeping every expectation exact.
class DistanceLaw {
 public:
  static DistanceLaw constant(double d) {
    DistanceLaw law;
    law.values_ = {d};
    law.weights_ = {1.0};
    law.check();
    return law;
  }

  static DistanceLaw atoms(std::vector<double> values, std::vector<double> weights) {
    DistanceLaw law;
    law.values_ = std::move(values);
    law.weights_ = std::move(weights);
    if (law.values_.empty() || law.values_.size() != law.weights_.size())
      throw std::invalid_argument("distance law: values/weights size mismatch");
    double total = std::accumulate(law.weights_.begin(), law.weights_.end(), 0.0);
    if (total <= 0) throw std::invalid_argument("distance law: weights must sum > 0");
    for (double& w : law.weights_) w /= total;
    law.check();
    return law;
  }

  bool is_constant() const { return values_.size() == 1; }
  double constant_value() const { return values_[0]; }

  double min_support() const {
    double m = values_[0];
    for (double v : values_) m = std::min(m, v);
    return m;
  }
  double max_support() const {
    double m = values_[0];
    for (double v : values_) m = std::max(m, v);
    return m;
  }

  template <class F>
  double expect(F f) const {
    double s = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += weights_[i] * f(values_[i]);
    return s;
  }

  double mean() const { return expect([](double d) { return d; }); }
  double second_moment() const { return expect([](double d) { return d * d; }); }
  double moment(double p) const {
    return expect([p](double d) { return std::pow(d, p); });
  }

  double sample(RngStream& rng) const {
    if (is_constant()) return values_[0];
    double u = rng.uniform();
    double acc = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      acc += weights_[i];
      if (u <= acc) return values_[i];
    }
    return values_.back();
  }

 private:
  void check() const {
    for (double v : values_)
      if (!(v >= 1.0))
        throw std::invalid_argument("distance law: support must be >= 1");
    for (double w : weights_)
      if (!(w >= 0)) throw std::invalid_argument("distance law: negative weight");
  }

  std::vector<double> values_;
  std::vector<double> weights_;
};

struct NetworkConfig {
  double alpha = 4.0;     // path loss exponent, > 2
  double beta = 2.0;      // SIR decoding threshold, > 0
  double lambda_t = 1e-4; // parent transmitter density per m^2
  double epsilon = 0.1;   // outage constraint in (0,1)
  double rate_b = 1.0;    // per-link rate used by the capacity metric
  DistanceLaw distance = DistanceLaw::constant(8.0);

  void validate() const {
    if (!(alpha > 2.0)) throw std::invalid_argument("config: alpha must be > 2");
    if (!(beta > 0.0)) throw std::invalid_argument("config: beta must be > 0");
    if (!(lambda_t >= 0.0)) throw std::invalid_argument("config: lambda_t must be >= 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::invalid_argument("config: epsilon must lie in (0,1)");
    if (!(rate_b > 0.0)) throw std::invalid_argument("config: rate_b must be > 0");
    if (!(distance.min_support() >= 1.0))
      throw std::invalid_argument("config: distance support must be >= 1");
  }
};

}  // namespace dosnet
