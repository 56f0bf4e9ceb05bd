#ifndef REVMC_RNG_HPP
#define REVMC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace revmc {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based generator keyed by (seed, stream, index). Parallel
// consumers get disjoint streams without shared state; the same key
// always yields the same sequence.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0,
                      std::uint64_t index = 0) {
    state_ = detail::mix64(seed + 0x9E3779B97F4A7C15ull);
    state_ = detail::mix64(state_ ^ detail::mix64(stream + 0xD1B54A32D192ED03ull));
    state_ = detail::mix64(state_ ^ detail::mix64(index + 0x8CB92BA72F3D8DD7ull));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ull;
    return detail::mix64(state_);
  }

  CounterRng split(std::uint64_t index) {
    return CounterRng(state_, 0x5851F42D4C957F2Dull, index);
  }

  // Uniform on (0, 1).
  double uniform() {
    return (static_cast<double>(operator()() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    // Marsaglia polar method.
    for (;;) {
      double u = 2.0 * uniform() - 1.0;
      double v = 2.0 * uniform() - 1.0;
      double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  // Gamma(shape, scale 1); handles shape < 1.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be > 0");
    if (shape < 1.0) {
      double g = gamma(shape + 1.0);
      return g * std::pow(uniform(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  std::vector<double> dirichlet(std::span<const double> shapes) {
    std::vector<double> out(shapes.size());
    double total = 0.0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      out[i] = gamma(shapes[i]);
      total += out[i];
    }
    for (double& x : out) x /= total;
    return out;
  }

  // Index draw from unnormalized nonnegative weights.
  std::size_t discrete(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::runtime_error("discrete draw with zero mass");
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u <= acc) return i;
    }
    return weights.size() - 1;
  }

  // Index draw from log weights (-inf allowed).
  std::size_t discrete_log(std::span<const double> log_weights);

 private:
  std::uint64_t state_;
};

inline std::size_t CounterRng::discrete_log(std::span<const double> log_weights) {
  double m = -std::numeric_limits<double>::infinity();
  for (double lw : log_weights) m = std::max(m, lw);
  if (m == -std::numeric_limits<double>::infinity())
    throw std::runtime_error("discrete draw with zero mass");
  std::vector<double> w(log_weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_weights[i] - m);
  return discrete(w);
}

}  // namespace revmc

#endif
