#include "amsdu/oracle/monte_carlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace amsdu::oracle {

namespace {
constexpr std::uint64_t kBitwiseLimit = 100;
}

FailureCount simulate_frame_failures(double rate, std::uint64_t trials, std::uint64_t frames,
                                     std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("rate outside [0, 1]");
  FailureCount count{frames, 0};
  if (rate == 0.0 || trials == 0) return count;
  if (rate == 1.0) {
    count.failures = frames;
    return count;
  }

  std::mt19937_64 engine(seed);
  if (trials <= kBitwiseLimit) {
    std::bernoulli_distribution flip(rate);
    for (std::uint64_t f = 0; f < frames; ++f) {
      for (std::uint64_t t = 0; t < trials; ++t) {
        if (flip(engine)) {
          ++count.failures;
          break;
        }
      }
    }
    return count;
  }

  // Number of clean trials before the first error.
  std::geometric_distribution<std::uint64_t> first_error(rate);
  for (std::uint64_t f = 0; f < frames; ++f)
    if (first_error(engine) < trials) ++count.failures;
  return count;
}

double standard_error(double p, std::uint64_t frames) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(frames));
}

}  // namespace amsdu::oracle
