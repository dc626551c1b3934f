#pragma once

#include <cstdint>

namespace amsdu::oracle {

/// Frame-failure counts from simulating independent error trials.
struct FailureCount {
  std::uint64_t frames = 0;
  std::uint64_t failures = 0;

  double frequency() const {
    return frames == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(frames);
  }
};

/**
 * Simulates `frames` frames of `trials` independent trials, each failing
 * with probability `rate`; a frame fails if any trial fails.
 *
 * Short frames flip every trial; long frames draw the position of the first
 * failing trial directly, which is the same process without walking every
 * bit. A fixed seed reproduces identical counts.
 */
FailureCount simulate_frame_failures(double rate, std::uint64_t trials, std::uint64_t frames,
                                     std::uint64_t seed);

/// Binomial standard error sqrt(p (1 - p) / frames).
double standard_error(double p, std::uint64_t frames);

}  // namespace amsdu::oracle
