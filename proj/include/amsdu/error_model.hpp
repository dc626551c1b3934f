#pragma once

#include "amsdu/airtime_model.hpp"
#include "amsdu/phy_profile.hpp"

#include <cstdint>

namespace amsdu {

enum class ChannelKind {
  noise,         ///< independent per-bit errors
  interference,  ///< independent per-microsecond errors over the on-air time
};

/// Error process a frame is exposed to. Only the rate matching `kind` is
/// active; the other must be zero.
struct ChannelModel {
  ChannelKind kind = ChannelKind::interference;
  double bit_error_rate = 0.0;
  double airtime_error_rate = 0.0;
  /// Interference only: also expose the ACK's airtime to errors.
  bool include_ack = false;

  static ChannelModel noise(double ber) { return {ChannelKind::noise, ber, 0.0, false}; }
  static ChannelModel interference(double per_us, bool include_ack = false) {
    return {ChannelKind::interference, 0.0, per_us, include_ack};
  }
  static ChannelModel of_kind(ChannelKind kind, double rate) {
    return kind == ChannelKind::noise ? noise(rate) : interference(rate);
  }

  double active_rate() const {
    return kind == ChannelKind::noise ? bit_error_rate : airtime_error_rate;
  }
};

/// Throws std::invalid_argument when the active rate is outside [0, 1] or
/// the inactive one is non-zero.
void validate(const ChannelModel& channel);

/// Number of independent error trials a frame is exposed to.
struct EffectiveLength {
  std::uint64_t value = 0;
  auto operator<=>(const EffectiveLength&) const = default;
};

/// 1 - (1 - rate)^trials, evaluated in the log domain.
double per_from_length(double rate, std::uint64_t trials);
double per_from_length(const ChannelModel& channel, EffectiveLength length);

/**
 * Trial count for a frame whose airtime was computed as `breakdown`.
 *
 * Noise: bits of the (possibly capped) AMSDU including MAC and LLC headers.
 * Interference: on-air microseconds (PHY header, MAC/LLC, payload), rounded
 * up; contention time is excluded.
 */
EffectiveLength effective_length(const PhyProfile& profile, const FrameSpec& frame,
                                 const McsEntry& mcs, const ChannelModel& channel,
                                 const AirtimeBreakdown& breakdown);

struct Transmission {
  AirtimeBreakdown airtime;
  EffectiveLength length;
  double per = 0.0;
};

/// total_airtime -> effective_length -> per_from_length. Propagates
/// InfeasibleFrameError.
Transmission evaluate_transmission(const PhyProfile& profile, const FrameSpec& frame,
                                   const McsEntry& mcs, const ChannelModel& channel,
                                   const BackoffModel& backoff);

double per_for_transmission(const PhyProfile& profile, const FrameSpec& frame,
                            const McsEntry& mcs, const ChannelModel& channel,
                            const BackoffModel& backoff);

}  // namespace amsdu
