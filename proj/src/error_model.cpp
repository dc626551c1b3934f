#include "amsdu/error_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace amsdu {

void validate(const ChannelModel& channel) {
  const double active = channel.active_rate();
  const double inactive = channel.kind == ChannelKind::noise ? channel.airtime_error_rate
                                                             : channel.bit_error_rate;
  if (!(active >= 0.0 && active <= 1.0))
    throw std::invalid_argument(fmt::format("channel error rate {} outside [0, 1]", active));
  if (inactive != 0.0)
    throw std::invalid_argument("only the error rate matching the channel kind may be set");
}

double per_from_length(double rate, std::uint64_t trials) {
  if (trials == 0 || rate == 0.0) return 0.0;
  if (rate == 1.0) return 1.0;
  if (trials == 1) return rate;
  // -expm1(n*log1p(-r)) keeps full precision when r is tiny and n is large.
  const double per = -std::expm1(static_cast<double>(trials) * std::log1p(-rate));
  return std::clamp(per, 0.0, 1.0);
}

double per_from_length(const ChannelModel& channel, EffectiveLength length) {
  return per_from_length(channel.active_rate(), length.value);
}

EffectiveLength effective_length(const PhyProfile& profile, const FrameSpec& frame,
                                 const McsEntry& mcs, const ChannelModel& channel,
                                 const AirtimeBreakdown& breakdown) {
  const FrameSpec sent = frame.with_depth(breakdown.effective_depth);
  if (channel.kind == ChannelKind::noise) {
    const std::uint64_t header_bytes = std::uint64_t{profile.mac_header} + profile.llc_header;
    return {(sent.payload_bytes() + header_bytes) * 8};
  }

  Micros exposed = on_air_time(profile, sent, mcs);
  if (channel.include_ack)
    exposed += Micros{profile.ack_size * 8.0 / profile.basic_rate_mbps};
  return {static_cast<std::uint64_t>(std::ceil(exposed.count() - kTimeTolerance))};
}

Transmission evaluate_transmission(const PhyProfile& profile, const FrameSpec& frame,
                                   const McsEntry& mcs, const ChannelModel& channel,
                                   const BackoffModel& backoff) {
  Transmission tx;
  tx.airtime = total_airtime(profile, frame, mcs, backoff);
  tx.length = effective_length(profile, frame, mcs, channel, tx.airtime);
  tx.per = per_from_length(channel, tx.length);
  return tx;
}

double per_for_transmission(const PhyProfile& profile, const FrameSpec& frame,
                            const McsEntry& mcs, const ChannelModel& channel,
                            const BackoffModel& backoff) {
  return evaluate_transmission(profile, frame, mcs, channel, backoff).per;
}

}  // namespace amsdu
