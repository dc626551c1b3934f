#include "amsdu/airtime_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace amsdu {

namespace {

Micros serialize(std::uint64_t bytes, double rate_mbps) {
  return Micros{static_cast<double>(bytes) * 8.0 / rate_mbps};
}

Micros phy_header_airtime(const PhyProfile& profile) {
  return serialize(profile.phy_header(), profile.basic_rate_mbps);
}

}  // namespace

void validate(const FrameSpec& frame) {
  if (frame.msdu_size == 0) throw std::invalid_argument("msdu_size must be > 0");
  if (frame.agg_depth == 0) throw std::invalid_argument("agg_depth must be >= 1");
}

void validate(const BackoffModel& backoff) {
  if (!(backoff.backoff_slots >= 0.0))
    throw std::invalid_argument(
        fmt::format("backoff_slots must be >= 0 (got {})", backoff.backoff_slots));
}

Micros overhead_contention(const PhyProfile& profile, const BackoffModel& backoff) {
  switch (backoff.mode) {
    case BackoffMode::paper_literal:
      return backoff.backoff_slots * profile.t_difs;
    case BackoffMode::slotted:
      return profile.t_difs + backoff.backoff_slots * profile.slot_time;
  }
  return Micros{};
}

Micros header_airtime(const PhyProfile& profile, const McsEntry& mcs) {
  const double rate = profile.all_headers_at_basic_rate ? profile.basic_rate_mbps : mcs.rate_mbps;
  return serialize(std::uint64_t{profile.mac_header} + profile.llc_header, rate);
}

Micros overhead_fixed(const PhyProfile& profile, const McsEntry& mcs) {
  return phy_header_airtime(profile) + header_airtime(profile, mcs) +
         serialize(profile.ack_size, profile.basic_rate_mbps) + profile.t_sifs;
}

Micros payload_airtime(const FrameSpec& frame, const McsEntry& mcs) {
  return serialize(frame.payload_bytes(), mcs.rate_mbps);
}

Micros on_air_time(const PhyProfile& profile, const FrameSpec& frame, const McsEntry& mcs) {
  return phy_header_airtime(profile) + header_airtime(profile, mcs) +
         payload_airtime(frame, mcs);
}

AirtimeBreakdown total_airtime(const PhyProfile& profile, const FrameSpec& frame,
                               const McsEntry& mcs, const BackoffModel& backoff) {
  validate(frame);
  validate(backoff);

  const Micros framing = phy_header_airtime(profile) + header_airtime(profile, mcs);
  const Micros per_msdu = payload_airtime(frame.with_depth(1), mcs);
  const double cap = profile.ppdu_cap.count() + kTimeTolerance;

  if ((framing + per_msdu).count() > cap)
    throw InfeasibleFrameError(fmt::format(
        "a single {}-byte MSDU at {} needs {:.3f} us on air, above the {} us PPDU cap",
        frame.msdu_size, mcs.label.empty() ? fmt::format("{} Mbps", mcs.rate_mbps) : mcs.label,
        (framing + per_msdu).count(), profile.ppdu_cap.count()));

  AirtimeBreakdown out;
  out.effective_depth = frame.agg_depth;
  if ((framing + frame.agg_depth * per_msdu).count() > cap) {
    auto fit = static_cast<std::uint32_t>(
        std::floor((profile.ppdu_cap - framing).count() / per_msdu.count()));
    fit = std::clamp<std::uint32_t>(fit, 1, frame.agg_depth - 1);
    while (fit > 1 && (framing + fit * per_msdu).count() > cap) --fit;
    while (fit + 1 < frame.agg_depth && (framing + (fit + 1) * per_msdu).count() <= cap) ++fit;
    out.effective_depth = fit;
    out.capped = true;
  }

  out.ovh1 = overhead_contention(profile, backoff);
  out.ovh2 = overhead_fixed(profile, mcs);
  out.payload = payload_airtime(frame.with_depth(out.effective_depth), mcs);
  out.total = out.ovh1 + out.ovh2 + out.payload;
  return out;
}

}  // namespace amsdu
