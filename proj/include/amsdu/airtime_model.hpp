#pragma once

#include "amsdu/phy_profile.hpp"

#include <cstdint>
#include <stdexcept>

namespace amsdu {

/// One AMSDU: agg_depth MSDUs of msdu_size bytes, each optionally carrying
/// subframe_overhead bytes of subframe header/padding.
struct FrameSpec {
  std::uint32_t msdu_size = 0;
  std::uint32_t agg_depth = 1;
  std::uint32_t subframe_overhead = 0;

  std::uint64_t payload_bytes() const {
    return std::uint64_t{agg_depth} * (std::uint64_t{msdu_size} + subframe_overhead);
  }
  FrameSpec with_depth(std::uint32_t depth) const {
    FrameSpec f = *this;
    f.agg_depth = depth;
    return f;
  }

  bool operator==(const FrameSpec&) const = default;
};

/// Throws std::invalid_argument for msdu_size == 0 or agg_depth == 0.
void validate(const FrameSpec& frame);

enum class BackoffMode {
  paper_literal,  ///< backoff_slots x DIFS
  slotted,        ///< DIFS + backoff_slots x slot time
};

struct BackoffModel {
  BackoffMode mode = BackoffMode::paper_literal;
  double backoff_slots = 7.5;  ///< mean of a 16-slot contention window
};

void validate(const BackoffModel& backoff);

struct AirtimeBreakdown {
  Micros ovh1{};     ///< contention
  Micros ovh2{};     ///< PHY header, MAC/LLC headers, ACK, SIFS
  Micros payload{};  ///< payload of effective_depth MSDUs
  Micros total{};
  bool capped = false;
  std::uint32_t effective_depth = 0;
};

/// A single MSDU already exceeds the PPDU duration cap.
class InfeasibleFrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Micros overhead_contention(const PhyProfile& profile, const BackoffModel& backoff);

/// MAC + LLC header time for the given MCS.
Micros header_airtime(const PhyProfile& profile, const McsEntry& mcs);

/// PHY header + ACK at basic rate, MAC/LLC headers, SIFS.
Micros overhead_fixed(const PhyProfile& profile, const McsEntry& mcs);

Micros payload_airtime(const FrameSpec& frame, const McsEntry& mcs);

/// On-air PPDU duration of the frame as given (PHY header, MAC/LLC headers,
/// payload); no capping.
Micros on_air_time(const PhyProfile& profile, const FrameSpec& frame, const McsEntry& mcs);

/**
 * Full airtime of one AMSDU exchange.
 *
 * When the PPDU would run past profile.ppdu_cap the frame is shortened to
 * the largest whole number of MSDUs that fits and the result is flagged
 * capped. Throws InfeasibleFrameError when not even one MSDU fits.
 */
AirtimeBreakdown total_airtime(const PhyProfile& profile, const FrameSpec& frame,
                               const McsEntry& mcs, const BackoffModel& backoff);

}  // namespace amsdu
