#pragma once

#include "amsdu/airtime_model.hpp"
#include "amsdu/error_model.hpp"
#include "amsdu/phy_profile.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace amsdu {

/// Two ways to bring a link under a PER target:
///  - rate control keeps the AMSDU at static_depth and lowers the MCS from
///    start_mcs;
///  - adaptive depth keeps start_mcs and shrinks the AMSDU from
///    frame_template.agg_depth.
struct PolicyRequest {
  double target_per = 0.1;
  ChannelModel channel;
  FrameSpec frame_template;
  std::size_t start_mcs = 0;
  std::uint32_t static_depth = 1;
};

/// Throws std::invalid_argument on a target outside (0, 1), a zero depth,
/// an invalid channel or a start_mcs outside the profile table.
void validate(const PolicyRequest& request, const PhyProfile& profile);

enum class Policy { rate_control, adaptive_depth };
std::string_view to_string(Policy policy);

struct PolicyOutcome {
  Policy policy = Policy::rate_control;
  std::size_t chosen_mcs = 0;
  std::uint32_t chosen_depth = 0;
  std::uint32_t effective_depth = 0;  ///< after the PPDU cap
  double achieved_per = 0.0;
  Micros airtime{};
  Micros airtime_per_msdu{};
  bool feasible = false;
  /// False when the chosen configuration cannot fit one MSDU under the PPDU
  /// cap; PER and airtime are then NaN.
  bool frame_valid = true;

  /// Airtime including expected first-attempt failures, airtime / (1 - PER).
  Micros expected_retry_airtime() const;
};

PolicyOutcome rate_control_select(const PolicyRequest& request, const PhyProfile& profile,
                                  const BackoffModel& backoff);

PolicyOutcome adaptive_depth_select(const PolicyRequest& request, const PhyProfile& profile,
                                    const BackoffModel& backoff);

enum class Verdict { equivalent, better, worse, infeasible };
std::string_view to_string(Verdict verdict);

inline constexpr double kDefaultEquivalenceFactor = 1.25;

/// Verdict for a rate-control / adaptive per-MSDU airtime ratio.
Verdict classify_ratio(double ratio, double factor = kDefaultEquivalenceFactor);

struct PolicyComparison {
  PolicyOutcome rate_control;
  PolicyOutcome adaptive;
  /// rate-control / adaptive airtime per MSDU; empty unless both feasible.
  std::optional<double> airtime_ratio;
  Verdict verdict = Verdict::infeasible;
  double factor = kDefaultEquivalenceFactor;
};

/**
 * Runs both selectors on the same request.
 *
 * Verdict (rate control's point of view): "equivalent" when the per-MSDU
 * airtime ratio lies in [1/factor, factor], "worse" above, "better" below.
 * If only one policy reaches the target the feasible one wins; if neither
 * does the verdict is "infeasible".
 */
PolicyComparison compare_policies(const PolicyRequest& request, const PhyProfile& profile,
                                  const BackoffModel& backoff,
                                  double factor = kDefaultEquivalenceFactor);

}  // namespace amsdu
