#pragma once

#include "amsdu/airtime_model.hpp"
#include "amsdu/error_model.hpp"
#include "amsdu/phy_profile.hpp"
#include "amsdu/policy_engine.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace amsdu {

/// Axes of a sweep. Which axes a given run uses depends on the run.
struct SweepSpec {
  std::vector<std::size_t> mcs_indices;
  std::vector<std::uint32_t> depths;
  std::vector<std::uint32_t> msdu_sizes;
  std::vector<double> error_rates;
  ChannelKind channel_kind = ChannelKind::interference;
  std::uint32_t subframe_overhead = 0;
  bool include_ack = false;

  bool operator==(const SweepSpec&) const = default;
};

/// Depths 1..32, every MCS in the profile, rates {1e-3, 1e-4, 1e-5},
/// interference channel, and the given MSDU sizes.
SweepSpec default_sweep(const PhyProfile& profile, std::vector<std::uint32_t> msdu_sizes);
SweepSpec default_per_sweep(const PhyProfile& profile);      ///< msdu 200 B
SweepSpec default_airtime_sweep(const PhyProfile& profile);  ///< msdu 100/1000/10000 B
SweepSpec default_policy_sweep(const PhyProfile& profile);   ///< msdu 100/200/1000 B

/// Throws std::invalid_argument for empty axes, zero depths/sizes, rates
/// outside [0, 1] or MCS indices not in the profile.
void validate(const SweepSpec& spec, const PhyProfile& profile);

enum class CellStatus { ok, infeasible_frame };
std::string_view to_string(CellStatus status);

struct PerCell {
  double error_rate = 0.0;
  std::uint32_t msdu_size = 0;
  std::size_t mcs_index = 0;
  std::uint32_t depth = 0;
  CellStatus status = CellStatus::ok;
  double per = 0.0;  ///< NaN for infeasible frames
  EffectiveLength length;
  std::optional<AirtimeBreakdown> airtime;
};

struct AirtimeCell {
  std::uint32_t msdu_size = 0;
  std::size_t mcs_index = 0;
  std::uint32_t depth = 0;
  CellStatus status = CellStatus::ok;
  std::optional<AirtimeBreakdown> airtime;
};

struct PolicyCell {
  double error_rate = 0.0;
  double target_per = 0.0;
  std::uint32_t msdu_size = 0;
  PolicyComparison comparison;
};

template <class Cell>
struct GridResult {
  SweepSpec axes;
  std::vector<Cell> cells;
  std::string profile_fingerprint;
};

/// Cells ordered by (error rate, msdu size, mcs, depth), depth fastest.
GridResult<PerCell> run_per_sweep(const SweepSpec& spec, const PhyProfile& profile,
                                  const BackoffModel& backoff);

/// Cells ordered by (msdu size, mcs, depth), depth fastest.
GridResult<AirtimeCell> run_airtime_sweep(const SweepSpec& spec, const PhyProfile& profile,
                                          const BackoffModel& backoff);

struct PolicySweepOptions {
  std::vector<double> targets{0.01, 0.1, 0.5};
  std::optional<std::size_t> start_mcs;  ///< defaults to the highest MCS
  std::uint32_t static_depth = 32;
  double factor = kDefaultEquivalenceFactor;

  bool operator==(const PolicySweepOptions&) const = default;
};

struct PolicyGrid : GridResult<PolicyCell> {
  PolicySweepOptions options;
};

/// Cells ordered by (error rate, target, msdu size), msdu fastest. The depth
/// and MCS axes of `spec` are not used.
PolicyGrid run_policy_sweep(const SweepSpec& spec, const PolicySweepOptions& options,
                            const PhyProfile& profile, const BackoffModel& backoff);

struct BasicRateRow {
  double basic_rate_mbps = 0.0;
  std::size_t mcs_index = 0;
  Micros ovh2{};
  Micros payload{};
};

/// ovh2 and payload time for `frame` across basic rates (outer) and MCS
/// indices (inner).
std::vector<BasicRateRow> run_basic_rate_sweep(const PhyProfile& profile,
                                               const std::vector<double>& basic_rates,
                                               const std::vector<std::size_t>& mcs_indices,
                                               const FrameSpec& frame);

/// Adjacent-cell trend checks on a PER grid: PER non-increasing as the MCS
/// index rises, non-decreasing as depth rises, and strictly so wherever the
/// payload time differs. Only ok cells are compared.
struct TrendReport {
  std::size_t comparisons = 0;
  std::size_t violations = 0;
  std::vector<std::string> details;  ///< first few violations
};
TrendReport check_per_trends(const GridResult<PerCell>& grid);

struct VerdictCounts {
  std::size_t equivalent = 0;
  std::size_t better = 0;
  std::size_t worse = 0;
  std::size_t infeasible = 0;

  std::size_t total() const { return equivalent + better + worse + infeasible; }
};
VerdictCounts count_verdicts(const PolicyGrid& grid);

}  // namespace amsdu
