#pragma once

#include "amsdu/sweep_engine.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace amsdu::report {

/// Shortest round-trip decimal for a double; "nan"/"inf" for non-finite.
std::string number(double value);

/// Compact, filename-safe rendering of an axis value ("0.001", "1e-05").
std::string axis_label(double value);

// CSV headers (stable):
//   per:        mcs_index,depth,per,status[,per_mc]
//   airtime:    mcs_index,depth,ovh1_us,ovh2_us,payload_us,total_us,capped,effective_depth,status
//   basic rate: basic_rate_mbps,mcs_index,ovh2_us,payload_us
//   policy:     error_rate,target_per,msdu_size,rc_mcs,rc_depth,rc_effective_depth,rc_per,
//               rc_airtime_us,rc_airtime_per_msdu_us,rc_feasible,ad_mcs,ad_depth,
//               ad_effective_depth,ad_per,ad_airtime_us,ad_airtime_per_msdu_us,ad_feasible,
//               airtime_ratio,verdict[,rc_retry_airtime_us,ad_retry_airtime_us]

/// One rate/msdu slice of a PER grid. `monte_carlo`, when non-empty, holds
/// one simulated failure frequency per cell of the slice.
std::string per_csv(const GridResult<PerCell>& grid, double error_rate, std::uint32_t msdu_size,
                    const std::vector<double>& monte_carlo = {});

std::string airtime_csv(const GridResult<AirtimeCell>& grid, std::uint32_t msdu_size);

std::string basic_rate_csv(const std::vector<BasicRateRow>& rows);

std::string policy_csv(const PolicyGrid& grid, bool retry_airtime = false);

nlohmann::json to_json(const AirtimeBreakdown& breakdown);
nlohmann::json to_json(const GridResult<PerCell>& grid);
nlohmann::json to_json(const GridResult<AirtimeCell>& grid);
nlohmann::json to_json(const PolicyGrid& grid);

/// Human-readable verdict summary for a policy grid.
std::string policy_summary(const PolicyGrid& grid);

struct RunManifest {
  std::string command_line;
  std::string profile_fingerprint;
  std::string tool_version;
  std::string timestamp_utc;  ///< ISO-8601
  std::vector<std::filesystem::path> output_files;
};

std::string utc_timestamp_now();

nlohmann::json to_json(const RunManifest& manifest);

/// Writes `contents` to `path`, replacing it. Throws std::runtime_error on
/// I/O failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace amsdu::report
