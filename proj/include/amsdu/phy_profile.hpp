#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace amsdu {

/// Airtime unit used throughout the model. Bits divided by Mbps is µs.
using Micros = std::chrono::duration<double, std::micro>;

/// Absolute tolerance for airtime comparisons.
inline constexpr double kTimeTolerance = 1e-9;

struct McsEntry {
  std::size_t index = 0;
  double rate_mbps = 0.0;
  std::string label;

  bool operator==(const McsEntry&) const = default;
};

/// VHT, one spatial stream, 20 MHz, long guard interval (MCS 0-8).
std::vector<McsEntry> default_vht_table();

/**
 * MAC/PHY parameter set used by the airtime and error models.
 *
 * Header and ACK sizes are byte counts. PHY header and ACK bytes are
 * serialized at basic_rate_mbps; MAC and LLC header bytes ride at the data
 * rate of the selected MCS unless all_headers_at_basic_rate is set.
 * Immutable once loaded.
 */
struct PhyProfile {
  Micros t_sifs{10.0};
  Micros t_difs{50.0};
  Micros slot_time{9.0};
  std::uint32_t ack_size = 14;
  std::uint32_t phy_header_short = 120;
  std::uint32_t phy_header_long = 192;
  std::uint32_t mac_header = 34;
  std::uint32_t llc_header = 8;
  double basic_rate_mbps = 6.0;
  std::vector<McsEntry> mcs_table = default_vht_table();
  Micros ppdu_cap{5000.0};
  bool use_long_preamble = true;
  bool all_headers_at_basic_rate = false;

  /// PHY header bytes for the configured preamble.
  std::uint32_t phy_header() const {
    return use_long_preamble ? phy_header_long : phy_header_short;
  }

  /// Throws std::out_of_range for an index outside the table.
  const McsEntry& mcs(std::size_t index) const;
  const McsEntry& highest_mcs() const { return mcs_table.back(); }

  bool operator==(const PhyProfile&) const = default;
};

/// Invalid configuration text or an invariant violation on a named field.
class ProfileError : public std::runtime_error {
 public:
  /// line is 1-based; 0 when the error is not tied to a source line.
  ProfileError(std::string field, std::size_t line, const std::string& message);

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

/// Throws ProfileError naming the first field that breaks an invariant.
void validate(const PhyProfile& profile);

/**
 * Parses flat key-value configuration text.
 *
 * Grammar, one entry per line:
 *
 *     # comment
 *     key = value            # trailing comments allowed
 *     mcs.<index> = <rate_mbps> [label]
 *
 * Omitted keys keep their defaults. Any mcs.<index> line replaces the whole
 * default table; indices must cover 0..n-1 and rates must strictly increase
 * with the index.
 */
PhyProfile load_profile(std::string_view source);

/// Reads and parses a profile file. Throws std::runtime_error if unreadable.
PhyProfile load_profile_file(const std::filesystem::path& path);

/// Canonical configuration text; load_profile(dump_profile(p)) == p.
std::string dump_profile(const PhyProfile& profile);

/// Hex SHA-256 of the canonical dump.
std::string profile_fingerprint(const PhyProfile& profile);

}  // namespace amsdu
