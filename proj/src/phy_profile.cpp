#include "amsdu/phy_profile.hpp"

#include <fmt/format.h>
#include <openssl/sha.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace amsdu {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Line {
  std::size_t number;
  std::string_view text;
};

[[noreturn]] void fail(const std::string& field, const Line& line, const std::string& what) {
  throw ProfileError(field, line.number,
                     fmt::format("line {}: {} (in \"{}\")", line.number, what, trim(line.text)));
}

double parse_real(std::string_view value, const std::string& key, const Line& line) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) fail(key, line, fmt::format("'{}' is not a number", value));
  return out;
}

std::uint32_t parse_count(std::string_view value, const std::string& key, const Line& line) {
  std::uint32_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    fail(key, line, fmt::format("'{}' is not a non-negative integer", value));
  return out;
}

bool parse_flag(std::string_view value, const std::string& key, const Line& line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(key, line, fmt::format("'{}' is not a boolean", value));
}

using Setter = std::function<void(PhyProfile&, std::string_view, const std::string&, const Line&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  auto micros = [](Micros PhyProfile::*member) -> Setter {
    return [member](PhyProfile& p, std::string_view v, const std::string& k, const Line& l) {
      p.*member = Micros{parse_real(v, k, l)};
    };
  };
  auto bytes = [](std::uint32_t PhyProfile::*member) -> Setter {
    return [member](PhyProfile& p, std::string_view v, const std::string& k, const Line& l) {
      p.*member = parse_count(v, k, l);
    };
  };
  auto flag = [](bool PhyProfile::*member) -> Setter {
    return [member](PhyProfile& p, std::string_view v, const std::string& k, const Line& l) {
      p.*member = parse_flag(v, k, l);
    };
  };
  static const std::map<std::string, Setter, std::less<>> table{
      {"t_sifs", micros(&PhyProfile::t_sifs)},
      {"t_difs", micros(&PhyProfile::t_difs)},
      {"slot_time", micros(&PhyProfile::slot_time)},
      {"ppdu_cap", micros(&PhyProfile::ppdu_cap)},
      {"ack_size", bytes(&PhyProfile::ack_size)},
      {"phy_header_short", bytes(&PhyProfile::phy_header_short)},
      {"phy_header_long", bytes(&PhyProfile::phy_header_long)},
      {"mac_header", bytes(&PhyProfile::mac_header)},
      {"llc_header", bytes(&PhyProfile::llc_header)},
      {"basic_rate",
       [](PhyProfile& p, std::string_view v, const std::string& k, const Line& l) {
         p.basic_rate_mbps = parse_real(v, k, l);
       }},
      {"use_long_preamble", flag(&PhyProfile::use_long_preamble)},
      {"all_headers_at_basic_rate", flag(&PhyProfile::all_headers_at_basic_rate)},
  };
  return table;
}

void require_positive(double value, const char* field) {
  if (!(value > 0.0))
    throw ProfileError(field, 0, fmt::format("{} must be > 0 (got {})", field, value));
}

}  // namespace

ProfileError::ProfileError(std::string field, std::size_t line, const std::string& message)
    : std::runtime_error(message), field_(std::move(field)), line_(line) {}

std::vector<McsEntry> default_vht_table() {
  // 802.11ac VHT data rates, NSS=1, 20 MHz, 800 ns GI.
  static const double rates[] = {6.5, 13.0, 19.5, 26.0, 39.0, 52.0, 58.5, 65.0, 78.0};
  std::vector<McsEntry> table;
  for (std::size_t i = 0; i < std::size(rates); ++i)
    table.push_back({i, rates[i], fmt::format("VHT-MCS{}", i)});
  return table;
}

const McsEntry& PhyProfile::mcs(std::size_t index) const {
  if (index >= mcs_table.size())
    throw std::out_of_range(
        fmt::format("MCS index {} outside table of {} entries", index, mcs_table.size()));
  return mcs_table[index];
}

void validate(const PhyProfile& p) {
  require_positive(p.t_sifs.count(), "t_sifs");
  require_positive(p.t_difs.count(), "t_difs");
  require_positive(p.slot_time.count(), "slot_time");
  require_positive(p.ack_size, "ack_size");
  require_positive(p.phy_header_short, "phy_header_short");
  require_positive(p.phy_header_long, "phy_header_long");
  require_positive(p.mac_header, "mac_header");
  require_positive(p.llc_header, "llc_header");
  require_positive(p.basic_rate_mbps, "basic_rate");
  require_positive(p.ppdu_cap.count(), "ppdu_cap");

  if (p.mcs_table.empty()) throw ProfileError("mcs_table", 0, "mcs_table must not be empty");
  for (std::size_t i = 0; i < p.mcs_table.size(); ++i) {
    const auto& e = p.mcs_table[i];
    if (e.index != i)
      throw ProfileError("mcs_table", 0,
                         fmt::format("mcs entry at position {} has index {}", i, e.index));
    if (!(e.rate_mbps > 0.0))
      throw ProfileError("mcs_table", 0, fmt::format("mcs.{} rate must be > 0", i));
    if (i > 0 && !(e.rate_mbps > p.mcs_table[i - 1].rate_mbps))
      throw ProfileError("mcs_table", 0,
                         fmt::format("mcs.{} rate {} is not above mcs.{} rate {}", i, e.rate_mbps,
                                     i - 1, p.mcs_table[i - 1].rate_mbps));
  }
}

PhyProfile load_profile(std::string_view source) {
  PhyProfile profile;
  std::set<std::string, std::less<>> seen;
  std::map<std::size_t, McsEntry> mcs_entries;

  std::size_t number = 0;
  while (!source.empty()) {
    const auto eol = source.find('\n');
    const Line line{++number, source.substr(0, eol)};
    source = eol == std::string_view::npos ? std::string_view{} : source.substr(eol + 1);

    auto body = line.text.substr(0, line.text.find('#'));
    body = trim(body);
    if (body.empty()) continue;

    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail("", line, "expected 'key = value'");
    const std::string key{trim(body.substr(0, eq))};
    const auto value = trim(body.substr(eq + 1));
    if (key.empty()) fail("", line, "missing key");
    if (value.empty()) fail(key, line, "missing value");
    if (!seen.insert(key).second) fail(key, line, fmt::format("duplicate key '{}'", key));

    if (key.starts_with("mcs.")) {
      const std::string_view idx_text = std::string_view{key}.substr(4);
      const auto index = parse_count(idx_text, "mcs_table", line);
      const auto space = value.find_first_of(" \t");
      const auto rate = parse_real(value.substr(0, space), "mcs_table", line);
      const std::string label{space == std::string_view::npos ? std::string_view{}
                                                              : trim(value.substr(space))};
      mcs_entries[index] = McsEntry{index, rate, label};
      continue;
    }

    const auto it = setters().find(key);
    if (it == setters().end()) fail(key, line, fmt::format("unknown key '{}'", key));
    it->second(profile, value, key, line);
  }

  if (!mcs_entries.empty()) {
    profile.mcs_table.clear();
    for (const auto& [index, entry] : mcs_entries) {
      if (index != profile.mcs_table.size())
        throw ProfileError("mcs_table", 0,
                           fmt::format("mcs indices must be contiguous from 0; missing mcs.{}",
                                       profile.mcs_table.size()));
      profile.mcs_table.push_back(entry);
    }
  }

  validate(profile);
  return profile;
}

PhyProfile load_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read profile '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return load_profile(text.str());
}

std::string dump_profile(const PhyProfile& p) {
  std::string out;
  auto put = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  out += "# amsdu-model PHY/MAC profile\n";
  put("t_sifs", p.t_sifs.count());
  put("t_difs", p.t_difs.count());
  put("slot_time", p.slot_time.count());
  put("ack_size", p.ack_size);
  put("phy_header_short", p.phy_header_short);
  put("phy_header_long", p.phy_header_long);
  put("mac_header", p.mac_header);
  put("llc_header", p.llc_header);
  put("basic_rate", p.basic_rate_mbps);
  put("ppdu_cap", p.ppdu_cap.count());
  put("use_long_preamble", p.use_long_preamble);
  put("all_headers_at_basic_rate", p.all_headers_at_basic_rate);
  for (const auto& e : p.mcs_table) {
    if (e.label.empty())
      out += fmt::format("mcs.{} = {}\n", e.index, e.rate_mbps);
    else
      out += fmt::format("mcs.{} = {} {}\n", e.index, e.rate_mbps, e.label);
  }
  return out;
}

std::string profile_fingerprint(const PhyProfile& profile) {
  const auto text = dump_profile(profile);
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::string hex;
  for (auto byte : digest) hex += fmt::format("{:02x}", byte);
  return hex;
}

}  // namespace amsdu
