#include "amsdu/phy_profile.hpp"

#include <doctest.h>
#include <fmt/format.h>

#include <random>
#include <string>

using namespace amsdu;

namespace {

// 802.11ac VHT MCS 0-8, NSS=1, 20 MHz, long GI (Mbps), copied from the
// standard's rate tables.
constexpr double kVhtNss1Bw20LongGi[] = {6.5, 13.0, 19.5, 26.0, 39.0, 52.0, 58.5, 65.0, 78.0};

ProfileError expect_profile_error(std::string_view source) {
  try {
    load_profile(source);
  } catch (const ProfileError& e) {
    return e;
  }
  FAIL("expected ProfileError for: " << source);
  return ProfileError("", 0, "");
}

}  // namespace

TEST_CASE("empty source yields the default profile") {
  const auto p = load_profile("");
  CHECK(p.t_sifs.count() == 10.0);
  CHECK(p.t_difs.count() == 50.0);
  CHECK(p.ack_size == 14);
  CHECK(p.phy_header_short == 120);
  CHECK(p.phy_header_long == 192);
  CHECK(p.mac_header == 34);

  CHECK(p.llc_header == 8);
  CHECK(p.slot_time.count() == 9.0);
  CHECK(p.basic_rate_mbps == 6.0);
  CHECK(p.ppdu_cap.count() == 5000.0);
  CHECK(p.use_long_preamble);
  CHECK_FALSE(p.all_headers_at_basic_rate);
  CHECK(p.phy_header() == 192);
  CHECK(p == PhyProfile{});
}

TEST_CASE("default VHT table matches the frozen fixture") {
  const auto table = default_vht_table();
  REQUIRE(table.size() == std::size(kVhtNss1Bw20LongGi));
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(table[i].index == i);
    CHECK(table[i].rate_mbps == kVhtNss1Bw20LongGi[i]);
    if (i > 0) CHECK(table[i].rate_mbps > table[i - 1].rate_mbps);
  }
  CHECK(table.front().rate_mbps == doctest::Approx(6.5));
  CHECK(table.front().label == "VHT-MCS0");
}

TEST_CASE("single-field overrides") {
  SUBCASE("basic_rate") {
    const auto p = load_profile("basic_rate = 24\n");
    PhyProfile expected;
    expected.basic_rate_mbps = 24.0;
    CHECK(p == expected);
  }
  SUBCASE("short preamble") {
    const auto p = load_profile("use_long_preamble = false");
    CHECK(p.phy_header() == 120);
  }
  SUBCASE("comments and whitespace") {
    const auto p = load_profile("# header\n\n   t_difs=34   # DIFS for 5 GHz\n\t\n");
    CHECK(p.t_difs.count() == 34.0);
  }
}

TEST_CASE("invariant violations name the field") {
  CHECK(expect_profile_error("t_sifs = 0").field() == "t_sifs");
  CHECK(expect_profile_error("basic_rate = -6").field() == "basic_rate");
  CHECK(expect_profile_error("ppdu_cap = 0").field() == "ppdu_cap");
  CHECK(expect_profile_error("mac_header = 0").field() == "mac_header");
}

TEST_CASE("parse failures carry line context") {
  const auto missing_eq = expect_profile_error("t_sifs = 10\n# ok\nt_difs 50\n");
  CHECK(missing_eq.line() == 3);
  CHECK(std::string(missing_eq.what()).find("line 3") != std::string::npos);
  CHECK(std::string(missing_eq.what()).find("t_difs 50") != std::string::npos);

  const auto unknown = expect_profile_error("t_eifs = 94");
  CHECK(unknown.line() == 1);
  CHECK(unknown.field() == "t_eifs");

  CHECK(expect_profile_error("t_sifs = ten").field() == "t_sifs");
  CHECK(expect_profile_error("ack_size = 14.5").field() == "ack_size");
  CHECK(expect_profile_error("use_long_preamble = maybe").field() == "use_long_preamble");
  CHECK(expect_profile_error("t_sifs = 10\nt_sifs = 16").line() == 2);
  CHECK(expect_profile_error("slot_time =").field() == "slot_time");
}

TEST_CASE("mcs table override") {
  const auto p = load_profile("mcs.0 = 6 OFDM-6\nmcs.1 = 12 OFDM 12 Mbps\nmcs.2 = 54\n");
  REQUIRE(p.mcs_table.size() == 3);
  CHECK(p.mcs_table[1].label == "OFDM 12 Mbps");
  CHECK(p.mcs_table[2].label.empty());
  CHECK(p.highest_mcs().rate_mbps == 54.0);
  CHECK_THROWS_AS(p.mcs(3), std::out_of_range);

  SUBCASE("non-increasing rates are rejected, not reordered") {
    CHECK(expect_profile_error("mcs.0 = 12\nmcs.1 = 6").field() == "mcs_table");
    CHECK(expect_profile_error("mcs.0 = 12\nmcs.1 = 12").field() == "mcs_table");
  }
  SUBCASE("index gaps are rejected") {
    CHECK(expect_profile_error("mcs.0 = 6\nmcs.2 = 12").field() == "mcs_table");
  }
  SUBCASE("zero rate") { CHECK(expect_profile_error("mcs.0 = 0").field() == "mcs_table"); }
}

TEST_CASE("dump/load round trip on random profiles") {
  std::mt19937_64 rng(20170706);
  std::uniform_real_distribution<double> time(0.1, 200.0);
  std::uniform_int_distribution<std::uint32_t> bytes(1, 400);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::size_t> table_size(1, 12);

  for (int iter = 0; iter < 200; ++iter) {
    PhyProfile p;
    p.t_sifs = Micros{time(rng)};
    p.t_difs = Micros{time(rng)};
    p.slot_time = Micros{time(rng)};
    p.ack_size = bytes(rng);
    p.phy_header_short = bytes(rng);
    p.phy_header_long = bytes(rng);
    p.mac_header = bytes(rng);
    p.llc_header = bytes(rng);
    p.basic_rate_mbps = time(rng);
    p.ppdu_cap = Micros{time(rng) * 100.0};
    p.use_long_preamble = coin(rng) == 1;
    p.all_headers_at_basic_rate = coin(rng) == 1;
    p.mcs_table.clear();
    double rate = 0.0;
    const auto n = table_size(rng);
    for (std::size_t i = 0; i < n; ++i) {
      rate += time(rng) / 7.0;
      p.mcs_table.push_back({i, rate, coin(rng) ? fmt::format("M {}", i) : std::string{}});
    }

    const auto text = dump_profile(p);
    const auto back = load_profile(text);
    REQUIRE_MESSAGE(back == p, text);
    CHECK(profile_fingerprint(back) == profile_fingerprint(p));
  }
}

TEST_CASE("fingerprint tracks content") {
  const PhyProfile a;
  PhyProfile b;
  CHECK(profile_fingerprint(a) == profile_fingerprint(b));
  CHECK(profile_fingerprint(a).size() == 64);
  b.llc_header = 6;
  CHECK(profile_fingerprint(a) != profile_fingerprint(b));
}

TEST_CASE("unreadable profile file is an I/O error, not a profile error") {
  try {
    load_profile_file("/nonexistent/profile.conf");
    FAIL("expected an exception");
  } catch (const ProfileError&) {
    FAIL("wrong error kind");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("cannot read") != std::string::npos);
  }
}
