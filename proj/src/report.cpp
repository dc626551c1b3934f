#include "amsdu/report.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

namespace amsdu::report {

namespace {

using nlohmann::json;

json number_or_null(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

json axes_json(const SweepSpec& axes) {
  return {
      {"mcs_indices", axes.mcs_indices},
      {"depths", axes.depths},
      {"msdu_sizes", axes.msdu_sizes},
      {"error_rates", axes.error_rates},
      {"channel_kind", axes.channel_kind == ChannelKind::noise ? "noise" : "interference"},
      {"subframe_overhead", axes.subframe_overhead},
      {"include_ack", axes.include_ack},
  };
}

json outcome_json(const PolicyOutcome& o) {
  return {
      {"policy", to_string(o.policy)},
      {"chosen_mcs", o.chosen_mcs},
      {"chosen_depth", o.chosen_depth},
      {"effective_depth", o.effective_depth},
      {"achieved_per", number_or_null(o.achieved_per)},
      {"airtime_us", number_or_null(o.airtime.count())},
      {"airtime_per_msdu_us", number_or_null(o.airtime_per_msdu.count())},
      {"expected_retry_airtime_us", number_or_null(o.expected_retry_airtime().count())},
      {"feasible", o.feasible},
      {"frame_valid", o.frame_valid},
  };
}

std::string outcome_csv(const PolicyOutcome& o) {
  return fmt::format("{},{},{},{},{},{},{}", o.chosen_mcs, o.chosen_depth, o.effective_depth,
                     number(o.achieved_per), number(o.airtime.count()),
                     number(o.airtime_per_msdu.count()), o.feasible ? 1 : 0);
}

}  // namespace

std::string number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{}", value);
}

std::string axis_label(double value) { return fmt::format("{:g}", value); }

std::string per_csv(const GridResult<PerCell>& grid, double error_rate, std::uint32_t msdu_size,
                    const std::vector<double>& monte_carlo) {
  std::string out = monte_carlo.empty() ? "mcs_index,depth,per,status\n"
                                        : "mcs_index,depth,per,status,per_mc\n";
  std::size_t slice = 0;
  for (const auto& c : grid.cells) {
    if (c.error_rate != error_rate || c.msdu_size != msdu_size) continue;
    out += fmt::format("{},{},{},{}", c.mcs_index, c.depth, number(c.per), to_string(c.status));
    if (!monte_carlo.empty()) {
      if (slice >= monte_carlo.size())
        throw std::invalid_argument("Monte-Carlo column shorter than the slice");
      out += "," + number(monte_carlo[slice]);
    }
    out += '\n';
    ++slice;
  }
  if (!monte_carlo.empty() && slice != monte_carlo.size())
    throw std::invalid_argument("Monte-Carlo column longer than the slice");
  return out;
}

std::string airtime_csv(const GridResult<AirtimeCell>& grid, std::uint32_t msdu_size) {
  std::string out =
      "mcs_index,depth,ovh1_us,ovh2_us,payload_us,total_us,capped,effective_depth,status\n";
  for (const auto& c : grid.cells) {
    if (c.msdu_size != msdu_size) continue;
    if (c.airtime) {
      const auto& a = *c.airtime;
      out += fmt::format("{},{},{},{},{},{},{},{},{}\n", c.mcs_index, c.depth,
                         number(a.ovh1.count()), number(a.ovh2.count()),
                         number(a.payload.count()), number(a.total.count()), a.capped ? 1 : 0,
                         a.effective_depth, to_string(c.status));
    } else {
      out += fmt::format("{},{},nan,nan,nan,nan,0,0,{}\n", c.mcs_index, c.depth,
                         to_string(c.status));
    }
  }
  return out;
}

std::string basic_rate_csv(const std::vector<BasicRateRow>& rows) {
  std::string out = "basic_rate_mbps,mcs_index,ovh2_us,payload_us\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{}\n", number(r.basic_rate_mbps), r.mcs_index,
                       number(r.ovh2.count()), number(r.payload.count()));
  return out;
}

std::string policy_csv(const PolicyGrid& grid, bool retry_airtime) {
  std::string out =
      "error_rate,target_per,msdu_size,"
      "rc_mcs,rc_depth,rc_effective_depth,rc_per,rc_airtime_us,rc_airtime_per_msdu_us,rc_feasible,"
      "ad_mcs,ad_depth,ad_effective_depth,ad_per,ad_airtime_us,ad_airtime_per_msdu_us,ad_feasible,"
      "airtime_ratio,verdict";
  out += retry_airtime ? ",rc_retry_airtime_us,ad_retry_airtime_us\n" : "\n";
  for (const auto& c : grid.cells) {
    const auto& cmp = c.comparison;
    out += fmt::format("{},{},{},{},{},{},{}", number(c.error_rate), number(c.target_per),
                       c.msdu_size, outcome_csv(cmp.rate_control), outcome_csv(cmp.adaptive),
                       cmp.airtime_ratio ? number(*cmp.airtime_ratio) : "nan",
                       to_string(cmp.verdict));
    if (retry_airtime)
      out += fmt::format(",{},{}", number(cmp.rate_control.expected_retry_airtime().count()),
                         number(cmp.adaptive.expected_retry_airtime().count()));
    out += '\n';
  }
  return out;
}

json to_json(const AirtimeBreakdown& a) {
  return {
      {"ovh1_us", a.ovh1.count()},       {"ovh2_us", a.ovh2.count()},
      {"payload_us", a.payload.count()}, {"total_us", a.total.count()},
      {"capped", a.capped},              {"effective_depth", a.effective_depth},
  };
}

json to_json(const GridResult<PerCell>& grid) {
  json cells = json::array();
  for (const auto& c : grid.cells) {
    cells.push_back({
        {"error_rate", c.error_rate},
        {"msdu_size", c.msdu_size},
        {"mcs_index", c.mcs_index},
        {"depth", c.depth},
        {"status", to_string(c.status)},
        {"per", number_or_null(c.per)},
        {"trials", c.length.value},
        {"airtime", c.airtime ? to_json(*c.airtime) : json(nullptr)},
    });
  }
  return {{"kind", "per_sweep"},
          {"axes", axes_json(grid.axes)},
          {"profile_fingerprint", grid.profile_fingerprint},
          {"cells", std::move(cells)}};
}

json to_json(const GridResult<AirtimeCell>& grid) {
  json cells = json::array();
  for (const auto& c : grid.cells) {
    cells.push_back({
        {"msdu_size", c.msdu_size},
        {"mcs_index", c.mcs_index},
        {"depth", c.depth},
        {"status", to_string(c.status)},
        {"airtime", c.airtime ? to_json(*c.airtime) : json(nullptr)},
    });
  }
  return {{"kind", "airtime_sweep"},
          {"axes", axes_json(grid.axes)},
          {"profile_fingerprint", grid.profile_fingerprint},
          {"cells", std::move(cells)}};
}

json to_json(const PolicyGrid& grid) {
  json cells = json::array();
  for (const auto& c : grid.cells) {
    const auto& cmp = c.comparison;
    cells.push_back({
        {"error_rate", c.error_rate},
        {"target_per", c.target_per},
        {"msdu_size", c.msdu_size},
        {"rate_control", outcome_json(cmp.rate_control)},
        {"adaptive_depth", outcome_json(cmp.adaptive)},
        {"airtime_ratio", cmp.airtime_ratio ? json(*cmp.airtime_ratio) : json(nullptr)},
        {"verdict", to_string(cmp.verdict)},
    });
  }
  const auto& o = grid.options;
  return {{"kind", "policy_compare"},
          {"axes", axes_json(grid.axes)},
          {"targets", o.targets},
          {"start_mcs", o.start_mcs ? json(*o.start_mcs) : json(nullptr)},
          {"static_depth", o.static_depth},
          {"factor", o.factor},
          {"profile_fingerprint", grid.profile_fingerprint},
          {"cells", std::move(cells)}};
}

std::string policy_summary(const PolicyGrid& grid) {
  const auto counts = count_verdicts(grid);
  const auto n = counts.total();
  auto share = [n](std::size_t k) { return n == 0 ? 0.0 : 100.0 * k / n; };
  std::size_t rc_feasible = 0;
  for (const auto& c : grid.cells) rc_feasible += c.comparison.rate_control.feasible ? 1 : 0;

  std::string out;
  out += fmt::format(
      "policy comparison over {} cells (equivalence factor {}):\n"
      "  equivalent {:>4} ({:5.1f}%)\n"
      "  better     {:>4} ({:5.1f}%)\n"
      "  worse      {:>4} ({:5.1f}%)\n"
      "  infeasible {:>4} ({:5.1f}%)\n",
      n, grid.options.factor, counts.equivalent, share(counts.equivalent), counts.better,
      share(counts.better), counts.worse, share(counts.worse), counts.infeasible,
      share(counts.infeasible));
  out += fmt::format(
      "rate control meets the target at <= {} x adaptive per-MSDU airtime in {} of {} cells "
      "({:.1f}%); it meets the target at all in {} cells\n",
      grid.options.factor, counts.equivalent + counts.better, n,
      share(counts.equivalent + counts.better), rc_feasible);
  return out;
}

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const RunManifest& m) {
  json files = json::array();
  for (const auto& f : m.output_files) files.push_back(f.string());
  return {{"command_line", m.command_line},
          {"profile_fingerprint", m.profile_fingerprint},
          {"tool_version", m.tool_version},
          {"timestamp_utc", m.timestamp_utc},
          {"output_files", std::move(files)}};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  out << contents;
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace amsdu::report
