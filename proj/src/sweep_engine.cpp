#include "amsdu/sweep_engine.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numeric>

namespace amsdu {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMaxTrendDetails = 8;

template <class T>
void require_non_empty(const std::vector<T>& axis, const char* name) {
  if (axis.empty()) throw std::invalid_argument(fmt::format("sweep axis '{}' is empty", name));
}

ChannelModel channel_for(const SweepSpec& spec, double rate) {
  auto channel = ChannelModel::of_kind(spec.channel_kind, rate);
  channel.include_ack = spec.channel_kind == ChannelKind::interference && spec.include_ack;
  return channel;
}

FrameSpec frame_for(const SweepSpec& spec, std::uint32_t msdu, std::uint32_t depth) {
  return FrameSpec{msdu, depth, spec.subframe_overhead};
}

}  // namespace

SweepSpec default_sweep(const PhyProfile& profile, std::vector<std::uint32_t> msdu_sizes) {
  SweepSpec spec;
  spec.mcs_indices.resize(profile.mcs_table.size());
  std::iota(spec.mcs_indices.begin(), spec.mcs_indices.end(), std::size_t{0});
  spec.depths.resize(32);
  std::iota(spec.depths.begin(), spec.depths.end(), 1u);
  spec.msdu_sizes = std::move(msdu_sizes);
  spec.error_rates = {1e-3, 1e-4, 1e-5};
  return spec;
}

SweepSpec default_per_sweep(const PhyProfile& profile) { return default_sweep(profile, {200}); }

SweepSpec default_airtime_sweep(const PhyProfile& profile) {
  return default_sweep(profile, {100, 1000, 10000});
}

SweepSpec default_policy_sweep(const PhyProfile& profile) {
  return default_sweep(profile, {100, 200, 1000});
}

void validate(const SweepSpec& spec, const PhyProfile& profile) {
  require_non_empty(spec.mcs_indices, "mcs");
  require_non_empty(spec.depths, "depths");
  require_non_empty(spec.msdu_sizes, "msdu");
  require_non_empty(spec.error_rates, "rates");
  for (auto mcs : spec.mcs_indices)
    if (mcs >= profile.mcs_table.size())
      throw std::invalid_argument(fmt::format("MCS index {} not in the profile table", mcs));
  for (auto depth : spec.depths)
    if (depth == 0) throw std::invalid_argument("depths must be >= 1");
  for (auto msdu : spec.msdu_sizes)
    if (msdu == 0) throw std::invalid_argument("msdu sizes must be > 0");
  for (auto rate : spec.error_rates)
    if (!(rate >= 0.0 && rate <= 1.0))
      throw std::invalid_argument(fmt::format("error rate {} outside [0, 1]", rate));
}

std::string_view to_string(CellStatus status) {
  return status == CellStatus::ok ? "ok" : "infeasible_frame";
}

GridResult<PerCell> run_per_sweep(const SweepSpec& spec, const PhyProfile& profile,
                                  const BackoffModel& backoff) {
  validate(spec, profile);
  GridResult<PerCell> grid{spec, {}, profile_fingerprint(profile)};
  grid.cells.reserve(spec.error_rates.size() * spec.msdu_sizes.size() *
                     spec.mcs_indices.size() * spec.depths.size());

  for (double rate : spec.error_rates) {
    const auto channel = channel_for(spec, rate);
    for (auto msdu : spec.msdu_sizes)
      for (auto mcs : spec.mcs_indices)
        for (auto depth : spec.depths) {
          PerCell cell;
          cell.error_rate = rate;
          cell.msdu_size = msdu;
          cell.mcs_index = mcs;
          cell.depth = depth;
          try {
            const auto tx = evaluate_transmission(profile, frame_for(spec, msdu, depth),
                                                  profile.mcs(mcs), channel, backoff);
            cell.per = tx.per;
            cell.length = tx.length;
            cell.airtime = tx.airtime;
          } catch (const InfeasibleFrameError&) {
            cell.status = CellStatus::infeasible_frame;
            cell.per = kNaN;
          }
          grid.cells.push_back(cell);
        }
  }
  return grid;
}

GridResult<AirtimeCell> run_airtime_sweep(const SweepSpec& spec, const PhyProfile& profile,
                                          const BackoffModel& backoff) {
  validate(spec, profile);
  GridResult<AirtimeCell> grid{spec, {}, profile_fingerprint(profile)};
  grid.cells.reserve(spec.msdu_sizes.size() * spec.mcs_indices.size() * spec.depths.size());

  for (auto msdu : spec.msdu_sizes)
    for (auto mcs : spec.mcs_indices)
      for (auto depth : spec.depths) {
        AirtimeCell cell;
        cell.msdu_size = msdu;
        cell.mcs_index = mcs;
        cell.depth = depth;
        try {
          cell.airtime = total_airtime(profile, frame_for(spec, msdu, depth), profile.mcs(mcs),
                                       backoff);
        } catch (const InfeasibleFrameError&) {
          cell.status = CellStatus::infeasible_frame;
        }
        grid.cells.push_back(cell);
      }
  return grid;
}

PolicyGrid run_policy_sweep(const SweepSpec& spec, const PolicySweepOptions& options,
                            const PhyProfile& profile, const BackoffModel& backoff) {
  validate(spec, profile);
  if (options.targets.empty()) throw std::invalid_argument("policy sweep needs a target PER");

  PolicyGrid grid;
  grid.axes = spec;
  grid.options = options;
  grid.options.start_mcs = options.start_mcs.value_or(profile.highest_mcs().index);
  grid.profile_fingerprint = profile_fingerprint(profile);

  for (double rate : spec.error_rates)
    for (double target : options.targets)
      for (auto msdu : spec.msdu_sizes) {
        PolicyRequest req;
        req.target_per = target;
        req.channel = channel_for(spec, rate);
        req.frame_template = frame_for(spec, msdu, options.static_depth);
        req.start_mcs = *grid.options.start_mcs;
        req.static_depth = options.static_depth;
        grid.cells.push_back(
            {rate, target, msdu, compare_policies(req, profile, backoff, options.factor)});
      }
  return grid;
}

std::vector<BasicRateRow> run_basic_rate_sweep(const PhyProfile& profile,
                                               const std::vector<double>& basic_rates,
                                               const std::vector<std::size_t>& mcs_indices,
                                               const FrameSpec& frame) {
  validate(frame);
  std::vector<BasicRateRow> rows;
  for (double basic : basic_rates) {
    PhyProfile p = profile;
    p.basic_rate_mbps = basic;
    validate(p);
    for (auto mcs : mcs_indices) {
      const auto& entry = p.mcs(mcs);
      rows.push_back({basic, mcs, overhead_fixed(p, entry), payload_airtime(frame, entry)});
    }
  }
  return rows;
}

TrendReport check_per_trends(const GridResult<PerCell>& grid) {
  const auto& axes = grid.axes;
  const std::size_t n_depth = axes.depths.size();
  const std::size_t n_mcs = axes.mcs_indices.size();
  const std::size_t block = n_mcs * n_depth;
  TrendReport report;

  // `lo` is the cell expected to have the lower (or equal) PER.
  auto compare = [&](const PerCell& lo, const PerCell& hi) {
    if (lo.status != CellStatus::ok || hi.status != CellStatus::ok) return;
    ++report.comparisons;
    const bool interior = lo.error_rate > 0.0 && lo.error_rate < 1.0;
    const bool changed =
        axes.channel_kind == ChannelKind::interference
            ? std::abs((lo.airtime->payload - hi.airtime->payload).count()) > kTimeTolerance
            : lo.airtime->effective_depth != hi.airtime->effective_depth;
    const bool ok = (interior && changed) ? lo.per < hi.per : lo.per <= hi.per;
    if (ok) return;
    ++report.violations;
    if (report.details.size() < kMaxTrendDetails)
      report.details.push_back(fmt::format(
          "rate={} msdu={}: PER(mcs {}, depth {}) = {} vs PER(mcs {}, depth {}) = {}",
          lo.error_rate, lo.msdu_size, lo.mcs_index, lo.depth, lo.per, hi.mcs_index, hi.depth,
          hi.per));
  };

  for (std::size_t base = 0; base + block <= grid.cells.size(); base += block) {
    auto at = [&](std::size_t m, std::size_t d) -> const PerCell& {
      return grid.cells[base + m * n_depth + d];
    };
    for (std::size_t m = 0; m < n_mcs; ++m)
      for (std::size_t d = 0; d < n_depth; ++d) {
        if (m + 1 < n_mcs && axes.mcs_indices[m] < axes.mcs_indices[m + 1])
          compare(at(m + 1, d), at(m, d));
        if (d + 1 < n_depth && axes.depths[d] < axes.depths[d + 1])
          compare(at(m, d), at(m, d + 1));
      }
  }
  return report;
}

VerdictCounts count_verdicts(const PolicyGrid& grid) {
  VerdictCounts counts;
  for (const auto& cell : grid.cells) {
    switch (cell.comparison.verdict) {
      case Verdict::equivalent: ++counts.equivalent; break;
      case Verdict::better: ++counts.better; break;
      case Verdict::worse: ++counts.worse; break;
      case Verdict::infeasible: ++counts.infeasible; break;
    }
  }
  return counts;
}

}  // namespace amsdu
