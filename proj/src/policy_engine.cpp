#include "amsdu/policy_engine.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace amsdu {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

PolicyOutcome evaluate(Policy policy, const PolicyRequest& req, const PhyProfile& profile,
                       const BackoffModel& backoff, std::size_t mcs, std::uint32_t depth) {
  PolicyOutcome out;
  out.policy = policy;
  out.chosen_mcs = mcs;
  out.chosen_depth = depth;
  try {
    const auto tx = evaluate_transmission(profile, req.frame_template.with_depth(depth),
                                          profile.mcs(mcs), req.channel, backoff);
    out.effective_depth = tx.airtime.effective_depth;
    out.achieved_per = tx.per;
    out.airtime = tx.airtime.total;
    out.airtime_per_msdu = tx.airtime.total / static_cast<double>(tx.airtime.effective_depth);
    out.feasible = tx.per <= req.target_per;
  } catch (const InfeasibleFrameError&) {
    out.frame_valid = false;
    out.achieved_per = kNaN;
    out.airtime = Micros{kNaN};
    out.airtime_per_msdu = Micros{kNaN};
  }
  return out;
}

}  // namespace

void validate(const PolicyRequest& req, const PhyProfile& profile) {
  if (!(req.target_per > 0.0 && req.target_per < 1.0))
    throw std::invalid_argument(fmt::format("target_per {} outside (0, 1)", req.target_per));
  if (req.static_depth == 0) throw std::invalid_argument("static_depth must be >= 1");
  validate(req.frame_template);
  validate(req.channel);
  if (req.start_mcs >= profile.mcs_table.size())
    throw std::invalid_argument(fmt::format("start_mcs {} outside table of {} entries",
                                            req.start_mcs, profile.mcs_table.size()));
}

std::string_view to_string(Policy policy) {
  return policy == Policy::rate_control ? "rate-control" : "adaptive-depth";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::better: return "better";
    case Verdict::worse: return "worse";
    case Verdict::infeasible: return "infeasible";
  }
  return "?";
}

Verdict classify_ratio(double ratio, double factor) {
  if (ratio > factor) return Verdict::worse;
  if (ratio < 1.0 / factor) return Verdict::better;
  return Verdict::equivalent;
}

Micros PolicyOutcome::expected_retry_airtime() const {
  if (!frame_valid || achieved_per >= 1.0) return Micros{std::numeric_limits<double>::infinity()};
  return airtime / (1.0 - achieved_per);
}

PolicyOutcome rate_control_select(const PolicyRequest& req, const PhyProfile& profile,
                                  const BackoffModel& backoff) {
  validate(req, profile);
  for (std::size_t mcs = req.start_mcs + 1; mcs-- > 0;) {
    auto out = evaluate(Policy::rate_control, req, profile, backoff, mcs, req.static_depth);
    if (out.feasible) return out;
  }
  return evaluate(Policy::rate_control, req, profile, backoff, 0, req.static_depth);
}

PolicyOutcome adaptive_depth_select(const PolicyRequest& req, const PhyProfile& profile,
                                    const BackoffModel& backoff) {
  validate(req, profile);
  for (std::uint32_t depth = req.frame_template.agg_depth; depth >= 1; --depth) {
    auto out = evaluate(Policy::adaptive_depth, req, profile, backoff, req.start_mcs, depth);
    if (out.feasible) return out;
  }
  return evaluate(Policy::adaptive_depth, req, profile, backoff, req.start_mcs, 1);
}

PolicyComparison compare_policies(const PolicyRequest& req, const PhyProfile& profile,
                                  const BackoffModel& backoff, double factor) {
  if (!(factor >= 1.0))
    throw std::invalid_argument(fmt::format("equivalence factor {} must be >= 1", factor));

  PolicyComparison cmp;
  cmp.factor = factor;
  cmp.rate_control = rate_control_select(req, profile, backoff);
  cmp.adaptive = adaptive_depth_select(req, profile, backoff);

  const bool rc = cmp.rate_control.feasible;
  const bool ad = cmp.adaptive.feasible;
  if (!rc && !ad) {
    cmp.verdict = Verdict::infeasible;
  } else if (!rc) {
    cmp.verdict = Verdict::worse;
  } else if (!ad) {
    cmp.verdict = Verdict::better;
  } else {
    const double ratio = cmp.rate_control.airtime_per_msdu / cmp.adaptive.airtime_per_msdu;
    cmp.airtime_ratio = ratio;
    cmp.verdict = classify_ratio(ratio, factor);
  }
  return cmp;
}

}  // namespace amsdu
