// amsdu-model: PER / airtime sweeps and static-vs-adaptive AMSDU policy
// comparison.
//
//   amsdu-model per-sweep      [--rates 1e-3,1e-4,1e-5] [--msdu 200] [--depths 1-32] ...
//   amsdu-model airtime-sweep  [--msdu 100,1000,10000] [--basic-rate 6,12,24] ...
//   amsdu-model policy-compare [--target 0.01,0.1,0.5] [--factor 1.25] [--mg1 l,l2,mu,s] ...
//   amsdu-model profile-dump   [--profile file] [--out file]
//   amsdu-model mg1            --lambda 50 --lambda2 60 --mu 100 --sigma 1e-4
//
// Exit codes: 0 success (infeasible cells are flagged, not fatal), 1 I/O
// failure, 2 usage or invalid input.

#include "amsdu/oracle/monte_carlo.hpp"
#include "amsdu/phy_profile.hpp"
#include "amsdu/queue_cost.hpp"
#include "amsdu/report.hpp"
#include "amsdu/sweep_engine.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace amsdu;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CommonFlags {
  std::string profile_path;
  std::string backoff_mode = "paper-literal";
  double backoff_slots = 7.5;
  std::string out_dir = "out";
  std::string channel = "interference";
  std::vector<double> rates;
  std::vector<std::uint32_t> msdu;
  std::vector<std::string> depths;
  std::vector<std::size_t> mcs;
  std::uint32_t subframe_overhead = 0;
};

void add_common(CLI::App& cmd, CommonFlags& f, bool sweep_axes) {
  cmd.add_option("--profile", f.profile_path, "PHY/MAC profile file (key = value)");
  cmd.add_option("--backoff-mode", f.backoff_mode, "Contention model")
      ->check(CLI::IsMember({"paper-literal", "slotted"}))
      ->capture_default_str();
  cmd.add_option("--backoff-slots", f.backoff_slots, "Expected backoff slots")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
  if (!sweep_axes) return;
  cmd.add_option("--rates", f.rates, "Channel error rates (comma separated)")->delimiter(',');
  cmd.add_option("--msdu", f.msdu, "MSDU sizes in bytes")->delimiter(',');
  cmd.add_option("--depths", f.depths, "Aggregation depths, e.g. 1-32 or 1,2,4")->delimiter(',');
  cmd.add_option("--mcs", f.mcs, "MCS indices (default: whole table)")->delimiter(',');
  cmd.add_option("--channel", f.channel, "Error process")
      ->check(CLI::IsMember({"noise", "interference"}))
      ->capture_default_str();
  cmd.add_option("--subframe-overhead", f.subframe_overhead, "Bytes added per MSDU")
      ->capture_default_str();
}

std::uint32_t parse_depth(const std::string& text) {
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
    throw UsageError(fmt::format("invalid depth '{}'", text));
  return value;
}

std::vector<std::uint32_t> parse_depths(const std::vector<std::string>& tokens) {
  std::vector<std::uint32_t> out;
  for (const auto& token : tokens) {
    const auto dash = token.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_depth(token));
      continue;
    }
    const auto lo = parse_depth(token.substr(0, dash));
    const auto hi = parse_depth(token.substr(dash + 1));
    if (hi < lo) throw UsageError(fmt::format("empty depth range '{}'", token));
    for (auto d = lo; d <= hi; ++d) out.push_back(d);
  }
  return out;
}

PhyProfile load(const CommonFlags& f) {
  return f.profile_path.empty() ? PhyProfile{} : load_profile_file(f.profile_path);
}

BackoffModel backoff_of(const CommonFlags& f) {
  return {f.backoff_mode == "slotted" ? BackoffMode::slotted : BackoffMode::paper_literal,
          f.backoff_slots};
}

SweepSpec apply_axes(SweepSpec spec, const CommonFlags& f) {
  if (!f.rates.empty()) spec.error_rates = f.rates;
  if (!f.msdu.empty()) spec.msdu_sizes = f.msdu;
  if (!f.depths.empty()) spec.depths = parse_depths(f.depths);
  if (!f.mcs.empty()) spec.mcs_indices = f.mcs;
  spec.channel_kind = f.channel == "noise" ? ChannelKind::noise : ChannelKind::interference;
  spec.subframe_overhead = f.subframe_overhead;
  return spec;
}

class Outputs {
 public:
  Outputs(const std::string& dir, std::string command_line, const PhyProfile& profile)
      : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
      throw std::runtime_error(
          fmt::format("cannot create output directory '{}': {}", dir, ec.message()));
    manifest_.command_line = std::move(command_line);
    manifest_.profile_fingerprint = profile_fingerprint(profile);
    manifest_.tool_version = AMSDU_VERSION;
  }

  void write(const std::string& name, const std::string& contents) {
    const auto path = dir_ / name;
    report::write_file(path, contents);
    manifest_.output_files.push_back(path);
    std::cout << "wrote " << path.string() << '\n';
  }

  void finish() {
    manifest_.timestamp_utc = report::utc_timestamp_now();
    report::write_file(dir_ / "manifest.json", report::to_json(manifest_).dump(2) + "\n");
  }

 private:
  fs::path dir_;
  report::RunManifest manifest_;
};

int per_sweep(const CommonFlags& f, std::uint64_t mc_frames, std::uint64_t seed,
              bool include_ack, const std::string& cmdline) {
  const auto profile = load(f);
  auto spec = apply_axes(default_per_sweep(profile), f);
  spec.include_ack = include_ack;
  const auto grid = run_per_sweep(spec, profile, backoff_of(f));

  Outputs out(f.out_dir, cmdline, profile);
  std::size_t ordinal = 0;
  for (double rate : spec.error_rates) {
    for (auto msdu : spec.msdu_sizes) {
      std::vector<double> mc;
      if (mc_frames > 0) {
        for (const auto& c : grid.cells) {
          if (c.error_rate != rate || c.msdu_size != msdu) continue;
          const auto cell_seed = seed + ordinal++;
          mc.push_back(c.status == CellStatus::ok
                           ? oracle::simulate_frame_failures(rate, c.length.value, mc_frames,
                                                             cell_seed)
                                 .frequency()
                           : std::numeric_limits<double>::quiet_NaN());
        }
      }
      out.write(fmt::format("per_rate-{}_msdu-{}.csv", report::axis_label(rate), msdu),
                report::per_csv(grid, rate, msdu, mc));
    }
  }
  out.write("per_sweep.json", report::to_json(grid).dump(2) + "\n");
  out.finish();

  std::size_t infeasible = 0;
  for (const auto& c : grid.cells) infeasible += c.status == CellStatus::ok ? 0 : 1;
  const auto trends = check_per_trends(grid);
  fmt::print("{} cells, {} infeasible frames\n", grid.cells.size(), infeasible);
  fmt::print("trend check: {} adjacent comparisons, {} violations "
             "(PER non-increasing in MCS, non-decreasing in depth)\n",
             trends.comparisons, trends.violations);
  for (const auto& d : trends.details) fmt::print("  violation: {}\n", d);
  return 0;
}

int airtime_sweep(const CommonFlags& f, const std::vector<double>& basic_rates,
                  const std::string& cmdline) {
  const auto profile = load(f);
  const auto spec = apply_axes(default_airtime_sweep(profile), f);
  const auto grid = run_airtime_sweep(spec, profile, backoff_of(f));

  Outputs out(f.out_dir, cmdline, profile);
  for (auto msdu : spec.msdu_sizes)
    out.write(fmt::format("airtime_msdu-{}.csv", msdu), report::airtime_csv(grid, msdu));
  out.write("airtime_sweep.json", report::to_json(grid).dump(2) + "\n");
  if (!basic_rates.empty()) {
    const FrameSpec frame{spec.msdu_sizes.front(), spec.depths.front(), spec.subframe_overhead};
    out.write("basic_rate_sweep.csv",
              report::basic_rate_csv(
                  run_basic_rate_sweep(profile, basic_rates, spec.mcs_indices, frame)));
  }
  out.finish();

  for (auto msdu : spec.msdu_sizes) {
    std::size_t capped = 0, infeasible = 0;
    for (const auto& c : grid.cells) {
      if (c.msdu_size != msdu) continue;
      if (!c.airtime) ++infeasible;
      else if (c.airtime->capped) ++capped;
    }
    fmt::print("msdu {:>6} B: {} capped cells, {} infeasible frames\n", msdu, capped,
               infeasible);
  }
  return 0;
}

int policy_compare(const CommonFlags& f, const PolicySweepOptions& options, bool retry_airtime,
                   const std::vector<double>& mg1, const std::string& cmdline) {
  const auto profile = load(f);
  const auto spec = apply_axes(default_policy_sweep(profile), f);

  std::optional<Mg1Params> mg1_params;
  if (!mg1.empty()) {
    if (mg1.size() != 4) throw UsageError("--mg1 expects lambda,lambda2,mu,sigma");
    mg1_params = Mg1Params{mg1[0], mg1[1], mg1[2], mg1[3]};
  }

  const auto grid = run_policy_sweep(spec, options, profile, backoff_of(f));
  auto summary = report::policy_summary(grid);
  if (mg1_params)
    summary += fmt::format(
        "M/G/1 retry penalty (lambda={} lambda2={} mu={} sigma={}): {} packets\n",
        mg1_params->lambda_base, mg1_params->lambda_retry, mg1_params->mu, mg1_params->sigma,
        report::number(retry_penalty(*mg1_params)));

  Outputs out(f.out_dir, cmdline, profile);
  out.write("policy_compare.csv", report::policy_csv(grid, retry_airtime));
  out.write("policy_compare.json", report::to_json(grid).dump(2) + "\n");
  out.write("policy_summary.txt", summary);
  out.finish();
  std::cout << summary;
  return 0;
}

int profile_dump(const CommonFlags& f, const std::string& out_file) {
  const auto text = dump_profile(load(f));
  if (out_file.empty())
    std::cout << text;
  else
    report::write_file(out_file, text);
  return 0;
}

int mg1_cmd(const Mg1Params& p) {
  fmt::print("direct form  : term(lambda)={} term(lambda2)={} penalty={} packets\n",
             report::number(mg1_term(p.lambda_base, p.mu, p.sigma)),
             report::number(mg1_term(p.lambda_retry, p.mu, p.sigma)),
             report::number(retry_penalty(p)));
  fmt::print("textbook P-K : Lq(lambda)={} Lq(lambda2)={} penalty={} packets "
             "(sigma read as service-time variance)\n",
             report::number(pk_mean_queue_length(p.lambda_base, p.mu, p.sigma)),
             report::number(pk_mean_queue_length(p.lambda_retry, p.mu, p.sigma)),
             report::number(textbook_retry_penalty(p)));
  fmt::print("note: the unit of sigma is not defined; "
             "both variants take it as given\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cmdline;
  for (int i = 0; i < argc; ++i) cmdline += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"AMSDU aggregation model: PER, airtime and PER-control policy comparison"};
  app.require_subcommand(1);
  app.set_version_flag("--version", AMSDU_VERSION);

  CommonFlags per_flags, air_flags, pol_flags, dump_flags;

  auto* per = app.add_subcommand("per-sweep", "PER over (rate, MCS, depth) grids");
  add_common(*per, per_flags, true);
  std::uint64_t mc_frames = 0, seed = 1;
  bool include_ack = false;
  per->add_option("--mc-frames", mc_frames, "Monte-Carlo frames per cell (0 = off)")
      ->capture_default_str();
  per->add_option("--seed", seed, "Monte-Carlo seed")->capture_default_str();
  per->add_flag("--include-ack", include_ack, "Expose the ACK to interference too");

  auto* air = app.add_subcommand("airtime-sweep", "Airtime over (msdu, MCS, depth) grids");
  add_common(*air, air_flags, true);
  std::vector<double> basic_rates;
  air->add_option("--basic-rate", basic_rates, "Also sweep ovh2 over these basic rates (Mbps)")
      ->delimiter(',');

  auto* pol = app.add_subcommand("policy-compare", "Rate control vs adaptive AMSDU depth");
  add_common(*pol, pol_flags, true);
  PolicySweepOptions options;
  std::size_t start_mcs = 0;
  bool retry_airtime = false;
  std::vector<double> mg1;
  pol->add_option("--target", options.targets, "Target PER values")
      ->delimiter(',')
      ->capture_default_str();
  pol->add_option("--factor", options.factor, "Equivalence factor on per-MSDU airtime")
      ->capture_default_str();
  auto* start_opt =
      pol->add_option("--start-mcs", start_mcs, "Starting MCS index (default: highest)");
  pol->add_option("--static-depth", options.static_depth, "Depth held by rate control")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pol->add_flag("--retry-airtime", retry_airtime, "Add airtime/(1-PER) columns");
  pol->add_option("--mg1", mg1, "Append M/G/1 retry penalty: lambda,lambda2,mu,sigma")
      ->delimiter(',');

  auto* dump = app.add_subcommand("profile-dump", "Print the effective profile");
  dump->add_option("--profile", dump_flags.profile_path, "Profile file");
  std::string dump_out;
  dump->add_option("--out", dump_out, "Write to a file instead of stdout");

  auto* mg1_app = app.add_subcommand("mg1", "M/G/1 retransmission queueing penalty");
  Mg1Params mg1_params;
  mg1_app->add_option("--lambda", mg1_params.lambda_base, "Base arrival rate")->required();
  mg1_app->add_option("--lambda2", mg1_params.lambda_retry, "Arrival rate with retries")
      ->required();
  mg1_app->add_option("--mu", mg1_params.mu, "Service rate")->required();
  mg1_app->add_option("--sigma", mg1_params.sigma, "Service-time parameter")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*per) return per_sweep(per_flags, mc_frames, seed, include_ack, cmdline);
    if (*air) return airtime_sweep(air_flags, basic_rates, cmdline);
    if (*pol) {
      if (*start_opt) options.start_mcs = start_mcs;
      return policy_compare(pol_flags, options, retry_airtime, mg1, cmdline);
    }
    if (*dump) return profile_dump(dump_flags, dump_out);
    if (*mg1_app) return mg1_cmd(mg1_params);
  } catch (const ProfileError& e) {
    std::cerr << "profile error [" << e.field() << "]: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {  // invalid_argument, domain_error, out_of_range
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
