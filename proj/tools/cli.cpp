#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "stokesfilm/config.hpp"
#include "stokesfilm/geometry.hpp"
#include "stokesfilm/snapshot_io.hpp"

namespace stokesfilm::cli {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::io_error) return kIoError;
  if (is_numerical_stop(code)) return kNumericalStop;
  return kConfigError;
}

std::size_t expected_steps(const RunConfig& cfg) {
  return static_cast<std::size_t>(std::ceil(cfg.T / cfg.dt - 1e-9));
}

int do_check(const std::string& config_path, std::ostream& out) {
  const RunConfig cfg = load_config(config_path);
  const SimState s = build_initial_state(cfg);
  const Diagnostics d = compute_diagnostics(s);
  const std::size_t steps = expected_steps(cfg);
  out << "config ok: " << config_path << "\n"
      << "  N                 " << cfg.N << "\n"
      << "  dt, T             " << fmt(cfg.dt) << ", " << fmt(cfg.T) << " (" << steps
      << " steps)\n"
      << "  length L0         " << fmt(d.length) << "\n"
      << "  area              " << fmt(d.area) << "\n"
      << "  iso ratio         " << fmt(d.iso_ratio) << "\n"
      << "  arc-chord         " << fmt(d.arc_chord_sup) << " (stop at "
      << fmt(cfg.stop_arc_chord_factor * d.arc_chord_sup) << ")\n"
      << "  energy            " << fmt(d.energy) << "\n"
      << "  h0 min            " << fmt(d.h_min) << "\n"
      << "  layer mass        " << fmt(d.layer_mass) << "\n"
      << "  snapshots         " << steps / cfg.snapshot_stride + 1 +
                                        (steps % cfg.snapshot_stride ? 1 : 0)
      << "\n"
      << "  output            " << cfg.output_path << ", " << csv_path_for(cfg.output_path)
      << "\n";
  return kOk;
}

int do_run(const std::string& config_path, const std::optional<std::string>& output,
           bool quiet, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load_config(config_path);
  if (output) cfg.output_path = *output;
  const SimState s0 = build_initial_state(cfg);
  SnapshotWriter writer(cfg.output_path);

  auto sink = [&](const SimState& s, const Diagnostics& d) {
    writer.write(s, d);
    if (!quiet) {
      err << "t=" << fmt(d.t) << " L=" << fmt(d.length) << " area=" << fmt(d.area)
          << " iso=" << fmt(d.iso_ratio) << " arc_chord=" << fmt(d.arc_chord_sup)
          << " h_min=" << fmt(d.h_min) << "\n";
    }
  };

  RunResult r;
  try {
    r = run(s0, cfg.step_config(), cfg.flow_params(), cfg.T, cfg.snapshot_stride, sink);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::io_error) {
      err << "error: " << e.what() << "\n"
          << "partial output: " << writer.lines() << " snapshots in " << writer.jsonl_path()
          << "\n";
      return kIoError;
    }
    throw;
  }

  const Diagnostics d = compute_diagnostics(r.state);
  if (!r.completed) {
    out << "stopped: " << to_string(r.reason) << " at t=" << fmt(r.state.t) << " after "
        << r.state.steps << " steps: " << r.message << "\n"
        << "snapshots: " << writer.lines() << " in " << writer.jsonl_path() << "\n";
    return kNumericalStop;
  }
  out << "completed: t=" << fmt(r.state.t) << " steps=" << r.state.steps
      << " snapshots=" << writer.lines() << " L=" << fmt(d.length)
      << " iso=" << fmt(d.iso_ratio) << " h_min=" << fmt(d.h_min) << "\n"
      << "output: " << writer.jsonl_path() << ", " << writer.csv_path() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"stokesfilm: closed interface in Stokes flow with a thin transported layer"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  bool quiet = false;
  app.add_option("--config", config_path, "Run configuration (JSON)");
  app.add_option("--output", output_path, "Snapshot file; overrides output_path in the config");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  auto* run_cmd = app.add_subcommand("run", "Run a simulation");
  auto* check_cmd = app.add_subcommand("check", "Validate a config and print derived quantities");
  auto* self_cmd = app.add_subcommand("selftest", "Run the quick invariant suite");
  for (auto* sub : {run_cmd, check_cmd, self_cmd}) sub->fallthrough();
  run_cmd->add_option("config", config_path, "Run configuration (same as --config)");
  check_cmd->add_option("config", config_path, "Run configuration (same as --config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*self_cmd) return selftest(out, quiet) ? kOk : kSelftestFailed;
    if (config_path.empty()) {
      err << "error: --config PATH is required\n";
      return kConfigError;
    }
    if (*check_cmd) return do_check(config_path, out);
    std::optional<std::string> output;
    if (!output_path.empty()) output = output_path;
    return do_run(config_path, output, quiet, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace stokesfilm::cli
