#pragma once

// Run configuration: a JSON object whose keys are listed in the README.
// Every key has a default; unknown keys anywhere are rejected.

#include <string>
#include <variant>
#include <vector>

#include "stokesfilm/evolution.hpp"

namespace stokesfilm {

/// amplitude · cos(2π mode η + phase)
struct FourierTerm {
  int mode = 1;
  double amplitude = 0.0;
  double phase = 0.0;
};

struct CircleIC {
  double R = 1.0;
};
struct EllipseIC {
  double a = 2.0;
  double b = 1.0;
};
/// Polar curve r(θ) = R + Σ terms, traced clockwise.
struct FourierIC {
  double R = 1.0;
  std::vector<FourierTerm> terms;
};
using InitialCurve = std::variant<CircleIC, EllipseIC, FourierIC>;

struct ConstantH0 {
  double c = 1.0;
};
struct FourierH0 {
  double mean = 1.0;
  std::vector<FourierTerm> terms;
};
using InitialThickness = std::variant<ConstantH0, FourierH0>;

struct RunConfig {
  InitialCurve ic = CircleIC{};
  InitialThickness h0 = ConstantH0{};
  std::size_t N = 256;
  double dt = 1e-3;
  double T = 1.0;
  Integrator integrator = Integrator::rk4;
  std::size_t resample_every = 10;
  double tol_param = 1e-3;
  double mollify_eps = 0.0;
  double reg_eps = 0.0;
  double mu = 1.0;
  Ambient ambient{};  // none or linear from a config file
  std::string output_path = "stokesfilm.jsonl";
  std::size_t snapshot_stride = 10;
  double stop_arc_chord_factor = 100.0;
  double energy_ceiling = std::numeric_limits<double>::infinity();

  StepConfig step_config() const;
  FlowParams flow_params() const;
};

/// Parses and validates. Throws config_error naming the offending key.
RunConfig parse_config(const std::string& text);
/// Reads a file (io_error if unreadable) and parses it.
RunConfig load_config(const std::string& path);

/// Clockwise initial curve resampled to arc length, with h0 sampled on the
/// resampled grid. Throws config_error for a polar radius that is not
/// positive or a curve whose nodes coincide.
SimState build_initial_state(const RunConfig& cfg);

/// Samples of the initial curve before arc-length resampling.
std::vector<Vec2> initial_curve_nodes(const InitialCurve& ic, std::size_t n);

}  // namespace stokesfilm
