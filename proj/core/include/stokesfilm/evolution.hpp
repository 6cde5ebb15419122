#pragma once

// Time integration in the fixed domain η ∈ [0, 1):
//
//   ∂_tΓ = (u·n) n + (ψ + η ∂_tL) τ
//   ψ(η) = L ∫₀^η κ u·n dr            (gauge ψ(0) = 0)
//   ∂_tL = -L ∫₀¹ κ u·n dη
//   ∂_th = -(V/L) ∂_ηh + (n·∇u n) h,  V = u·τ - ψ - η ∂_tL
//
// ψ + η∂_tL is periodic even though ψ alone is not, so it is always formed
// as L (P(η) - P(0)) with P the periodic antiderivative of κu·n - mean.
// The h equation is the arc-length transport law written in η; it conserves
// L·mean(h).

#include <cstddef>
#include <functional>
#include <limits>
#include <string>

#include "stokesfilm/diagnostics.hpp"
#include "stokesfilm/state.hpp"
#include "stokesfilm/stokes_field.hpp"

namespace stokesfilm {

enum class Integrator { euler, rk4 };

struct StepConfig {
  double dt = 1e-3;
  Integrator integrator = Integrator::rk4;
  /// Width of the mollifier in η; 0 runs the plain scheme.
  double mollify_eps = 0.0;
  /// Resample every this many steps, and whenever the arc-length deviation
  /// exceeds tol_param.
  std::size_t resample_every = 10;
  double tol_param = 1e-3;
  /// Absolute Arc-Chord threshold checked by step().
  double arc_chord_limit = std::numeric_limits<double>::infinity();
  /// run() sets arc_chord_limit to this factor times the initial value.
  double arc_chord_factor = 100.0;
  double energy_ceiling = std::numeric_limits<double>::infinity();

  void validate() const;
};

/// Flow quantities at one state, shared by the curve and thickness updates.
struct FlowSample {
  VectorField u;          // u∘Γ
  ScalarField un;         // u·n
  ScalarField psi_shift;  // ψ + η ∂_tL, periodic
  ScalarField transport;  // V = u·τ - ψ - η ∂_tL
  ScalarField source;     // n·∇u n
  double dLdt = 0.0;
  double mean_kappa_un = 0.0;
};

struct StateRate {
  VectorField dGamma;
  double dLdt = 0.0;
  ScalarField dh;
};

/// ψ(η) = L ∫₀^η κ un dr, with ψ(0) = 0 and ψ(1) = L·mean(κ un).
ScalarField compute_psi(const PeriodicCurve& curve, const ScalarField& un);
ScalarField compute_psi(const PeriodicCurve& curve, const ScalarField& kappa,
                        const ScalarField& un);

/// -L mean(κ un).
double length_rate(const PeriodicCurve& curve, const ScalarField& un);
double length_rate(double L, const ScalarField& kappa, const ScalarField& un);

/// -(V/L) ∂_ηh + s h.
ScalarField thickness_rate(const ScalarField& h, double L, const ScalarField& transport,
                           const ScalarField& source);

/// Right-hand side of the coupled system. With mollify_eps > 0 the curve
/// velocity is J[(u·Jn) Jn] + J[(ψ + η∂_tL) Jτ] and the log kernel density is
/// Jκ, J the mollifier.
StateRate rhs(const PeriodicCurve& curve, const ScalarField& h, const FlowParams& params,
              double mollify_eps = 0.0, FlowSample* sample = nullptr);
StateRate rhs(const SimState& state, const FlowParams& params, double mollify_eps = 0.0,
              FlowSample* sample = nullptr);

/// Initial data of the mollified scheme: the nodes are replaced by their
/// mollification and redistributed uniformly in arc length. eps = 0 returns
/// the state unchanged.
SimState mollify_initial_state(const SimState& state, double eps);

/// One explicit step followed by the configured resampling. Throws
/// positivity_violation, approaching_self_intersection, energy_ceiling or
/// non_finite_state when the new state fails a monitor. The optional sample
/// receives the flow at the start of the step.
SimState step(const SimState& state, const StepConfig& cfg, const FlowParams& params,
              FlowSample* sample = nullptr);

/// Snapshot consumer: receives the state and its diagnostics.
using SnapshotSink = std::function<void(const SimState&, const Diagnostics&)>;
/// Called with each state and the flow evaluated at it, including the final
/// one; used to record history for the characteristic solver.
using FlowObserver = std::function<void(const SimState&, const FlowSample&)>;
/// Called after every accepted step with its diagnostics.
using StepMonitor = std::function<void(const SimState&, const Diagnostics&)>;

struct RunResult {
  SimState state;
  bool completed = true;
  ErrorCode reason = ErrorCode::invalid_argument;  // meaningful when !completed
  std::string message;
  std::size_t snapshots = 0;
};

/// Steps until t >= T (the last step is shortened to land on T) or until a
/// monitor fires. Emits a snapshot at t = 0, every `stride` steps and at the
/// final state.
RunResult run(const SimState& state0, const StepConfig& cfg, const FlowParams& params, double T,
              std::size_t stride, const SnapshotSink& sink = {},
              const FlowObserver& observer = {}, const StepMonitor& monitor = {});

}  // namespace stokesfilm
