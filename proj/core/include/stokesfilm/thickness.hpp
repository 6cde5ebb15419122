#pragma once

// Thickness of the thin layer.
//
// Method of lines: advect_h_mol returns ∂_th in the fixed domain (see
// evolution.hpp).
//
// Characteristics: in arc length ξ = Lη the transport law is
//   ∂_th + (u·τ - ψ) ∂_ξh = (n·∇u n) h,
// so along dα/dt = u·τ - ψ = V(α/L) - m α (m = mean κ u·n, α(0) = γ)
//   h(α(t, γ), t) = h₀(γ) exp(∫₀ᵗ (n·∇u n)(α(r, γ), r) dr).
// Shifting γ by L₀ shifts α by L(t), so α(t, γ) - γ L(t)/L₀ is L₀-periodic
// and the map γ ↦ α is inverted with trigonometric interpolation.

#include <complex>
#include <cstddef>
#include <vector>

#include "stokesfilm/evolution.hpp"
#include "stokesfilm/spectral.hpp"

namespace stokesfilm {

/// Flow data at one instant: the fields the characteristics need, stored as
/// Fourier coefficients in η.
struct FlowRecord {
  double t = 0.0;
  double length = 0.0;
  double mean_kappa_un = 0.0;
  std::vector<std::complex<double>> transport;  // V
  std::vector<std::complex<double>> source;     // n·∇u n
};

/// Time-ordered flow records on a common grid size.
class FlowHistory {
 public:
  void record(const SimState& state, const FlowSample& sample);
  void record(double t, double length, double mean_kappa_un, const ScalarField& transport,
              const ScalarField& source);

  /// Adapter for run().
  FlowObserver observer();

  const std::vector<FlowRecord>& records() const noexcept { return records_; }
  std::size_t grid_size() const noexcept { return n_; }
  bool empty() const noexcept { return records_.empty(); }
  double start_time() const;
  double end_time() const;
  double initial_length() const;

  /// Fields at time t: cubic Lagrange interpolation over the four records
  /// around t (clamped at the ends).
  struct Instant {
    double length;
    double mean_kappa_un;
    spectral::TrigInterpolant transport;
    spectral::TrigInterpolant source;
  };
  Instant at(double t) const;

 private:
  std::vector<FlowRecord> records_;
  std::size_t n_ = 0;
};

/// dh/dt by the method of lines from a flow sample at the state.
ScalarField advect_h_mol(const SimState& state, const FlowSample& sample);

struct CharacteristicTrace {
  double gamma0 = 0.0;
  std::vector<double> times;
  std::vector<double> path;      // α(t, γ) at each recorded time
  std::vector<double> exponent;  // ∫₀ᵗ (n·∇u n)(α(r, γ), r) dr
};

/// Integrates one characteristic with RK4 over the record times up to t.
CharacteristicTrace trace_characteristic(const FlowHistory& history, double gamma0, double t);

/// h at time t on the uniform η grid from h₀ at the first record. Throws
/// characteristic_crossing if γ ↦ α(t, γ) is not increasing on the labels.
ScalarField solve_h_characteristics(const FlowHistory& history, const ScalarField& h0, double t);

/// |α(t, L₀) - α(t, 0) - L(t)| with L(t) the recorded length.
double verify_label_period(const FlowHistory& history, double t);

struct PositivityReport {
  double min_h = 0.0;
  std::size_t index = 0;
  double eta = 0.0;
  bool positive = false;
};

PositivityReport positivity_certificate(const ScalarField& h);

/// Minimum of h over a run and how the margin moves between snapshots.
class PositivityTrend {
 public:
  void add(double t, const ScalarField& h);
  const std::vector<double>& times() const noexcept { return t_; }
  const std::vector<double>& minima() const noexcept { return min_; }
  double overall_min() const;
  /// Least-squares slope of min h against t; 0 with fewer than two entries.
  double slope() const;
  bool always_positive() const { return overall_min() > 0.0; }

 private:
  std::vector<double> t_;
  std::vector<double> min_;
};

}  // namespace stokesfilm
