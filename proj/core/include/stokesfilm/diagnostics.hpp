#pragma once

// Blow-up monitors and conserved quantities.

#include "stokesfilm/state.hpp"

namespace stokesfilm {

struct Diagnostics {
  double t = 0.0;
  double energy = 0.0;
  double arc_chord_sup = 0.0;
  double length = 0.0;             // geometric length of the nodes
  double integrated_length = 0.0;  // length from the length ODE
  double area = 0.0;
  double layer_mass = 0.0;
  double iso_ratio = 0.0;
  double h_min = 0.0;
  double min_node_spacing = 0.0;
  double dt_used = 0.0;
};

/// arc_chord² + mean|Γ|² + mean|∂³_ηΓ|². Infinite if two nodes coincide.
double energy(const PeriodicCurve& curve);

/// |½ ∫₀¹ (x y' - y x') dη|, evaluated spectrally.
double enclosed_area(const PeriodicCurve& curve);

/// L · mean(h).
double layer_mass(const PeriodicCurve& curve, const ScalarField& h);

/// L² / (4π A) with the geometric length.
double iso_ratio(const PeriodicCurve& curve);

double min_node_spacing(const PeriodicCurve& curve);

/// Symmetric max over the nodes of each curve of the distance to the other
/// curve's trigonometric interpolant. Insensitive to how the nodes are
/// distributed along the curves.
double curve_distance(const PeriodicCurve& a, const PeriodicCurve& b);

Diagnostics compute_diagnostics(const SimState& state, double dt_used = 0.0);

}  // namespace stokesfilm
