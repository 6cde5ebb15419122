#pragma once

// Periodic curve geometry on the uniform η grid.
//
// Conventions: curves are traversed clockwise, the tangent is τ = ∂_ηΓ / L,
// the outward normal is n = Aτ with A(x, y) = (-y, x), and the curvature
// satisfies ∂_ξτ = κn, so a circle of radius R has κ = -1/R.

#include <utility>

#include "stokesfilm/types.hpp"

namespace stokesfilm {

/// Spectral ∂_η^order. Throws invalid_argument for order outside 1..4 or odd N.
ScalarField derivative(const ScalarField& f, int order);
VectorField derivative(const VectorField& f, int order);

/// Tangent, normal, curvature and local speed |∂_ηΓ| evaluated together.
struct CurveFrame {
  VectorField tangent;
  VectorField normal;
  ScalarField curvature;
  ScalarField speed;
};

/// Throws degenerate_curve when |∂_ηΓ| < 1e-8 L at any node.
CurveFrame curve_frame(const PeriodicCurve& curve);
VectorField tangent(const PeriodicCurve& curve);
VectorField normal(const PeriodicCurve& curve);
ScalarField curvature(const PeriodicCurve& curve);

/// Trapezoid length mean_j |∂_ηΓ(η_j)| (spectrally accurate).
double geometric_length(const PeriodicCurve& curve);

/// max_j | |∂_ηΓ(η_j)| / L - 1 |.
double arclength_deviation(const PeriodicCurve& curve);

/// Grid supremum of ξ² / |Γ(α) - Γ(α - ξ)|² over node pairs, with ξ the
/// arc-length separation folded into [-L/2, L/2]; the diagonal contributes
/// L² / |∂_ηΓ|². Throws self_intersection if two distinct nodes coincide.
double arc_chord(const PeriodicCurve& curve);

/// Redistributes the nodes uniformly in arc length (node 0 kept fixed) using
/// trigonometric interpolation, and carries h along the same
/// reparametrisation. The returned length is the geometric length.
/// Throws degenerate_curve if the cumulative arc length is not increasing.
std::pair<PeriodicCurve, ScalarField> resample_arclength(const PeriodicCurve& curve,
                                                         const ScalarField& h);

/// Inner boundary Γ - εhn of a layer of thickness εh. Throws invalid_argument
/// when ε max(h) max|κ| >= 1/2 (the offset would fold over).
PeriodicCurve inner_boundary(const PeriodicCurve& curve, const ScalarField& h, double eps);

/// Tangent, normal and curvature of the inner boundary in the layer's own
/// orientation: n_ε = -Aτ_ε, and κ_ε defined through ∂_ξτ_ε = -κ_ε n_ε where ξ
/// is arc length on the outer curve.
struct InnerFrame {
  VectorField tangent;
  VectorField normal;
  ScalarField curvature;
};

/// Exact frame, computed spectrally from the sampled offset curve.
InnerFrame inner_frame_exact(const PeriodicCurve& curve, const ScalarField& h, double eps);

/// First-order expansion τ - ε∂_ξh n, -n - ε∂_ξh τ, κ - ε∂²_ξh.
InnerFrame inner_frame_first_order(const PeriodicCurve& curve, const ScalarField& h, double eps);

}  // namespace stokesfilm
