#pragma once

// Free-space Stokes flow driven by surface tension on a closed curve.
//
//   u(x) = -(L/2πμ) ∫ κ(r) log|x - Γ(r)| n(r) dr
//          + (L/2πμ) ∫ κ(r) ((x - Γ(r))·n(r) / |x - Γ(r)|²) (x - Γ(r)) dr
//   p(x) =  (L/π)   ∫ κ(r) (x - Γ(r))·n(r) / |x - Γ(r)|² dr
//
// plus an optional divergence-free ambient field standing in for the effect of
// a container. With the clockwise / outward-normal conventions of geometry.hpp
// the pressure outside minus inside a circle is 2κ = -2/R.

#include <functional>

#include "stokesfilm/types.hpp"

namespace stokesfilm {

/// Background flow added to the boundary-integral velocity.
struct Ambient {
  enum class Kind { none, linear, custom };

  Kind kind = Kind::none;
  Mat2 gradient{};                    // linear: u(x) = gradient·x
  std::function<Vec2(Vec2)> field;    // custom

  static Ambient none() { return {}; }
  /// Throws invalid_argument unless |trace| <= 1e-12.
  static Ambient linear(const Mat2& gradient);
  static Ambient custom(std::function<Vec2(Vec2)> field);

  Vec2 operator()(Vec2 x) const;
};

struct FlowParams {
  double mu = 1.0;
  Ambient ambient{};
  /// Width of the kernel regularisation, in units of L; 0 disables it.
  double reg_eps = 0.0;

  /// Throws invalid_argument on mu <= 0 or reg_eps < 0.
  void validate() const;
};

/// u∘Γ at the nodes. The log term goes through log_layer; the second kernel
/// is summed with the trapezoid rule and its diagonal value is 0.
VectorField velocity_on_curve(const PeriodicCurve& curve, const FlowParams& params);

/// Same operator with explicit densities: kappa_log multiplies the log
/// kernel, kappa_dipole the second one. Normals are those of the curve.
VectorField velocity_on_curve(const PeriodicCurve& curve, const ScalarField& kappa_log,
                              const ScalarField& kappa_dipole, const FlowParams& params);

/// Throws near_singular_evaluation when x is within 10·L/N of a node.
Vec2 velocity_at_point(const PeriodicCurve& curve, Vec2 x, const FlowParams& params);
double pressure_at_point(const PeriodicCurve& curve, Vec2 x, const FlowParams& params);

/// n·∇u n = -τ·∂_ξ(u∘Γ), using that ∇u is trace free and continuous across
/// the curve.
ScalarField normal_normal_gradient(const PeriodicCurve& curve, const VectorField& u_on_curve);

struct InnerGradientReport {
  Mat2 B1;
  Mat2 B2;
  double mu2 = 1.0;
};

/// Velocity gradient inside the thin layer from the outer one:
/// B2 = B1 + (μ/μ2 - 1)(τ·(B1 + B1ᵀ)n)(τ ⊗ n).
/// Throws invalid_argument for mu, mu2 <= 0 or |trace B1| > 1e-12.
InnerGradientReport inner_gradient_B2(const Mat2& B1, Vec2 tau, Vec2 n, double mu, double mu2);

}  // namespace stokesfilm
