#include "stokesfilm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stokesfilm/geometry.hpp"
#include "stokesfilm/spectral.hpp"

namespace stokesfilm {

namespace {

/// Arc-Chord sup, infinite when two nodes coincide.
double arc_chord_or_inf(const PeriodicCurve& curve) {
  try {
    return arc_chord(curve);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::self_intersection) throw;
    return std::numeric_limits<double>::infinity();
  }
}

double energy_with(const PeriodicCurve& curve, double ac) {
  if (!std::isfinite(ac)) return ac;
  const VectorField d3 = derivative(curve.as_field(), 3);
  double pos = 0.0, third = 0.0;
  for (std::size_t j = 0; j < curve.size(); ++j) {
    pos += norm2(curve[j]);
    third += norm2(d3[j]);
  }
  const double inv_n = 1.0 / static_cast<double>(curve.size());
  return ac * ac + pos * inv_n + third * inv_n;
}

}  // namespace

double energy(const PeriodicCurve& curve) { return energy_with(curve, arc_chord_or_inf(curve)); }

double enclosed_area(const PeriodicCurve& curve) {
  const VectorField d1 = derivative(curve.as_field(), 1);
  double s = 0.0;
  for (std::size_t j = 0; j < curve.size(); ++j) {
    s += curve[j].x * d1[j].y - curve[j].y * d1[j].x;
  }
  return std::abs(0.5 * s / static_cast<double>(curve.size()));
}

double layer_mass(const PeriodicCurve& curve, const ScalarField& h) {
  if (h.size() != curve.size()) {
    throw Error(ErrorCode::invalid_argument, "layer_mass: size mismatch");
  }
  return curve.length() * mean(h.span());
}

double iso_ratio(const PeriodicCurve& curve) {
  const double L = geometric_length(curve);
  return L * L / (4.0 * kPi * enclosed_area(curve));
}

double min_node_spacing(const PeriodicCurve& curve) {
  double m = std::numeric_limits<double>::infinity();
  const std::size_t n = curve.size();
  for (std::size_t j = 0; j < n; ++j) m = std::min(m, norm(curve[(j + 1) % n] - curve[j]));
  return m;
}

namespace {

/// max over nodes of a of the distance to the interpolant of b.
double one_sided_distance(const PeriodicCurve& a, const PeriodicCurve& b) {
  const std::size_t m = b.size();
  const VectorField bf = b.as_field();
  const ScalarField bx = bf.x(), by = bf.y();
  const spectral::TrigInterpolant X(bx.span()), Y(by.span());
  const ScalarField bx1 = derivative(bx, 1), by1 = derivative(by, 1);
  const ScalarField bx2 = derivative(bx, 2), by2 = derivative(by, 2);
  const spectral::TrigInterpolant X1(bx1.span()), Y1(by1.span());
  const spectral::TrigInterpolant X2(bx2.span()), Y2(by2.span());

  double worst = 0.0;
  for (const Vec2& p : a.nodes()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < m; ++j) {
      if (norm2(b[j] - p) < norm2(b[best] - p)) best = j;
    }
    // Newton on d/dη |B(η) - p|² / 2 = (B - p)·B' = 0.
    double eta = grid_point(best, m);
    const double h = 1.0 / static_cast<double>(m);
    for (int it = 0; it < 30; ++it) {
      const Vec2 d{X(eta) - p.x, Y(eta) - p.y};
      const Vec2 d1{X1(eta), Y1(eta)};
      const Vec2 d2{X2(eta), Y2(eta)};
      const double g = dot(d, d1);
      const double gp = norm2(d1) + dot(d, d2);
      if (!(gp > 0.0)) break;
      const double step = std::clamp(g / gp, -h, h);
      eta -= step;
      if (std::abs(step) < 1e-15) break;
    }
    worst = std::max(worst, norm(Vec2{X(eta) - p.x, Y(eta) - p.y}));
  }
  return worst;
}

}  // namespace

double curve_distance(const PeriodicCurve& a, const PeriodicCurve& b) {
  return std::max(one_sided_distance(a, b), one_sided_distance(b, a));
}

Diagnostics compute_diagnostics(const SimState& state, double dt_used) {
  Diagnostics d;
  d.t = state.t;
  d.arc_chord_sup = arc_chord_or_inf(state.curve);
  d.energy = energy_with(state.curve, d.arc_chord_sup);
  d.length = geometric_length(state.curve);
  d.integrated_length = state.integrated_length;
  d.area = enclosed_area(state.curve);
  d.layer_mass = layer_mass(state.curve, state.h);
  d.iso_ratio = d.length * d.length / (4.0 * kPi * d.area);
  d.h_min = *std::min_element(state.h.begin(), state.h.end());
  d.min_node_spacing = min_node_spacing(state.curve);
  d.dt_used = dt_used;
  return d;
}

}  // namespace stokesfilm
