#include "stokesfilm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stokesfilm/spectral.hpp"

namespace stokesfilm {
namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::invalid_argument,
                std::string(what) + ": field size " + std::to_string(b) +
                    " does not match curve size " + std::to_string(a));
  }
}

VectorField derivative_of_points(const std::vector<Vec2>& pts, int order) {
  return derivative(VectorField(pts), order);
}

}  // namespace

ScalarField derivative(const ScalarField& f, int order) {
  if (f.size() % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "derivative: N must be even");
  }
  return ScalarField(spectral::derivative(f.span(), order));
}

VectorField derivative(const VectorField& f, int order) {
  return VectorField::from_components(derivative(f.x(), order), derivative(f.y(), order));
}

CurveFrame curve_frame(const PeriodicCurve& curve) {
  const std::size_t n = curve.size();
  const double L = curve.length();
  const VectorField d1 = derivative_of_points(curve.nodes(), 1);
  const VectorField d2 = derivative_of_points(curve.nodes(), 2);

  CurveFrame frame{VectorField(n), VectorField(n), ScalarField(n), ScalarField(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double speed = norm(d1[j]);
    if (!(speed >= 1e-8 * L)) {
      throw Error(ErrorCode::degenerate_curve,
                  "curve_frame: |dΓ/dη| vanishes at node " + std::to_string(j));
    }
    const Vec2 tau = d1[j] / speed;
    const Vec2 nrm = rotate_quarter(tau);
    frame.tangent[j] = tau;
    frame.normal[j] = nrm;
    frame.curvature[j] = dot(d2[j], nrm) / (L * L);
    frame.speed[j] = speed;
  }
  return frame;
}

VectorField tangent(const PeriodicCurve& curve) { return curve_frame(curve).tangent; }
VectorField normal(const PeriodicCurve& curve) { return curve_frame(curve).normal; }
ScalarField curvature(const PeriodicCurve& curve) { return curve_frame(curve).curvature; }

double geometric_length(const PeriodicCurve& curve) {
  const VectorField d1 = derivative_of_points(curve.nodes(), 1);
  double s = 0.0;
  for (const Vec2& v : d1) s += norm(v);
  return s / static_cast<double>(curve.size());
}

double arclength_deviation(const PeriodicCurve& curve) {
  const VectorField d1 = derivative_of_points(curve.nodes(), 1);
  double dev = 0.0;
  for (const Vec2& v : d1) dev = std::max(dev, std::abs(norm(v) / curve.length() - 1.0));
  return dev;
}

double arc_chord(const PeriodicCurve& curve) {
  const std::size_t n = curve.size();
  const double L = curve.length();
  const auto& p = curve.nodes();

  double sup = 0.0;
  const VectorField d1 = derivative_of_points(p, 1);
  for (const Vec2& v : d1) {
    const double s2 = norm2(v);
    if (s2 == 0.0) return std::numeric_limits<double>::infinity();
    sup = std::max(sup, L * L / s2);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t gap = std::min(j - i, n - (j - i));
      const double xi = L * static_cast<double>(gap) / static_cast<double>(n);
      const double chord2 = norm2(p[i] - p[j]);
      if (chord2 == 0.0) {
        throw Error(ErrorCode::self_intersection,
                    "arc_chord: nodes " + std::to_string(i) + " and " + std::to_string(j) +
                        " coincide");
      }
      sup = std::max(sup, xi * xi / chord2);
    }
  }
  return sup;
}

std::pair<PeriodicCurve, ScalarField> resample_arclength(const PeriodicCurve& curve,
                                                         const ScalarField& h) {
  const std::size_t n = curve.size();
  require_same_size(n, h.size(), "resample_arclength");

  const VectorField d1 = derivative_of_points(curve.nodes(), 1);
  std::vector<double> speed(n);
  for (std::size_t j = 0; j < n; ++j) speed[j] = norm(d1[j]);
  const double total = mean(speed);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::degenerate_curve, "resample_arclength: zero length");
  }

  // s(η) = total·η + P(η) - P(0), P the periodic antiderivative of the speed.
  const spectral::TrigInterpolant P(spectral::periodic_antiderivative(speed));
  const spectral::TrigInterpolant speed_at(speed);
  const double p0 = P(0.0);
  auto arclength = [&](double eta) { return total * eta + P(eta) - p0; };

  double previous = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double s = arclength(grid_point(j, n));
    if (!(s > previous)) {
      throw Error(ErrorCode::degenerate_curve,
                  "resample_arclength: cumulative arc length not increasing near node " +
                      std::to_string(j));
    }
    previous = s;
  }

  const spectral::TrigInterpolant xs(curve.as_field().x().span());
  const spectral::TrigInterpolant ys(curve.as_field().y().span());
  const spectral::TrigInterpolant hs(h.span());

  std::vector<Vec2> nodes(n);
  ScalarField h_new(n);
  nodes[0] = curve[0];
  h_new[0] = h[0];
  double eta = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double target = total * grid_point(k, n);
    for (int it = 0; it < 60; ++it) {
      const double slope = speed_at(eta);
      if (!(slope > 0.0)) {
        throw Error(ErrorCode::degenerate_curve, "resample_arclength: non-positive speed");
      }
      const double delta = (arclength(eta) - target) / slope;
      eta -= delta;
      if (std::abs(delta) < 1e-15) break;
    }
    nodes[k] = {xs(eta), ys(eta)};
    h_new[k] = hs(eta);
  }
  return {PeriodicCurve(std::move(nodes), total), std::move(h_new)};
}

namespace {

double max_abs_curvature(const ScalarField& kappa) { return max_abs(kappa.span()); }

std::vector<Vec2> offset_nodes(const PeriodicCurve& curve, const CurveFrame& frame,
                               const ScalarField& h, double eps) {
  std::vector<Vec2> pts(curve.size());
  for (std::size_t j = 0; j < curve.size(); ++j) {
    pts[j] = curve[j] - eps * h[j] * frame.normal[j];
  }
  return pts;
}

void check_offset(const CurveFrame& frame, const ScalarField& h, double eps) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "inner_boundary: eps must be non-negative");
  }
  const double hmax = max_abs(h.span());
  if (eps * hmax * max_abs_curvature(frame.curvature) >= 0.5) {
    throw Error(ErrorCode::invalid_argument,
                "inner_boundary: eps*max(h)*max|kappa| >= 1/2, offset curve would fold");
  }
}

}  // namespace

PeriodicCurve inner_boundary(const PeriodicCurve& curve, const ScalarField& h, double eps) {
  require_same_size(curve.size(), h.size(), "inner_boundary");
  const CurveFrame frame = curve_frame(curve);
  check_offset(frame, h, eps);
  auto pts = offset_nodes(curve, frame, h, eps);
  const VectorField d1 = derivative(VectorField(pts), 1);
  double len = 0.0;
  for (const Vec2& v : d1) len += norm(v);
  len /= static_cast<double>(pts.size());
  return PeriodicCurve(std::move(pts), len);
}

InnerFrame inner_frame_exact(const PeriodicCurve& curve, const ScalarField& h, double eps) {
  require_same_size(curve.size(), h.size(), "inner_frame_exact");
  const std::size_t n = curve.size();
  const CurveFrame frame = curve_frame(curve);
  check_offset(frame, h, eps);
  const VectorField d1 = derivative(VectorField(offset_nodes(curve, frame, h, eps)), 1);

  InnerFrame out{VectorField(n), VectorField(n), ScalarField(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.tangent[j] = d1[j] / norm(d1[j]);
    out.normal[j] = -rotate_quarter(out.tangent[j]);
  }
  const VectorField dtau = derivative(out.tangent, 1);
  for (std::size_t j = 0; j < n; ++j) {
    out.curvature[j] = -dot(dtau[j], out.normal[j]) / curve.length();
  }
  return out;
}

InnerFrame inner_frame_first_order(const PeriodicCurve& curve, const ScalarField& h,
                                   double eps) {
  require_same_size(curve.size(), h.size(), "inner_frame_first_order");
  const std::size_t n = curve.size();
  const double L = curve.length();
  const CurveFrame frame = curve_frame(curve);
  check_offset(frame, h, eps);
  const ScalarField dh = derivative(h, 1);
  const ScalarField d2h = derivative(h, 2);

  InnerFrame out{VectorField(n), VectorField(n), ScalarField(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double h_xi = dh[j] / L;
    const double h_xixi = d2h[j] / (L * L);
    out.tangent[j] = frame.tangent[j] - eps * h_xi * frame.normal[j];
    out.normal[j] = -frame.normal[j] - eps * h_xi * frame.tangent[j];
    out.curvature[j] = frame.curvature[j] - eps * h_xixi;
  }
  return out;
}

}  // namespace stokesfilm
