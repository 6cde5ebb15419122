#include "stokesfilm/stokes_field.hpp"

#include <cmath>
#include <string>

#include "stokesfilm/geometry.hpp"
#include "stokesfilm/singular_ops.hpp"

namespace stokesfilm {
namespace {

void check_density(const PeriodicCurve& curve, const ScalarField& f, const char* what) {
  if (f.size() != curve.size()) {
    throw Error(ErrorCode::invalid_argument,
                std::string("velocity_on_curve: ") + what + " size mismatch");
  }
}

void check_far_enough(const PeriodicCurve& curve, Vec2 x, const char* what) {
  const double min_dist = 10.0 * curve.length() / static_cast<double>(curve.size());
  for (const Vec2& p : curve.nodes()) {
    if (norm(x - p) <= min_dist) {
      throw Error(ErrorCode::near_singular_evaluation,
                  std::string(what) + ": target within 10 L/N of the curve");
    }
  }
}

}  // namespace

Ambient Ambient::linear(const Mat2& gradient) {
  if (!(std::abs(gradient.trace()) <= 1e-12)) {
    throw Error(ErrorCode::invalid_argument, "Ambient::linear: gradient must be trace free");
  }
  Ambient a;
  a.kind = Kind::linear;
  a.gradient = gradient;
  return a;
}

Ambient Ambient::custom(std::function<Vec2(Vec2)> field) {
  if (!field) throw Error(ErrorCode::invalid_argument, "Ambient::custom: empty field");
  Ambient a;
  a.kind = Kind::custom;
  a.field = std::move(field);
  return a;
}

Vec2 Ambient::operator()(Vec2 x) const {
  switch (kind) {
    case Kind::none: return {};
    case Kind::linear: return gradient * x;
    case Kind::custom: return field(x);
  }
  return {};
}

void FlowParams::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::invalid_argument, "FlowParams: mu must be positive");
  }
  if (!(reg_eps >= 0.0) || !std::isfinite(reg_eps)) {
    throw Error(ErrorCode::invalid_argument, "FlowParams: reg_eps must be >= 0");
  }
  if (ambient.kind == Ambient::Kind::linear && !(std::abs(ambient.gradient.trace()) <= 1e-12)) {
    throw Error(ErrorCode::invalid_argument, "FlowParams: ambient gradient must be trace free");
  }
}

VectorField velocity_on_curve(const PeriodicCurve& curve, const ScalarField& kappa_log,
                              const ScalarField& kappa_dipole, const FlowParams& params) {
  params.validate();
  check_density(curve, kappa_log, "kappa_log");
  check_density(curve, kappa_dipole, "kappa_dipole");
  const std::size_t n = curve.size();
  const double L = curve.length();
  const auto& p = curve.nodes();
  const VectorField nrm = curve_frame(curve).normal;

  ScalarField gx(n), gy(n);
  for (std::size_t j = 0; j < n; ++j) {
    gx[j] = kappa_log[j] * nrm[j].x;
    gy[j] = kappa_log[j] * nrm[j].y;
  }
  const auto logs = log_layer({gx, gy}, curve, params.reg_eps);

  const double scale = L / (kTwoPi * params.mu);
  const double reg2 = params.reg_eps * params.reg_eps * L * L;
  const double inv_n = 1.0 / static_cast<double>(n);
  VectorField u(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 dipole{};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vec2 d = p[i] - p[j];
      const double d2 = norm2(d);
      if (d2 == 0.0) {
        throw Error(ErrorCode::self_intersection,
                    "velocity_on_curve: nodes " + std::to_string(i) + " and " +
                        std::to_string(j) + " coincide");
      }
      dipole += (kappa_dipole[j] * dot(d, nrm[j]) / (d2 + reg2)) * d;
    }
    const Vec2 single{logs[0][i], logs[1][i]};
    u[i] = scale * (inv_n * dipole - single) + params.ambient(p[i]);
  }
  return u;
}

VectorField velocity_on_curve(const PeriodicCurve& curve, const FlowParams& params) {
  const ScalarField kappa = curvature(curve);
  return velocity_on_curve(curve, kappa, kappa, params);
}

Vec2 velocity_at_point(const PeriodicCurve& curve, Vec2 x, const FlowParams& params) {
  params.validate();
  check_far_enough(curve, x, "velocity_at_point");
  const CurveFrame frame = curve_frame(curve);
  const std::size_t n = curve.size();
  Vec2 acc{};
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 d = x - curve[j];
    const double d2 = norm2(d);
    const Vec2 nj = frame.normal[j];
    acc += frame.curvature[j] * (-0.5 * std::log(d2) * nj + (dot(d, nj) / d2) * d);
  }
  const double scale = curve.length() / (kTwoPi * params.mu * static_cast<double>(n));
  return scale * acc + params.ambient(x);
}

double pressure_at_point(const PeriodicCurve& curve, Vec2 x, const FlowParams& params) {
  params.validate();
  check_far_enough(curve, x, "pressure_at_point");
  const CurveFrame frame = curve_frame(curve);
  const std::size_t n = curve.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 d = x - curve[j];
    acc += frame.curvature[j] * dot(d, frame.normal[j]) / norm2(d);
  }
  return curve.length() / (kPi * static_cast<double>(n)) * acc;
}

ScalarField normal_normal_gradient(const PeriodicCurve& curve, const VectorField& u_on_curve) {
  if (u_on_curve.size() != curve.size()) {
    throw Error(ErrorCode::invalid_argument, "normal_normal_gradient: size mismatch");
  }
  const VectorField tau = tangent(curve);
  const VectorField du = derivative(u_on_curve, 1);
  ScalarField out(curve.size());
  for (std::size_t j = 0; j < curve.size(); ++j) {
    out[j] = -dot(tau[j], du[j]) / curve.length();
  }
  return out;
}

InnerGradientReport inner_gradient_B2(const Mat2& B1, Vec2 tau, Vec2 n, double mu, double mu2) {
  if (!(mu > 0.0) || !(mu2 > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "inner_gradient_B2: viscosities must be positive");
  }
  if (!(std::abs(B1.trace()) <= 1e-12)) {
    throw Error(ErrorCode::invalid_argument, "inner_gradient_B2: B1 must be trace free");
  }
  InnerGradientReport r{B1, B1, mu2};
  if (mu == mu2) return r;
  const double shear = dot(tau, (B1 + B1.transposed()) * n);
  r.B2 = B1 + ((mu / mu2 - 1.0) * shear) * outer(tau, n);
  return r;
}

}  // namespace stokesfilm
