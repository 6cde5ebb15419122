#include "stokesfilm/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "stokesfilm/geometry.hpp"
#include "stokesfilm/singular_ops.hpp"
#include "stokesfilm/spectral.hpp"

namespace stokesfilm {
namespace {

void require_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorCode::invalid_argument, std::string(what) + ": size mismatch");
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
  return out;
}

/// L (P(η) - P(0)) with P the periodic antiderivative of g - mean(g).
ScalarField periodic_part_of_integral(double L, const ScalarField& g) {
  auto P = spectral::periodic_antiderivative(g.span());
  const double p0 = P[0];
  for (double& v : P) v = L * (v - p0);
  return ScalarField(std::move(P));
}

/// Node positions and fields of a state moved by c·rate.
struct Stage {
  PeriodicCurve curve;
  ScalarField h;
};

Stage advance(const PeriodicCurve& curve, const ScalarField& h, const StateRate& rate,
              double c) {
  const std::size_t n = curve.size();
  std::vector<Vec2> nodes(n);
  ScalarField hn(n);
  for (std::size_t j = 0; j < n; ++j) {
    nodes[j] = curve[j] + c * rate.dGamma[j];
    hn[j] = h[j] + c * rate.dh[j];
  }
  const double L = curve.length() + c * rate.dLdt;
  if (!std::isfinite(L) || !(L > 0.0)) {
    throw Error(ErrorCode::non_finite_state, "step: length became non-positive or non-finite");
  }
  return {PeriodicCurve(std::move(nodes), L), std::move(hn)};
}

bool all_finite(const SimState& s) {
  for (const Vec2& p : s.curve.nodes()) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  }
  for (double v : s.h) {
    if (!std::isfinite(v)) return false;
  }
  return std::isfinite(s.curve.length());
}

}  // namespace

void StepConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::invalid_argument, "StepConfig: dt must be positive");
  }
  if (!(mollify_eps >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "StepConfig: mollify_eps must be >= 0");
  }
  if (resample_every == 0) {
    throw Error(ErrorCode::invalid_argument, "StepConfig: resample_every must be positive");
  }
  if (!(tol_param > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "StepConfig: tol_param must be positive");
  }
  if (!(arc_chord_limit > 0.0) || !(arc_chord_factor > 0.0) || !(energy_ceiling > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "StepConfig: stop thresholds must be positive");
  }
}

ScalarField compute_psi(const PeriodicCurve& curve, const ScalarField& kappa,
                        const ScalarField& un) {
  require_size(curve.size(), un.size(), "compute_psi");
  require_size(curve.size(), kappa.size(), "compute_psi");
  const double L = curve.length();
  const ScalarField g = product(kappa, un);
  const double gbar = mean(g.span());
  ScalarField psi = periodic_part_of_integral(L, g);
  for (std::size_t j = 0; j < psi.size(); ++j) psi[j] += L * gbar * grid_point(j, psi.size());
  return psi;
}

ScalarField compute_psi(const PeriodicCurve& curve, const ScalarField& un) {
  return compute_psi(curve, curvature(curve), un);
}

double length_rate(double L, const ScalarField& kappa, const ScalarField& un) {
  require_size(kappa.size(), un.size(), "length_rate");
  return -L * mean(product(kappa, un).span());
}

double length_rate(const PeriodicCurve& curve, const ScalarField& un) {
  return length_rate(curve.length(), curvature(curve), un);
}

ScalarField thickness_rate(const ScalarField& h, double L, const ScalarField& transport,
                           const ScalarField& source) {
  require_size(h.size(), transport.size(), "thickness_rate");
  require_size(h.size(), source.size(), "thickness_rate");
  const ScalarField dh = derivative(h, 1);
  ScalarField out(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    out[j] = -transport[j] / L * dh[j] + source[j] * h[j];
  }
  return out;
}

StateRate rhs(const PeriodicCurve& curve, const ScalarField& h, const FlowParams& params,
              double mollify_eps, FlowSample* sample) {
  require_size(curve.size(), h.size(), "rhs");
  const std::size_t n = curve.size();
  const double L = curve.length();
  const CurveFrame frame = curve_frame(curve);
  const bool mollified = mollify_eps > 0.0;

  VectorField u = mollified
                      ? velocity_on_curve(curve, mollify(frame.curvature, mollify_eps),
                                          frame.curvature, params)
                      : velocity_on_curve(curve, frame.curvature, frame.curvature, params);

  ScalarField un(n), ut(n);
  for (std::size_t j = 0; j < n; ++j) {
    un[j] = dot(u[j], frame.normal[j]);
    ut[j] = dot(u[j], frame.tangent[j]);
  }
  const ScalarField g = product(frame.curvature, un);
  const double gbar = mean(g.span());
  const double dLdt = -L * gbar;
  const ScalarField shift = periodic_part_of_integral(L, g);

  StateRate rate;
  rate.dLdt = dLdt;
  rate.dGamma = VectorField(n);
  if (!mollified) {
    for (std::size_t j = 0; j < n; ++j) {
      rate.dGamma[j] = un[j] * frame.normal[j] + shift[j] * frame.tangent[j];
    }
  } else {
    const VectorField jn = mollify(frame.normal, mollify_eps);
    const VectorField jt = mollify(frame.tangent, mollify_eps);
    VectorField v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = dot(u[j], jn[j]) * jn[j] + shift[j] * jt[j];
    rate.dGamma = mollify(v, mollify_eps);
  }

  ScalarField transport(n);
  for (std::size_t j = 0; j < n; ++j) transport[j] = ut[j] - shift[j];
  ScalarField source = normal_normal_gradient(curve, u);
  rate.dh = thickness_rate(h, L, transport, source);

  if (sample) {
    sample->u = std::move(u);
    sample->un = std::move(un);
    sample->psi_shift = shift;
    sample->transport = std::move(transport);
    sample->source = std::move(source);
    sample->dLdt = dLdt;
    sample->mean_kappa_un = gbar;
  }
  return rate;
}

StateRate rhs(const SimState& state, const FlowParams& params, double mollify_eps,
              FlowSample* sample) {
  return rhs(state.curve, state.h, params, mollify_eps, sample);
}

SimState mollify_initial_state(const SimState& state, double eps) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "mollify_initial_state: eps must be >= 0");
  }
  if (eps == 0.0) return state;
  const PeriodicCurve smooth = mollify(state.curve, eps);
  auto [curve, h] =
      resample_arclength(PeriodicCurve(smooth.nodes(), geometric_length(smooth)), state.h);
  SimState out(std::move(curve), std::move(h), state.t);
  out.steps = state.steps;
  return out;
}

SimState step(const SimState& state, const StepConfig& cfg, const FlowParams& params,
              FlowSample* sample) {
  cfg.validate();
  params.validate();
  const double dt = cfg.dt;
  const double eps = cfg.mollify_eps;

  Stage next;
  double dL = 0.0;
  const StateRate k1 = rhs(state.curve, state.h, params, eps, sample);
  if (cfg.integrator == Integrator::euler) {
    next = advance(state.curve, state.h, k1, dt);
    dL = dt * k1.dLdt;
  } else {
    const Stage s2 = advance(state.curve, state.h, k1, 0.5 * dt);
    const StateRate k2 = rhs(s2.curve, s2.h, params, eps);
    const Stage s3 = advance(state.curve, state.h, k2, 0.5 * dt);
    const StateRate k3 = rhs(s3.curve, s3.h, params, eps);
    const Stage s4 = advance(state.curve, state.h, k3, dt);
    const StateRate k4 = rhs(s4.curve, s4.h, params, eps);

    const std::size_t n = state.curve.size();
    StateRate combined{VectorField(n), 0.0, ScalarField(n)};
    for (std::size_t j = 0; j < n; ++j) {
      combined.dGamma[j] = (k1.dGamma[j] + 2.0 * k2.dGamma[j] + 2.0 * k3.dGamma[j] + k4.dGamma[j]) / 6.0;
      combined.dh[j] = (k1.dh[j] + 2.0 * k2.dh[j] + 2.0 * k3.dh[j] + k4.dh[j]) / 6.0;
    }
    combined.dLdt = (k1.dLdt + 2.0 * k2.dLdt + 2.0 * k3.dLdt + k4.dLdt) / 6.0;
    next = advance(state.curve, state.h, combined, dt);
    dL = dt * combined.dLdt;
  }

  SimState out;
  out.curve = std::move(next.curve);
  out.h = std::move(next.h);
  out.t = state.t + dt;
  out.steps = state.steps + 1;
  out.integrated_length = state.integrated_length + dL;
  if (!all_finite(out)) {
    throw Error(ErrorCode::non_finite_state, "step: non-finite value in the new state");
  }

  if (out.steps % cfg.resample_every == 0 || arclength_deviation(out.curve) > cfg.tol_param) {
    auto [c, h] = resample_arclength(out.curve, out.h);
    out.curve = std::move(c);
    out.h = std::move(h);
  }

  const auto hmin = std::min_element(out.h.begin(), out.h.end());
  if (!(*hmin > 0.0)) {
    throw Error(ErrorCode::positivity_violation,
                "step: h <= 0 at node " + std::to_string(hmin - out.h.begin()) +
                    " (h = " + std::to_string(*hmin) + ", t = " + std::to_string(out.t) + ")");
  }
  if (std::isfinite(cfg.arc_chord_limit)) {
    const double ac = arc_chord(out.curve);
    if (ac >= cfg.arc_chord_limit) {
      throw Error(ErrorCode::approaching_self_intersection,
                  "step: arc-chord " + std::to_string(ac) + " reached the limit " +
                      std::to_string(cfg.arc_chord_limit) + " at t = " + std::to_string(out.t));
    }
  }
  if (std::isfinite(cfg.energy_ceiling)) {
    const double e = energy(out.curve);
    if (!(e <= cfg.energy_ceiling)) {
      throw Error(ErrorCode::energy_ceiling,
                  "step: energy " + std::to_string(e) + " exceeds the ceiling at t = " +
                      std::to_string(out.t));
    }
  }
  return out;
}

RunResult run(const SimState& state0, const StepConfig& cfg_in, const FlowParams& params,
              double T, std::size_t stride, const SnapshotSink& sink,
              const FlowObserver& observer, const StepMonitor& monitor) {
  cfg_in.validate();
  params.validate();
  if (!(T >= state0.t)) throw Error(ErrorCode::invalid_argument, "run: T before initial time");
  if (stride == 0) throw Error(ErrorCode::invalid_argument, "run: stride must be positive");

  StepConfig cfg = cfg_in;
  if (!std::isfinite(cfg.arc_chord_limit)) {
    cfg.arc_chord_limit = cfg.arc_chord_factor * arc_chord(state0.curve);
  }

  RunResult result;
  result.state = state0;
  std::size_t last_snapshot = static_cast<std::size_t>(-1);
  auto emit = [&](const SimState& s, double dt_used) {
    if (sink) sink(s, compute_diagnostics(s, dt_used));
    ++result.snapshots;
    last_snapshot = s.steps;
  };
  emit(state0, 0.0);

  const double end_tol = 1e-12 * std::max(1.0, std::abs(T));
  double dt_used = 0.0;
  FlowSample sample;
  while (T - result.state.t > end_tol) {
    StepConfig c = cfg;
    c.dt = std::min(cfg.dt, T - result.state.t);
    SimState next;
    try {
      next = step(result.state, c, params, observer ? &sample : nullptr);
    } catch (const Error& e) {
      if (!is_numerical_stop(e.code())) throw;
      result.completed = false;
      result.reason = e.code();
      result.message = e.what();
      break;
    }
    if (observer) observer(result.state, sample);
    dt_used = c.dt;
    result.state = std::move(next);
    if (monitor) monitor(result.state, compute_diagnostics(result.state, dt_used));
    if (result.state.steps % stride == 0) emit(result.state, dt_used);
  }
  if (observer && result.completed) {
    rhs(result.state, params, cfg.mollify_eps, &sample);
    observer(result.state, sample);
  }
  if (last_snapshot != result.state.steps) emit(result.state, dt_used);
  return result;
}

}  // namespace stokesfilm
