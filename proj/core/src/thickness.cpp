#include "stokesfilm/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stokesfilm {
namespace {

using spectral::Complex;

/// Evaluates V and s at the same η with one shared power recurrence.
std::pair<double, double> evaluate_pair(const FlowHistory::Instant& inst, double eta) {
  const auto& a = inst.transport.coefficients();
  const auto& b = inst.source.coefficients();
  const std::size_t half = inst.transport.size() / 2;
  const double theta = kTwoPi * eta;
  const Complex step = std::polar(1.0, theta);
  Complex e = step;
  double va = a[0].real();
  double vb = b[0].real();
  for (std::size_t k = 1; k < half; ++k) {
    va += 2.0 * (a[k] * e).real();
    vb += 2.0 * (b[k] * e).real();
    e *= step;
  }
  const double c = std::cos(theta * static_cast<double>(half));
  return {va + a[half].real() * c, vb + b[half].real() * c};
}

struct Rate {
  double dalpha;
  double dexp;
};

Rate characteristic_rate(const FlowHistory::Instant& inst, double alpha) {
  const auto [v, s] = evaluate_pair(inst, alpha / inst.length);
  return {v - inst.mean_kappa_un * alpha, s};
}

/// Integrates the labels from the first record to t. When a trace is given,
/// α and the exponent of label 0 are appended after every substep.
void integrate_labels(const FlowHistory& history, std::vector<double>& alpha,
                      std::vector<double>& expo, double t, CharacteristicTrace* trace) {
  const auto& recs = history.records();
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  if (t < history.start_time() - tol || t > history.end_time() + tol) {
    throw Error(ErrorCode::invalid_argument, "characteristics: t outside the recorded history");
  }
  expo.assign(alpha.size(), 0.0);
  if (trace) {
    trace->times.push_back(recs.front().t);
    trace->path.push_back(alpha[0]);
    trace->exponent.push_back(0.0);
  }
  for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
    const double t0 = recs[k].t;
    if (t0 >= t - tol) break;
    const double t1 = std::min(recs[k + 1].t, t);
    const double dt = t1 - t0;
    const auto i0 = history.at(t0);
    const auto im = history.at(t0 + 0.5 * dt);
    const auto i1 = history.at(t1);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      const double a = alpha[j];
      const Rate k1 = characteristic_rate(i0, a);
      const Rate k2 = characteristic_rate(im, a + 0.5 * dt * k1.dalpha);
      const Rate k3 = characteristic_rate(im, a + 0.5 * dt * k2.dalpha);
      const Rate k4 = characteristic_rate(i1, a + dt * k3.dalpha);
      alpha[j] = a + dt / 6.0 * (k1.dalpha + 2.0 * k2.dalpha + 2.0 * k3.dalpha + k4.dalpha);
      expo[j] += dt / 6.0 * (k1.dexp + 2.0 * k2.dexp + 2.0 * k3.dexp + k4.dexp);
    }
    if (trace) {
      trace->times.push_back(t1);
      trace->path.push_back(alpha[0]);
      trace->exponent.push_back(expo[0]);
    }
  }
}

}  // namespace

void FlowHistory::record(double t, double length, double mean_kappa_un,
                         const ScalarField& transport, const ScalarField& source) {
  if (transport.size() != source.size()) {
    throw Error(ErrorCode::invalid_argument, "FlowHistory: field size mismatch");
  }
  if (records_.empty()) {
    n_ = transport.size();
  } else if (transport.size() != n_) {
    throw Error(ErrorCode::invalid_argument, "FlowHistory: grid size changed");
  } else if (!(t > records_.back().t)) {
    throw Error(ErrorCode::invalid_argument, "FlowHistory: times must increase");
  }
  records_.push_back({t, length, mean_kappa_un, spectral::forward(transport.span()),
                      spectral::forward(source.span())});
}

void FlowHistory::record(const SimState& state, const FlowSample& sample) {
  record(state.t, state.curve.length(), sample.mean_kappa_un, sample.transport, sample.source);
}

FlowObserver FlowHistory::observer() {
  return [this](const SimState& s, const FlowSample& f) { record(s, f); };
}

double FlowHistory::start_time() const {
  if (records_.empty()) throw Error(ErrorCode::invalid_argument, "FlowHistory: empty");
  return records_.front().t;
}

double FlowHistory::end_time() const {
  if (records_.empty()) throw Error(ErrorCode::invalid_argument, "FlowHistory: empty");
  return records_.back().t;
}

double FlowHistory::initial_length() const {
  if (records_.empty()) throw Error(ErrorCode::invalid_argument, "FlowHistory: empty");
  return records_.front().length;
}

FlowHistory::Instant FlowHistory::at(double t) const {
  if (records_.empty()) throw Error(ErrorCode::invalid_argument, "FlowHistory: empty");
  const std::size_t count = records_.size();
  const std::size_t npts = std::min<std::size_t>(4, count);
  // Interval containing t, then the stencil k-1 … k+2 clamped to the records.
  const auto it = std::upper_bound(records_.begin(), records_.end(), t,
                                   [](double v, const FlowRecord& r) { return v < r.t; });
  std::size_t k = it == records_.begin() ? 0 : static_cast<std::size_t>(it - records_.begin()) - 1;
  std::size_t first = k > 0 ? k - 1 : 0;
  first = std::min(first, count - npts);

  std::vector<double> w(npts, 1.0);
  for (std::size_t i = 0; i < npts; ++i) {
    for (std::size_t j = 0; j < npts; ++j) {
      if (i == j) continue;
      w[i] *= (t - records_[first + j].t) / (records_[first + i].t - records_[first + j].t);
    }
  }

  const std::size_t m = n_ / 2 + 1;
  std::vector<Complex> v(m), s(m);
  double L = 0.0, g = 0.0;
  for (std::size_t i = 0; i < npts; ++i) {
    const FlowRecord& r = records_[first + i];
    L += w[i] * r.length;
    g += w[i] * r.mean_kappa_un;
    for (std::size_t q = 0; q < m; ++q) {
      v[q] += w[i] * r.transport[q];
      s[q] += w[i] * r.source[q];
    }
  }
  return {L, g, spectral::TrigInterpolant(std::move(v), n_),
          spectral::TrigInterpolant(std::move(s), n_)};
}

ScalarField advect_h_mol(const SimState& state, const FlowSample& sample) {
  return thickness_rate(state.h, state.curve.length(), sample.transport, sample.source);
}

CharacteristicTrace trace_characteristic(const FlowHistory& history, double gamma0, double t) {
  CharacteristicTrace trace;
  trace.gamma0 = gamma0;
  std::vector<double> alpha{gamma0}, expo;
  integrate_labels(history, alpha, expo, t, &trace);
  return trace;
}

ScalarField solve_h_characteristics(const FlowHistory& history, const ScalarField& h0, double t) {
  const std::size_t n = h0.size();
  if (n < PeriodicCurve::kMinNodes || n % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "solve_h_characteristics: bad grid size");
  }
  const double L0 = history.initial_length();
  std::vector<double> alpha(n), expo;
  for (std::size_t j = 0; j < n; ++j) alpha[j] = L0 * grid_point(j, n);
  integrate_labels(history, alpha, expo, t, nullptr);
  const double L = history.at(t).length;

  for (std::size_t j = 0; j < n; ++j) {
    const double next = j + 1 < n ? alpha[j + 1] : alpha[0] + L;
    if (!(next > alpha[j])) {
      throw Error(ErrorCode::characteristic_crossing,
                  "solve_h_characteristics: labels " + std::to_string(j) + " and " +
                      std::to_string((j + 1) % n) + " crossed at t = " + std::to_string(t));
    }
  }

  // D(γ) = α(γ) - γL/L₀ and the exponent are L₀-periodic in γ.
  std::vector<double> D(n);
  for (std::size_t j = 0; j < n; ++j) D[j] = alpha[j] - grid_point(j, n) * L;
  const spectral::TrigInterpolant Di(D);
  const spectral::TrigInterpolant Ei(expo);
  const spectral::TrigInterpolant hi(h0.span());

  ScalarField h(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Solve α(γ) = ξ_k in the variable s = γ/L₀: sL + D(s) = ξ_k.
    const double target = L * grid_point(k, n);
    double s = (target - Di(target / L)) / L;
    for (int it = 0; it < 50; ++it) {
      const double f = s * L + Di(s) - target;
      const double df = L + Di.derivative(s);
      if (!(df > 0.0)) {
        throw Error(ErrorCode::characteristic_crossing,
                    "solve_h_characteristics: label map not increasing");
      }
      const double ds = f / df;
      s -= ds;
      if (std::abs(ds) < 1e-15) break;
    }
    h[k] = hi(s) * std::exp(Ei(s));
  }
  return h;
}

double verify_label_period(const FlowHistory& history, double t) {
  const double L0 = history.initial_length();
  std::vector<double> alpha{0.0, L0}, expo;
  integrate_labels(history, alpha, expo, t, nullptr);
  return std::abs(alpha[1] - alpha[0] - history.at(t).length);
}

PositivityReport positivity_certificate(const ScalarField& h) {
  if (h.size() == 0) throw Error(ErrorCode::invalid_argument, "positivity_certificate: empty");
  const auto it = std::min_element(h.begin(), h.end());
  PositivityReport r;
  r.index = static_cast<std::size_t>(it - h.begin());
  r.min_h = *it;
  r.eta = grid_point(r.index, h.size());
  r.positive = r.min_h > 0.0;
  return r;
}

void PositivityTrend::add(double t, const ScalarField& h) {
  t_.push_back(t);
  min_.push_back(positivity_certificate(h).min_h);
}

double PositivityTrend::overall_min() const {
  if (min_.empty()) return std::numeric_limits<double>::infinity();
  return *std::min_element(min_.begin(), min_.end());
}

double PositivityTrend::slope() const {
  const std::size_t n = t_.size();
  if (n < 2) return 0.0;
  const double tm = mean(t_);
  const double hm = mean(min_);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (t_[i] - tm) * (min_[i] - hm);
    den += (t_[i] - tm) * (t_[i] - tm);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace stokesfilm
