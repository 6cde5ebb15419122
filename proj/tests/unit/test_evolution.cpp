#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "stokesfilm/config.hpp"
#include "stokesfilm/evolution.hpp"
#include "stokesfilm/geometry.hpp"

using namespace stokesfilm;

namespace {

SimState make_state(InitialCurve ic, std::size_t n, InitialThickness h0 = ConstantH0{1.0}) {
  RunConfig cfg;
  cfg.ic = ic;
  cfg.h0 = h0;
  cfg.N = n;
  return build_initial_state(cfg);
}

const InitialCurve kEllipse = EllipseIC{2.0, 1.0};
const InitialCurve kCircle = CircleIC{1.0};
const InitialCurve kMode3 = FourierIC{1.0, {{3, 0.05, 0.0}}};

ScalarField sample(std::size_t n, double (*f)(double)) {
  ScalarField out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = f(grid_point(j, n));
  return out;
}

}  // namespace

TEST(Psi, VanishesOnCircle) {
  const SimState s = make_state(kCircle, 64);
  for (double v : compute_psi(s.curve, ScalarField(64, 0.0))) EXPECT_EQ(v, 0.0);
}

TEST(Psi, ZeroMeanIntegrandIsPeriodic) {
  // κ ≡ -1 on the unit circle; un = cos 2πη has zero mean.
  const SimState s = make_state(kCircle, 64);
  const ScalarField un = sample(64, [](double x) { return std::cos(2 * M_PI * x); });
  const ScalarField psi = compute_psi(s.curve, un);
  EXPECT_NEAR(psi[0], 0.0, 1e-15);
  // ψ = -L ∫₀^η cos 2πr dr = -L sin(2πη) / 2π.
  for (std::size_t j = 0; j < 64; ++j) {
    EXPECT_NEAR(psi[j], -s.curve.length() * std::sin(2 * M_PI * grid_point(j, 64)) / (2 * M_PI),
                1e-13);
  }
}

TEST(Psi, ConstantIntegrandIsLinearRamp) {
  const SimState s = make_state(kCircle, 64);
  const double c = 0.3;
  const ScalarField kappa(64, 1.0), un(64, c);
  const ScalarField psi = compute_psi(s.curve, kappa, un);
  const double L = s.curve.length();
  for (std::size_t j = 0; j < 64; ++j) EXPECT_NEAR(psi[j], L * c * grid_point(j, 64), 1e-13);
  EXPECT_NEAR(L * c, -length_rate(L, kappa, un), 1e-14);
}

TEST(LengthRate, CircleCases) {
  const SimState s = make_state(CircleIC{2.0}, 64);
  EXPECT_EQ(length_rate(s.curve, ScalarField(64, 0.0)), 0.0);
  // Uniform outward speed v: d(2πR)/dt = 2πv.
  EXPECT_NEAR(length_rate(s.curve, ScalarField(64, 0.25)), 2 * M_PI * 0.25, 1e-13);
  // un orthogonal to κ in L².
  const ScalarField un = sample(64, [](double x) { return std::sin(4 * M_PI * x); });
  EXPECT_NEAR(length_rate(s.curve, un), 0.0, 1e-14);
}

TEST(ThicknessRate, ManufacturedResidual) {
  // h = 2 + sin 2πη + 0.3 cos 6πη, V = L(0.3 + 0.1 cos 2πη), s = 0.2 sin 4πη.
  const std::size_t n = 256;
  const double L = 5.0;
  ScalarField h(n), V(n), s(n), exact(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid_point(j, n);
    h[j] = 2 + std::sin(2 * M_PI * x) + 0.3 * std::cos(6 * M_PI * x);
    const double hx = 2 * M_PI * std::cos(2 * M_PI * x) - 0.3 * 6 * M_PI * std::sin(6 * M_PI * x);
    V[j] = L * (0.3 + 0.1 * std::cos(2 * M_PI * x));
    s[j] = 0.2 * std::sin(4 * M_PI * x);
    exact[j] = -(V[j] / L) * hx + s[j] * h[j];
  }
  EXPECT_LT(max_abs_difference(thickness_rate(h, L, V, s), exact), 1e-8);
  const ScalarField zero(n, 0.0);
  EXPECT_EQ(max_abs(thickness_rate(ScalarField(n, 1.5), L, V, zero).span()), 0.0);
}

TEST(ThicknessRate, IntegratesTravellingWave) {
  // V = cL, s = σ: h(η, t) = h₀(η - ct) e^{σt}. RK4 on the method of lines.
  const std::size_t n = 128;
  const double L = 3.0, c = 0.4, sigma = -0.3, T = 1.0;
  const int steps = 200;
  const double dt = T / steps;
  auto h0 = [](double x) { return 1.5 + 0.5 * std::sin(2 * M_PI * x); };
  ScalarField h(n);
  for (std::size_t j = 0; j < n; ++j) h[j] = h0(grid_point(j, n));
  const ScalarField V(n, c * L), s(n, sigma);
  auto f = [&](const ScalarField& x) { return thickness_rate(x, L, V, s); };
  auto axpy = [](const ScalarField& x, double a, const ScalarField& y) {
    ScalarField r = x;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += a * y[j];
    return r;
  };
  for (int i = 0; i < steps; ++i) {
    const ScalarField k1 = f(h), k2 = f(axpy(h, dt / 2, k1)), k3 = f(axpy(h, dt / 2, k2)),
                      k4 = f(axpy(h, dt, k3));
    for (std::size_t j = 0; j < n; ++j) h[j] += dt / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    EXPECT_NEAR(h[j], h0(grid_point(j, n) - c * T) * std::exp(sigma * T), 1e-8);
  }
}

TEST(Rhs, CircleIsFullEquilibrium) {
  SimState s = make_state(kCircle, 128, FourierH0{1.0, {{2, 0.3, 0.0}}});
  for (double eps : {0.0, 0.02}) {
    const StateRate r = rhs(s, FlowParams{}, eps);
    for (const Vec2& v : r.dGamma) EXPECT_LT(norm(v), 1e-12);
    EXPECT_LT(std::abs(r.dLdt), 1e-12);
    EXPECT_LT(max_abs(r.dh.span()), 1e-11);
  }
}

TEST(Rhs, PerturbedCircleShrinksLength) {
  const SimState s = make_state(kMode3, 128);
  FlowSample sample;
  const StateRate r = rhs(s, FlowParams{}, 0.0, &sample);
  EXPECT_LT(r.dLdt, 0.0);
  EXPECT_EQ(r.dLdt, sample.dLdt);
  // ψ + η∂_tL is periodic and vanishes at η = 0.
  EXPECT_EQ(sample.psi_shift[0], 0.0);
}

TEST(Rhs, HeldTangentialGaugeKeepsArcLength) {
  // d/dt |∂_ηΓ| must equal ∂_tL so the parametrisation stays arc length.
  const SimState s = make_state(kEllipse, 128);
  const StateRate r = rhs(s, FlowParams{});
  const VectorField d1 = derivative(s.curve.as_field(), 1);
  const VectorField dv = derivative(r.dGamma, 1);
  for (std::size_t j = 0; j < 128; ++j) {
    const double speed_rate = dot(d1[j], dv[j]) / norm(d1[j]);
    EXPECT_NEAR(speed_rate, r.dLdt, 1e-6);
  }
}

TEST(Step, CircleIsFixedPoint) {
  const SimState s0 = make_state(kCircle, 128, FourierH0{1.0, {{3, 0.2, 0.0}}});
  SimState s = s0;
  StepConfig cfg;
  for (int i = 0; i < 100; ++i) s = step(s, cfg, FlowParams{});
  EXPECT_LT(max_distance(s.curve.as_field(), s0.curve.as_field()), 1e-8);
  EXPECT_NEAR(s.curve.length(), s0.curve.length(), 1e-8);
  EXPECT_LT(max_abs_difference(s.h, s0.h), 1e-8);
  EXPECT_EQ(s.steps, 100u);
  EXPECT_NEAR(s.t, 0.1, 1e-12);
}

TEST(Step, EulerAdvancesLengthByRate) {
  const SimState s0 = make_state(kMode3, 64);
  StepConfig cfg;
  cfg.integrator = Integrator::euler;
  cfg.dt = 1e-3;
  cfg.resample_every = 1000;
  cfg.tol_param = 1.0;
  const StateRate r = rhs(s0, FlowParams{});
  const SimState s1 = step(s0, cfg, FlowParams{});
  EXPECT_NEAR(s1.integrated_length, s0.integrated_length + cfg.dt * r.dLdt, 1e-15);
  EXPECT_NEAR(s1.curve.length(), s1.integrated_length, 1e-15);
}

TEST(Step, MonitorsStopTheRun) {
  const SimState s0 = make_state(kEllipse, 64);
  StepConfig cfg;
  cfg.energy_ceiling = 1.0;
  try {
    step(s0, cfg, FlowParams{});
    FAIL() << "expected energy_ceiling";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::energy_ceiling);
  }
  cfg.energy_ceiling = std::numeric_limits<double>::infinity();
  cfg.arc_chord_limit = 1.0;
  try {
    step(s0, cfg, FlowParams{});
    FAIL() << "expected approaching_self_intersection";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::approaching_self_intersection);
  }
}

TEST(Step, NegativeThicknessIsPositivityViolation) {
  SimState s = make_state(kCircle, 64);
  s.h[5] = -0.1;
  try {
    step(s, StepConfig{}, FlowParams{});
    FAIL() << "expected positivity_violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::positivity_violation);
  }
}

TEST(StepConfig, Validation) {
  StepConfig c;
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = StepConfig{};
  c.mollify_eps = -1.0;
  EXPECT_THROW(c.validate(), Error);
  c = StepConfig{};
  c.resample_every = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Run, ZeroDurationReturnsInitialState) {
  const SimState s0 = make_state(kEllipse, 64);
  int snaps = 0;
  const RunResult r = run(s0, StepConfig{}, FlowParams{}, 0.0, 10,
                          [&](const SimState&, const Diagnostics&) { ++snaps; });
  EXPECT_TRUE(r.completed);
  EXPECT_EQ(snaps, 1);
  EXPECT_EQ(r.snapshots, 1u);
  EXPECT_EQ(r.state.curve.nodes(), s0.curve.nodes());
}

TEST(Run, SnapshotCountAndFinalTime) {
  const SimState s0 = make_state(kMode3, 64);
  StepConfig cfg;
  cfg.dt = 1e-3;
  std::vector<double> times;
  const RunResult r = run(s0, cfg, FlowParams{}, 0.1, 10,
                          [&](const SimState& s, const Diagnostics&) { times.push_back(s.t); });
  ASSERT_TRUE(r.completed);
  EXPECT_EQ(times.size(), 11u);
  EXPECT_EQ(times.front(), 0.0);
  EXPECT_NEAR(times.back(), 0.1, 1e-12);
  EXPECT_EQ(r.state.steps, 100u);
}

TEST(Run, LastStepLandsOnFinalTime) {
  const SimState s0 = make_state(kMode3, 64);
  StepConfig cfg;
  cfg.dt = 0.03;
  const RunResult r = run(s0, cfg, FlowParams{}, 0.1, 100);
  ASSERT_TRUE(r.completed);
  EXPECT_DOUBLE_EQ(r.state.t, 0.1);
  EXPECT_EQ(r.state.steps, 4u);
}

TEST(Run, CircleDiagnosticsStayConstant) {
  const SimState s0 = make_state(kCircle, 64, FourierH0{1.0, {{1, 0.2, 0.0}}});
  std::vector<Diagnostics> d;
  StepConfig cfg;
  cfg.dt = 1e-2;
  const RunResult r =
      run(s0, cfg, FlowParams{}, 1.0, 10, [&](const SimState&, const Diagnostics& x) { d.push_back(x); });
  ASSERT_TRUE(r.completed);
  for (const auto& x : d) {
    EXPECT_NEAR(x.length, d[0].length, 1e-8);
    EXPECT_NEAR(x.area, d[0].area, 1e-8);
    EXPECT_NEAR(x.energy / d[0].energy, 1.0, 1e-8);
    EXPECT_NEAR(x.layer_mass, d[0].layer_mass, 1e-8);
    EXPECT_NEAR(x.h_min, d[0].h_min, 1e-8);
  }
}

TEST(Run, EllipseConservesAreaWhileShortening) {
  const SimState s0 = make_state(kEllipse, 128);
  StepConfig cfg;
  cfg.dt = 2e-3;
  std::vector<Diagnostics> d;
  const RunResult r =
      run(s0, cfg, FlowParams{}, 0.3, 1000000, {}, {},
          [&](const SimState&, const Diagnostics& x) { d.push_back(x); });
  ASSERT_TRUE(r.completed);
  const double a0 = enclosed_area(s0.curve);
  double prevL = s0.curve.length(), prevIso = iso_ratio(s0.curve);
  for (const auto& x : d) {
    EXPECT_NEAR(x.area / a0, 1.0, 1e-6);
    EXPECT_LT(x.length, prevL);
    EXPECT_LT(x.iso_ratio, prevIso);
    prevL = x.length;
    prevIso = x.iso_ratio;
  }
}

TEST(Run, ReportsNumericalStopInsteadOfThrowing) {
  const SimState s0 = make_state(kEllipse, 64);
  StepConfig cfg;
  cfg.energy_ceiling = 1.0;
  int snaps = 0;
  const RunResult r = run(s0, cfg, FlowParams{}, 1.0, 10,
                          [&](const SimState&, const Diagnostics&) { ++snaps; });
  EXPECT_FALSE(r.completed);
  EXPECT_EQ(r.reason, ErrorCode::energy_ceiling);
  EXPECT_EQ(r.state.steps, 0u);
  EXPECT_GE(snaps, 1);
}

TEST(Mollified, InitialStateIsSmoothedAndArcLength) {
  const SimState s0 = make_state(kEllipse, 128);
  const SimState m = mollify_initial_state(s0, 0.05);
  EXPECT_LT(arclength_deviation(m.curve), 1e-8);
  EXPECT_LT(m.curve.length(), s0.curve.length());
  EXPECT_EQ(mollify_initial_state(s0, 0.0).curve.nodes(), s0.curve.nodes());
}

TEST(Mollified, ConvergesToPlainRunAsEpsShrinks) {
  const SimState plain0 = make_state(kEllipse, 128);
  StepConfig cfg;
  cfg.dt = 2e-3;
  const PeriodicCurve ref = run(plain0, cfg, FlowParams{}, 0.1, 1000).state.curve;
  double prev = 1e300;
  for (double eps : {0.1, 0.03, 0.01}) {
    StepConfig c = cfg;
    c.mollify_eps = eps;
    const RunResult r = run(mollify_initial_state(plain0, eps), c, FlowParams{}, 0.1, 1000);
    ASSERT_TRUE(r.completed);
    const double d = curve_distance(r.state.curve, ref);
    EXPECT_LT(d, prev);
    prev = d;
  }
}
