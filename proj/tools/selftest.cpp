#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "cli.hpp"
#include "stokesfilm/config.hpp"
#include "stokesfilm/geometry.hpp"
#include "stokesfilm/singular_ops.hpp"
#include "stokesfilm/snapshot_io.hpp"

namespace stokesfilm::cli {
namespace {

ScalarField sample(std::size_t n, const std::function<double(double)>& f) {
  ScalarField out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = f(grid_point(j, n));
  return out;
}

SimState state_for(InitialCurve ic, std::size_t n) {
  RunConfig cfg;
  cfg.ic = ic;
  cfg.N = n;
  return build_initial_state(cfg);
}

struct Check {
  const char* name;
  std::function<double()> measure;  // returns the error
  double tol;
};

}  // namespace

bool selftest(std::ostream& out, bool quiet) {
  const std::size_t n = 128;
  const ScalarField f = sample(n, [](double x) {
    return 0.3 + std::sin(kTwoPi * x) + 0.5 * std::cos(6 * kPi * x) + 0.2 * std::sin(14 * kPi * x);
  });

  const Check checks[] = {
      {"hilbert squared is minus identity on zero-mean fields",
       [&] {
         const ScalarField hh = hilbert(hilbert(f));
         const double m = mean(f.span());
         double e = 0.0;
         for (std::size_t j = 0; j < n; ++j) e = std::max(e, std::abs(hh[j] + f[j] - m));
         return e;
       },
       1e-10},
      {"square root of half-Laplacian squares to half-Laplacian",
       [&] {
         return max_abs_difference(half_laplacian_sqrt(half_laplacian_sqrt(f)),
                                   half_laplacian(f));
       },
       1e-10},
      {"circle curvature is -1/R",
       [&] {
         const SimState s = state_for(CircleIC{2.0}, n);
         const ScalarField k = curvature(s.curve);
         double e = 0.0;
         for (double v : k) e = std::max(e, std::abs(v + 0.5));
         return e;
       },
       1e-10},
      {"circle is an equilibrium",
       [&] {
         const SimState s = state_for(CircleIC{1.0}, n);
         const VectorField u = velocity_on_curve(s.curve, FlowParams{});
         double e = 0.0;
         for (const Vec2& v : u) e = std::max(e, norm(v));
         return e;
       },
       1e-10},
      {"ellipse velocity has zero flux",
       [&] {
         const SimState s = state_for(EllipseIC{2.0, 1.0}, n);
         const VectorField u = velocity_on_curve(s.curve, FlowParams{});
         const VectorField nn = normal(s.curve);
         double flux = 0.0;
         for (std::size_t j = 0; j < n; ++j) flux += dot(u[j], nn[j]);
         return std::abs(flux / static_cast<double>(n));
       },
       1e-8},
      {"pressure outside minus inside a unit circle is -2",
       [&] {
         const SimState s = state_for(CircleIC{1.0}, n);
         const double jump = pressure_at_point(s.curve, {0.0, 2.0}, FlowParams{}) -
                             pressure_at_point(s.curve, {0.0, 0.5}, FlowParams{});
         return std::abs(jump + 2.0);
       },
       1e-6},
      {"short ellipse run conserves area and layer mass",
       [&] {
         const SimState s0 = state_for(EllipseIC{2.0, 1.0}, 64);
         StepConfig cfg;
         cfg.dt = 2e-3;
         const RunResult r = run(s0, cfg, FlowParams{}, 0.1, 1000);
         const double da = std::abs(enclosed_area(r.state.curve) / enclosed_area(s0.curve) - 1.0);
         const double dm =
             std::abs(layer_mass(r.state.curve, r.state.h) / layer_mass(s0.curve, s0.h) - 1.0);
         const bool shorter = geometric_length(r.state.curve) < geometric_length(s0.curve);
         return r.completed && shorter ? std::max(da, dm) : 1.0;
       },
       1e-9},
      {"inner gradient stays trace free",
       [&] {
         std::mt19937_64 rng(7);
         std::uniform_real_distribution<double> u(-1.0, 1.0);
         double e = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const double a = u(rng);
           const Mat2 B1{a, u(rng), u(rng), -a};
           const double th = kPi * u(rng);
           const Vec2 tau{std::cos(th), std::sin(th)};
           const auto rep = inner_gradient_B2(B1, tau, rotate_quarter(tau), 1.0, 0.1 + std::abs(u(rng)));
           e = std::max(e, std::abs(rep.B2.trace()));
         }
         return e;
       },
       1e-12},
      {"snapshot text round trip",
       [&] {
         const SimState s = state_for(EllipseIC{2.0, 1.0}, 32);
         const std::string line = format_snapshot(make_snapshot(s, compute_diagnostics(s)));
         return format_snapshot(parse_snapshot(line)) == line ? 0.0 : 1.0;
       },
       0.0},
  };

  bool all = true;
  for (const auto& c : checks) {
    double err = 0.0;
    bool ok = false;
    std::string note;
    try {
      err = c.measure();
      ok = err <= c.tol;
    } catch (const std::exception& e) {
      note = e.what();
    }
    all = all && ok;
    if (!quiet || !ok) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g (tol %.1g)", err, c.tol);
      out << (ok ? "PASS " : "FAIL ") << c.name << ": " << (note.empty() ? buf : note) << "\n";
    }
  }
  out << (all ? "selftest passed" : "selftest FAILED") << "\n";
  return all;
}

}  // namespace stokesfilm::cli
