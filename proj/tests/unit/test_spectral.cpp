#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "stokesfilm/spectral.hpp"
#include "stokesfilm/types.hpp"

using namespace stokesfilm;
namespace sp = stokesfilm::spectral;

namespace {

std::vector<double> sample(std::size_t n, double (*f)(double)) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(grid_point(j, n));
  return v;
}

double smooth(double x) { return std::exp(std::sin(2 * M_PI * x)) + 0.3 * std::cos(6 * M_PI * x); }

}  // namespace

TEST(Spectral, ForwardUsesUnitNormalisation) {
  const std::size_t n = 32;
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = 0.5 + 2.0 * std::cos(2 * M_PI * 3 * grid_point(j, n));
  const auto c = sp::forward(f);
  ASSERT_EQ(c.size(), n / 2 + 1);
  EXPECT_NEAR(c[0].real(), 0.5, 1e-14);
  EXPECT_NEAR(c[3].real(), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(c[2]), 0.0, 1e-14);
}

TEST(Spectral, RoundTripIsIdentity) {
  const auto f = sample(64, smooth);
  const auto g = sp::inverse(sp::forward(f), 64);
  for (std::size_t j = 0; j < f.size(); ++j) EXPECT_NEAR(g[j], f[j], 1e-14);
}

TEST(Spectral, DerivativeOfTrigPolynomialIsExact) {
  const std::size_t n = 64;
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = std::sin(2 * M_PI * 5 * grid_point(j, n));
  const auto d1 = sp::derivative(f, 1);
  const auto d3 = sp::derivative(f, 3);
  const double k = 2 * M_PI * 5;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid_point(j, n);
    EXPECT_NEAR(d1[j], k * std::cos(k * x), 1e-10);
    EXPECT_NEAR(d3[j], -k * k * k * std::cos(k * x), 1e-7);
  }
}

TEST(Spectral, DerivativeRejectsBadOrder) {
  std::vector<double> f(16, 1.0);
  EXPECT_THROW(sp::derivative(f, 0), Error);
  EXPECT_THROW(sp::derivative(f, 5), Error);
}

TEST(Spectral, OddMultiplierAnnihilatesNyquist) {
  const std::size_t n = 16;
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = (j % 2 == 0) ? 1.0 : -1.0;
  const auto g = sp::apply_multiplier(f, [](int k) { return sp::Complex(0.0, k > 0 ? -1.0 : 0.0); });
  for (double v : g) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(Spectral, AntiderivativeDifferentiatesBack) {
  const auto f = sample(128, smooth);
  const auto F = sp::periodic_antiderivative(f);
  const auto dF = sp::derivative(F, 1);
  const double m = mean(f);
  for (std::size_t j = 0; j < f.size(); ++j) EXPECT_NEAR(dF[j], f[j] - m, 1e-12);
  EXPECT_NEAR(mean(F), 0.0, 1e-15);
}

TEST(Spectral, InterpolantMatchesOffGrid) {
  const auto f = sample(64, smooth);
  const sp::TrigInterpolant p(f);
  for (double x : {0.013, 0.37, 0.5, 0.981, 1.25}) {
    EXPECT_NEAR(p(x), smooth(x - std::floor(x)), 1e-12);
  }
  for (std::size_t j = 0; j < f.size(); ++j) EXPECT_NEAR(p(grid_point(j, 64)), f[j], 1e-13);
  // d/dx exp(sin 2πx) + 0.3 cos 6πx
  const double x = 0.21;
  const double exact = 2 * M_PI * std::cos(2 * M_PI * x) * std::exp(std::sin(2 * M_PI * x)) -
                       0.3 * 6 * M_PI * std::sin(6 * M_PI * x);
  EXPECT_NEAR(p.derivative(x), exact, 1e-10);
}
