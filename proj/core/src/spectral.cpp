#include "stokesfilm/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "stokesfilm/error.hpp"

namespace stokesfilm::spectral {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// FFTW planning is not thread-safe; execution through the new-array API is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    const int ni = static_cast<int>(n);
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    PlanPair p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c_1d(ni, in, out, flags);
    p.c2r = fftw_plan_dft_c2r_1d(ni, out, in, flags);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

void require_even(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorCode::invalid_argument,
                "spectral: grid size must be even and >= 2, got " + std::to_string(n));
  }
}

}  // namespace

std::vector<Complex> forward(std::span<const double> f) {
  const std::size_t n = f.size();
  require_even(n);
  std::vector<double> in(f.begin(), f.end());
  std::vector<Complex> out(n / 2 + 1);
  fftw_execute_dft_r2c(plans().get(n).r2c, in.data(), as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<double> inverse(std::span<const Complex> coeffs, std::size_t n) {
  require_even(n);
  if (coeffs.size() != n / 2 + 1) {
    throw Error(ErrorCode::invalid_argument, "spectral::inverse: coefficient count mismatch");
  }
  // c2r overwrites its input.
  std::vector<Complex> in(coeffs.begin(), coeffs.end());
  in.front() = Complex(in.front().real(), 0.0);
  in.back() = Complex(in.back().real(), 0.0);
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plans().get(n).c2r, as_fftw(in.data()), out.data());
  return out;
}

std::vector<double> apply_multiplier(std::span<const double> f,
                                     const std::function<Complex(int)>& m) {
  auto c = forward(f);
  const std::size_t half = f.size() / 2;
  for (std::size_t k = 0; k < half; ++k) c[k] *= m(static_cast<int>(k));
  c[half] *= m(static_cast<int>(half)).real();
  return inverse(c, f.size());
}

std::vector<double> apply_multiplier(std::span<const double> f,
                                     std::span<const Complex> table) {
  const std::size_t half = f.size() / 2;
  if (table.size() != half + 1) {
    throw Error(ErrorCode::invalid_argument, "apply_multiplier: table size mismatch");
  }
  auto c = forward(f);
  for (std::size_t k = 0; k < half; ++k) c[k] *= table[k];
  c[half] *= table[half].real();
  return inverse(c, f.size());
}

std::vector<double> derivative(std::span<const double> f, int order) {
  if (order < 1 || order > 4) {
    throw Error(ErrorCode::invalid_argument,
                "derivative: order must be in 1..4, got " + std::to_string(order));
  }
  require_even(f.size());
  return apply_multiplier(f, [order](int k) {
    const Complex ik(0.0, 2.0 * std::numbers::pi * k);
    Complex r = 1.0;
    for (int i = 0; i < order; ++i) r *= ik;
    return r;
  });
}

std::vector<double> periodic_antiderivative(std::span<const double> f) {
  require_even(f.size());
  return apply_multiplier(f, [](int k) -> Complex {
    if (k == 0) return 0.0;
    return 1.0 / Complex(0.0, 2.0 * std::numbers::pi * k);
  });
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples)
    : coeffs_(forward(samples)), n_(samples.size()) {}

TrigInterpolant::TrigInterpolant(std::vector<Complex> coeffs, std::size_t n)
    : coeffs_(std::move(coeffs)), n_(n) {
  if (coeffs_.size() != n_ / 2 + 1) {
    throw Error(ErrorCode::invalid_argument, "TrigInterpolant: coefficient count mismatch");
  }
}

double TrigInterpolant::operator()(double eta) const {
  const std::size_t half = n_ / 2;
  const double theta = 2.0 * std::numbers::pi * eta;
  const Complex step = std::polar(1.0, theta);
  Complex e = step;
  double sum = coeffs_[0].real();
  for (std::size_t k = 1; k < half; ++k) {
    sum += 2.0 * (coeffs_[k] * e).real();
    e *= step;
  }
  sum += coeffs_[half].real() * std::cos(theta * static_cast<double>(half));
  return sum;
}

double TrigInterpolant::derivative(double eta) const {
  const std::size_t half = n_ / 2;
  const double theta = 2.0 * std::numbers::pi * eta;
  const Complex step = std::polar(1.0, theta);
  Complex e = step;
  double sum = 0.0;
  for (std::size_t k = 1; k < half; ++k) {
    const Complex ik(0.0, 2.0 * std::numbers::pi * static_cast<double>(k));
    sum += 2.0 * (ik * coeffs_[k] * e).real();
    e *= step;
  }
  const double kn = 2.0 * std::numbers::pi * static_cast<double>(half);
  sum -= kn * coeffs_[half].real() * std::sin(theta * static_cast<double>(half));
  return sum;
}

}  // namespace stokesfilm::spectral
