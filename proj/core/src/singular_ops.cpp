#include "stokesfilm/singular_ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "stokesfilm/geometry.hpp"
#include "stokesfilm/spectral.hpp"

namespace stokesfilm {
namespace {

using spectral::Complex;

MultiplierTable table_from(std::size_t n, const std::function<Complex(int)>& m) {
  MultiplierTable t;
  t.values.resize(n);
  const int half = static_cast<int>(n / 2);
  for (int mode = -half; mode < half; ++mode) t.values[mode + half] = m(mode);
  return t;
}

/// Table for modes k = 0 … N/2 as used by spectral::apply_multiplier.
std::vector<Complex> nonnegative_half(const MultiplierTable& t) {
  const int n = static_cast<int>(t.size());
  std::vector<Complex> half(n / 2 + 1);
  for (int k = 0; k < n / 2; ++k) half[k] = t.at(k);
  half[n / 2] = t.at(-n / 2);
  return half;
}

/// Auxiliary grid resolving a kernel of width eps, at least 4x the field grid.
std::size_t fine_grid_size(std::size_t n, double eps) {
  const double wanted = std::max(4.0 * static_cast<double>(n), 64.0 / eps);
  return std::bit_ceil(static_cast<std::size_t>(std::ceil(wanted)));
}

/// Fourier coefficients k̂(n), n = 0 … N/2, of a 1-periodic kernel sampled on
/// a fine grid of size M.
std::vector<Complex> kernel_coefficients(std::size_t n, std::size_t m,
                                         const std::function<double(double)>& kernel) {
  std::vector<double> samples(m);
  for (std::size_t j = 0; j < m; ++j) samples[j] = kernel(grid_point(j, m));
  auto c = spectral::forward(samples);
  c.resize(n / 2 + 1);
  return c;
}

void require_positive(double eps, const char* what) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": eps must be positive");
  }
}

/// Multiplier of y ↦ ½ log(4 sin²(πy) + 4π²ε²) for modes 0 … N/2; exact
/// -1/(2|k|) when eps = 0.
class LogKernelCache {
 public:
  std::vector<Complex> get(std::size_t n, double eps) {
    if (eps == 0.0) {
      std::vector<Complex> t(n / 2 + 1);
      for (std::size_t k = 1; k <= n / 2; ++k) t[k] = -0.5 / static_cast<double>(k);
      return t;
    }
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, eps);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double e2 = 4.0 * kPi * kPi * eps * eps;
    auto t = kernel_coefficients(n, fine_grid_size(n, eps), [e2](double y) {
      const double s = std::sin(kPi * y);
      return 0.5 * std::log(4.0 * s * s + e2);
    });
    cache_.emplace(key, t);
    return t;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, double>, std::vector<Complex>> cache_;
};

LogKernelCache& log_kernels() {
  static LogKernelCache cache;
  return cache;
}

}  // namespace

Complex MultiplierTable::at(int mode) const {
  const int half = static_cast<int>(values.size() / 2);
  if (mode < -half || mode >= half) {
    throw Error(ErrorCode::invalid_argument, "MultiplierTable: mode out of range");
  }
  return values[mode + half];
}

bool MultiplierTable::is_hermitian(double tol) const {
  const int half = static_cast<int>(values.size() / 2);
  for (int k = 1; k < half; ++k) {
    if (std::abs(at(-k) - std::conj(at(k))) > tol) return false;
  }
  return std::abs(at(-half).imag()) <= tol && std::abs(at(0).imag()) <= tol;
}

ScalarField MultiplierTable::apply(const ScalarField& f) const {
  if (f.size() != values.size()) {
    throw Error(ErrorCode::invalid_argument, "MultiplierTable::apply: size mismatch");
  }
  return ScalarField(spectral::apply_multiplier(f.span(), nonnegative_half(*this)));
}

MultiplierTable hilbert_multiplier(std::size_t n) {
  const int nyquist = -static_cast<int>(n / 2);
  // The odd multiplier has no real part at Nyquist, so that mode is dropped.
  return table_from(n, [nyquist](int k) -> Complex {
    if (k == 0 || k == nyquist) return 0.0;
    return Complex(0.0, k > 0 ? -1.0 : 1.0);
  });
}

MultiplierTable half_laplacian_multiplier(std::size_t n) {
  return table_from(n, [](int k) -> Complex { return std::abs(k); });
}

MultiplierTable half_laplacian_sqrt_multiplier(std::size_t n) {
  return table_from(n, [](int k) -> Complex { return std::sqrt(std::abs(static_cast<double>(k))); });
}

MultiplierTable mollifier_multiplier(std::size_t n, double eps) {
  return table_from(n, [eps](int k) -> Complex {
    const double a = eps * static_cast<double>(k);
    return std::exp(-a * a);
  });
}

ScalarField hilbert(const ScalarField& f) { return hilbert_multiplier(f.size()).apply(f); }

ScalarField half_laplacian(const ScalarField& f) {
  return half_laplacian_multiplier(f.size()).apply(f);
}

ScalarField half_laplacian_sqrt(const ScalarField& f) {
  return half_laplacian_sqrt_multiplier(f.size()).apply(f);
}

ScalarField hilbert_regularized(const ScalarField& f, double eps) {
  require_positive(eps, "hilbert_regularized");
  const std::size_t n = f.size();
  const double e2 = eps * eps;
  // tan/(tan² + ε²) written without the pole of tan at y = 1/2.
  const auto k = kernel_coefficients(n, fine_grid_size(n, eps), [e2](double y) {
    const double s = std::sin(kPi * y);
    const double c = std::cos(kPi * y);
    return s * c / (s * s + e2 * c * c);
  });
  return ScalarField(spectral::apply_multiplier(f.span(), k));
}

ScalarField half_laplacian_regularized(const ScalarField& f, double eps) {
  require_positive(eps, "half_laplacian_regularized");
  const std::size_t n = f.size();
  const double e2 = eps * eps;
  const auto k = kernel_coefficients(n, fine_grid_size(n, eps), [e2](double y) {
    const double s = std::sin(kPi * y);
    return 1.0 / (s * s + e2);
  });
  std::vector<Complex> m(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) m[i] = 0.5 * (k[0].real() - k[i].real());
  return ScalarField(spectral::apply_multiplier(f.span(), m));
}

ScalarField mollify(const ScalarField& f, double eps) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::invalid_argument, "mollify: eps must be >= 0");
  if (eps == 0.0) return f;
  return mollifier_multiplier(f.size(), eps).apply(f);
}

VectorField mollify(const VectorField& f, double eps) {
  return VectorField::from_components(mollify(f.x(), eps), mollify(f.y(), eps));
}

PeriodicCurve mollify(const PeriodicCurve& curve, double eps) {
  return PeriodicCurve(mollify(curve.as_field(), eps).values, curve.length());
}

std::vector<ScalarField> log_layer(const std::vector<ScalarField>& densities,
                                   const PeriodicCurve& curve, double reg_eps) {
  const std::size_t n = curve.size();
  for (const auto& g : densities) {
    if (g.size() != n) {
      throw Error(ErrorCode::invalid_argument, "log_layer: density size mismatch");
    }
  }
  if (!(reg_eps >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "log_layer: reg_eps must be >= 0");
  }

  const auto singular = log_kernels().get(n, reg_eps);
  std::vector<ScalarField> out;
  out.reserve(densities.size());
  for (const auto& g : densities) {
    out.emplace_back(spectral::apply_multiplier(g.span(), singular));
  }

  const auto& p = curve.nodes();
  const double inv_n = 1.0 / static_cast<double>(n);
  // 4 sin²(π k / N) depends only on the index offset.
  std::vector<double> sin2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sin(kPi * grid_point(k, n));
    sin2[k] = 4.0 * s * s;
  }
  const double reg_len2 = reg_eps * reg_eps * curve.length() * curve.length();
  const double reg_circ2 = 4.0 * kPi * kPi * reg_eps * reg_eps;

  std::vector<double> diag(n);
  if (reg_eps == 0.0) {
    const VectorField d1 = derivative(curve.as_field(), 1);
    for (std::size_t i = 0; i < n; ++i) diag[i] = std::log(norm(d1[i]) / kTwoPi);
  } else {
    const double d = 0.5 * std::log(reg_len2 / reg_circ2);
    std::fill(diag.begin(), diag.end(), d);
  }

  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        row[j] = diag[i];
        continue;
      }
      const double chord2 = norm2(p[i] - p[j]);
      if (chord2 == 0.0) {
        throw Error(ErrorCode::self_intersection,
                    "log_layer: nodes " + std::to_string(i) + " and " + std::to_string(j) +
                        " coincide");
      }
      const std::size_t k = i > j ? i - j : j - i;
      row[j] = 0.5 * std::log((chord2 + reg_len2) / (sin2[k] + reg_circ2));
    }
    for (std::size_t d = 0; d < densities.size(); ++d) {
      const auto& g = densities[d].values;
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * g[j];
      out[d][i] += s * inv_n;
    }
  }
  return out;
}

ScalarField log_layer(const ScalarField& g, const PeriodicCurve& curve, double reg_eps) {
  return std::move(log_layer(std::vector<ScalarField>{g}, curve, reg_eps).front());
}

ScalarField log_layer(const ScalarField& g, const PeriodicCurve& curve) {
  return log_layer(g, curve, 0.0);
}

}  // namespace stokesfilm
