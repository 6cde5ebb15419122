#pragma once

// Real-to-complex Fourier helpers on the uniform periodic grid of [0, 1).
//
// Coefficients are normalised so that f(η) = Σ_n c_n exp(2πinη); for real
// data only c_0 … c_{N/2} are stored. Mode N/2 (Nyquist) is real and
// represents c_{N/2} cos(πNη).

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace stokesfilm::spectral {

using Complex = std::complex<double>;

std::vector<Complex> forward(std::span<const double> f);
std::vector<double> inverse(std::span<const Complex> coeffs, std::size_t n);

/// Applies the multiplier m(k), k = 0 … N/2, to the real field f. The
/// multiplier is assumed Hermitian (m(-k) = conj m(k)); at the Nyquist mode
/// only Re m(N/2) is applied, so odd (imaginary) multipliers annihilate it.
std::vector<double> apply_multiplier(std::span<const double> f,
                                     const std::function<Complex(int)>& m);

/// Same, with a precomputed table indexed by k = 0 … N/2.
std::vector<double> apply_multiplier(std::span<const double> f,
                                     std::span<const Complex> table);

/// ∂_η^order f with multiplier (2πik)^order. Requires N even, order in 1..4.
std::vector<double> derivative(std::span<const double> f, int order);

/// Zero-mean periodic antiderivative of f - mean(f).
std::vector<double> periodic_antiderivative(std::span<const double> f);

/// Evaluates the trigonometric interpolant of grid data anywhere in ℝ.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(std::span<const double> samples);
  TrigInterpolant(std::vector<Complex> coeffs, std::size_t n);

  double operator()(double eta) const;
  double derivative(double eta) const;
  std::size_t size() const noexcept { return n_; }
  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }

 private:
  std::vector<Complex> coeffs_;
  std::size_t n_ = 0;
};

}  // namespace stokesfilm::spectral
