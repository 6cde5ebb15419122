#pragma once

// Periodic singular integral operators on the unit circle.
//
// Normalisation: f(x) = Σ f_n exp(2πinx).
//   hilbert        H f = PV∫ f(x-y) cot(πy) dy          multiplier -i sgn(n)
//   half_laplacian Λ f                                  multiplier |n|
//                  = (1/2π) ∂_x H f
//                  = (1/2π) · π PV∫ (f(x)-f(x-y)) / sin²(πy) dy
//   half_laplacian_sqrt                                 multiplier |n|^{1/2}
//
// The kernel form of Λ carries a factor 2π relative to the multiplier |n|
// (∫₀¹ (1 - cos 2πny) / sin²(πy) dy = 2|n|); the regularised Λ_ε below is
// scaled by the same 1/2π so that Λ_ε → Λ.

#include <complex>
#include <vector>

#include "stokesfilm/types.hpp"

namespace stokesfilm {

/// Fourier multiplier indexed by mode n ∈ {-N/2, …, N/2 - 1}.
struct MultiplierTable {
  std::vector<std::complex<double>> values;  // values[n + N/2]

  std::size_t size() const noexcept { return values.size(); }
  std::complex<double> at(int mode) const;
  /// m(-n) = conj m(n) for 0 < n < N/2 and m(-N/2) real.
  bool is_hermitian(double tol = 0.0) const;
  /// Applies the table to a real field (Nyquist mode uses Re m(-N/2)).
  ScalarField apply(const ScalarField& f) const;
};

MultiplierTable hilbert_multiplier(std::size_t n);
MultiplierTable half_laplacian_multiplier(std::size_t n);
MultiplierTable half_laplacian_sqrt_multiplier(std::size_t n);
/// exp(-(εn)²): real, even, in [0, 1], equal to 1 at n = 0.
MultiplierTable mollifier_multiplier(std::size_t n, double eps);

ScalarField hilbert(const ScalarField& f);
ScalarField half_laplacian(const ScalarField& f);
ScalarField half_laplacian_sqrt(const ScalarField& f);

/// PV∫ f(x-y) K_ε(y) dy with K_ε(y) = tan(πy) / (tan²(πy) + ε²), which tends to
/// cot(πy). The kernel's Fourier coefficients are obtained by trapezoid
/// quadrature on an auxiliary grid fine enough to resolve the width ε.
ScalarField hilbert_regularized(const ScalarField& f, double eps);

/// (1/2π) · π PV∫ (f(x) - f(x-y)) / (sin²(πy) + ε²) dy, same construction.
ScalarField half_laplacian_regularized(const ScalarField& f, double eps);

/// Periodic convolution with a non-negative, even, unit-mass bump of width
/// ~ε, applied as the multiplier exp(-(εn)²). eps = 0 is the identity.
ScalarField mollify(const ScalarField& f, double eps);
VectorField mollify(const VectorField& f, double eps);
/// Mollifies the node positions; the stored length is kept.
PeriodicCurve mollify(const PeriodicCurve& curve, double eps);

/// η ↦ ∫₀¹ g(r) log|Γ(η) - Γ(r)| dr.
///
/// The kernel is split as log(2|sin π(η-r)|) + log(|ΔΓ| / 2|sin π(η-r)|).
/// The first part is applied exactly through its Fourier multiplier
/// (-1/(2|n|) for n ≠ 0, 0 for n = 0); the second part is smooth and summed
/// with the trapezoid rule, its diagonal value being log(|∂_ηΓ| / 2π).
/// Throws self_intersection when two distinct nodes coincide.
ScalarField log_layer(const ScalarField& g, const PeriodicCurve& curve);

/// Regularised variant with kernel ½ log(|ΔΓ|² + ε²L²). The singular part
/// uses ½ log(4 sin²(πy) + 4π²ε²), whose multiplier is precomputed per ε.
ScalarField log_layer(const ScalarField& g, const PeriodicCurve& curve, double reg_eps);

/// Several densities against the same kernel; one O(N²) sweep.
std::vector<ScalarField> log_layer(const std::vector<ScalarField>& densities,
                                   const PeriodicCurve& curve, double reg_eps);

}  // namespace stokesfilm
