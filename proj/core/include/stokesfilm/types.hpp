#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "stokesfilm/error.hpp"

namespace stokesfilm {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) noexcept { x *= s; y *= s; return *this; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) noexcept { return {s * a.x, s * a.y}; }
constexpr Vec2 operator/(Vec2 a, double s) noexcept { return {a.x / s, a.y / s}; }
constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }
constexpr double norm2(Vec2 a) noexcept { return a.x * a.x + a.y * a.y; }

/// Quarter turn (x, y) -> (-y, x). Applied to the tangent of a clockwise
/// curve it yields the outward normal.
constexpr Vec2 rotate_quarter(Vec2 a) noexcept { return {-a.y, a.x}; }

/// Row-major 2x2 matrix.
struct Mat2 {
  double xx = 0.0, xy = 0.0;
  double yx = 0.0, yy = 0.0;

  constexpr double trace() const noexcept { return xx + yy; }
  constexpr double det() const noexcept { return xx * yy - xy * yx; }
  constexpr Mat2 transposed() const noexcept { return {xx, yx, xy, yy}; }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Vec2 operator*(const Mat2& m, Vec2 v) noexcept {
  return {m.xx * v.x + m.xy * v.y, m.yx * v.x + m.yy * v.y};
}
constexpr Mat2 operator+(const Mat2& a, const Mat2& b) noexcept {
  return {a.xx + b.xx, a.xy + b.xy, a.yx + b.yx, a.yy + b.yy};
}
constexpr Mat2 operator-(const Mat2& a, const Mat2& b) noexcept {
  return {a.xx - b.xx, a.xy - b.xy, a.yx - b.yx, a.yy - b.yy};
}
constexpr Mat2 operator*(double s, const Mat2& a) noexcept {
  return {s * a.xx, s * a.xy, s * a.yx, s * a.yy};
}
/// a ⊗ b = a bᵀ.
constexpr Mat2 outer(Vec2 a, Vec2 b) noexcept {
  return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
}

/// Samples of a real function on the uniform grid η_j = j/N of the unit circle.
struct ScalarField {
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit ScalarField(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const noexcept { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::span<const double> span() const noexcept { return values; }
  auto begin() const noexcept { return values.begin(); }
  auto end() const noexcept { return values.end(); }
};

/// Samples of a planar vector function on the uniform η grid.
struct VectorField {
  std::vector<Vec2> values;

  VectorField() = default;
  explicit VectorField(std::size_t n, Vec2 fill = {}) : values(n, fill) {}
  explicit VectorField(std::vector<Vec2> v) : values(std::move(v)) {}

  std::size_t size() const noexcept { return values.size(); }
  Vec2& operator[](std::size_t i) { return values[i]; }
  Vec2 operator[](std::size_t i) const { return values[i]; }
  auto begin() const noexcept { return values.begin(); }
  auto end() const noexcept { return values.end(); }

  ScalarField x() const;
  ScalarField y() const;
  static VectorField from_components(const ScalarField& x, const ScalarField& y);
};

/// Closed curve sampled at N uniform parameter values η_j = j/N, traversed
/// clockwise, together with its length L. The last node is not repeated.
class PeriodicCurve {
 public:
  static constexpr std::size_t kMinNodes = 16;

  PeriodicCurve() = default;
  /// Throws invalid_argument unless N >= 16, N even, L > 0 and finite.
  PeriodicCurve(std::vector<Vec2> nodes, double length);

  std::size_t size() const noexcept { return nodes_.size(); }
  double length() const noexcept { return length_; }
  const std::vector<Vec2>& nodes() const noexcept { return nodes_; }
  Vec2 operator[](std::size_t i) const { return nodes_[i]; }
  VectorField as_field() const { return VectorField(nodes_); }

 private:
  std::vector<Vec2> nodes_;
  double length_ = 0.0;
};

inline double grid_point(std::size_t j, std::size_t n) noexcept {
  return static_cast<double>(j) / static_cast<double>(n);
}

/// Grid mean; the trapezoid rule for ∫₀¹ on the periodic grid.
double mean(std::span<const double> f) noexcept;
double max_abs(std::span<const double> f) noexcept;
double max_abs_difference(const ScalarField& a, const ScalarField& b);
double max_distance(const VectorField& a, const VectorField& b);

}  // namespace stokesfilm
