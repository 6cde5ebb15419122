#include "stokesfilm/types.hpp"

#include <algorithm>
#include <string>

namespace stokesfilm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degenerate_curve: return "degenerate_curve";
    case ErrorCode::self_intersection: return "self_intersection";
    case ErrorCode::near_singular_evaluation: return "near_singular_evaluation";
    case ErrorCode::positivity_violation: return "positivity_violation";
    case ErrorCode::approaching_self_intersection: return "approaching_self_intersection";
    case ErrorCode::energy_ceiling: return "energy_ceiling";
    case ErrorCode::non_finite_state: return "non_finite_state";
    case ErrorCode::characteristic_crossing: return "characteristic_crossing";
    case ErrorCode::config_error: return "config_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

bool is_numerical_stop(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::positivity_violation:
    case ErrorCode::approaching_self_intersection:
    case ErrorCode::energy_ceiling:
    case ErrorCode::non_finite_state:
    case ErrorCode::self_intersection:
    case ErrorCode::degenerate_curve:
      return true;
    default:
      return false;
  }
}

ScalarField VectorField::x() const {
  ScalarField out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].x;
  return out;
}

ScalarField VectorField::y() const {
  ScalarField out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].y;
  return out;
}

VectorField VectorField::from_components(const ScalarField& x, const ScalarField& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::invalid_argument, "VectorField: component size mismatch");
  }
  VectorField out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = {x[i], y[i]};
  return out;
}

PeriodicCurve::PeriodicCurve(std::vector<Vec2> nodes, double length)
    : nodes_(std::move(nodes)), length_(length) {
  if (nodes_.size() < kMinNodes || nodes_.size() % 2 != 0) {
    throw Error(ErrorCode::invalid_argument,
                "PeriodicCurve: node count must be even and >= 16, got " +
                    std::to_string(nodes_.size()));
  }
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw Error(ErrorCode::invalid_argument, "PeriodicCurve: length must be positive and finite");
  }
}

double mean(std::span<const double> f) noexcept {
  if (f.empty()) return 0.0;
  double s = 0.0;
  for (double v : f) s += v;
  return s / static_cast<double>(f.size());
}

double max_abs(std::span<const double> f) noexcept {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::invalid_argument, "max_abs_difference: size mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_distance(const VectorField& a, const VectorField& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::invalid_argument, "max_distance: size mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, norm(a[i] - b[i]));
  return m;
}

}  // namespace stokesfilm
