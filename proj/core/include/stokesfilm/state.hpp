#pragma once

#include <cstddef>

#include "stokesfilm/types.hpp"

namespace stokesfilm {

/// Complete dynamical state. curve.length() is the length L carried by the
/// length ODE; resampling replaces it by the geometric length of the nodes.
/// integrated_length is the ODE value that is never reset and is used to
/// check the two lengths against each other.
struct SimState {
  PeriodicCurve curve;
  ScalarField h;
  double t = 0.0;
  std::size_t steps = 0;
  double integrated_length = 0.0;

  SimState() = default;
  SimState(PeriodicCurve c, ScalarField thickness, double time = 0.0)
      : curve(std::move(c)), h(std::move(thickness)), t(time),
        integrated_length(curve.length()) {}
};

}  // namespace stokesfilm
