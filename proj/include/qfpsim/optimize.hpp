#pragma once

#include <functional>

namespace qfp {

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

using ScalarFunction = std::function<double(double)>;

/// Golden-section search for a maximum of a unimodal f on [lo, hi]; stops
/// once the bracket is narrower than `tol`. The bracket endpoints are also
/// evaluated so an optimum sitting on the boundary is returned exactly.
Extremum golden_section_maximize(const ScalarFunction& f, double lo, double hi, double tol);

/// Uniform grid of `points` samples over [lo, hi] (both ends included), then
/// golden-section refinement inside the cell pair around the best sample.
Extremum maximize_on_grid_then_golden(const ScalarFunction& f, double lo, double hi, int points,
                                      double tol);

/// Maximum of a 2*pi-periodic f: `points` samples over [0, 2 pi), golden
/// refinement around the best one. The returned x is wrapped to [0, 2 pi).
Extremum maximize_periodic(const ScalarFunction& f, int points, double tol);

}  // namespace qfp
