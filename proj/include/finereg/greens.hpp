#pragma once

#include "finereg/elliptic.hpp"

namespace finereg {

// Discrete Green function column with the continuum h^N Dirac scaling, so
// h^N-weighted sums over it approximate continuum integrals directly.
struct GreenField {
  std::size_t pole = 0;
  Field values;
};

GreenField green_column(const Solver& solver, std::size_t pole);

// h^N sum of green.values * density with the near-boundary layer
// (delta < 2h) reported separately; headline excludes the layer.
struct LayeredValue {
  double headline = 0.0;
  double layer = 0.0;
  double total() const { return headline + layer; }
};

LayeredValue green_potential(const Grid& grid, const GreenField& green, const Field& density);

// Max relative discrepancy of the resolvent identity
//   G = G^V + G M_V G^V
// on the discrete level (exact matrix identity; measures solver error only).
double verify_resolvent_identity(const Grid& grid, const Solver& base, const Solver& with_v,
                                 const Field& v, std::size_t pole);

// L0-harmonic extension of the indicator of a boundary set; values in [0,1].
// Empty sets yield the zero field (with the `warned` flag set).
struct HarmonicMeasure {
  Field values;
  bool warned = false;
};

HarmonicMeasure harmonic_measure(const Solver& solver, const BoundarySet& set);

// Solve with Dirichlet data g given on the boundary: rhs_i = sum of
// coupling.weight * g(crossing).
Field solve_with_boundary_data(const Solver& solver,
                               const std::function<double(const Pt&)>& data);

}  // namespace finereg
