#pragma once

#include "finereg/greens.hpp"

namespace finereg {

// Martin kernel approximation K_y(x) ~ G(x, y + t nu) / G(x0, y + t nu) for a
// geometric t-sequence (factor 1/2) down to t_min >= 4h.  The extrapolated
// field is the last ratio; Cauchy increments quantify the residual limit
// error.
struct MartinApprox {
  BoundaryPoint point;
  std::size_t x0 = 0;
  std::vector<double> ts;              // decreasing
  std::vector<Field> ratio_fields;     // one per t, normalized at x0
  std::vector<std::size_t> pole_nodes; // grid node used for each t
  std::vector<double> cauchy_increments;  // max relative change between steps
  bool cauchy_flagged = false;         // increments grew on the last step

  const Field& extrapolated() const { return ratio_fields.back(); }
  double t_min() const { return ts.back(); }
};

// x0 must be a deep interior node: delta(x0) >= depth_fraction * max delta.
// (A diameter-based depth requirement cannot hold on admissible graph charts,
// where max delta <= r < diam/4.)
MartinApprox martin_kernel(const Solver& solver, const BoundaryPoint& point,
                           std::size_t x0, double t_start, double t_min = 0.0,
                           double depth_fraction = 0.5);

// Regularity weight c(y) = 1 - G^V(V K_y)(x0) clamped to [0, 1]; the raw
// value and the layer split of the integral are reported alongside.
struct CWeight {
  double value = 1.0;      // clamped
  double raw = 1.0;        // 1 - headline - layer, unclamped
  LayeredValue integral;   // G^V(V K_y)(x0) split
};

CWeight c_weight(const Grid& grid, const Solver& lv_solver, const Field& v,
                 const MartinApprox& ky, std::size_t x0);

// fieldA/fieldB sampled at the nodes nearest to y + t nu; samples where the
// denominator underflows are flagged.
struct RaySample {
  double t = 0.0;
  double value = 0.0;
  bool flagged = false;
};

std::vector<RaySample> ratio_along_ray(const Grid& grid, const Field& a, const Field& b,
                                       const BoundaryPoint& point,
                                       const std::vector<double>& ts);

// Boundary Harnack check on a graph chart U_f(r, rho): for random pairs of
// positive solutions vanishing on the graph part of the boundary, the worst
// ratio  (u(x)/u(A)) / (v(x)/v(A))  over U cap T(1/2), A = (0,..,0,rho/2).
// Both solutions use the solver's operator mode; `mixed` draws u from
// `solver` and v from `mixed` (Lemma about one harmonic / one L_V-solution).
struct HarnackResult {
  double worst = 0.0;
  std::size_t pairs = 0;
};

HarnackResult verify_boundary_harnack(const Solver& solver, std::size_t trials,
                                      std::uint64_t seed, const Solver* mixed = nullptr);

// Piecewise classification of the graph-chart boundary: true on the graph
// part partial_# U, false on side walls and top.
bool on_graph_part(const Domain& dom, const Pt& boundary_point);

// Random positive solution vanishing on the graph part: Dirichlet data
// uniform in [0.1, 1] on side walls and top, zero on the graph.
Field random_chart_solution(const Solver& solver, std::uint64_t seed);

}  // namespace finereg
