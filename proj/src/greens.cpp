#include "finereg/greens.hpp"

#include <algorithm>
#include <cmath>

namespace finereg {

GreenField green_column(const Solver& solver, std::size_t pole) {
  const Grid& grid = solver.grid();
  if (pole >= grid.size()) throw DomainError("green_column: pole is not an interior node");
  Field rhs = grid.zeros();
  rhs[pole] = 1.0 / grid.cell_volume();
  GreenField g;
  g.pole = pole;
  g.values = solver.solve(rhs);
  return g;
}

LayeredValue green_potential(const Grid& grid, const GreenField& green, const Field& density) {
  if (density.size() != grid.size()) throw SpecError("green_potential: field size mismatch");
  const double vol = grid.cell_volume();
  const double layer_cut = 2.0 * grid.h();
  std::vector<double> head, layer;
  head.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double term = vol * green.values[i] * density[i];
    (grid.delta(i) < layer_cut ? layer : head).push_back(term);
  }
  return {pairwise_sum(head), pairwise_sum(layer)};
}

double verify_resolvent_identity(const Grid& grid, const Solver& base, const Solver& with_v,
                                 const Field& v, std::size_t pole) {
  const GreenField g = green_column(base, pole);
  const GreenField gv = green_column(with_v, pole);
  // (G M_V G^V)(pole, .) = G^V applied to the density V .* G_pole
  Field density(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) density[i] = v[i] * g.values[i];
  const Field mid = with_v.solve(density);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lhs = g.values[i];
    const double rhs = gv.values[i] + mid[i];
    const double scale = std::max(std::abs(lhs), 1e-300);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

Field solve_with_boundary_data(const Solver& solver,
                               const std::function<double(const Pt&)>& data) {
  const Grid& grid = solver.grid();
  Field rhs = grid.zeros();
  for (const auto& c : solver.system().couplings) rhs[c.node] += c.weight * data(c.crossing);
  return solver.solve(rhs);
}

HarmonicMeasure harmonic_measure(const Solver& solver, const BoundarySet& set) {
  HarmonicMeasure out;
  if (set.empty()) {
    out.values = solver.grid().zeros();
    out.warned = true;
    return out;
  }
  out.values = solve_with_boundary_data(
      solver, [&set](const Pt& p) { return set.member(p) ? 1.0 : 0.0; });
  for (double& v : out.values) v = std::clamp(v, 0.0, 1.0);
  return out;
}

}  // namespace finereg
