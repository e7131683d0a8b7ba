#include "finereg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace finereg {

MartinApprox martin_kernel(const Solver& solver, const BoundaryPoint& point, std::size_t x0,
                           double t_start, double t_min, double depth_fraction) {
  const Grid& grid = solver.grid();
  const double h = grid.h();
  if (t_min <= 0.0) t_min = 4.0 * h;
  if (t_min < 4.0 * h - 1e-12)
    throw SpecError("martin_kernel: poles closer than 4h to the boundary are rejected");
  const double max_delta = grid.delta(grid.deepest_node());
  if (grid.delta(x0) < depth_fraction * max_delta)
    throw SpecError("martin_kernel: normalization point x0 is not deep enough");

  MartinApprox m;
  m.point = point;
  m.x0 = x0;
  for (double t = t_start; t >= t_min - 1e-12; t *= 0.5) {
    const Pt pole_pos = point.y + t * point.nu;
    if (!grid.domain().contains(pole_pos))
      throw DomainError("martin_kernel: pole y + t nu left the domain");
    const std::size_t pole = grid.nearest_node(pole_pos);
    const GreenField col = green_column(solver, pole);
    const double at_x0 = col.values[x0];
    if (!(at_x0 > 0.0)) throw SolverError("martin_kernel: Green column vanishes at x0");
    Field ratio(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) ratio[i] = col.values[i] / at_x0;
    ratio[x0] = 1.0;  // exact normalization
    m.ts.push_back(t);
    m.pole_nodes.push_back(pole);
    m.ratio_fields.push_back(std::move(ratio));
  }
  if (m.ratio_fields.empty()) throw SpecError("martin_kernel: empty t-sequence");

  // per-step max relative increment away from the current pole's stencil
  for (std::size_t k = 1; k < m.ratio_fields.size(); ++k) {
    double inc = 0.0;
    const Field& a = m.ratio_fields[k - 1];
    const Field& b = m.ratio_fields[k];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (dist(grid.coord(i), grid.coord(m.pole_nodes[k])) < 4.0 * m.ts[k]) continue;
      const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-12});
      inc = std::max(inc, std::abs(a[i] - b[i]) / scale);
    }
    m.cauchy_increments.push_back(inc);
  }
  const std::size_t nc = m.cauchy_increments.size();
  if (nc >= 2 && m.cauchy_increments[nc - 1] > m.cauchy_increments[nc - 2] * 1.25)
    m.cauchy_flagged = true;
  return m;
}

CWeight c_weight(const Grid& grid, const Solver& lv_solver, const Field& v,
                 const MartinApprox& ky, std::size_t x0) {
  // K_y = G^V(V K_y) + K~ and K~(x0) = 1 - G^V(V K_y)(x0)
  Field density(grid.size());
  const Field& k = ky.extrapolated();
  for (std::size_t i = 0; i < grid.size(); ++i) density[i] = v[i] * k[i];
  const Field gv_col = lv_solver.solve([&] {
    Field rhs = grid.zeros();
    rhs[x0] = 1.0 / grid.cell_volume();
    return rhs;
  }());
  const double vol = grid.cell_volume();
  const double cut = 2.0 * grid.h();
  std::vector<double> head, layer;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double term = vol * gv_col[i] * density[i];
    (grid.delta(i) < cut ? layer : head).push_back(term);
  }
  CWeight out;
  out.integral = {pairwise_sum(head), pairwise_sum(layer)};
  out.raw = 1.0 - out.integral.total();
  out.value = std::clamp(out.raw, 0.0, 1.0);
  return out;
}

std::vector<RaySample> ratio_along_ray(const Grid& grid, const Field& a, const Field& b,
                                       const BoundaryPoint& point,
                                       const std::vector<double>& ts) {
  std::vector<RaySample> out;
  out.reserve(ts.size());
  for (double t : ts) {
    const Pt x = point.y + t * point.nu;
    const std::size_t node = grid.nearest_node(x);
    RaySample s;
    s.t = t;
    if (std::abs(b[node]) < 1e-300) {
      s.flagged = true;
      s.value = 0.0;
    } else {
      s.value = a[node] / b[node];
    }
    out.push_back(s);
  }
  return out;
}

bool on_graph_part(const Domain& dom, const Pt& p) {
  if (dom.kind() != DomainKind::LipGraph)
    throw SpecError("graph-part classification needs a lipschitz-graph domain");
  const auto& g = dom.graph();
  // nearest piece wins; the graph part is { x2 = f(x1), |x1| < r }
  const double d_graph = std::abs(p[1] - g.eval(p[0]));
  const double d_side = std::min(std::abs(p[0] - g.r), std::abs(p[0] + g.r));
  const double d_top = std::abs(p[1] - g.rho);
  return d_graph <= std::min(d_side, d_top);
}

Field random_chart_solution(const Solver& solver, std::uint64_t seed) {
  const Domain& dom = solver.grid().domain();
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  // one independent draw per boundary coupling, in coupling order
  std::vector<double> draws;
  draws.reserve(solver.system().couplings.size());
  for (std::size_t i = 0; i < solver.system().couplings.size(); ++i) draws.push_back(unif(rng));
  std::size_t k = 0;
  Field rhs = solver.grid().zeros();
  for (const auto& c : solver.system().couplings) {
    const double val = on_graph_part(dom, c.crossing) ? 0.0 : draws[k];
    ++k;
    rhs[c.node] += c.weight * val;
  }
  return solver.solve(rhs);
}

HarnackResult verify_boundary_harnack(const Solver& solver, std::size_t trials,
                                      std::uint64_t seed, const Solver* mixed) {
  const Grid& grid = solver.grid();
  const Domain& dom = grid.domain();
  if (dom.kind() != DomainKind::LipGraph)
    throw SpecError("verify_boundary_harnack: needs a lipschitz-graph chart");
  const auto& g = dom.graph();
  const std::size_t A = grid.nearest_node(Pt(0.0, 0.5 * g.rho));

  // evaluation region U cap T(1/2), away from the first cell layer
  std::vector<std::size_t> region;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Pt& x = grid.coord(i);
    if (std::abs(x[0]) < 0.5 * g.r && std::abs(x[1]) < 0.5 * g.rho &&
        grid.delta(i) >= 2.0 * grid.h())
      region.push_back(i);
  }

  HarnackResult res;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Field u = random_chart_solution(solver, splitmix64(seed) + 2 * trial);
    const Field v = random_chart_solution(mixed ? *mixed : solver,
                                          splitmix64(seed) + 2 * trial + 1);
    const double ua = u[A], va = v[A];
    if (!(ua > 0.0 && va > 0.0)) throw SolverError("harnack: solution vanished at A");
    double worst = 0.0;
    for (std::size_t i : region) {
      if (!(v[i] > 0.0)) continue;
      worst = std::max(worst, (u[i] / ua) / (v[i] / va));
    }
    res.worst = std::max(res.worst, worst);
    ++res.pairs;
  }
  return res;
}

}  // namespace finereg
