#include "finereg/reduite.hpp"

#include <algorithm>
#include <cmath>

namespace finereg {

namespace {

struct Lcp {
  Eigen::SparseMatrix<double> A;
  Field psi;   // obstacle, -inf encoded as 0 off A since w >= 0 anyway
  std::vector<bool> on_a;
};

Lcp build_lcp(const ObstacleProblem& p) {
  if (p.mode != OpMode::Laplacian && p.mode != OpMode::L0)
    throw SpecError("reduite: operator mode must be laplacian or L0");
  Lcp lcp;
  lcp.A = assemble(*p.grid, *p.op, p.mode).A;
  lcp.psi = p.grid->zeros();
  lcp.on_a.assign(p.grid->size(), false);
  for (std::size_t i : p.obstacle_nodes) {
    if (i >= p.grid->size()) throw SpecError("reduite: obstacle node out of range");
    if (p.w[i] < 0.0) throw SpecError("reduite: obstacle values must be nonnegative");
    lcp.psi[i] = p.w[i];
    lcp.on_a[i] = true;
  }
  return lcp;
}

double complementarity_residual(const Lcp& lcp, const Field& s, double vol) {
  Eigen::Map<const Eigen::VectorXd> sv(s.data(), static_cast<long>(s.size()));
  Eigen::VectorXd as = lcp.A * sv;
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double gap = s[i] - lcp.psi[i];
    const double resid = as[static_cast<long>(i)] * vol;  // scaled Riesz mass
    worst = std::max(worst, std::abs(std::min(gap, resid)));
  }
  return worst;
}

ReduiteResult finalize(const ObstacleProblem& p, const Lcp& lcp, Field s, std::size_t iters,
                       bool converged) {
  ReduiteResult r;
  r.iterations = iters;
  r.converged = converged;
  r.active.assign(p.grid->size(), false);
  const double scale = *std::max_element(lcp.psi.begin(), lcp.psi.end()) + 1.0;
  for (std::size_t i : p.obstacle_nodes)
    if (s[i] <= lcp.psi[i] + 1e-7 * scale) r.active[i] = true;
  r.complementarity = complementarity_residual(lcp, s, p.grid->cell_volume());
  r.energy = dirichlet_energy(*p.grid, *p.op, p.mode, s);
  r.s = std::move(s);
  return r;
}

}  // namespace

ReduiteResult solve_reduite(const ObstacleProblem& p, std::size_t psor_limit,
                            std::size_t max_sweeps) {
  const Lcp lcp = build_lcp(p);
  const std::size_t n = p.grid->size();
  const double vol = p.grid->cell_volume();
  const double psi_scale = *std::max_element(lcp.psi.begin(), lcp.psi.end());
  const double tol = 1e-9 * std::max(psi_scale, 1e-30);

  if (p.obstacle_nodes.empty())
    return finalize(p, lcp, p.grid->zeros(), 0, true);

  if (n <= psor_limit) {
    // projected SOR, omega = 1.5
    Field s = lcp.psi;
    const double omega = 1.5;
    const auto& A = lcp.A;
    std::size_t sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
      double max_update = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double as = 0.0, diag = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, static_cast<int>(i)); it; ++it) {
          if (static_cast<std::size_t>(it.row()) == i)
            diag = it.value();
          else
            as += it.value() * s[static_cast<std::size_t>(it.row())];
        }
        // Gauss-Seidel target for (As)_i = 0, relaxed and projected
        const double gs = -as / diag;
        const double cand = s[i] + omega * (gs - s[i]);
        const double next = std::max(lcp.psi[i], cand);
        max_update = std::max(max_update, std::abs(next - s[i]));
        s[i] = next;
      }
      if (sweep % 16 == 15 || max_update < 1e-14 * std::max(psi_scale, 1e-30)) {
        if (complementarity_residual(lcp, s, vol) <= tol) {
          ++sweep;
          break;
        }
      }
    }
    const bool ok = complementarity_residual(lcp, s, vol) <= tol;
    return finalize(p, lcp, std::move(s), sweep, ok);
  }

  // active-set sweep with direct reduced solves (fixed-omega PSOR degrades as
  // O(h^2) on fine grids)
  std::vector<bool> active(n, false);
  for (std::size_t i : p.obstacle_nodes) active[i] = true;
  Field s(n, 0.0);
  bool converged = false;
  std::size_t iter = 0;
  for (; iter < 100; ++iter) {
    // solve A_II s_I = -A_IF psi_F, s_F = psi_F
    std::vector<int> inew(n, -1);
    std::vector<std::size_t> inodes;
    for (std::size_t i = 0; i < n; ++i)
      if (!active[i]) {
        inew[i] = static_cast<int>(inodes.size());
        inodes.push_back(i);
      }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(inodes.size()));
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t col = 0; col < n; ++col) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(lcp.A, static_cast<int>(col)); it;
           ++it) {
        const auto r = static_cast<std::size_t>(it.row());
        if (active[r]) continue;
        if (active[col])
          rhs[inew[r]] -= it.value() * lcp.psi[col];
        else
          trip.emplace_back(inew[r], inew[col], it.value());
      }
    }
    Eigen::SparseMatrix<double> aii(static_cast<long>(inodes.size()),
                                    static_cast<long>(inodes.size()));
    aii.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> fact(aii);
    if (fact.info() != Eigen::Success) throw SolverError("reduite: reduced solve failed");
    Eigen::VectorXd si = fact.solve(rhs);
    for (std::size_t i = 0; i < n; ++i) s[i] = active[i] ? lcp.psi[i] : si[inew[i]];

    // policy update
    Eigen::Map<const Eigen::VectorXd> sv(s.data(), static_cast<long>(n));
    Eigen::VectorXd as = lcp.A * sv;
    bool changed = false;
    for (std::size_t i : p.obstacle_nodes) {
      if (active[i] && as[static_cast<long>(i)] < -tol / vol) {
        active[i] = false;
        changed = true;
      } else if (!active[i] && s[i] < lcp.psi[i] - tol) {
        active[i] = true;
        changed = true;
      }
    }
    if (!changed) {
      converged = true;
      break;
    }
  }
  return finalize(p, lcp, std::move(s), iter + 1, converged);
}

EnergyBound verify_energy_bound(const Grid& grid, const EllipticOperator& op, OpMode mode,
                                const Solver& solver, std::size_t pole,
                                const std::vector<std::size_t>& obstacle_nodes) {
  EnergyBound out;
  if (obstacle_nodes.empty()) return out;  // 0/0 convention

  const GreenField w = green_column(solver, pole);
  const double vol = grid.cell_volume();
  const double cut = 2.0 * grid.h();
  std::vector<double> terms;
  for (std::size_t i : obstacle_nodes) {
    if (grid.delta(i) < cut) continue;
    const double q = w.values[i] / grid.delta(i);
    terms.push_back(vol * q * q);
  }
  out.numerator = pairwise_sum(terms);

  ObstacleProblem prob;
  prob.grid = &grid;
  prob.op = &op;
  prob.mode = mode;
  prob.obstacle_nodes = obstacle_nodes;
  prob.w = w.values;
  const ReduiteResult red = solve_reduite(prob);
  out.reduite_value = red.s[pole];
  if (out.reduite_value < 1e-300) {
    out.flagged = out.numerator > 0.0;
    out.ratio = out.flagged ? std::numeric_limits<double>::infinity() : 0.0;
    return out;
  }
  out.ratio = out.numerator / out.reduite_value;
  return out;
}

double estimate_hardy_constant(const Grid& grid, std::size_t max_iterations, double tol) {
  EllipticOperator op = EllipticOperator::laplace(grid);
  Solver solver(assemble(grid, op, OpMode::Laplacian));
  const std::size_t n = grid.size();
  Field d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = 1.0 / (grid.delta(i) * grid.delta(i));

  Field x(n, 1.0);
  double lambda = 0.0, prev = -1.0;
  std::size_t it = 0;
  for (; it < max_iterations; ++it) {
    Field dx(n);
    for (std::size_t i = 0; i < n; ++i) dx[i] = d2[i] * x[i];
    Field y = solver.solve(dx);
    double ynorm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) ynorm2 += d2[i] * y[i] * y[i];
    const double ynorm = std::sqrt(ynorm2);
    for (std::size_t i = 0; i < n; ++i) y[i] /= ynorm;
    // Rayleigh quotient y'Ay / y'Dy with y'Dy = 1
    double yay = 0.0;
    for (std::size_t i = 0; i < n; ++i) yay += y[i] * dx[i] / ynorm;  // A y = D x / |y|_D
    lambda = yay;
    x = std::move(y);
    if (prev > 0.0 && std::abs(lambda - prev) <= tol * lambda) break;
    prev = lambda;
  }
  if (it == max_iterations)
    throw SolverError("hardy constant: inverse power iteration did not converge");
  return 1.0 / lambda;
}

}  // namespace finereg
