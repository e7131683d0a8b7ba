#include "finereg/elliptic.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>

namespace finereg {

EllipticOperator EllipticOperator::laplace(const Grid& grid) {
  EllipticOperator op;
  op.gamma = grid.zeros();
  op.V = grid.zeros();
  op.c0 = 1.0;
  op.bound_a = 0.0;
  return op;
}

EllipticOperator EllipticOperator::make(const Grid& grid, std::vector<double> diag_coeffs,
                                        const PotentialSpec& gamma_spec,
                                        const PotentialSpec& v_spec) {
  EllipticOperator op;
  if (!diag_coeffs.empty()) {
    if (diag_coeffs.size() != static_cast<std::size_t>(grid.dim()))
      throw SpecError("operator: need one diagonal coefficient per axis");
    double c0 = 1.0;
    for (double a : diag_coeffs) {
      if (!(a > 0.0)) throw SpecError("operator: coefficients must be positive");
      c0 = std::max({c0, a, 1.0 / a});
    }
    op.c0 = c0;
    bool identity = true;
    for (double a : diag_coeffs) identity = identity && a == 1.0;
    if (!identity)
      for (double a : diag_coeffs) op.coeff.push_back(Field(grid.size(), a));
  }
  op.gamma = make_potential_field(grid, gamma_spec);
  op.V = make_potential_field(grid, v_spec);
  op.bound_a = std::max(gamma_spec.bound_a, v_spec.bound_a);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (op.gamma[i] > op.V[i] + 1e-12)
      throw SpecError("operator: gamma <= V must hold nodewise");
  return op;
}

namespace {

// Fraction of the step from a node toward an outside ghost at which the
// boundary is crossed, found by bisection on the signed distance.
double crossing_fraction(const Domain& dom, const Pt& from, const Pt& to) {
  double sd_to = dom.signed_distance(to);
  if (sd_to > 0.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Pt x = from + mid * (to - from);
    if (dom.signed_distance(x) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LinearSystem assemble(const Grid& grid, const EllipticOperator& op, OpMode mode,
                      bool shortley_weller) {
  if (shortley_weller && !op.coeff.empty())
    throw SpecError("assemble: Shortley-Weller supported for identity coefficients only");

  const int dim = grid.dim();
  const double h = grid.h();
  const std::size_t n = grid.size();
  const Domain& dom = grid.domain();

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n * static_cast<std::size_t>(2 * dim + 1));
  std::vector<BoundaryCoupling> couplings;
  bool symmetric = true;

  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int axis = 0; axis < dim; ++axis) {
      const int dp = 2 * axis, dm = 2 * axis + 1;
      const std::int64_t np = grid.neighbor(i, dp), nm = grid.neighbor(i, dm);

      if (!shortley_weller) {
        // flux form with arithmetic face averages; ghost faces use the node value
        const double ap = np >= 0 ? 0.5 * (op.coeff_at(i, axis) +
                                           op.coeff_at(static_cast<std::size_t>(np), axis))
                                  : op.coeff_at(i, axis);
        const double am = nm >= 0 ? 0.5 * (op.coeff_at(i, axis) +
                                           op.coeff_at(static_cast<std::size_t>(nm), axis))
                                  : op.coeff_at(i, axis);
        diag += (ap + am) / (h * h);
        if (np >= 0)
          trip.emplace_back(static_cast<int>(i), static_cast<int>(np), -ap / (h * h));
        else {
          const Pt ghost = grid.neighbor_pos(i, dp);
          const double th = crossing_fraction(dom, grid.coord(i), ghost);
          couplings.push_back({i, ap / (h * h), grid.coord(i) + th * (ghost - grid.coord(i))});
        }
        if (nm >= 0)
          trip.emplace_back(static_cast<int>(i), static_cast<int>(nm), -am / (h * h));
        else {
          const Pt ghost = grid.neighbor_pos(i, dm);
          const double th = crossing_fraction(dom, grid.coord(i), ghost);
          couplings.push_back({i, am / (h * h), grid.coord(i) + th * (ghost - grid.coord(i))});
        }
      } else {
        double tp = 1.0, tm = 1.0;
        Pt cp, cm;
        if (np < 0) {
          const Pt ghost = grid.neighbor_pos(i, dp);
          tp = std::max(crossing_fraction(dom, grid.coord(i), ghost), 1e-3);
          cp = grid.coord(i) + tp * (ghost - grid.coord(i));
          symmetric = false;
        }
        if (nm < 0) {
          const Pt ghost = grid.neighbor_pos(i, dm);
          tm = std::max(crossing_fraction(dom, grid.coord(i), ghost), 1e-3);
          cm = grid.coord(i) + tm * (ghost - grid.coord(i));
          symmetric = false;
        }
        const double wp = 2.0 / (tp * (tp + tm)) / (h * h);
        const double wm = 2.0 / (tm * (tp + tm)) / (h * h);
        diag += wp + wm;
        if (np >= 0)
          trip.emplace_back(static_cast<int>(i), static_cast<int>(np), -wp);
        else
          couplings.push_back({i, wp, cp});
        if (nm >= 0)
          trip.emplace_back(static_cast<int>(i), static_cast<int>(nm), -wm);
        else
          couplings.push_back({i, wm, cm});
      }
    }
    switch (mode) {
      case OpMode::Laplacian:
        break;
      case OpMode::L0:
        diag += op.gamma.empty() ? 0.0 : op.gamma[i];
        break;
      case OpMode::L1:
        diag += op.V.empty() ? 0.0 : op.V[i];
        break;
    }
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
  }

  LinearSystem sys;
  sys.A.resize(static_cast<int>(n), static_cast<int>(n));
  sys.A.setFromTriplets(trip.begin(), trip.end());
  sys.A.makeCompressed();
  sys.symmetric = symmetric;
  sys.grid = &grid;
  sys.couplings = std::move(couplings);
  return sys;
}

Solver::Solver(LinearSystem sys, std::size_t direct_limit) : sys_(std::move(sys)) {
  const auto n = static_cast<std::size_t>(sys_.A.rows());
  direct_ = n <= direct_limit || !sys_.symmetric;
  if (!direct_) return;
  if (sys_.symmetric) {
    ldlt_ = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
    ldlt_->compute(sys_.A);
    if (ldlt_->info() != Eigen::Success)
      throw SolverError("assembly error: factorization failed (system not SPD)");
  } else {
    lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
    lu_->compute(sys_.A);
    if (lu_->info() != Eigen::Success)
      throw SolverError("assembly error: LU factorization failed");
  }
}

Field Solver::solve(const Field& rhs) const {
  if (rhs.size() != static_cast<std::size_t>(sys_.A.rows()))
    throw SolverError("solve: right-hand side has the wrong length");
  for (double v : rhs)
    if (!std::isfinite(v)) throw SolverError("solve: non-finite right-hand side");

  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), sys_.A.rows());
  Eigen::VectorXd x;
  if (direct_) {
    x = ldlt_ ? Eigen::VectorXd(ldlt_->solve(b)) : Eigen::VectorXd(lu_->solve(b));
    // one step of iterative refinement tightens the residual cheaply
    Eigen::VectorXd r = b - sys_.A * x;
    x += ldlt_ ? Eigen::VectorXd(ldlt_->solve(r)) : Eigen::VectorXd(lu_->solve(r));
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(1e-12);
    cg.setMaxIterations(200000);
    cg.compute(sys_.A);
    x = cg.solve(b);
  }
  const double bn = b.norm();
  if (bn > 0.0) {
    const double rel = (b - sys_.A * x).norm() / bn;
    if (!(rel <= 1e-10))
      throw SolverError("solver failure: relative residual " + std::to_string(rel));
  }
  return Field(x.data(), x.data() + x.size());
}

double dirichlet_energy(const Grid& grid, const EllipticOperator& op, OpMode mode,
                        const Field& u) {
  const int dim = grid.dim();
  const double h = grid.h();
  const double vol = grid.cell_volume();
  std::vector<double> terms;
  terms.reserve(grid.size() * static_cast<std::size_t>(dim + 1));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int axis = 0; axis < dim; ++axis) {
      const std::int64_t np = grid.neighbor(i, 2 * axis);
      const double ap = np >= 0 ? 0.5 * (op.coeff_at(i, axis) +
                                         op.coeff_at(static_cast<std::size_t>(np), axis))
                                : op.coeff_at(i, axis);
      const double du = (np >= 0 ? u[static_cast<std::size_t>(np)] : 0.0) - u[i];
      terms.push_back(ap * du * du / (h * h) * vol);
      const std::int64_t nm = grid.neighbor(i, 2 * axis + 1);
      if (nm < 0) {  // ghost face on the minus side, counted once
        const double am = op.coeff_at(i, axis);
        terms.push_back(am * u[i] * u[i] / (h * h) * vol);
      }
    }
    double zo = 0.0;
    if (mode == OpMode::L0 && !op.gamma.empty()) zo = op.gamma[i];
    if (mode == OpMode::L1 && !op.V.empty()) zo = op.V[i];
    if (zo != 0.0) terms.push_back(zo * u[i] * u[i] * vol);
  }
  return pairwise_sum(terms);
}

}  // namespace finereg
