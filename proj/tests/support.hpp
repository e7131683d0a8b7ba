#pragma once

// Shared test oracles. These live in test code on purpose: they provide
// independent routes to the quantities the library computes.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "finereg/elliptic.hpp"
#include "finereg/greens.hpp"

namespace finereg::testing {

// Unit square torsion function -Lap u = 1, u = 0 on the boundary, by the
// classical double sine series; 5+ digits at the center with 400 terms.
inline double square_torsion(double x, double y) {
  double sum = 0.0;
  for (int m = 1; m <= 399; m += 2)
    for (int n = 1; n <= 399; n += 2) {
      const double mp = m * M_PI, np = n * M_PI;
      const double coef = 16.0 / (mp * np * (mp * mp + np * np));
      sum += coef * std::sin(mp * x) * std::sin(np * y);
    }
  return sum;
}

// Dense bound-constrained QP oracle for the obstacle problem:
//   min 1/2 s^T A s  subject to  s >= psi,
// by a primal active-set sweep with dense solves. Independent of the
// library's PSOR / sparse active-set paths.
inline std::vector<double> dense_qp_obstacle(const Eigen::MatrixXd& a,
                                             const std::vector<double>& psi,
                                             const std::vector<bool>& constrained) {
  const std::size_t n = psi.size();
  std::vector<bool> active(n, false);
  for (std::size_t i = 0; i < n; ++i) active[i] = constrained[i];
  Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<long>(n));
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<long> inact;
    for (std::size_t i = 0; i < n; ++i)
      if (!active[i]) inact.push_back(static_cast<long>(i));
    Eigen::MatrixXd aii(inact.size(), inact.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(inact.size()));
    for (std::size_t r = 0; r < inact.size(); ++r) {
      for (std::size_t c = 0; c < inact.size(); ++c) aii(static_cast<long>(r), static_cast<long>(c)) = a(inact[r], inact[c]);
      for (std::size_t i = 0; i < n; ++i)
        if (active[i]) rhs[static_cast<long>(r)] -= a(inact[r], static_cast<long>(i)) * psi[i];
    }
    Eigen::VectorXd si = aii.ldlt().solve(rhs);
    for (std::size_t i = 0; i < n; ++i) s[static_cast<long>(i)] = active[i] ? psi[i] : 0.0;
    for (std::size_t r = 0; r < inact.size(); ++r) s[inact[r]] = si[static_cast<long>(r)];

    Eigen::VectorXd as = a * s;
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!constrained[i]) continue;
      if (active[i] && as[static_cast<long>(i)] < -1e-12) {
        active[i] = false;
        changed = true;
      } else if (!active[i] && s[static_cast<long>(i)] < psi[i] - 1e-12) {
        active[i] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return std::vector<double>(s.data(), s.data() + s.size());
}

// Green column of the system with the nodes in `mask` additionally held at
// zero (Dirichlet): the epsilon-truncated quadrature oracle of the
// conditioned-walk cross-check.
inline Field masked_green_column(const Grid& grid, const Eigen::SparseMatrix<double>& a,
                                 const std::vector<bool>& mask, std::size_t pole) {
  const std::size_t n = grid.size();
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t col = 0; col < n; ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, static_cast<int>(col)); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      if (mask[r] || mask[col]) continue;
      trip.emplace_back(it.row(), static_cast<int>(col), it.value());
    }
  for (std::size_t i = 0; i < n; ++i)
    if (mask[i]) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
  Eigen::SparseMatrix<double> am(static_cast<long>(n), static_cast<long>(n));
  am.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> fact(am);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(n));
  rhs[static_cast<long>(pole)] = 1.0 / grid.cell_volume();
  Eigen::VectorXd x = fact.solve(rhs);
  return Field(x.data(), x.data() + x.size());
}

// Uniformly random interior field in [-1, 1], seeded.
inline Field random_field(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Field f(grid.size());
  for (double& v : f) v = unif(rng);
  return f;
}

}  // namespace finereg::testing
