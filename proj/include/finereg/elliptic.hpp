#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <memory>
#include <vector>

#include "finereg/grid.hpp"
#include "finereg/potential.hpp"

namespace finereg {

enum class OpMode { Laplacian, L0, L1 };

// Divergence-form operator  sum_i d_i(a_i d_i .)  minus a zeroth-order term
// (gamma for L0, V for L1).  Coefficients are per-axis diagonal fields; the
// assembled systems are for -L + gamma / -L + V / -Laplace.
struct EllipticOperator {
  std::vector<Field> coeff;  // one field per axis; empty means identity
  Field gamma;
  Field V;
  double c0 = 1.0;
  double bound_a = 0.0;

  static EllipticOperator laplace(const Grid& grid);
  static EllipticOperator make(const Grid& grid, std::vector<double> diag_coeffs,
                               const PotentialSpec& gamma_spec, const PotentialSpec& v_spec);

  double coeff_at(std::size_t node, int axis) const {
    return coeff.empty() ? 1.0 : coeff[static_cast<std::size_t>(axis)][node];
  }
};

// Coupling of an interior node to a Dirichlet boundary value through a
// missing lattice neighbor; `crossing` is where the segment toward the ghost
// meets the boundary and `weight` is the stencil coefficient of the datum.
struct BoundaryCoupling {
  std::size_t node;
  double weight;
  Pt crossing;
};

struct LinearSystem {
  Eigen::SparseMatrix<double> A;
  bool symmetric = true;
  const Grid* grid = nullptr;
  std::vector<BoundaryCoupling> couplings;
};

// Assembles the sparse system with homogeneous Dirichlet conditions imposed
// by node exclusion.  With shortley_weller the one-sided stencil uses the
// exact boundary crossing distances (second-order at curved boundaries, at
// the price of symmetry).
LinearSystem assemble(const Grid& grid, const EllipticOperator& op, OpMode mode,
                      bool shortley_weller = false);

// Direct sparse factorization up to `direct_limit` unknowns, diagonally
// preconditioned CG above (SPD systems only).  Factorizations are shared
// read-only across solves.
class Solver {
 public:
  explicit Solver(LinearSystem sys, std::size_t direct_limit = 400000);

  Field solve(const Field& rhs) const;  // relative residual <= 1e-10 or SolverError
  const LinearSystem& system() const { return sys_; }
  const Grid& grid() const { return *sys_.grid; }

 private:
  LinearSystem sys_;
  bool direct_ = true;
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
};

// Discrete Dirichlet energy sum_faces a_face (du/h)^2 h^N + sum gamma u^2 h^N,
// evaluated from face differences (missing neighbors contribute the value
// itself against a zero ghost).  Matches u . (h^N A u) up to rounding.
double dirichlet_energy(const Grid& grid, const EllipticOperator& op, OpMode mode,
                        const Field& u);

}  // namespace finereg
