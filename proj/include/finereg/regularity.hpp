#pragma once

#include <string>

#include "finereg/kernels.hpp"
#include "finereg/potential.hpp"
#include "finereg/reduite.hpp"

namespace finereg {

enum class Verdict { Regular, Singular, Inconclusive };

const char* to_string(Verdict v);

enum class CriterionId {
  IntegralKyV,
  IntegralKy,
  SmoothExplicit,
  ConeTest,
  GreenRatio,
  MartinRatio,
  CWeight,
  RelativeR,
};

const char* to_string(CriterionId id);

// Verdict thresholds.  q_reg / q_sing follow the report contract; the ray
// thresholds are calibrated against the power-law family at h = 1/256 (see
// docs/formats.md) and are configuration, not constants.
struct CriterionConfig {
  double q_reg = 0.8;
  double q_sing = 0.95;
  int min_shells = 4;          // resolvable shells needed for a confident verdict
  int fit_shells = 4;          // geometric fit uses the last this-many resolvable shells
  double t_min_mult = 4.0;     // Martin pole floor, in units of h
  double ray_min_mult = 2.0;   // Green-ratio sampling floor, in units of h
  double green_sing_decay = 0.35;   // g^V/g^0 last/first at most this => singular
  double martin_sing_growth = 2.5;  // K^V/K last/first at least this => singular
  double stabilize_spread = 0.20;   // last-3 spread for "stabilized"
  double ratio_floor = 0.01;        // stabilized green ratio must stay above this
  double c_reg = 0.55;
  double c_sing = 0.05;
  double tiny_total = 1e-14;
};

struct ShellRow {
  int k = 0;
  double r_in = 0.0, r_out = 0.0;
  double sum = 0.0;
};

struct CriterionReport {
  CriterionId id = CriterionId::IntegralKy;
  std::vector<ShellRow> shells;   // dyadic partial sums (all computed shells)
  int resolvable = 0;             // shells with 2^-k >= 8h
  double q = 0.0;                 // fitted per-shell decay ratio
  double total = 0.0;             // shell total plus geometric tail (inf if q >= 1)
  double layer_mass = 0.0;        // delta < 2h contribution, excluded from shells
  Verdict verdict = Verdict::Inconclusive;
  std::vector<RaySample> samples;  // ray criteria only
  double c_value = -1.0;           // c-weight criterion only
  double ray_diag = 0.0;           // int t V(y + t nu) dt diagnostic column
  std::string note;
};

// Shell analysis of h^N sum green(x) * weight(x) * kernel(x) over dyadic
// annuli centered at y.  Both integral criteria and the relative criterion
// share this code path.
CriterionReport shell_integral_criterion(const Grid& grid, const Field& green_x0,
                                         const Field& weight, const Field& kernel,
                                         const Pt& y, CriterionId id,
                                         const CriterionConfig& cfg);

// Explicit smooth-domain criterion: shell sums of delta^2 |x-y|^-N V(x) on
// the unit disk (no PDE solve).  Throws SpecError on other domains.
CriterionReport criterion_smooth_explicit(const Grid& grid, const BoundaryPoint& point,
                                          const Field& v, const CriterionConfig& cfg);

// Cone criterion: per-shell quadrature of V(x) |x-y|^{2-N} over the truncated
// cone (grid-free polar quadrature; min shell radius r_min).
CriterionReport criterion_cone_test(const Domain& dom, const BoundaryPoint& point,
                                    const Cone& cone, const PotentialSpec& v,
                                    const CriterionConfig& cfg, double r_min);

CriterionReport criterion_green_ratio(const Grid& grid, const Field& gv_x0,
                                      const Field& g0_x0, const BoundaryPoint& point,
                                      double t_start, const CriterionConfig& cfg);

CriterionReport criterion_martin_ratio(const Grid& grid, const Field& kv, const Field& k0,
                                       const BoundaryPoint& point, double t_start,
                                       const CriterionConfig& cfg);

CriterionReport criterion_c_weight(const CWeight& cw, const CriterionConfig& cfg);

// Shared per-scenario state: factorizations and x0 Green columns reused by
// every criterion and boundary point.
struct ClassifyContext {
  const Grid* grid = nullptr;
  const EllipticOperator* op = nullptr;
  const Solver* lap = nullptr;   // -Laplace (or -L0 when gamma != 0)
  const Solver* l1 = nullptr;    // -L1
  Field g0_x0;                   // base Green column at x0
  Field gv_x0;                   // L1 Green column at x0
  std::size_t x0 = 0;
  double t_start = 0.0;          // defaults to point.eta when 0
  CriterionConfig cfg;
};

ClassifyContext make_context(const Grid& grid, const EllipticOperator& op, const Solver& lap,
                             const Solver& l1, std::size_t x0, double t_start,
                             const CriterionConfig& cfg);

struct ClassifyResult {
  std::vector<CriterionReport> reports;
  Verdict verdict = Verdict::Inconclusive;
  bool consistent = true;  // no two confident criteria disagree
};

// Runs {integral-Ky, integral-KyV, green-ratio, martin-ratio, c-weight};
// consolidated verdict is the majority among confident criteria and any
// confident disagreement is flagged as a consistency failure.
ClassifyResult classify(const ClassifyContext& ctx, const BoundaryPoint& point);

// Localized weighted-energy inequality on a graph chart: builds W = U_{t'},
// draws `trials` random pairs (u positive L1-solution, v positive L0-solution,
// both vanishing on the graph part), and returns the worst
//   u(z1) * int_{U_t} v^2 R dx   /   v(z1) * int_W v R u dx,
// z1 = (0, (t+t') rho / 2), R = V - gamma.
struct EnergyLocalization {
  double max_ratio = 0.0;
  std::vector<double> ratios;
};

EnergyLocalization verify_weighted_energy_localization(
    const LipGraphSpec& chart, const std::vector<double>& diag_coeffs,
    const PotentialSpec& gamma_spec, const PotentialSpec& v_spec, double t, double t_prime,
    double h, std::size_t trials, std::uint64_t seed);

// Almost-everywhere machinery of the boundary-set criteria: condition (ii)
// shells by distance to K, condition (iii) shells in delta over the
// cone-union subdomain, plus classify verdicts at sampled points of K.
struct AeReport {
  CriterionReport condition_ii;
  CriterionReport condition_iii;
  std::vector<Verdict> sampled;
  double regular_fraction = 0.0;
};

AeReport ae_regularity_tests(const ClassifyContext& ctx, const BoundarySet& kset,
                             double cone_slope, double cone_height, std::size_t sample_points);

}  // namespace finereg
