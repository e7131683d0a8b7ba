#include "finereg/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace finereg {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Regular: return "regular";
    case Verdict::Singular: return "singular";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(CriterionId id) {
  switch (id) {
    case CriterionId::IntegralKyV: return "integral-KyV";
    case CriterionId::IntegralKy: return "integral-Ky";
    case CriterionId::SmoothExplicit: return "smooth-explicit";
    case CriterionId::ConeTest: return "cone-test";
    case CriterionId::GreenRatio: return "green-ratio";
    case CriterionId::MartinRatio: return "martin-ratio";
    case CriterionId::CWeight: return "c-weight";
    case CriterionId::RelativeR: return "relative-R";
  }
  return "?";
}

namespace {

// Geometric fit and verdict over the last cfg.fit_shells resolvable shells.
void fit_and_judge(CriterionReport& rep, const CriterionConfig& cfg) {
  double grand = rep.layer_mass;
  for (const auto& s : rep.shells) grand += s.sum;
  if (grand <= cfg.tiny_total) {
    rep.q = 0.0;
    rep.total = grand;
    rep.verdict = Verdict::Regular;
    rep.note = "vanishing integrand";
    return;
  }
  if (rep.resolvable < cfg.min_shells) {
    rep.q = 0.0;
    rep.total = grand;
    rep.verdict = Verdict::Inconclusive;
    rep.note = "fewer than " + std::to_string(cfg.min_shells) + " resolvable shells";
    return;
  }
  const int last = rep.resolvable;  // shells[0..last-1] are resolvable
  const int first = std::max(0, last - cfg.fit_shells);
  // least squares on log S_k against k, positive sums only
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int k = first; k < last; ++k) {
    const double s = rep.shells[static_cast<std::size_t>(k)].sum;
    if (s <= 0.0) continue;
    const double x = k, y = std::log(s);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  if (m < 2) {
    rep.q = 0.0;
    rep.total = grand;
    rep.verdict = Verdict::Inconclusive;
    rep.note = "insufficient positive shells for a fit";
    return;
  }
  const double slope = (sxy - sx * sy / m) / (sxx - sx * sx / m);
  rep.q = std::exp(slope);
  if (rep.q < 1.0) {
    const double tail = rep.shells[static_cast<std::size_t>(last - 1)].sum * rep.q / (1.0 - rep.q);
    rep.total = grand + tail;
  } else {
    rep.total = std::numeric_limits<double>::infinity();
  }
  if (rep.q <= cfg.q_reg)
    rep.verdict = Verdict::Regular;
  else if (rep.q >= cfg.q_sing)
    rep.verdict = Verdict::Singular;
  else
    rep.verdict = Verdict::Inconclusive;
}

// shells[k] collects radii in [2^-k-1, 2^-k); resolvable while 2^-k >= 8h.
struct ShellAccum {
  std::vector<std::vector<double>> terms;
  int resolvable;
  explicit ShellAccum(double h) {
    resolvable = 0;
    while (std::pow(2.0, -resolvable) >= 8.0 * h - 1e-15) ++resolvable;
    terms.resize(static_cast<std::size_t>(resolvable) + 4);  // a few unresolvable rows kept
  }
  void add(double r, double term) {
    if (r <= 0.0) return;
    const int k = static_cast<int>(std::floor(-std::log2(r))) ;
    if (k < 0) return;  // beyond the unit shell; outermost shell k=0 covers [1/2, 1)
    if (k >= static_cast<int>(terms.size())) return;
    terms[static_cast<std::size_t>(k)].push_back(term);
  }
  void finish(CriterionReport& rep) const {
    for (std::size_t k = 0; k < terms.size(); ++k) {
      ShellRow row;
      row.k = static_cast<int>(k);
      row.r_out = std::pow(2.0, -row.k);
      row.r_in = 0.5 * row.r_out;
      row.sum = pairwise_sum(terms[k]);
      rep.shells.push_back(row);
    }
    rep.resolvable = resolvable;
  }
};

bool monotone_decreasing(const std::vector<RaySample>& s, double slack) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].value > s[i - 1].value * (1.0 + slack)) return false;
  return true;
}

bool monotone_increasing(const std::vector<RaySample>& s, double slack) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].value < s[i - 1].value * (1.0 - slack)) return false;
  return true;
}

bool stabilized(const std::vector<RaySample>& s, double spread) {
  if (s.size() < 3) return false;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = s.size() - 3; i < s.size(); ++i) {
    lo = std::min(lo, s[i].value);
    hi = std::max(hi, s[i].value);
  }
  return lo > 0.0 && (hi - lo) / hi <= spread;
}

std::vector<double> geometric_ts(double t_start, double t_min) {
  std::vector<double> ts;
  for (double t = t_start; t >= t_min - 1e-12; t *= 0.5) ts.push_back(t);
  return ts;
}

}  // namespace

CriterionReport shell_integral_criterion(const Grid& grid, const Field& green_x0,
                                         const Field& weight, const Field& kernel,
                                         const Pt& y, CriterionId id,
                                         const CriterionConfig& cfg) {
  CriterionReport rep;
  rep.id = id;
  const double vol = grid.cell_volume();
  const double cut = 2.0 * grid.h();
  ShellAccum acc(grid.h());
  std::vector<double> layer;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double term = vol * green_x0[i] * weight[i] * kernel[i];
    if (term == 0.0) continue;
    if (grid.delta(i) < cut) {
      layer.push_back(term);
      continue;
    }
    acc.add(dist(grid.coord(i), y), term);
  }
  rep.layer_mass = pairwise_sum(layer);
  acc.finish(rep);
  fit_and_judge(rep, cfg);
  return rep;
}

CriterionReport criterion_smooth_explicit(const Grid& grid, const BoundaryPoint& point,
                                          const Field& v, const CriterionConfig& cfg) {
  if (grid.domain().kind() != DomainKind::UnitDisk || grid.dim() != 2)
    throw SpecError("smooth-explicit criterion supported on the unit disk only");
  CriterionReport rep;
  rep.id = CriterionId::SmoothExplicit;
  const double vol = grid.cell_volume();
  const double cut = 2.0 * grid.h();
  ShellAccum acc(grid.h());
  std::vector<double> layer;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (v[i] == 0.0) continue;
    const double r = dist(grid.coord(i), point.y);
    const double d = grid.delta(i);
    const double term = vol * d * d * std::pow(r, -static_cast<double>(grid.dim())) * v[i];
    if (d < cut) {
      layer.push_back(term);
      continue;
    }
    acc.add(r, term);
  }
  rep.layer_mass = pairwise_sum(layer);
  acc.finish(rep);
  fit_and_judge(rep, cfg);
  return rep;
}

CriterionReport criterion_cone_test(const Domain& dom, const BoundaryPoint& point,
                                    const Cone& cone, const PotentialSpec& v,
                                    const CriterionConfig& cfg, double r_min) {
  if (dom.dim() != 2) throw SpecError("cone test implemented for N = 2");
  if (!cone_inside(dom, cone)) throw DomainError("cone test: cone not contained in the domain");
  CriterionReport rep;
  rep.id = CriterionId::ConeTest;
  const double half_angle = std::atan(cone.slope);
  const Pt axis = cone.axis;
  const Pt perp(-axis[1], axis[0]);

  int resolvable = 0;
  while (std::pow(2.0, -resolvable) >= r_min - 1e-15) ++resolvable;
  const int kmax = resolvable + 2;
  const int nr = 48, na = 48;
  for (int k = 0; k < kmax; ++k) {
    const double ro = std::pow(2.0, -k), ri = 0.5 * ro;
    std::vector<double> terms;
    for (int ir = 0; ir < nr; ++ir) {
      const double r = ri + (ro - ri) * (ir + 0.5) / nr;
      for (int ia = 0; ia < na; ++ia) {
        const double phi = -half_angle + 2.0 * half_angle * (ia + 0.5) / na;
        const Pt x = point.y + (r * std::cos(phi)) * axis + (r * std::sin(phi)) * perp;
        if (!cone.contains(x)) continue;
        const double vv = v.eval(dom, x);
        if (vv == 0.0) continue;
        // N = 2: the |x-y|^{2-N} weight is 1; polar area element r dr dphi
        terms.push_back(vv * r * ((ro - ri) / nr) * (2.0 * half_angle / na));
      }
    }
    ShellRow row;
    row.k = k;
    row.r_out = ro;
    row.r_in = ri;
    row.sum = pairwise_sum(terms);
    rep.shells.push_back(row);
  }
  rep.resolvable = resolvable;
  fit_and_judge(rep, cfg);
  return rep;
}

CriterionReport criterion_green_ratio(const Grid& grid, const Field& gv_x0,
                                      const Field& g0_x0, const BoundaryPoint& point,
                                      double t_start, const CriterionConfig& cfg) {
  CriterionReport rep;
  rep.id = CriterionId::GreenRatio;
  const auto ts = geometric_ts(t_start, cfg.ray_min_mult * grid.h());
  rep.samples = ratio_along_ray(grid, gv_x0, g0_x0, point, ts);
  if (rep.samples.size() < 3) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "too few ray samples";
    return rep;
  }
  const double first = rep.samples.front().value;
  const double last = rep.samples.back().value;
  rep.q = first > 0.0 ? last / first : 0.0;
  if (stabilized(rep.samples, cfg.stabilize_spread) && last >= cfg.ratio_floor) {
    rep.verdict = Verdict::Regular;
  } else if (monotone_decreasing(rep.samples, 0.01) && rep.q <= cfg.green_sing_decay) {
    rep.verdict = Verdict::Singular;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

CriterionReport criterion_martin_ratio(const Grid& grid, const Field& kv, const Field& k0,
                                       const BoundaryPoint& point, double t_start,
                                       const CriterionConfig& cfg) {
  CriterionReport rep;
  rep.id = CriterionId::MartinRatio;
  const auto ts = geometric_ts(t_start, cfg.t_min_mult * grid.h());
  rep.samples = ratio_along_ray(grid, kv, k0, point, ts);
  if (rep.samples.size() < 3) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "too few ray samples";
    return rep;
  }
  const double first = rep.samples.front().value;
  const double last = rep.samples.back().value;
  rep.q = first > 0.0 ? last / first : 0.0;
  if (stabilized(rep.samples, cfg.stabilize_spread)) {
    rep.verdict = Verdict::Regular;
  } else if (monotone_increasing(rep.samples, 0.01) && rep.q >= cfg.martin_sing_growth) {
    rep.verdict = Verdict::Singular;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

CriterionReport criterion_c_weight(const CWeight& cw, const CriterionConfig& cfg) {
  CriterionReport rep;
  rep.id = CriterionId::CWeight;
  rep.c_value = cw.value;
  rep.layer_mass = cw.integral.layer;
  rep.total = cw.integral.total();
  if (cw.value >= cfg.c_reg)
    rep.verdict = Verdict::Regular;
  else if (cw.value <= cfg.c_sing)
    rep.verdict = Verdict::Singular;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

ClassifyContext make_context(const Grid& grid, const EllipticOperator& op, const Solver& lap,
                             const Solver& l1, std::size_t x0, double t_start,
                             const CriterionConfig& cfg) {
  ClassifyContext ctx;
  ctx.grid = &grid;
  ctx.op = &op;
  ctx.lap = &lap;
  ctx.l1 = &l1;
  ctx.x0 = x0;
  ctx.t_start = t_start;
  ctx.cfg = cfg;
  ctx.g0_x0 = green_column(lap, x0).values;
  ctx.gv_x0 = green_column(l1, x0).values;
  return ctx;
}

ClassifyResult classify(const ClassifyContext& ctx, const BoundaryPoint& point) {
  const Grid& grid = *ctx.grid;
  const double t_start = ctx.t_start > 0.0 ? ctx.t_start : point.eta;
  const double t_min = ctx.cfg.t_min_mult * grid.h();

  const MartinApprox ky = martin_kernel(*ctx.lap, point, ctx.x0, t_start, t_min);
  const MartinApprox kyv = martin_kernel(*ctx.l1, point, ctx.x0, t_start, t_min);
  const CWeight cw = c_weight(grid, *ctx.l1, ctx.op->V, ky, ctx.x0);

  ClassifyResult res;
  res.reports.push_back(shell_integral_criterion(grid, ctx.g0_x0, ctx.op->V,
                                                 ky.extrapolated(), point.y,
                                                 CriterionId::IntegralKy, ctx.cfg));
  res.reports.push_back(shell_integral_criterion(grid, ctx.g0_x0, ctx.op->V,
                                                 kyv.extrapolated(), point.y,
                                                 CriterionId::IntegralKyV, ctx.cfg));
  res.reports.push_back(
      criterion_green_ratio(grid, ctx.gv_x0, ctx.g0_x0, point, t_start, ctx.cfg));
  res.reports.push_back(criterion_martin_ratio(grid, kyv.extrapolated(), ky.extrapolated(),
                                               point, t_start, ctx.cfg));
  res.reports.push_back(criterion_c_weight(cw, ctx.cfg));

  int reg = 0, sing = 0;
  for (const auto& r : res.reports) {
    if (r.verdict == Verdict::Regular) ++reg;
    if (r.verdict == Verdict::Singular) ++sing;
  }
  res.consistent = !(reg > 0 && sing > 0);
  if (reg > sing)
    res.verdict = Verdict::Regular;
  else if (sing > reg)
    res.verdict = Verdict::Singular;
  else
    res.verdict = Verdict::Inconclusive;
  return res;
}

EnergyLocalization verify_weighted_energy_localization(
    const LipGraphSpec& chart, const std::vector<double>& diag_coeffs,
    const PotentialSpec& gamma_spec, const PotentialSpec& v_spec, double t, double t_prime,
    double h, std::size_t trials, std::uint64_t seed) {
  if (!(0.0 < t && t < t_prime && t_prime <= 1.0))
    throw SpecError("energy localization: need 0 < t < t' <= 1");

  // W = U_{t'} is itself an admissible chart with r' = t' r, rho' = t' rho.
  LipGraphSpec sub;
  sub.r = t_prime * chart.r;
  sub.rho = t_prime * chart.rho;
  const int m = 129;
  sub.samples.resize(m);
  for (int i = 0; i < m; ++i)
    sub.samples[static_cast<std::size_t>(i)] = chart.eval(-sub.r + 2.0 * sub.r * i / (m - 1));
  const Domain w = Domain::lip_graph(sub);
  const Grid grid(w, h);
  const EllipticOperator op = EllipticOperator::make(grid, diag_coeffs, gamma_spec, v_spec);
  const Solver l0(assemble(grid, op, OpMode::L0));
  const Solver l1(assemble(grid, op, OpMode::L1));

  const std::size_t z1 = grid.nearest_node(Pt(0.0, 0.5 * (t + t_prime) * chart.rho));
  Field r_weight(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) r_weight[i] = op.V[i] - op.gamma[i];

  const double vol = grid.cell_volume();
  EnergyLocalization out;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Field u = random_chart_solution(l1, splitmix64(seed) + 2 * trial);
    const Field v = random_chart_solution(l0, splitmix64(seed) + 2 * trial + 1);
    std::vector<double> lhs_terms, rhs_terms;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (r_weight[i] == 0.0) continue;
      const Pt& x = grid.coord(i);
      rhs_terms.push_back(vol * v[i] * r_weight[i] * u[i]);
      if (std::abs(x[0]) < t * chart.r && x[1] < t * chart.rho)
        lhs_terms.push_back(vol * v[i] * v[i] * r_weight[i]);
    }
    const double lhs = u[z1] * pairwise_sum(lhs_terms);
    const double rhs = v[z1] * pairwise_sum(rhs_terms);
    out.ratios.push_back(rhs > 0.0 ? lhs / rhs : 0.0);
    out.max_ratio = std::max(out.max_ratio, out.ratios.back());
  }
  return out;
}

AeReport ae_regularity_tests(const ClassifyContext& ctx, const BoundarySet& kset,
                             double cone_slope, double cone_height,
                             std::size_t sample_points) {
  if (kset.empty()) throw SpecError("ae tests: boundary set is empty");
  const Grid& grid = *ctx.grid;
  const Domain& dom = grid.domain();
  AeReport out;

  // condition (ii): shells by distance to K of omega^K G V
  {
    const HarmonicMeasure om = harmonic_measure(*ctx.lap, kset);
    CriterionReport rep;
    rep.id = CriterionId::IntegralKy;
    rep.note = "condition (ii): omega^K G V, shells by dist(x, K)";
    ShellAccum acc(grid.h());
    std::vector<double> layer;
    const double vol = grid.cell_volume();
    const double cut = 2.0 * grid.h();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double term = vol * om.values[i] * ctx.g0_x0[i] * ctx.op->V[i];
      if (term == 0.0) continue;
      if (grid.delta(i) < cut) {
        layer.push_back(term);
        continue;
      }
      acc.add(kset.distance(grid.coord(i)), term);
    }
    rep.layer_mass = pairwise_sum(layer);
    acc.finish(rep);
    fit_and_judge(rep, ctx.cfg);
    out.condition_ii = rep;
  }

  // condition (iii): shells in delta of delta V over the cone union
  {
    std::size_t stride = std::max<std::size_t>(1, kset.samples.size() / 12);
    std::vector<BoundaryPoint> pts;
    for (std::size_t i = 0; i < kset.samples.size(); i += stride)
      pts.push_back(make_boundary_point(dom, kset.samples[i]));
    const Domain subdomain =
        cone_union_subdomain(dom, pts, cone_slope, cone_height, grid.h());
    CriterionReport rep;
    rep.id = CriterionId::ConeTest;
    rep.note = "condition (iii): delta V over cone union, shells in delta";
    ShellAccum acc(grid.h());
    std::vector<double> layer;
    const double vol = grid.cell_volume();
    const double cut = 2.0 * grid.h();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!subdomain.contains(grid.coord(i))) continue;
      const double term = vol * grid.delta(i) * ctx.op->V[i];
      if (term == 0.0) continue;
      if (grid.delta(i) < cut) {
        layer.push_back(term);
        continue;
      }
      acc.add(grid.delta(i), term);
    }
    rep.layer_mass = pairwise_sum(layer);
    acc.finish(rep);
    fit_and_judge(rep, ctx.cfg);
    out.condition_iii = rep;
  }

  // classify sampled points of K
  const std::size_t n = kset.samples.size();
  std::size_t regular = 0;
  for (std::size_t j = 0; j < sample_points; ++j) {
    const Pt y = kset.samples[(j * (n - 1)) / std::max<std::size_t>(1, sample_points - 1)];
    const BoundaryPoint bp = make_boundary_point(dom, y);
    const ClassifyResult cls = classify(ctx, bp);
    out.sampled.push_back(cls.verdict);
    if (cls.verdict == Verdict::Regular) ++regular;
  }
  out.regular_fraction =
      sample_points == 0 ? 0.0 : static_cast<double>(regular) / static_cast<double>(sample_points);
  return out;
}

}  // namespace finereg
