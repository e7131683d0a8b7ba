#include "finereg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "finereg/report_io.hpp"

namespace finereg {

namespace {

using nlohmann::json;

Pt parse_pt(const json& j) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3))
    throw SpecError("expected a 2- or 3-vector");
  if (j.size() == 2) return Pt(j[0].get<double>(), j[1].get<double>());
  return Pt(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Domain parse_domain(const json& j) {
  if (!j.contains("kind")) throw SpecError("domain: missing 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "unit-disk") return Domain::unit_disk(j.value("dim", 2));
  if (kind == "polygon") {
    std::vector<Pt> verts;
    for (const auto& v : j.at("vertices")) verts.push_back(parse_pt(v));
    return Domain::polygon(std::move(verts));
  }
  if (kind == "lipschitz-graph") {
    LipGraphSpec spec;
    spec.r = j.at("r").get<double>();
    spec.rho = j.at("rho").get<double>();
    spec.samples = j.at("samples").get<std::vector<double>>();
    return Domain::lip_graph(std::move(spec));
  }
  if (kind == "box") return Domain::box(parse_pt(j.at("lo")), parse_pt(j.at("hi")));
  throw SpecError("domain: unknown kind '" + kind + "'");
}

double default_bound_a(const json& j, const Domain& dom, const std::string& kind) {
  const double diam = dom.diameter();
  if (kind == "constant" || kind == "indicator-ball")
    return j.at("kappa").get<double>() * 0.25 * diam * diam;
  if (kind == "power-law") {
    const double s = j.at("s").get<double>();
    if (s > 2.0)
      throw SpecError("potential: power-law with s > 2 needs an explicit bound_a");
    return j.at("kappa").get<double>() * std::pow(diam, 2.0 - s);
  }
  return 0.0;
}

}  // namespace

Cone parse_cone(const json& j) {
  Cone c;
  c.vertex = parse_pt(j.at("vertex"));
  c.axis = parse_pt(j.at("axis"));
  const double n = norm(c.axis);
  if (!(n > 0.0)) throw SpecError("cone: zero axis");
  c.axis = (1.0 / n) * c.axis;
  c.slope = j.at("slope").get<double>();
  c.height = j.at("height").get<double>();
  c.inner_margin = j.value("inner_margin", 0.0);
  if (!(c.height > 0.0)) throw SpecError("invalid cone: height must be positive");
  return c;
}

PotentialSpec parse_potential(const json& j, const Domain& dom) {
  if (!j.contains("kind")) throw SpecError("potential: missing 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return PotentialSpec::zero();
  if (kind == "constant")
    return PotentialSpec::constant(j.at("kappa").get<double>(),
                                   j.value("bound_a", default_bound_a(j, dom, kind)));
  if (kind == "hardy") return PotentialSpec::hardy(j.at("kappa").get<double>());
  if (kind == "power-law") {
    PotentialSpec p = PotentialSpec::power_law(
        j.at("kappa").get<double>(), j.at("s").get<double>(), parse_pt(j.at("center")),
        j.value("bound_a", default_bound_a(j, dom, kind)));
    if (j.contains("cone")) return PotentialSpec::cone_restricted(std::move(p), parse_cone(j.at("cone")));
    return p;
  }
  if (kind == "cone-restricted")
    return PotentialSpec::cone_restricted(parse_potential(j.at("inner"), dom),
                                          parse_cone(j.at("cone")));
  if (kind == "indicator-ball")
    return PotentialSpec::indicator_ball(parse_pt(j.at("center")),
                                         j.at("radius").get<double>(),
                                         j.at("kappa").get<double>(),
                                         j.value("bound_a", default_bound_a(j, dom, kind)));
  throw SpecError("potential: unknown kind '" + kind + "'");
}

Scenario Scenario::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("scenario file not found: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SpecError(std::string("scenario parse error: ") + e.what());
  }
  return parse_json(j);
}

Scenario Scenario::parse_json(const json& j) {
  Scenario sc;
  try {
    sc.name = j.value("name", std::string("scenario"));
    sc.domain = parse_domain(j.at("domain"));
    sc.h = j.at("h").get<double>();
    if (!(sc.h > 0.0)) throw SpecError("h must be positive");
    if (sc.domain.diameter() / sc.h < 16.0)
      throw SpecError("h too coarse: need at least 16 nodes across the domain diameter");
    if (j.contains("x0")) sc.x0 = parse_pt(j.at("x0"));
    sc.shortley_weller = j.value("shortley_weller", false);
    if (j.contains("operator")) {
      const json& op = j.at("operator");
      if (op.contains("coefficients"))
        sc.coefficients = op.at("coefficients").get<std::vector<double>>();
      if (op.contains("gamma")) sc.gamma = parse_potential(op.at("gamma"), sc.domain);
      if (op.contains("potential"))
        sc.potential = parse_potential(op.at("potential"), sc.domain);
    }
    if (j.contains("points")) {
      for (const auto& pj : j.at("points")) {
        PointSpec ps;
        ps.y = parse_pt(pj.at("y"));
        if (pj.contains("nu")) ps.nu = parse_pt(pj.at("nu"));
        if (pj.contains("eta")) ps.eta = pj.at("eta").get<double>();
        ps.cone_slope = pj.value("cone_slope", 1.0);
        if (pj.contains("cone_height")) ps.cone_height = pj.at("cone_height").get<double>();
        ps.cone_margin = pj.value("cone_margin", 0.05);
        sc.points.push_back(ps);
      }
    }
    sc.criteria = j.value("criteria",
                          std::vector<std::string>{"integral-Ky", "integral-KyV", "green-ratio",
                                                   "martin-ratio", "c-weight"});
    if (j.contains("thresholds")) {
      const json& t = j.at("thresholds");
      sc.thresholds.q_reg = t.value("q_reg", sc.thresholds.q_reg);
      sc.thresholds.q_sing = t.value("q_sing", sc.thresholds.q_sing);
      sc.thresholds.t_min_mult = t.value("t_min_mult", sc.thresholds.t_min_mult);
      sc.thresholds.green_sing_decay =
          t.value("green_sing_decay", sc.thresholds.green_sing_decay);
      sc.thresholds.martin_sing_growth =
          t.value("martin_sing_growth", sc.thresholds.martin_sing_growth);
      sc.thresholds.c_reg = t.value("c_reg", sc.thresholds.c_reg);
      sc.thresholds.c_sing = t.value("c_sing", sc.thresholds.c_sing);
    }
    if (j.contains("t_start")) sc.t_start = j.at("t_start").get<double>();
    if (j.contains("monte_carlo")) {
      const json& m = j.at("monte_carlo");
      MonteCarloSpec mc;
      mc.paths = m.value("paths", mc.paths);
      mc.epsilon = m.at("epsilon").get<double>();
      mc.seed = m.value("seed", mc.seed);
      mc.max_steps = m.value("max_steps", mc.max_steps);
      mc.h_function = m.value("h_function", mc.h_function);
      sc.monte_carlo = mc;
    }
    if (j.contains("output")) sc.report_name = j.at("output").value("report", sc.report_name);
  } catch (const json::exception& e) {
    throw SpecError(std::string("scenario field error: ") + e.what());
  }
  return sc;
}

namespace {

double normal_ray_integral(const Domain& dom, const PotentialSpec& v, const BoundaryPoint& bp,
                           double eta, double cutoff) {
  // diagnostic column: int t V(y + t nu) dt over [cutoff, eta], midpoint rule
  const int n = 4096;
  std::vector<double> terms;
  terms.reserve(n);
  const double dt = (eta - cutoff) / n;
  for (int i = 0; i < n; ++i) {
    const double t = cutoff + (i + 0.5) * dt;
    const Pt x = bp.y + t * bp.nu;
    if (!dom.contains(x)) continue;
    terms.push_back(t * v.eval(dom, x) * dt);
  }
  return pairwise_sum(terms);
}

struct PointRun {
  BoundaryPoint bp;
  std::vector<CriterionReport> reports;
  Verdict consolidated = Verdict::Inconclusive;
  bool consistent = true;
};

}  // namespace

RunResult run_scenario(const Scenario& sc, const std::string& out_dir) {
  RunResult result;
  const Grid grid(sc.domain, sc.h);
  const EllipticOperator op =
      EllipticOperator::make(grid, sc.coefficients, sc.gamma, sc.potential);
  const Solver l0(assemble(grid, op, OpMode::L0, sc.shortley_weller));
  const Solver l1(assemble(grid, op, OpMode::L1, sc.shortley_weller));
  const std::size_t x0 = sc.x0 ? grid.nearest_node(*sc.x0) : grid.deepest_node();

  ClassifyContext ctx = make_context(grid, op, l0, l1, x0, sc.t_start.value_or(0.0),
                                     sc.thresholds);

  Field r_weight(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) r_weight[i] = op.V[i] - op.gamma[i];

  std::vector<PointRun> runs;
  for (const auto& ps : sc.points) {
    PointRun pr;
    pr.bp = make_boundary_point(sc.domain, ps.y, ps.nu, ps.eta);
    const double t_start = sc.t_start.value_or(pr.bp.eta);
    const double t_min = sc.thresholds.t_min_mult * grid.h();

    std::optional<MartinApprox> ky, kyv;
    auto need_ky = [&]() -> const MartinApprox& {
      if (!ky) ky = martin_kernel(*ctx.lap, pr.bp, x0, t_start, t_min);
      return *ky;
    };
    auto need_kyv = [&]() -> const MartinApprox& {
      if (!kyv) kyv = martin_kernel(*ctx.l1, pr.bp, x0, t_start, t_min);
      return *kyv;
    };

    for (const std::string& c : sc.criteria) {
      CriterionReport rep;
      if (c == "integral-Ky") {
        rep = shell_integral_criterion(grid, ctx.g0_x0, op.V, need_ky().extrapolated(),
                                       pr.bp.y, CriterionId::IntegralKy, sc.thresholds);
      } else if (c == "integral-KyV") {
        rep = shell_integral_criterion(grid, ctx.g0_x0, op.V, need_kyv().extrapolated(),
                                       pr.bp.y, CriterionId::IntegralKyV, sc.thresholds);
      } else if (c == "relative-R") {
        rep = shell_integral_criterion(grid, ctx.g0_x0, r_weight, need_ky().extrapolated(),
                                       pr.bp.y, CriterionId::RelativeR, sc.thresholds);
      } else if (c == "smooth-explicit") {
        rep = criterion_smooth_explicit(grid, pr.bp, op.V, sc.thresholds);
      } else if (c == "cone-test") {
        Cone cone = build_cone(pr.bp, ps.cone_slope, ps.cone_height.value_or(pr.bp.eta),
                               ps.cone_margin);
        rep = criterion_cone_test(sc.domain, pr.bp, cone, sc.potential, sc.thresholds,
                                  grid.h());
      } else if (c == "green-ratio") {
        rep = criterion_green_ratio(grid, ctx.gv_x0, ctx.g0_x0, pr.bp, t_start,
                                    sc.thresholds);
      } else if (c == "martin-ratio") {
        rep = criterion_martin_ratio(grid, need_kyv().extrapolated(),
                                     need_ky().extrapolated(), pr.bp, t_start,
                                     sc.thresholds);
      } else if (c == "c-weight") {
        const CWeight cw = c_weight(grid, *ctx.l1, op.V, need_ky(), x0);
        rep = criterion_c_weight(cw, sc.thresholds);
      } else {
        throw SpecError("unknown criterion '" + c + "'");
      }
      rep.ray_diag =
          normal_ray_integral(sc.domain, sc.potential, pr.bp, pr.bp.eta, grid.h());
      pr.reports.push_back(std::move(rep));
    }

    int reg = 0, sing = 0;
    for (const auto& r : pr.reports) {
      if (r.verdict == Verdict::Regular) ++reg;
      if (r.verdict == Verdict::Singular) ++sing;
    }
    pr.consistent = !(reg > 0 && sing > 0);
    pr.consolidated = reg > sing   ? Verdict::Regular
                      : sing > reg ? Verdict::Singular
                                   : Verdict::Inconclusive;
    runs.push_back(std::move(pr));
  }

  // reports and CSVs
  nlohmann::ordered_json rep;
  rep["schema_version"] = kSchemaVersion;
  rep["scenario"] = sc.name;
  rep["h"] = sc.h;
  rep["nodes"] = grid.size();
  {
    nlohmann::ordered_json xj = nlohmann::ordered_json::array();
    for (int d = 0; d < grid.dim(); ++d) xj.push_back(grid.coord(x0)[d]);
    rep["x0"] = xj;
  }
  std::string shells_csv = shell_csv_header();
  std::string rays_csv = ray_csv_header();
  bool all_consistent = true;
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (std::size_t pi = 0; pi < runs.size(); ++pi) {
    const auto& pr = runs[pi];
    const std::string pid = "p" + std::to_string(pi);
    nlohmann::ordered_json pj;
    {
      nlohmann::ordered_json yj = nlohmann::ordered_json::array();
      for (int d = 0; d < grid.dim(); ++d) yj.push_back(pr.bp.y[d]);
      pj["y"] = yj;
    }
    pj["eta"] = pr.bp.eta;
    pj["consolidated"] = to_string(pr.consolidated);
    pj["consistent"] = pr.consistent;
    nlohmann::ordered_json crit = nlohmann::ordered_json::array();
    for (const auto& r : pr.reports) {
      crit.push_back(report_json(r));
      append_shell_rows(shells_csv, pid, r);
      append_ray_rows(rays_csv, pid, r);
    }
    pj["criteria"] = crit;
    points.push_back(pj);
    all_consistent = all_consistent && pr.consistent;
  }
  rep["points"] = points;

  if (sc.monte_carlo) {
    const auto& mc = *sc.monte_carlo;
    if (sc.points.empty()) throw SpecError("monte_carlo requires a boundary point");
    const BoundaryPoint bp = runs.front().bp;
    const double t_start = sc.t_start.value_or(bp.eta);
    const MartinApprox& mk =
        mc.h_function == "KyV"
            ? martin_kernel(*ctx.l1, bp, x0, t_start, sc.thresholds.t_min_mult * grid.h())
            : martin_kernel(*ctx.lap, bp, x0, t_start, sc.thresholds.t_min_mult * grid.h());
    WalkConfig wc;
    wc.start = x0;
    wc.epsilon = mc.epsilon;
    wc.seed = mc.seed;
    wc.paths = mc.paths;
    wc.max_steps = mc.max_steps;
    const WalkStats stats = conditioned_functional(grid, op.V, mk.extrapolated(), bp.y, wc);
    nlohmann::ordered_json mj;
    mj["mean"] = stats.mean;
    mj["std_error"] = stats.std_error;
    mj["retained"] = stats.retained;
    mj["failures"] = stats.failures;
    rep["monte_carlo"] = mj;
  }

  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  write_file_atomic((dir / sc.report_name).string(), rep.dump(2) + "\n");
  write_file_atomic((dir / "shells.csv").string(), shells_csv);
  write_file_atomic((dir / "rays.csv").string(), rays_csv);

  result.exit_code = all_consistent ? 0 : 2;
  result.report = std::move(rep);
  return result;
}

namespace {

void apply_param(Scenario& sc, const std::string& param, double value) {
  if (param == "h") {
    sc.h = value;
    return;
  }
  PotentialSpec* p = &sc.potential;
  while (p->kind == PotentialKind::ConeRestricted) p = p->inner.get();
  if (param == "s") {
    if (p->kind != PotentialKind::PowerLaw)
      throw SpecError("sweep over s requires a power-law potential");
    p->s = value;
  } else if (param == "kappa") {
    p->kappa = value;
  } else {
    throw SpecError("sweep parameter must be one of s, kappa, h");
  }
}

}  // namespace

int run_sweep(const Scenario& base, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir, int threads) {
  if (values.empty()) throw SpecError("sweep: empty value list");
  namespace fs = std::filesystem;
  struct Slot {
    RunResult result;
    std::string error;
  };
  std::vector<Slot> slots(values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      Scenario sc = base;
      apply_param(sc, param, values[i]);
      const std::string sub =
          (fs::path(out_dir) / (base.name + "-" + param + "-" + std::to_string(i))).string();
      try {
        slots[i].result = run_scenario(sc, sub);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  };
  const int nw = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::string csv = sweep_csv_header();
  int exit_code = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!slots[i].error.empty()) throw SpecError("sweep value " + std::to_string(values[i]) +
                                                 ": " + slots[i].error);
    exit_code = std::max(exit_code, slots[i].result.exit_code);
    const auto& rep = slots[i].result.report;
    for (std::size_t pi = 0; pi < rep.at("points").size(); ++pi) {
      const auto& pj = rep.at("points")[pi];
      for (const auto& cj : pj.at("criteria")) {
        csv += std::to_string(kSchemaVersion);
        csv += ',';
        csv += param;
        csv += ',';
        csv += format_double(values[i]);
        csv += ",p" + std::to_string(pi) + ",";
        csv += cj.at("criterion").get<std::string>();
        csv += ',';
        csv += cj.at("verdict").get<std::string>();
        csv += ',';
        csv += format_double(cj.at("q").get<double>());
        csv += ',';
        csv += cj.contains("c") ? format_double(cj.at("c").get<double>()) : "";
        csv += ',';
        csv += cj.at("total").is_string() ? "inf" : format_double(cj.at("total").get<double>());
        csv += '\n';
      }
    }
  }
  write_file_atomic((fs::path(out_dir) / "sweep.csv").string(), csv);
  return exit_code;
}

}  // namespace finereg
