#include <doctest.h>

#include <algorithm>

#include "finereg/kernels.hpp"
#include "support.hpp"

using namespace finereg;

namespace {

LipGraphSpec wavy_chart(double r, double rho) {
  LipGraphSpec g;
  g.r = r;
  g.rho = rho;
  const int n = 33;
  g.samples.resize(n);
  const double lip_budget = 0.5 * rho / (10.0 * r);
  for (int i = 0; i < n; ++i) {
    const double x = -r + 2.0 * r * i / (n - 1);
    g.samples[static_cast<std::size_t>(i)] = lip_budget * r / M_PI * std::sin(M_PI * x / r);
  }
  g.samples[(n - 1) / 2] = 0.0;
  return g;
}

}  // namespace

TEST_CASE("martin kernel: normalization and disk Poisson oracle") {
  const double h = 1.0 / 128.0;
  const Grid g(Domain::unit_disk(), h);
  const Solver lap(assemble(g, EllipticOperator::laplace(g), OpMode::Laplacian, true));
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(0, -1));
  const std::size_t x0 = g.node_at(Pt(0, 0));
  const MartinApprox mk = martin_kernel(lap, y, x0, 0.5);

  CHECK(mk.t_min() == doctest::Approx(4.0 * h));
  for (const Field& f : mk.ratio_fields) {
    CHECK(f[x0] == 1.0);
    for (double v : f) CHECK(v >= -1e-12);
  }

  // Poisson kernel normalized at the center, away from the pole region
  const Field& k = mk.extrapolated();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.delta(i) < 4.0 * h) continue;
    if (dist(g.coord(i), y.y) < 32.0 * h) continue;  // finite-t pole region
    const Pt& x = g.coord(i);
    const double exact = (1.0 - dot(x, x)) / dot(x - y.y, x - y.y);
    worst = std::max(worst, std::abs(k[i] - exact) / exact);
  }
  CHECK(worst < 0.03);

  // vanishing along the boundary away from y
  double boundary_max = 0.0, field_max = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    field_max = std::max(field_max, k[i]);
    if (g.delta(i) < 2.0 * h && dist(g.coord(i), y.y) > 0.25)
      boundary_max = std::max(boundary_max, k[i]);
  }
  CHECK(boundary_max <= 0.05 * field_max);
}

TEST_CASE("martin kernel rejects poles below 4h and shallow x0") {
  const Grid g(Domain::unit_disk(), 1.0 / 32.0);
  const Solver lap(assemble(g, EllipticOperator::laplace(g), OpMode::Laplacian));
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(0, -1));
  CHECK_THROWS_AS(martin_kernel(lap, y, g.node_at(Pt(0, 0)), 0.5, 2.0 / 32.0), SpecError);
  const std::size_t shallow = g.nearest_node(Pt(0.0, -0.9));
  CHECK_THROWS_AS(martin_kernel(lap, y, shallow, 0.5), SpecError);
}

TEST_CASE("normalization invariance: ratios ignore Green column scaling") {
  const Grid g(Domain::unit_disk(), 1.0 / 32.0);
  const Solver lap(assemble(g, EllipticOperator::laplace(g), OpMode::Laplacian));
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(1, 0));
  const MartinApprox mk = martin_kernel(lap, y, g.node_at(Pt(0, 0)), 0.4);
  Field a = mk.extrapolated(), b = mk.extrapolated();
  for (double& v : a) v *= 7.25;
  const auto r = ratio_along_ray(g, a, b, y, {0.3, 0.15, 0.075});
  for (const auto& s : r) CHECK(s.value == doctest::Approx(7.25).epsilon(1e-12));
}

TEST_CASE("c-weight: V = 0 gives 1, monotone decreasing in kappa") {
  const Grid g(Domain::unit_disk(), 1.0 / 64.0);
  const std::size_t x0 = g.node_at(Pt(0, 0));
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(0, -1));

  double prev = 1.1;
  for (double kappa : {0.0, 1.0, 4.0}) {
    const EllipticOperator op = EllipticOperator::make(
        g, {}, PotentialSpec::zero(),
        kappa == 0.0 ? PotentialSpec::zero() : PotentialSpec::constant(kappa, kappa));
    const Solver lap(assemble(g, op, OpMode::Laplacian));
    const Solver l1(assemble(g, op, OpMode::L1));
    const MartinApprox ky = martin_kernel(lap, y, x0, 0.4);
    const CWeight cw = c_weight(g, l1, op.V, ky, x0);
    if (kappa == 0.0) CHECK(cw.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cw.value > 0.0);
    CHECK(cw.value < prev);
    prev = cw.value;
  }
}

TEST_CASE("c-weight monotone in V nodewise (unclamped formula)") {
  const Grid g(Domain::unit_disk(), 1.0 / 48.0);
  const std::size_t x0 = g.node_at(Pt(0, 0));
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(0, -1));
  const EllipticOperator op1 = EllipticOperator::make(
      g, {}, PotentialSpec::zero(), PotentialSpec::hardy(0.2));
  const EllipticOperator op2 = EllipticOperator::make(
      g, {}, PotentialSpec::zero(), PotentialSpec::hardy(0.45));
  const Solver lap(assemble(g, op1, OpMode::Laplacian));
  const MartinApprox ky = martin_kernel(lap, y, x0, 0.4);
  const Solver s1(assemble(g, op1, OpMode::L1));
  const Solver s2(assemble(g, op2, OpMode::L1));
  const CWeight c1 = c_weight(g, s1, op1.V, ky, x0);
  const CWeight c2 = c_weight(g, s2, op2.V, ky, x0);
  CHECK(c1.raw >= c2.raw);
}

TEST_CASE("ratio along ray: identical fields give 1; underflow flags") {
  const Grid g(Domain::unit_disk(), 1.0 / 32.0);
  Field a(g.size(), 2.0), b(g.size(), 2.0);
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(0, -1));
  for (const auto& s : ratio_along_ray(g, a, b, y, {0.4, 0.2, 0.1}))
    CHECK(s.value == doctest::Approx(1.0));
  Field tiny(g.size(), 1e-310);
  const auto fl = ratio_along_ray(g, a, tiny, y, {0.4});
  CHECK(fl[0].flagged);
}

TEST_CASE("boundary Harnack on graph charts") {
  const LipGraphSpec chart = wavy_chart(0.1, 1.2);
  const Domain dom = Domain::lip_graph(chart);

  SUBCASE("V = 0: refinement stability of the empirical constant") {
    double c_h = 0.0, c_h2 = 0.0;
    for (double div : {24.0, 48.0}) {
      const Grid g(dom, chart.r / div);
      const EllipticOperator op = EllipticOperator::laplace(g);
      const Solver s(assemble(g, op, OpMode::Laplacian));
      const HarnackResult r = verify_boundary_harnack(s, 10, 7);
      CHECK(r.pairs == 10);
      CHECK(std::isfinite(r.worst));
      CHECK(r.worst >= 1.0 - 1e-9);
      (div == 24.0 ? c_h : c_h2) = r.worst;
    }
    CHECK(c_h2 <= 2.0 * c_h);
    CHECK(c_h <= 2.0 * c_h2);
  }

  SUBCASE("V = hardy(0.5): finite and stable; mixed version (one harmonic)") {
    double c_h = 0.0, c_h2 = 0.0;
    for (double div : {24.0, 48.0}) {
      const Grid g(dom, chart.r / div);
      const EllipticOperator op = EllipticOperator::make(
          g, {}, PotentialSpec::zero(), PotentialSpec::hardy(0.5));
      const Solver lv(assemble(g, op, OpMode::L1));
      const Solver lap(assemble(g, op, OpMode::Laplacian));
      const HarnackResult pure = verify_boundary_harnack(lv, 6, 11);
      const HarnackResult mix = verify_boundary_harnack(lv, 6, 11, &lap);
      CHECK(std::isfinite(pure.worst));
      CHECK(std::isfinite(mix.worst));
      (div == 24.0 ? c_h : c_h2) = pure.worst;
    }
    CHECK(c_h2 <= 2.0 * c_h);
    CHECK(c_h <= 2.0 * c_h2);
  }
}

TEST_CASE("kernel-Green product bounded along the normal ray (N = 2)") {
  const double h = 1.0 / 128.0;
  const Grid g(Domain::unit_disk(), h);
  const std::size_t x0 = g.node_at(Pt(0, 0));
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(0, -1));
  const EllipticOperator op = EllipticOperator::make(
      g, {}, PotentialSpec::zero(), PotentialSpec::hardy(0.3));
  const Solver l1(assemble(g, op, OpMode::L1, true));
  const MartinApprox kv = martin_kernel(l1, y, x0, 0.4);
  const GreenField gv = green_column(l1, x0);
  double lo = 1e300, hi = 0.0;
  for (double t = 0.4; t >= 4.0 * h - 1e-12; t *= 0.5) {
    const std::size_t node = g.nearest_node(y.y + t * y.nu);
    const double prod = kv.extrapolated()[node] * gv.values[node];
    lo = std::min(lo, prod);
    hi = std::max(hi, prod);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 50.0);
}

TEST_CASE("one-sided kernel comparison on the ray for a regular scenario") {
  // K_y(y + t nu) <= C' K_y^V(y + t nu): the ratio K/K^V stays within 1.5x of
  // its median over the sampled ray
  const double h = 1.0 / 128.0;
  const Grid g(Domain::unit_disk(), h);
  const std::size_t x0 = g.node_at(Pt(0, 0));
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(0, -1));
  const EllipticOperator op = EllipticOperator::make(
      g, {}, PotentialSpec::zero(), PotentialSpec::constant(2.0, 2.0));
  const Solver lap(assemble(g, op, OpMode::Laplacian, true));
  const Solver l1(assemble(g, op, OpMode::L1, true));
  const MartinApprox ky = martin_kernel(lap, y, x0, 0.4);
  const MartinApprox kv = martin_kernel(l1, y, x0, 0.4);
  std::vector<double> ts;
  for (double t = 0.4; t >= 4.0 * h - 1e-12; t *= 0.5) ts.push_back(t);
  const auto ratios = ratio_along_ray(g, ky.extrapolated(), kv.extrapolated(), y, ts);
  std::vector<double> vals;
  for (const auto& r : ratios) vals.push_back(r.value);
  std::vector<double> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  for (double v : vals) CHECK(v <= 1.5 * median);
}

TEST_CASE("cauchy increments are reported and shrink for V = 0 on the disk") {
  const Grid g(Domain::unit_disk(), 1.0 / 64.0);
  const Solver lap(assemble(g, EllipticOperator::laplace(g), OpMode::Laplacian, true));
  const BoundaryPoint y = make_boundary_point(g.domain(), Pt(0, -1));
  const MartinApprox mk = martin_kernel(lap, y, g.node_at(Pt(0, 0)), 0.5);
  REQUIRE(mk.cauchy_increments.size() >= 2);
  CHECK(mk.cauchy_increments.back() < mk.cauchy_increments.front());
  CHECK(!mk.cauchy_flagged);
}
