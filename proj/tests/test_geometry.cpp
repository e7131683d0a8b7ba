#include <doctest.h>

#include <random>

#include "finereg/geometry.hpp"

using namespace finereg;

TEST_CASE("distance to boundary: unit square") {
  const Domain sq = Domain::polygon({Pt(0, 0), Pt(1, 0), Pt(1, 1), Pt(0, 1)});
  CHECK(sq.distance_to_boundary(Pt(0.3, 0.5)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("distance to boundary: disk center") {
  const Domain disk = Domain::unit_disk();
  CHECK(disk.distance_to_boundary(Pt(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("distance to boundary: triangle, min over edges vs sampling oracle") {
  const Domain tri = Domain::polygon({Pt(0, 0), Pt(1, 0), Pt(0, 1)});
  for (const Pt x : {Pt(0.25, 0.25), Pt(0.4, 0.4), Pt(0.1, 0.3)}) {
    const double d = tri.distance_to_boundary(x);
    double ds = 1e300;
    for (const Pt& b : tri.boundary_sample(1e-4)) ds = std::min(ds, dist(b, x));
    CHECK(d == doctest::Approx(ds).epsilon(1e-3));
  }
  // at (0.25,0.25) the legs are nearest; the hypotenuse wins at (0.4,0.4)
  CHECK(tri.distance_to_boundary(Pt(0.25, 0.25)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(tri.distance_to_boundary(Pt(0.4, 0.4)) ==
        doctest::Approx(0.2 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("distance to boundary: outside the closure") {
  const Domain disk = Domain::unit_disk();
  CHECK_THROWS_AS(disk.distance_to_boundary(Pt(2, 0)), DomainError);
}

TEST_CASE("delta is 1-Lipschitz on sampled pairs") {
  const Domain tri = Domain::polygon({Pt(0, 0), Pt(1, 0), Pt(0.2, 0.9)});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int pairs = 0;
  while (pairs < 500) {
    const Pt a(unif(rng), unif(rng)), b(unif(rng), unif(rng));
    if (!tri.contains(a) || !tri.contains(b)) continue;
    ++pairs;
    CHECK(std::abs(tri.signed_distance(a) - tri.signed_distance(b)) <= dist(a, b) + 1e-12);
  }
}

TEST_CASE("graph domain distance vs vertical gap") {
  LipGraphSpec g;
  g.r = 0.1;
  g.rho = 1.5;
  g.samples = {0.01, 0.008, 0.0, -0.006, 0.0};  // Lip well under rho/(10r) = 1.5
  const Domain u = Domain::lip_graph(g);
  const double lip = g.lip_estimate();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-0.1, 0.1), uy(-0.02, 1.5);
  int n = 0;
  while (n < 300) {
    const Pt x(ux(rng), uy(rng));
    if (!u.contains(x)) continue;
    ++n;
    const double gap = x[1] - g.eval(x[0]);
    const double d = u.distance_to_boundary(x);
    CHECK(d <= gap + 1e-12);
    // near the graph (away from walls) the two agree within sqrt(1+Lip^2)
    if (gap < 0.05 && std::abs(x[0]) < 0.05)
      CHECK(gap <= d * std::sqrt(1.0 + lip * lip) + 1e-9);
  }
}

TEST_CASE("graph admissibility is enforced") {
  LipGraphSpec g;
  g.r = 0.2;
  g.rho = 1.0;  // 10 r = 2 > rho
  g.samples = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(Domain::lip_graph(g), SpecError);
  LipGraphSpec steep;
  steep.r = 0.05;
  steep.rho = 1.0;
  steep.samples = {0.2, 0.0, 0.2};  // slope 4 > rho/(10r) = 2
  CHECK_THROWS_AS(Domain::lip_graph(steep), SpecError);
}

TEST_CASE("polygon validation") {
  CHECK_THROWS_AS(Domain::polygon({Pt(0, 0), Pt(0, 1), Pt(1, 0), Pt(1, 1)}), SpecError);  // bowtie
  CHECK_THROWS_AS(Domain::polygon({Pt(0, 0), Pt(0, 1), Pt(1, 1), Pt(1, 0)}), SpecError);  // CW
}

TEST_CASE("cone membership inequality") {
  BoundaryPoint bp;
  bp.y = Pt(0, 0);
  bp.nu = Pt(0, 1);
  bp.eta = 0.5;
  const Cone c = build_cone(bp, 1.0, 0.5);
  CHECK(c.contains(Pt(0.0, 0.25)));
  CHECK(!c.contains(Pt(0.3, 0.25)));  // 0.3 > 0.25
  CHECK(!c.contains(Pt(0.0, 0.75)));  // beyond the height
  CHECK_THROWS_AS(build_cone(bp, 1.0, 0.0), SpecError);
}

TEST_CASE("cone on the disk boundary is contained") {
  const Domain disk = Domain::unit_disk();
  const BoundaryPoint bp = make_boundary_point(disk, Pt(0, -1));
  CHECK(bp.nu[1] == doctest::Approx(1.0));
  CHECK(bp.eta > 0.05);
  const Cone c = build_cone(bp, 0.5, 0.5);
  CHECK(cone_inside(disk, c));
}

TEST_CASE("cone containment monotone in aperture and height") {
  BoundaryPoint bp;
  bp.y = Pt(0, -1);
  bp.nu = Pt(0, 1);
  bp.eta = 0.3;
  const Cone small = build_cone(bp, 0.4, 0.3);
  const Cone big = build_cone(bp, 0.9, 0.6);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Pt x(unif(rng), unif(rng));
    if (small.contains(x)) CHECK(big.contains(x));
  }
}

TEST_CASE("cone union subdomain") {
  const Domain sq = Domain::polygon({Pt(0, 0), Pt(1, 0), Pt(1, 1), Pt(0, 1)});
  const double h = 1.0 / 128.0;

  SUBCASE("empty point list is rejected") {
    CHECK_THROWS_AS(cone_union_subdomain(sq, {}, 1.0, 0.2, h), SpecError);
  }

  SUBCASE("single cone: area matches the triangle") {
    const BoundaryPoint bp = make_boundary_point(sq, Pt(0.5, 0.0), Pt(0, 1), 0.25);
    const Domain u = cone_union_subdomain(sq, {bp}, 1.0, 0.2, h);
    // triangle with apex at y, half-width K*s: area = K * height^2
    const double expect = 0.2 * 0.2;
    double area = 0.0;
    const auto& v = u.polygon_vertices();
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
      area += 0.5 * (v[j][0] * v[i][1] - v[i][0] * v[j][1]);
    CHECK(area == doctest::Approx(expect).epsilon(0.08));
  }

  SUBCASE("two overlapping cones vs Monte Carlo area oracle") {
    const BoundaryPoint a = make_boundary_point(sq, Pt(0.45, 0.0), Pt(0, 1), 0.25);
    const BoundaryPoint b = make_boundary_point(sq, Pt(0.55, 0.0), Pt(0, 1), 0.25);
    const Domain u = cone_union_subdomain(sq, {a, b}, 1.0, 0.2, h);
    const Cone ca = build_cone(a, 1.0, 0.2), cb = build_cone(b, 1.0, 0.2);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = 400000;
    int in_union = 0;
    for (int i = 0; i < n; ++i) {
      const Pt x(unif(rng), unif(rng));
      if (ca.contains(x) || cb.contains(x)) ++in_union;
    }
    const double mc_area = static_cast<double>(in_union) / n;
    double area = 0.0;
    const auto& v = u.polygon_vertices();
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
      area += 0.5 * (v[j][0] * v[i][1] - v[i][0] * v[j][1]);
    CHECK(area == doctest::Approx(mc_area).epsilon(0.08));
    CHECK(mc_area < 2.0 * 0.04);  // strictly less than twice one cone: they overlap
  }
}

TEST_CASE("pseudo-normal bisection picks an admissible eta") {
  const Domain tri = Domain::polygon({Pt(0, 0), Pt(1, 0), Pt(0, 1)});
  const BoundaryPoint bp = make_boundary_point(tri, Pt(0.5, 0.0));
  CHECK(bp.eta > 0.0);
  CHECK(pseudo_normal_admissible(tri, bp.y, bp.nu, bp.eta));
  // corner bisector at the right angle
  const BoundaryPoint corner = make_boundary_point(tri, Pt(0, 0));
  CHECK(corner.nu[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK(corner.nu[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("boundary sets") {
  const BoundarySet arc = disk_arc(-0.5, 0.5);
  CHECK(arc.member(Pt(1, 0)));
  CHECK(!arc.member(Pt(-1, 0)));
  CHECK(arc.distance(Pt(0.5, 0)) == doctest::Approx(0.5).epsilon(1e-3));
}
