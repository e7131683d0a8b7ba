#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finereg/util.hpp"

namespace finereg {

// Small point type covering both the planar case and the coarse 3D case.
struct Pt {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  int dim = 2;

  Pt() = default;
  Pt(double x, double y) : c{x, y, 0.0}, dim(2) {}
  Pt(double x, double y, double z) : c{x, y, z}, dim(3) {}

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
};

inline Pt operator+(Pt a, const Pt& b) {
  for (int i = 0; i < a.dim; ++i) a[i] += b[i];
  return a;
}
inline Pt operator-(Pt a, const Pt& b) {
  for (int i = 0; i < a.dim; ++i) a[i] -= b[i];
  return a;
}
inline Pt operator*(double s, Pt a) {
  for (int i = 0; i < a.dim; ++i) a[i] *= s;
  return a;
}
inline double dot(const Pt& a, const Pt& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
  return s;
}
inline double norm(const Pt& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Pt& a, const Pt& b) { return norm(a - b); }

double point_segment_distance(const Pt& p, const Pt& a, const Pt& b);

enum class DomainKind { UnitDisk, Polygon, LipGraph, Box };

// Sampled Lipschitz graph chart U_f(r, rho):
//   { (x', x_N) : |x'| < r, f(x') < x_N < rho },  10 r < rho, Lip(f) <= rho/(10 r).
// f is given by uniform samples on [-r, r] with linear interpolation, f(0) = 0.
struct LipGraphSpec {
  double r = 0.0;
  double rho = 0.0;
  std::vector<double> samples;  // f on a uniform grid over [-r, r]

  double eval(double x1) const;   // piecewise-linear f(x1), |x1| <= r
  double lip_estimate() const;    // max divided difference
};

class Domain {
 public:
  static Domain unit_disk(int dim = 2);  // dim 3 gives the unit ball
  static Domain polygon(std::vector<Pt> vertices);  // simple, CCW
  static Domain lip_graph(LipGraphSpec spec);
  static Domain box(Pt lo, Pt hi);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool contains(const Pt& x) const;          // open containment
  double distance_to_boundary(const Pt& x) const;  // throws DomainError outside closure
  double signed_distance(const Pt& x) const;       // negative outside, no throw
  Pt bbox_lo() const { return lo_; }
  Pt bbox_hi() const { return hi_; }
  double diameter() const;

  const std::vector<Pt>& polygon_vertices() const { return verts_; }
  const LipGraphSpec& graph() const { return graph_; }

  // Dense boundary sampling (used for distance-to-boundary-set queries and
  // boundary classification); spacing <= max_spacing.
  std::vector<Pt> boundary_sample(double max_spacing) const;

  // Closest boundary point to x (by sampling for graph domains, exact for
  // disk/box, per-edge projection for polygons).
  Pt closest_boundary_point(const Pt& x) const;

 private:
  Domain() = default;
  void finalize();

  DomainKind kind_ = DomainKind::UnitDisk;
  int dim_ = 2;
  std::vector<Pt> verts_;   // polygon
  LipGraphSpec graph_;      // lip-graph
  Pt lo_, hi_;              // box corners / bounding box
};

// Boundary point with pseudo-normal and cone-aperture margin eta:
// C(y, nu, eta) = { y + t (nu + v) : 0 < t <= eta, |v| <= eta } must lie in
// the open domain minus {x0}.
struct BoundaryPoint {
  Pt y;
  Pt nu;          // unit pseudo-normal
  double eta = 0.0;
};

// Checks the truncated-cone containment C(y,nu,eta) subset Omega \ {x0} by
// dense sampling (exact polygon containment is used pointwise).
bool pseudo_normal_admissible(const Domain& dom, const Pt& y, const Pt& nu,
                              double eta, const std::optional<Pt>& x0 = std::nullopt);

// Builds a boundary point at y. The pseudo-normal is the inward edge normal
// (bisector at polygon corners, radial for the disk, axis e_N at graph
// points); eta defaults to half the largest admissible value found by
// bisection. Throws DomainError when no admissible cone exists.
BoundaryPoint make_boundary_point(const Domain& dom, const Pt& y,
                                  const std::optional<Pt>& nu = std::nullopt,
                                  const std::optional<double>& eta = std::nullopt,
                                  const std::optional<Pt>& x0 = std::nullopt);

// Truncated open cone with vertex on the boundary:
//   x in C  iff  s = (x - vertex).axis in (0, height] and |x - vertex - s axis| < slope * s.
struct Cone {
  Pt vertex;
  Pt axis;        // unit
  double slope = 1.0;      // aperture K
  double height = 0.0;     // ell
  double inner_margin = 0.0;  // eta >= 0; > 0 means strictly inner

  bool contains(const Pt& x) const;
};

Cone build_cone(const BoundaryPoint& p, double slope, double height,
                double inner_margin = 0.0);

// Verifies C subset Omega by sampling; when inner_margin > 0, verifies that
// delta(x) >= inner_margin * |x - vertex| on the sampled cone (the fattened
// cone is then inside Omega).
bool cone_inside(const Domain& dom, const Cone& cone, int samples_per_axis = 48);

// Union-of-cones subdomain as a polygonal approximation at resolution h
// (marching-squares contour of the union indicator). 2D only.
Domain cone_union_subdomain(const Domain& dom, const std::vector<BoundaryPoint>& points,
                            double slope, double height, double h);

// Boundary subset K of the boundary, given as a predicate over boundary
// positions plus a dense sample for distance queries.
struct BoundarySet {
  std::function<bool(const Pt&)> member;
  std::vector<Pt> samples;   // points of K on the boundary
  bool empty() const { return samples.empty(); }
  double distance(const Pt& x) const;
};

// Arc { angle in [a0, a1] } of the unit circle (radians, a1 > a0).
BoundarySet disk_arc(double a0, double a1, int sample_count = 2048);

// All boundary points of dom within Euclidean distance `radius` of anchor.
BoundarySet boundary_ball(const Domain& dom, const Pt& anchor, double radius,
                          double sample_spacing);

}  // namespace finereg
