#include "finereg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace finereg {

double point_segment_distance(const Pt& p, const Pt& a, const Pt& b) {
  const Pt ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + t * ab);
}

double LipGraphSpec::eval(double x1) const {
  const std::size_t n = samples.size();
  if (n < 2) throw SpecError("lipschitz-graph: need at least 2 samples");
  const double h = 2.0 * r / static_cast<double>(n - 1);
  double u = (x1 + r) / h;
  u = std::clamp(u, 0.0, static_cast<double>(n - 1));
  const auto i = static_cast<std::size_t>(std::min(u, static_cast<double>(n - 2)));
  const double w = u - static_cast<double>(i);
  return samples[i] * (1.0 - w) + samples[i + 1] * w;
}

double LipGraphSpec::lip_estimate() const {
  const std::size_t n = samples.size();
  const double h = 2.0 * r / static_cast<double>(n - 1);
  double lip = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    lip = std::max(lip, std::abs(samples[i + 1] - samples[i]) / h);
  return lip;
}

namespace {

// Ray-crossing parity test; points on an edge count as outside (open set).
bool polygon_contains(const std::vector<Pt>& v, const Pt& p, double edge_tol) {
  bool inside = false;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if (point_segment_distance(p, v[j], v[i]) <= edge_tol) return false;
    const bool cross = ((v[i][1] > p[1]) != (v[j][1] > p[1]));
    if (cross) {
      const double xint =
          v[j][0] + (p[1] - v[j][1]) * (v[i][0] - v[j][0]) / (v[i][1] - v[j][1]);
      if (p[0] < xint) inside = !inside;
    }
  }
  return inside;
}

double polygon_signed_area(const std::vector<Pt>& v) {
  double a = 0.0;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
    a += v[j][0] * v[i][1] - v[i][0] * v[j][1];
  return 0.5 * a;
}

bool segments_properly_intersect(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  auto orient = [](const Pt& p, const Pt& q, const Pt& r) {
    const double v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    return (v > 0) - (v < 0);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

Domain Domain::unit_disk(int dim) {
  if (dim != 2 && dim != 3) throw SpecError("unit-disk: dimension must be 2 or 3");
  Domain d;
  d.kind_ = DomainKind::UnitDisk;
  d.dim_ = dim;
  d.finalize();
  return d;
}

Domain Domain::polygon(std::vector<Pt> vertices) {
  if (vertices.size() < 3) throw SpecError("polygon: need at least 3 vertices");
  if (polygon_signed_area(vertices) <= 0.0)
    throw SpecError("polygon: vertices must be counterclockwise");
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (segments_properly_intersect(vertices[i], vertices[(i + 1) % n], vertices[j],
                                      vertices[(j + 1) % n]))
        throw SpecError("polygon: self-intersecting");
  Domain d;
  d.kind_ = DomainKind::Polygon;
  d.dim_ = 2;
  d.verts_ = std::move(vertices);
  d.finalize();
  return d;
}

Domain Domain::lip_graph(LipGraphSpec spec) {
  if (!(spec.r > 0.0 && spec.rho > 0.0)) throw SpecError("lipschitz-graph: r, rho > 0");
  if (!(10.0 * spec.r < spec.rho))
    throw SpecError("lipschitz-graph: admissibility 10 r < rho violated");
  if (spec.samples.size() < 2) throw SpecError("lipschitz-graph: need samples");
  const std::size_t mid = (spec.samples.size() - 1) / 2;
  if (spec.samples.size() % 2 != 1 || std::abs(spec.samples[mid]) > 1e-12)
    throw SpecError("lipschitz-graph: need odd sample count with f(0) = 0");
  const double lip_bound = spec.rho / (10.0 * spec.r);
  if (spec.lip_estimate() > lip_bound + 1e-12)
    throw SpecError("lipschitz-graph: Lip(f) exceeds rho/(10 r)");
  Domain d;
  d.kind_ = DomainKind::LipGraph;
  d.dim_ = 2;
  d.graph_ = std::move(spec);
  d.finalize();
  return d;
}

Domain Domain::box(Pt lo, Pt hi) {
  if (lo.dim != hi.dim) throw SpecError("box: corner dimensions differ");
  for (int i = 0; i < lo.dim; ++i)
    if (!(lo[i] < hi[i])) throw SpecError("box: lo < hi required per axis");
  Domain d;
  d.kind_ = DomainKind::Box;
  d.dim_ = lo.dim;
  d.lo_ = lo;
  d.hi_ = hi;
  d.finalize();
  return d;
}

void Domain::finalize() {
  switch (kind_) {
    case DomainKind::UnitDisk: {
      lo_ = dim_ == 2 ? Pt(-1, -1) : Pt(-1, -1, -1);
      hi_ = dim_ == 2 ? Pt(1, 1) : Pt(1, 1, 1);
      break;
    }
    case DomainKind::Polygon: {
      lo_ = verts_[0];
      hi_ = verts_[0];
      for (const Pt& v : verts_)
        for (int i = 0; i < 2; ++i) {
          lo_[i] = std::min(lo_[i], v[i]);
          hi_[i] = std::max(hi_[i], v[i]);
        }
      break;
    }
    case DomainKind::LipGraph: {
      double fmin = 0.0;
      for (double s : graph_.samples) fmin = std::min(fmin, s);
      lo_ = Pt(-graph_.r, fmin);
      hi_ = Pt(graph_.r, graph_.rho);
      break;
    }
    case DomainKind::Box:
      break;
  }
}

bool Domain::contains(const Pt& x) const {
  if (x.dim != dim_) return false;
  switch (kind_) {
    case DomainKind::UnitDisk:
      return norm(x) < 1.0;
    case DomainKind::Polygon:
      return polygon_contains(verts_, x, 0.0);
    case DomainKind::LipGraph:
      return std::abs(x[0]) < graph_.r && x[1] < graph_.rho && x[1] > graph_.eval(x[0]);
    case DomainKind::Box:
      for (int i = 0; i < dim_; ++i)
        if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
      return true;
  }
  return false;
}

double Domain::signed_distance(const Pt& x) const {
  switch (kind_) {
    case DomainKind::UnitDisk:
      return 1.0 - norm(x);
    case DomainKind::Polygon: {
      double d = std::numeric_limits<double>::infinity();
      const std::size_t n = verts_.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        d = std::min(d, point_segment_distance(x, verts_[j], verts_[i]));
      return polygon_contains(verts_, x, 0.0) ? d : -d;
    }
    case DomainKind::LipGraph: {
      // boundary pieces: graph polyline, two side walls, top wall
      const auto& g = graph_;
      const std::size_t n = g.samples.size();
      const double hs = 2.0 * g.r / static_cast<double>(n - 1);
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const Pt a(-g.r + static_cast<double>(i) * hs, g.samples[i]);
        const Pt b(-g.r + static_cast<double>(i + 1) * hs, g.samples[i + 1]);
        d = std::min(d, point_segment_distance(x, a, b));
      }
      d = std::min(d, point_segment_distance(x, Pt(-g.r, g.eval(-g.r)), Pt(-g.r, g.rho)));
      d = std::min(d, point_segment_distance(x, Pt(g.r, g.eval(g.r)), Pt(g.r, g.rho)));
      d = std::min(d, point_segment_distance(x, Pt(-g.r, g.rho), Pt(g.r, g.rho)));
      return contains(x) ? d : -d;
    }
    case DomainKind::Box: {
      double inside = std::numeric_limits<double>::infinity();
      bool in = true;
      double out2 = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const double lo = x[i] - lo_[i], hi = hi_[i] - x[i];
        inside = std::min(inside, std::min(lo, hi));
        if (lo < 0) { out2 += lo * lo; in = false; }
        if (hi < 0) { out2 += hi * hi; in = false; }
      }
      return in ? inside : -std::sqrt(out2);
    }
  }
  return 0.0;
}

double Domain::distance_to_boundary(const Pt& x) const {
  const double d = signed_distance(x);
  if (d < -1e-12) throw DomainError("point outside the closure of the domain");
  return std::max(d, 0.0);
}

double Domain::diameter() const {
  if (kind_ == DomainKind::UnitDisk) return 2.0;
  return dist(lo_, hi_);
}

std::vector<Pt> Domain::boundary_sample(double max_spacing) const {
  std::vector<Pt> out;
  switch (kind_) {
    case DomainKind::UnitDisk: {
      if (dim_ == 3) throw SpecError("boundary_sample: 3D sampling unsupported");
      const int n = std::max(16, static_cast<int>(std::ceil(2.0 * M_PI / max_spacing)));
      out.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * i / n;
        out.emplace_back(std::cos(a), std::sin(a));
      }
      break;
    }
    case DomainKind::Polygon: {
      const std::size_t n = verts_.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double len = dist(verts_[j], verts_[i]);
        const int m = std::max(1, static_cast<int>(std::ceil(len / max_spacing)));
        for (int k = 0; k < m; ++k)
          out.push_back(verts_[j] + (static_cast<double>(k) / m) * (verts_[i] - verts_[j]));
      }
      break;
    }
    case DomainKind::LipGraph: {
      const auto& g = graph_;
      auto emit_segment = [&](Pt a, Pt b) {
        const double len = dist(a, b);
        const int m = std::max(1, static_cast<int>(std::ceil(len / max_spacing)));
        for (int k = 0; k < m; ++k) out.push_back(a + (static_cast<double>(k) / m) * (b - a));
      };
      const std::size_t n = g.samples.size();
      const double hs = 2.0 * g.r / static_cast<double>(n - 1);
      for (std::size_t i = 0; i + 1 < n; ++i)
        emit_segment(Pt(-g.r + static_cast<double>(i) * hs, g.samples[i]),
                     Pt(-g.r + static_cast<double>(i + 1) * hs, g.samples[i + 1]));
      emit_segment(Pt(g.r, g.eval(g.r)), Pt(g.r, g.rho));
      emit_segment(Pt(g.r, g.rho), Pt(-g.r, g.rho));
      emit_segment(Pt(-g.r, g.rho), Pt(-g.r, g.eval(-g.r)));
      break;
    }
    case DomainKind::Box: {
      if (dim_ == 3) throw SpecError("boundary_sample: 3D sampling unsupported");
      const Pt a = lo_, b = Pt(hi_[0], lo_[1]), c = hi_, d = Pt(lo_[0], hi_[1]);
      for (auto [p, q] : {std::pair{a, b}, {b, c}, {c, d}, {d, a}}) {
        const double len = dist(p, q);
        const int m = std::max(1, static_cast<int>(std::ceil(len / max_spacing)));
        for (int k = 0; k < m; ++k) out.push_back(p + (static_cast<double>(k) / m) * (q - p));
      }
      break;
    }
  }
  return out;
}

Pt Domain::closest_boundary_point(const Pt& x) const {
  switch (kind_) {
    case DomainKind::UnitDisk: {
      const double r = norm(x);
      if (r < 1e-14) return dim_ == 2 ? Pt(1, 0) : Pt(1, 0, 0);
      return (1.0 / r) * x;
    }
    default: {
      // min over a dense sample; adequate for data assignment at grid scale
      const auto bs = boundary_sample(diameter() / 4096.0);
      double best = std::numeric_limits<double>::infinity();
      Pt arg = bs.front();
      for (const Pt& p : bs) {
        const double d = dist(p, x);
        if (d < best) { best = d; arg = p; }
      }
      return arg;
    }
  }
}

bool pseudo_normal_admissible(const Domain& dom, const Pt& y, const Pt& nu, double eta,
                              const std::optional<Pt>& x0) {
  if (eta <= 0.0) return false;
  // sample C(y,nu,eta) = { y + t(nu + v) : 0 < t <= eta, |v| <= eta }
  const int nt = 24, nv = 16;
  Pt perp = dom.dim() == 2 ? Pt(-nu[1], nu[0]) : Pt();
  for (int it = 1; it <= nt; ++it) {
    const double t = eta * it / nt;
    for (int iv = -nv; iv <= nv; ++iv) {
      const double v = eta * iv / nv;
      const Pt x = y + t * (nu + v * perp);
      if (!dom.contains(x)) return false;
      if (x0 && dist(x, *x0) < 1e-12) return false;
    }
  }
  return true;
}

namespace {

Pt default_normal(const Domain& dom, const Pt& y) {
  switch (dom.kind()) {
    case DomainKind::UnitDisk: {
      const double r = norm(y);
      if (std::abs(r - 1.0) > 1e-9) throw DomainError("boundary point not on the unit circle");
      return (-1.0 / r) * y;
    }
    case DomainKind::Polygon: {
      // inward edge normal on edge interiors, bisector of the two inward
      // normals at corners
      const auto& v = dom.polygon_vertices();
      const std::size_t n = v.size();
      const double corner_tol = 1e-9;
      std::vector<std::size_t> touching;
      for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        if (point_segment_distance(y, v[j], v[i]) < corner_tol) touching.push_back(j);
      if (touching.empty()) throw DomainError("boundary point not on the polygon boundary");
      Pt acc(0, 0);
      for (std::size_t j : touching) {
        const Pt e = v[(j + 1) % n] - v[j];
        const double len = norm(e);
        acc = acc + (1.0 / len) * Pt(-e[1], e[0]);  // CCW polygon: inward normal is left of edge
      }
      const double len = norm(acc);
      if (len < 1e-12) throw DomainError("degenerate corner normal");
      return (1.0 / len) * acc;
    }
    case DomainKind::LipGraph: {
      const auto& g = dom.graph();
      if (std::abs(y[1] - g.eval(y[0])) > 1e-9)
        throw DomainError("boundary point must lie on the graph part");
      return Pt(0, 1);
    }
    case DomainKind::Box: {
      Pt nu(0, 0);
      nu.dim = dom.dim();
      int hits = 0;
      for (int i = 0; i < dom.dim(); ++i) {
        if (std::abs(y[i] - dom.bbox_lo()[i]) < 1e-9) { nu[i] += 1.0; ++hits; }
        if (std::abs(y[i] - dom.bbox_hi()[i]) < 1e-9) { nu[i] -= 1.0; ++hits; }
      }
      if (hits == 0) throw DomainError("boundary point not on the box boundary");
      return (1.0 / norm(nu)) * nu;
    }
  }
  throw DomainError("unsupported domain kind");
}

}  // namespace

BoundaryPoint make_boundary_point(const Domain& dom, const Pt& y, const std::optional<Pt>& nu_in,
                                  const std::optional<double>& eta_in,
                                  const std::optional<Pt>& x0) {
  BoundaryPoint bp;
  bp.y = y;
  bp.nu = nu_in ? (1.0 / norm(*nu_in)) * (*nu_in) : default_normal(dom, y);
  if (eta_in) {
    bp.eta = *eta_in;
    if (!pseudo_normal_admissible(dom, bp.y, bp.nu, bp.eta, x0))
      throw DomainError("cone C(y,nu,eta) is not contained in the domain");
    return bp;
  }
  // bisect for the largest admissible eta, then take half of it
  double lo = 0.0, hi = 0.5 * dom.diameter();
  if (!pseudo_normal_admissible(dom, bp.y, bp.nu, 1e-3 * dom.diameter(), x0))
    throw DomainError("no admissible cone found at the boundary point");
  lo = 1e-3 * dom.diameter();
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pseudo_normal_admissible(dom, bp.y, bp.nu, mid, x0))
      lo = mid;
    else
      hi = mid;
  }
  bp.eta = 0.5 * lo;
  return bp;
}

bool Cone::contains(const Pt& x) const {
  Pt d = x - vertex;
  const double s = dot(d, axis);
  if (!(s > 0.0 && s <= height)) return false;
  const Pt p = d - s * axis;
  return norm(p) < slope * s;
}

Cone build_cone(const BoundaryPoint& p, double slope, double height, double inner_margin) {
  if (!(height > 0.0)) throw SpecError("invalid cone: height must be positive");
  if (!(slope > 0.0)) throw SpecError("invalid cone: aperture must be positive");
  Cone c;
  c.vertex = p.y;
  c.axis = p.nu;
  c.slope = slope;
  c.height = height;
  c.inner_margin = inner_margin;
  return c;
}

bool cone_inside(const Domain& dom, const Cone& cone, int samples_per_axis) {
  const Pt perp = Pt(-cone.axis[1], cone.axis[0]);
  for (int it = 1; it <= samples_per_axis; ++it) {
    const double s = cone.height * it / samples_per_axis;
    for (int iv = -samples_per_axis; iv <= samples_per_axis; ++iv) {
      const double p = cone.slope * s * iv / (samples_per_axis + 1);
      const Pt x = cone.vertex + s * cone.axis + p * perp;
      if (!cone.contains(x)) continue;
      const double dlt = dom.signed_distance(x);
      if (dlt <= 0.0) return false;
      if (cone.inner_margin > 0.0 && dlt < cone.inner_margin * dist(x, cone.vertex))
        return false;
    }
  }
  return true;
}

Domain cone_union_subdomain(const Domain& dom, const std::vector<BoundaryPoint>& points,
                            double slope, double height, double h) {
  if (points.empty()) throw SpecError("invalid domain: empty cone-union point list");
  if (dom.dim() != 2) throw SpecError("cone-union subdomain is 2D only");
  std::vector<Cone> cones;
  cones.reserve(points.size());
  for (const auto& p : points) {
    Cone c = build_cone(p, slope, height, 0.0);
    if (!cone_inside(dom, c)) throw DomainError("cone not contained in the domain");
    cones.push_back(c);
  }
  auto member = [&](const Pt& x) {
    for (const auto& c : cones)
      if (c.contains(x)) return true;
    return false;
  };

  // Rasterize onto lattice cells (cell (i,j) is the h-square centered at the
  // lattice point), then trace the rectilinear boundary of the cell union
  // with inside kept on the left of the travel direction.
  const Pt lo = dom.bbox_lo() - Pt(2.0 * h, 2.0 * h);
  const Pt hi = dom.bbox_hi() + Pt(2.0 * h, 2.0 * h);
  const int nx = static_cast<int>(std::ceil((hi[0] - lo[0]) / h));
  const int ny = static_cast<int>(std::ceil((hi[1] - lo[1]) / h));
  auto center = [&](int i, int j) { return Pt(lo[0] + i * h, lo[1] + j * h); };
  std::vector<std::vector<bool>> in(static_cast<std::size_t>(nx + 1),
                                    std::vector<bool>(static_cast<std::size_t>(ny + 1), false));
  bool any = false;
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const bool v = member(center(i, j));
      in[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      any = any || v;
    }
  if (!any)
    throw SpecError("invalid domain: cone union contains no lattice point at this resolution");
  auto inside = [&](int i, int j) {
    return i >= 0 && j >= 0 && i <= nx && j <= ny &&
           in[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };

  // directed boundary edges between cell corners; corner key = (2i+-1, 2j+-1)
  using Key = std::pair<int, int>;
  std::map<Key, std::vector<Key>> out_edges;
  auto emit = [&](Key a, Key b) { out_edges[a].push_back(b); };
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      if (!inside(i, j)) continue;
      if (!inside(i + 1, j)) emit({2 * i + 1, 2 * j - 1}, {2 * i + 1, 2 * j + 1});
      if (!inside(i - 1, j)) emit({2 * i - 1, 2 * j + 1}, {2 * i - 1, 2 * j - 1});
      if (!inside(i, j + 1)) emit({2 * i + 1, 2 * j + 1}, {2 * i - 1, 2 * j + 1});
      if (!inside(i, j - 1)) emit({2 * i - 1, 2 * j - 1}, {2 * i + 1, 2 * j - 1});
    }

  // chain loops; at 4-valent corners prefer the sharpest left turn so loops
  // stay simple
  auto turn_rank = [](Key din, Key dout) {
    const int cross = din.first * dout.second - din.second * dout.first;
    const int dotp = din.first * dout.first + din.second * dout.second;
    if (cross > 0) return 0;   // left
    if (dotp > 0) return 1;    // straight
    if (cross < 0) return 2;   // right
    return 3;                  // U-turn
  };
  std::vector<std::vector<Pt>> loops;
  for (auto& [start, outs] : out_edges) {
    while (!outs.empty()) {
      std::vector<Key> loop{start};
      Key cur = outs.back();
      outs.pop_back();
      Key dir{cur.first - start.first, cur.second - start.second};
      while (cur != start) {
        loop.push_back(cur);
        auto& cands = out_edges[cur];
        if (cands.empty()) throw SpecError("cone union: open contour (internal error)");
        std::size_t best = 0;
        for (std::size_t k = 1; k < cands.size(); ++k) {
          const Key da{cands[k].first - cur.first, cands[k].second - cur.second};
          const Key db{cands[best].first - cur.first, cands[best].second - cur.second};
          if (turn_rank(dir, da) < turn_rank(dir, db)) best = k;
        }
        const Key nxt = cands[best];
        cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(best));
        dir = Key{nxt.first - cur.first, nxt.second - cur.second};
        cur = nxt;
      }
      // drop collinear interior vertices
      std::vector<Pt> poly;
      const std::size_t m = loop.size();
      for (std::size_t k = 0; k < m; ++k) {
        const Key& prev = loop[(k + m - 1) % m];
        const Key& here = loop[k];
        const Key& nxt = loop[(k + 1) % m];
        const int ax = here.first - prev.first, ay = here.second - prev.second;
        const int bx = nxt.first - here.first, by = nxt.second - here.second;
        if (ax * by - ay * bx != 0)
          poly.emplace_back(lo[0] + 0.5 * here.first * h, lo[1] + 0.5 * here.second * h);
      }
      if (poly.size() >= 4) loops.push_back(std::move(poly));
    }
  }
  if (loops.empty())
    throw SpecError("invalid domain: cone union degenerate at this resolution");
  std::size_t best = 0;
  for (std::size_t k = 1; k < loops.size(); ++k)
    if (std::abs(polygon_signed_area(loops[k])) > std::abs(polygon_signed_area(loops[best])))
      best = k;
  std::vector<Pt> outer = std::move(loops[best]);
  if (polygon_signed_area(outer) < 0.0) std::reverse(outer.begin(), outer.end());
  return Domain::polygon(std::move(outer));
}

double BoundarySet::distance(const Pt& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Pt& p : samples) best = std::min(best, dist(p, x));
  return best;
}

BoundarySet disk_arc(double a0, double a1, int sample_count) {
  if (!(a1 > a0)) throw SpecError("disk arc: need a1 > a0");
  BoundarySet s;
  s.member = [a0, a1](const Pt& p) {
    double a = std::atan2(p[1], p[0]);
    for (int k = -1; k <= 1; ++k) {
      const double b = a + 2.0 * M_PI * k;
      if (b >= a0 - 1e-12 && b <= a1 + 1e-12) return true;
    }
    return false;
  };
  s.samples.reserve(static_cast<std::size_t>(sample_count));
  for (int i = 0; i <= sample_count; ++i) {
    const double a = a0 + (a1 - a0) * i / sample_count;
    s.samples.emplace_back(std::cos(a), std::sin(a));
  }
  return s;
}

BoundarySet boundary_ball(const Domain& dom, const Pt& anchor, double radius,
                          double sample_spacing) {
  BoundarySet s;
  s.member = [anchor, radius](const Pt& p) { return dist(p, anchor) <= radius; };
  for (const Pt& p : dom.boundary_sample(sample_spacing))
    if (s.member(p)) s.samples.push_back(p);
  return s;
}

}  // namespace finereg
