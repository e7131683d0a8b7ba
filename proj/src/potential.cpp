#include "finereg/potential.hpp"

#include <cmath>

namespace finereg {

PotentialSpec PotentialSpec::zero() {
  PotentialSpec p;
  p.kind = PotentialKind::Zero;
  p.bound_a = 0.0;
  return p;
}

PotentialSpec PotentialSpec::constant(double kappa, double bound_a) {
  if (kappa < 0.0) throw SpecError("potential: kappa must be nonnegative");
  PotentialSpec p;
  p.kind = PotentialKind::Constant;
  p.kappa = kappa;
  p.bound_a = bound_a;
  return p;
}

PotentialSpec PotentialSpec::hardy(double kappa) {
  if (kappa < 0.0) throw SpecError("potential: kappa must be nonnegative");
  PotentialSpec p;
  p.kind = PotentialKind::Hardy;
  p.kappa = kappa;
  p.bound_a = kappa;
  return p;
}

PotentialSpec PotentialSpec::power_law(double kappa, double s, Pt center, double bound_a) {
  if (kappa < 0.0) throw SpecError("potential: kappa must be nonnegative");
  PotentialSpec p;
  p.kind = PotentialKind::PowerLaw;
  p.kappa = kappa;
  p.s = s;
  p.center = center;
  p.bound_a = bound_a;
  return p;
}

PotentialSpec PotentialSpec::cone_restricted(PotentialSpec inner, Cone cone) {
  PotentialSpec p;
  p.kind = PotentialKind::ConeRestricted;
  p.inner = std::make_shared<PotentialSpec>(std::move(inner));
  p.cone = cone;
  p.bound_a = p.inner->bound_a;
  return p;
}

PotentialSpec PotentialSpec::indicator_ball(Pt center, double radius, double kappa,
                                            double bound_a) {
  PotentialSpec p;
  p.kind = PotentialKind::IndicatorScaled;
  p.kappa = kappa;
  p.region_ball = std::make_pair(center, radius);
  p.bound_a = bound_a;
  return p;
}

double PotentialSpec::eval(const Domain& dom, const Pt& x) const {
  switch (kind) {
    case PotentialKind::Zero:
      return 0.0;
    case PotentialKind::Constant:
      return kappa;
    case PotentialKind::Hardy: {
      const double d = dom.distance_to_boundary(x);
      if (d <= 0.0) throw DomainError("hardy potential evaluated on the boundary");
      return kappa / (d * d);
    }
    case PotentialKind::PowerLaw: {
      const double r = dist(x, center);
      if (r <= 0.0) throw DomainError("power-law potential evaluated at its center");
      return kappa * std::pow(r, -s);
    }
    case PotentialKind::ConeRestricted:
      return cone->contains(x) ? inner->eval(dom, x) : 0.0;
    case PotentialKind::IndicatorScaled: {
      bool in = false;
      if (region_ball) in = dist(x, region_ball->first) < region_ball->second;
      if (region_cone) in = in || region_cone->contains(x);
      return in ? kappa : 0.0;
    }
  }
  return 0.0;
}

Field make_potential_field(const Grid& grid, const PotentialSpec& spec) {
  Field v(grid.size());
  const auto& dom = grid.domain();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double val = spec.eval(dom, grid.coord(i));
    if (!std::isfinite(val) || val < 0.0)
      throw SpecError("potential: non-finite or negative value at a grid node");
    const double d = grid.delta(i);
    if (val * d * d > spec.bound_a * (1.0 + 1e-9))
      throw SpecError("potential: V(x) delta(x)^2 exceeds the declared class bound a");
    v[i] = val;
  }
  return v;
}

}  // namespace finereg
