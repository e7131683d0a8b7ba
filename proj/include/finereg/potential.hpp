#pragma once

#include <memory>
#include <optional>
#include <string>

#include "finereg/geometry.hpp"
#include "finereg/grid.hpp"

namespace finereg {

enum class PotentialKind { Zero, Constant, Hardy, PowerLaw, ConeRestricted, IndicatorScaled };

// Nonnegative potential in the class V(Omega, a): V(x) * delta(x)^2 <= a.
// Evaluation requires the domain (for the Hardy kind) and is defined on the
// open domain.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::Zero;
  double kappa = 0.0;           // strength (constant / hardy / power-law / indicator)
  double s = 0.0;               // power-law exponent
  Pt center;                    // power-law center
  std::shared_ptr<PotentialSpec> inner;  // cone-restricted payload
  std::optional<Cone> cone;     // cone-restricted region
  std::optional<Cone> region_cone;      // indicator region (cone form)
  std::optional<std::pair<Pt, double>> region_ball;  // indicator region (ball form)
  double bound_a = 1.0;         // clamp bound a for the class membership check

  static PotentialSpec zero();
  static PotentialSpec constant(double kappa, double bound_a);
  static PotentialSpec hardy(double kappa);  // kappa * delta^{-2}; bound_a = kappa
  static PotentialSpec power_law(double kappa, double s, Pt center, double bound_a);
  static PotentialSpec cone_restricted(PotentialSpec inner, Cone cone);
  static PotentialSpec indicator_ball(Pt center, double radius, double kappa, double bound_a);

  double eval(const Domain& dom, const Pt& x) const;
};

// Evaluates the potential at every node and verifies the class membership
// V(x) delta(x)^2 <= a nodewise; violations raise SpecError rather than
// clamping silently.
Field make_potential_field(const Grid& grid, const PotentialSpec& spec);

}  // namespace finereg
