#pragma once

#include "finereg/grid.hpp"

namespace finereg {

// Doob h-transform of the nearest-neighbor lattice walk: transition
// probability proportional to the h-field at interior neighbors, time step
// h^2/(2N), absorption inside the epsilon-ball around y.  Per-path seeds are
// splitmix64(master ^ splitmix64(path_index)), so parallel generation orders
// cannot change the statistics.
struct WalkConfig {
  std::size_t start = 0;       // x0 node
  double epsilon = 0.1;        // >= 4h
  std::uint64_t seed = 1;
  std::size_t paths = 10000;   // retained-path target
  std::size_t max_steps = 4000000;
};

struct WalkStats {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t retained = 0;
  std::size_t failures = 0;  // budget exhausted / dead ends, discarded
};

WalkStats conditioned_functional(const Grid& grid, const Field& v, const Field& h_field,
                                 const Pt& y, const WalkConfig& cfg);

}  // namespace finereg
