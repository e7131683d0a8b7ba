#include "finereg/stochastic.hpp"

#include <cmath>
#include <random>

namespace finereg {

WalkStats conditioned_functional(const Grid& grid, const Field& v, const Field& h_field,
                                 const Pt& y, const WalkConfig& cfg) {
  const std::size_t n = grid.size();
  if (v.size() != n || h_field.size() != n)
    throw SpecError("conditioned_functional: field size mismatch");
  if (cfg.epsilon < 4.0 * grid.h() - 1e-12)
    throw SpecError("conditioned_functional: epsilon must be at least 4h");
  for (double hv : h_field)
    if (!(hv > 0.0))
      throw SpecError("conditioned_functional: h-field must be positive on all nodes");

  const int deg = 2 * grid.dim();
  const double dt = grid.h() * grid.h() / (2.0 * grid.dim());

  // precomputed cumulative transition weights per node
  std::vector<double> cum(n * static_cast<std::size_t>(deg), 0.0);
  std::vector<std::int64_t> nbr(n * static_cast<std::size_t>(deg), -1);
  std::vector<bool> absorbing(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    absorbing[i] = dist(grid.coord(i), y) < cfg.epsilon;
    double acc = 0.0;
    for (int d = 0; d < deg; ++d) {
      const std::int64_t nb = grid.neighbor(i, d);
      nbr[i * static_cast<std::size_t>(deg) + static_cast<std::size_t>(d)] = nb;
      if (nb >= 0) acc += h_field[static_cast<std::size_t>(nb)];
      cum[i * static_cast<std::size_t>(deg) + static_cast<std::size_t>(d)] = acc;
    }
  }
  if (absorbing[cfg.start])
    throw SpecError("conditioned_functional: start node already inside the epsilon-ball");

  std::vector<double> values;
  values.reserve(cfg.paths);
  std::size_t failures = 0;
  std::size_t attempts = 0;
  const std::size_t max_attempts = cfg.paths * 4 + 1000;
  while (values.size() < cfg.paths && attempts < max_attempts) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(attempts)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    ++attempts;
    std::size_t x = cfg.start;
    double acc = 0.0;
    bool ok = false;
    for (std::size_t step = 0; step < cfg.max_steps; ++step) {
      acc += v[x] * dt;
      const double total = cum[x * static_cast<std::size_t>(deg) + static_cast<std::size_t>(deg - 1)];
      if (!(total > 0.0)) break;  // dead end; conditioning failure
      const double u = unif(rng) * total;
      int d = 0;
      while (cum[x * static_cast<std::size_t>(deg) + static_cast<std::size_t>(d)] <= u &&
             d + 1 < deg)
        ++d;
      const std::int64_t nb = nbr[x * static_cast<std::size_t>(deg) + static_cast<std::size_t>(d)];
      if (nb < 0) break;  // cannot happen while the h-field is positive
      x = static_cast<std::size_t>(nb);
      if (absorbing[x]) {
        ok = true;
        break;
      }
    }
    if (ok)
      values.push_back(acc);
    else
      ++failures;
  }

  if (values.size() < 100)
    throw SolverError("conditioned_functional: fewer than 100 retained paths");

  WalkStats out;
  out.retained = values.size();
  out.failures = failures;
  out.mean = pairwise_sum(values) / static_cast<double>(values.size());
  std::vector<double> sq;
  sq.reserve(values.size());
  for (double w : values) sq.push_back((w - out.mean) * (w - out.mean));
  const double var = pairwise_sum(sq) / (static_cast<double>(values.size()) - 1.0);
  out.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return out;
}

}  // namespace finereg
