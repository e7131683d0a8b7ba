#include "finereg/grid.hpp"

#include <algorithm>
#include <cmath>

namespace finereg {

namespace {
constexpr std::int64_t kStride = 1 << 21;  // packs 3 lattice indices into one key
}

std::int64_t Grid::pack(const std::array<std::int64_t, 3>& iv) const {
  std::int64_t key = 0;
  for (int d = 0; d < dim_; ++d) key = key * kStride + (iv[static_cast<std::size_t>(d)] - base_[static_cast<std::size_t>(d)] + kStride / 2);
  return key;
}

Grid::Grid(Domain domain, double h)
    : domain_(std::move(domain)), dim_(domain_.dim()), h_(h) {
  if (!(h > 0.0)) throw SpecError("grid spacing must be positive");
  // The lattice contains the integer multiples of h, so that natural anchor
  // points (disk center, box corners at multiples of h) land on nodes.
  origin_ = Pt(0, 0);
  origin_.dim = dim_;

  const Pt lo = domain_.bbox_lo(), hi = domain_.bbox_hi();
  std::array<std::int64_t, 3> ilo{0, 0, 0}, ihi{0, 0, 0};
  for (int d = 0; d < dim_; ++d) {
    ilo[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::floor(lo[d] / h)) - 1;
    ihi[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::ceil(hi[d] / h)) + 1;
    base_[static_cast<std::size_t>(d)] = ilo[static_cast<std::size_t>(d)];
  }

  std::array<std::int64_t, 3> iv = ilo;
  auto advance = [&]() {
    for (int d = dim_ - 1; d >= 0; --d) {
      if (++iv[static_cast<std::size_t>(d)] <= ihi[static_cast<std::size_t>(d)]) return true;
      iv[static_cast<std::size_t>(d)] = ilo[static_cast<std::size_t>(d)];
    }
    return false;
  };

  // first pass: collect interior nodes in deterministic lattice order
  while (true) {
    Pt x;
    x.dim = dim_;
    for (int d = 0; d < dim_; ++d) x[d] = iv[static_cast<std::size_t>(d)] * h;
    const double sd = domain_.signed_distance(x);
    if (sd > 1e-12) {
      index_.emplace(pack(iv), coords_.size());
      coords_.push_back(x);
      delta_.push_back(sd);
    }
    if (!advance()) break;
  }
  if (coords_.size() < 9) throw SpecError("degenerate grid: fewer than 9 interior nodes");

  // second pass: neighbor table
  neighbors_.assign(coords_.size() * static_cast<std::size_t>(2 * dim_), -1);
  bnd_adjacent_.assign(coords_.size(), false);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    std::array<std::int64_t, 3> ci{0, 0, 0};
    for (int d = 0; d < dim_; ++d)
      ci[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::llround(coords_[i][d] / h));
    for (int d = 0; d < dim_; ++d) {
      for (int s = 0; s < 2; ++s) {
        auto nv = ci;
        nv[static_cast<std::size_t>(d)] += (s == 0 ? 1 : -1);
        const auto it = index_.find(pack(nv));
        const int slot = 2 * d + s;
        if (it != index_.end())
          neighbors_[i * static_cast<std::size_t>(2 * dim_) + static_cast<std::size_t>(slot)] =
              static_cast<std::int64_t>(it->second);
        else
          bnd_adjacent_[i] = true;
      }
    }
  }
}

Pt Grid::neighbor_pos(std::size_t i, int d) const {
  Pt x = coords_[i];
  const int axis = d / 2;
  x[axis] += (d % 2 == 0 ? h_ : -h_);
  return x;
}

std::size_t Grid::node_at(const Pt& x) const {
  std::array<std::int64_t, 3> iv{0, 0, 0};
  for (int d = 0; d < dim_; ++d) iv[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::llround(x[d] / h_));
  const auto it = index_.find(pack(iv));
  if (it == index_.end()) throw DomainError("requested lattice point is not an interior node");
  return it->second;
}

std::size_t Grid::nearest_node(const Pt& x) const {
  std::array<std::int64_t, 3> iv{0, 0, 0};
  for (int d = 0; d < dim_; ++d) iv[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::llround(x[d] / h_));
  // expanding lattice search
  for (int radius = 0; radius < 64; ++radius) {
    std::size_t best = SIZE_MAX;
    double bestd = std::numeric_limits<double>::infinity();
    std::array<std::int64_t, 3> jv{0, 0, 0};
    for (std::int64_t a = -radius; a <= radius; ++a)
      for (std::int64_t b = -radius; b <= radius; ++b) {
        if (std::max(std::llabs(a), std::llabs(b)) != radius) continue;
        const std::int64_t cmax = dim_ == 3 ? radius : 0;
        for (std::int64_t c = -cmax; c <= cmax; ++c) {
          jv = iv;
          jv[0] += a;
          jv[1] += b;
          if (dim_ == 3) jv[2] += c;
          const auto it = index_.find(pack(jv));
          if (it == index_.end()) continue;
          const double d = dist(coords_[it->second], x);
          if (d < bestd) { bestd = d; best = it->second; }
        }
      }
    if (best != SIZE_MAX) return best;
  }
  throw DomainError("no interior node near the requested point");
}

std::size_t Grid::deepest_node() const {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < delta_.size(); ++i)
    if (delta_[i] > delta_[arg]) arg = i;
  return arg;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= h_;
  return v;
}

}  // namespace finereg
