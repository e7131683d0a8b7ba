#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "finereg/geometry.hpp"

namespace finereg {

using Field = std::vector<double>;  // one value per interior grid node

// Interior lattice nodes of a domain with exact boundary distances.
// Dirichlet conditions are imposed by node exclusion: a missing neighbor
// slot (-1) stands for a homogeneous boundary value.
class Grid {
 public:
  Grid(Domain domain, double h);  // keeps its own copy of the domain

  const Domain& domain() const { return domain_; }
  int dim() const { return dim_; }
  double h() const { return h_; }
  std::size_t size() const { return coords_.size(); }

  const Pt& coord(std::size_t i) const { return coords_[i]; }
  double delta(std::size_t i) const { return delta_[i]; }
  const Field& delta_field() const { return delta_; }
  bool boundary_adjacent(std::size_t i) const { return bnd_adjacent_[i]; }

  // neighbor in direction d (0..2*dim-1: +x,-x,+y,-y[,+z,-z]); -1 if missing
  std::int64_t neighbor(std::size_t i, int d) const {
    return neighbors_[i * static_cast<std::size_t>(2 * dim_) + static_cast<std::size_t>(d)];
  }
  // lattice position of the (possibly missing) neighbor
  Pt neighbor_pos(std::size_t i, int d) const;

  // node nearest to x (lattice rounding); throws DomainError if that lattice
  // point is not an interior node
  std::size_t node_at(const Pt& x) const;
  // nearest interior node by lattice search (never throws for x in domain)
  std::size_t nearest_node(const Pt& x) const;
  // deepest interior node (max delta, ties by node index)
  std::size_t deepest_node() const;

  Field zeros() const { return Field(size(), 0.0); }
  double cell_volume() const;  // h^dim

 private:
  Domain domain_;
  int dim_;
  double h_;
  Pt origin_;  // lattice = origin + h * (integer vector)
  std::vector<Pt> coords_;
  Field delta_;
  std::vector<std::int64_t> neighbors_;
  std::vector<bool> bnd_adjacent_;
  std::unordered_map<std::int64_t, std::size_t> index_;  // packed lattice key -> node
  std::array<std::int64_t, 3> base_{0, 0, 0};
  std::int64_t pack(const std::array<std::int64_t, 3>& iv) const;
};

}  // namespace finereg
