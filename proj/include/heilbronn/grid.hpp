#pragma once

// A built subdivision: the cell list plus the induced action of the six
// lattice symmetries on cell ids.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "heilbronn/geometry.hpp"
#include "heilbronn/symmetry.hpp"

namespace heilbronn {

class Grid {
 public:
  explicit Grid(GridSpec spec) : spec_(spec), cells_(build_grid(spec)) {
    if (spec_.variant == GridVariant::perimeter) {
      segment_ids_.reserve(cells_.size());
      for (const GridCell& c : cells_)
        segment_ids_.emplace(segment_key(c.verts[0], c.verts[1]), c.id);
    }
    build_symmetry_permutations();
  }

  const GridSpec& spec() const { return spec_; }
  std::int64_t p() const { return spec_.p; }
  std::size_t size() const { return cells_.size(); }
  const GridCell& cell(std::uint32_t id) const { return cells_[id]; }
  std::span<const GridCell> cells() const { return cells_; }

  // Cell id containing the image of a cell under symmetry k.
  std::uint32_t map_cell(int k, std::uint32_t id) const {
    return perms_[static_cast<std::size_t>(k)][id];
  }

  const std::array<std::vector<std::uint32_t>, kSymmetryCount>&
  symmetry_permutations() const {
    return perms_;
  }

  // Smallest id in a cell's orbit under the six symmetries.
  std::uint32_t min_image(std::uint32_t id) const { return min_image_[id]; }

  // Identifies a triangle cell from its three vertices.  The vertex sum of
  // an up-cell (i,j) is (3i+1, 3j+1); of a down-cell, (3i+2, 3j+2).
  std::uint32_t triangle_cell_id(const std::array<IntPoint, 3>& v) const {
    const std::int64_t sx = v[0].x + v[1].x + v[2].x;
    const std::int64_t sy = v[0].y + v[1].y + v[2].y;
    if (sx % 3 == 1 && sy % 3 == 1)
      return detail::up_cell_id(spec_.p, sx / 3, sy / 3);
    if (sx % 3 == 2 && sy % 3 == 2)
      return detail::down_cell_id(spec_.p, (sx - 2) / 3, (sy - 2) / 3);
    throw std::invalid_argument("triangle_cell_id: not an elementary cell");
  }

  std::uint32_t segment_cell_id(IntPoint a, IntPoint b) const {
    auto it = segment_ids_.find(segment_key(a, b));
    if (it == segment_ids_.end())
      throw std::invalid_argument("segment_cell_id: not a boundary segment");
    return it->second;
  }

 private:
  static std::uint64_t segment_key(IntPoint a, IntPoint b) {
    if (b < a) std::swap(a, b);
    // Boundary coordinates are < 2^16 in every run we care about far before
    // the cell table itself becomes unbuildable.
    return (static_cast<std::uint64_t>(a.x) << 48) |
           (static_cast<std::uint64_t>(a.y) << 32) |
           (static_cast<std::uint64_t>(b.x) << 16) |
           static_cast<std::uint64_t>(b.y);
  }

  void build_symmetry_permutations() {
    const std::size_t m = cells_.size();
    min_image_.assign(m, 0);
    for (int k = 0; k < kSymmetryCount; ++k) {
      auto& perm = perms_[static_cast<std::size_t>(k)];
      perm.resize(m);
      std::vector<bool> hit(m, false);
      for (const GridCell& c : cells_) {
        std::uint32_t image;
        if (c.kind == CellKind::segment) {
          image = segment_cell_id(apply_symmetry(k, spec_.p, c.verts[0]),
                                  apply_symmetry(k, spec_.p, c.verts[1]));
        } else {
          std::array<IntPoint, 3> v{apply_symmetry(k, spec_.p, c.verts[0]),
                                    apply_symmetry(k, spec_.p, c.verts[1]),
                                    apply_symmetry(k, spec_.p, c.verts[2])};
          image = triangle_cell_id(v);
        }
        perm[c.id] = image;
        if (hit[image])
          throw std::logic_error("symmetry image is not a permutation");
        hit[image] = true;
      }
    }
    for (std::uint32_t id = 0; id < m; ++id) {
      std::uint32_t lo = id;
      for (int k = 1; k < kSymmetryCount; ++k)
        lo = std::min(lo, perms_[static_cast<std::size_t>(k)][id]);
      min_image_[id] = lo;
    }
  }

  GridSpec spec_;
  std::vector<GridCell> cells_;
  std::unordered_map<std::uint64_t, std::uint32_t> segment_ids_;
  std::array<std::vector<std::uint32_t>, kSymmetryCount> perms_;
  std::vector<std::uint32_t> min_image_;
};

}  // namespace heilbronn
