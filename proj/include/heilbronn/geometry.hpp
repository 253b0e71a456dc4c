#pragma once

// Integer model of the subdivided reference triangle.
//
// The reference triangle T has corners (0,0), (P,0), (0,P) and stands for
// the unit-area triangle; every area is carried as an exact integer
// "doubled area" in grid units.  A triangle with doubled area d has
// normalized area d / P^2.  No division happens anywhere in this header.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace heilbronn {

// Twice the area of a lattice triangle, in grid units.  Always fits in a
// signed 64-bit integer as long as P < 2^31 (asserted at grid build).
using DoubledArea = std::int64_t;

enum class GridVariant { interior, perimeter };

enum class CellKind { up, down, segment };

inline const char* to_string(GridVariant v) {
  return v == GridVariant::interior ? "interior" : "perimeter";
}

struct IntPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const IntPoint&, const IntPoint&) = default;
  friend auto operator<=>(const IntPoint&, const IntPoint&) = default;
};

// |cross(q - p, r - p)|, exact.  Commutative under any permutation of the
// three arguments.
inline DoubledArea doubled_area(IntPoint p, IntPoint q, IntPoint r) {
  const std::int64_t cross =
      (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return cross < 0 ? -cross : cross;
}

struct GridSpec {
  std::int64_t p = 1;
  GridVariant variant = GridVariant::interior;

  void validate() const {
    if (p < 1) throw std::invalid_argument("GridSpec: P must be >= 1");
    // Doubled areas reach P^2; keep them clear of int64 overflow.
    if (p >= (std::int64_t{1} << 31))
      throw std::invalid_argument("GridSpec: P must be < 2^31");
  }

  std::int64_t cell_count() const {
    return variant == GridVariant::interior ? p * p : 3 * p;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// An elementary triangle of the subdivision, or a unit boundary segment in
// the perimeter variant.  Triangle cells always have doubled area 1;
// segments have length 1 grid unit along their edge.
struct GridCell {
  std::uint32_t id = 0;
  CellKind kind = CellKind::up;
  std::array<IntPoint, 3> verts{};  // segments use the first two entries

  int vert_count() const { return kind == CellKind::segment ? 2 : 3; }

  std::span<const IntPoint> vertices() const {
    return {verts.data(), static_cast<std::size_t>(vert_count())};
  }
};

namespace detail {

// Interior cell ids are row-major by (j, i), the up-cell before the
// down-cell anchored at the same (i, j).  Row j starts at j * (2P - j).
inline std::uint32_t up_cell_id(std::int64_t p, std::int64_t i, std::int64_t j) {
  return static_cast<std::uint32_t>(j * (2 * p - j) + 2 * i);
}

inline std::uint32_t down_cell_id(std::int64_t p, std::int64_t i, std::int64_t j) {
  return static_cast<std::uint32_t>(j * (2 * p - j) + 2 * i + 1);
}

}  // namespace detail

// Builds the full cell list for a subdivision.
//
// Interior: P^2 triangles; up-cell (i,j) has vertices (i,j),(i+1,j),(i,j+1)
// for i+j <= P-1, down-cell (i,j) has vertices (i+1,j),(i,j+1),(i+1,j+1)
// for i+j <= P-2.  Perimeter: 3P closed unit segments walking the boundary
// counterclockwise from (0,0); consecutive segments share endpoints.
inline std::vector<GridCell> build_grid(const GridSpec& spec) {
  spec.validate();
  const std::int64_t p = spec.p;
  std::vector<GridCell> cells;
  cells.reserve(static_cast<std::size_t>(spec.cell_count()));

  if (spec.variant == GridVariant::interior) {
    for (std::int64_t j = 0; j < p; ++j) {
      for (std::int64_t i = 0; i + j < p; ++i) {
        GridCell up;
        up.id = detail::up_cell_id(p, i, j);
        up.kind = CellKind::up;
        up.verts = {IntPoint{i, j}, IntPoint{i + 1, j}, IntPoint{i, j + 1}};
        cells.push_back(up);
        if (i + j <= p - 2) {
          GridCell down;
          down.id = detail::down_cell_id(p, i, j);
          down.kind = CellKind::down;
          down.verts = {IntPoint{i + 1, j}, IntPoint{i, j + 1},
                        IntPoint{i + 1, j + 1}};
          cells.push_back(down);
        }
      }
    }
  } else {
    std::uint32_t id = 0;
    auto segment = [&](IntPoint a, IntPoint b) {
      GridCell s;
      s.id = id++;
      s.kind = CellKind::segment;
      s.verts = {a, b, IntPoint{}};
      cells.push_back(s);
    };
    for (std::int64_t i = 0; i < p; ++i)  // bottom edge, left to right
      segment({i, 0}, {i + 1, 0});
    for (std::int64_t i = 0; i < p; ++i)  // hypotenuse, up and left
      segment({p - i, i}, {p - i - 1, i + 1});
    for (std::int64_t i = 0; i < p; ++i)  // left edge, top to bottom
      segment({0, p - i}, {0, p - i - 1});
  }

  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k].id != k)
      throw std::logic_error("build_grid: cell ids are not contiguous");
  }
  return cells;
}

}  // namespace heilbronn
