#pragma once

// The 6 lattice symmetries of the reference triangle: the dihedral group
// generated by the swap s(x,y) = (y,x) and the rotation r(x,y) = (y, P-x-y).
// All six are unimodular and map the lattice of T onto itself, so they
// preserve doubled areas and permute the cells of any subdivision.

#include <array>
#include <cstdint>
#include <stdexcept>

#include "heilbronn/geometry.hpp"

namespace heilbronn {

inline constexpr int kSymmetryCount = 6;

// k in [0,6): id, r, r^2, s, s*r, s*r^2.
inline IntPoint apply_symmetry(int k, std::int64_t p, IntPoint q) {
  switch (k) {
    case 0: return q;
    case 1: return {q.y, p - q.x - q.y};
    case 2: return {p - q.x - q.y, q.x};
    case 3: return {q.y, q.x};
    case 4: return {p - q.x - q.y, q.y};
    case 5: return {q.x, p - q.x - q.y};
    default: throw std::out_of_range("apply_symmetry: bad symmetry index");
  }
}

}  // namespace heilbronn
