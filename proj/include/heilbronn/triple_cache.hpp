#pragma once

// Exact per-triple maxima.  For a triple of cells the largest triangle with
// one point in each closed cell is attained at a vertex triple: the doubled
// area is affine in each point with the other two fixed, and |affine| is
// convex, so maximizing over a product of polytopes lands on vertices.
// Enumerating vertex combinations (27 for triangles, 8 for segments) is
// therefore exact, not a heuristic.

#include <atomic>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "heilbronn/grid.hpp"

namespace heilbronn {

// Multiset key over cell ids, stored sorted ascending.
struct TripleKey {
  std::uint32_t a = 0, b = 0, c = 0;

  static TripleKey of(std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    if (x > y) std::swap(x, y);
    if (y > z) std::swap(y, z);
    if (x > y) std::swap(x, y);
    return {x, y, z};
  }

  friend bool operator==(const TripleKey&, const TripleKey&) = default;
};

struct TripleValue {
  DoubledArea max_doubled_area = 0;
  std::array<IntPoint, 3> argmax{};  // one vertex of each cell, in call order
};

// Exhaustive maximum over one vertex per cell.  Symmetric in its arguments;
// ties resolve to the first combination in vertex order.
inline TripleValue max_cell_triple(const GridCell& a, const GridCell& b,
                                   const GridCell& c) {
  TripleValue best;
  best.max_doubled_area = -1;
  for (const IntPoint& va : a.vertices())
    for (const IntPoint& vb : b.vertices())
      for (const IntPoint& vc : c.vertices()) {
        const DoubledArea d = doubled_area(va, vb, vc);
        if (d > best.max_doubled_area) {
          best.max_doubled_area = d;
          best.argmax = {va, vb, vc};
        }
      }
  return best;
}

// Write-once cache over all cell multiset triples.
//
// Up to `eager_threshold` cells the cache is a dense table indexed by the
// combinatorial rank of (a<=b<=c), filled up-front in parallel; every grid
// the tool targets (P<=26 interior, P<=233 perimeter) fits this way.  Above
// the threshold entries are memoized on demand in sharded hash maps; racing
// writers recompute the same deterministic value, so last-write-wins is
// harmless.
class TripleCache {
 public:
  explicit TripleCache(const Grid& grid, std::size_t eager_threshold = 700,
                       unsigned threads = std::thread::hardware_concurrency())
      : grid_(grid), m_(grid.size()) {
    const std::int64_t p = grid.p();
    if (p * p >= (std::int64_t{1} << 31))
      throw std::invalid_argument("TripleCache: P^2 must fit in 32 bits");
    binom2_.resize(m_ + 3);
    binom3_.resize(m_ + 3);
    for (std::uint64_t x = 0; x < m_ + 3; ++x) {
      binom2_[x] = x * (x - 1) / 2;
      binom3_[x] = x >= 2 ? x * (x - 1) / 2 * (x - 2) / 3 : 0;
    }
    eager_ = m_ <= eager_threshold;
    if (eager_)
      fill_dense(threads == 0 ? 1 : threads);
    else
      shards_ = std::make_unique<Shard[]>(kShardCount);
  }

  std::size_t cell_count() const { return m_; }
  const Grid& grid() const { return grid_; }

  // Max doubled area for the keyed cells.  Idempotent and order-independent.
  DoubledArea get(TripleKey key) const {
    if (key.c >= m_) throw std::out_of_range("TripleCache: key out of range");
    return value(key.a, key.b, key.c);
  }

  // Fast path for the search loops; requires a <= b <= c, all in range.
  std::uint32_t value(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    if (eager_) return dense_[rank(a, b, c)];
    return lazy_value(a, b, c);
  }

  // Number of vertex-enumeration computations performed so far.
  std::uint64_t compute_count() const {
    return computes_.load(std::memory_order_relaxed);
  }

 private:
  std::uint64_t rank(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return binom3_[c + 2] + binom2_[b + 1] + a;
  }

  std::uint32_t compute(std::uint32_t a, std::uint32_t b,
                        std::uint32_t c) const {
    computes_.fetch_add(1, std::memory_order_relaxed);
    return static_cast<std::uint32_t>(
        max_cell_triple(grid_.cell(a), grid_.cell(b), grid_.cell(c))
            .max_doubled_area);
  }

  void fill_dense(unsigned threads) {
    dense_.assign(binom3_[m_ + 2], 0);  // C(m+2, 3) multiset triples
    std::atomic<std::uint32_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::uint32_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= m_) return;
        std::uint64_t r = rank(0, 0, c);
        for (std::uint32_t b = 0; b <= c; ++b)
          for (std::uint32_t a = 0; a <= b; ++a) dense_[r++] = compute(a, b, c);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }

  std::uint32_t lazy_value(std::uint32_t a, std::uint32_t b,
                           std::uint32_t c) const {
    const std::uint64_t r = rank(a, b, c);
    Shard& shard = shards_[r % kShardCount];
    {
      std::lock_guard<std::mutex> lock(shard.mu);
      auto it = shard.map.find(r);
      if (it != shard.map.end()) return it->second;
    }
    const std::uint32_t v = compute(a, b, c);
    std::lock_guard<std::mutex> lock(shard.mu);
    shard.map.emplace(r, v);
    return v;
  }

  static constexpr std::size_t kShardCount = 64;
  struct Shard {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::uint32_t> map;
  };

  const Grid& grid_;
  std::uint64_t m_;
  bool eager_ = false;
  std::vector<std::uint64_t> binom2_, binom3_;
  std::vector<std::uint32_t> dense_;
  std::unique_ptr<Shard[]> shards_;
  mutable std::atomic<std::uint64_t> computes_{0};
};

}  // namespace heilbronn
