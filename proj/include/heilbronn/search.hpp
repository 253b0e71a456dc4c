#pragma once

// Max-min search over N-multisets of grid cells.
//
// The value of a multiset is the minimum cached triple value over its index
// triples; the searched quantity is the maximum of that value, an exact
// integer k with certified bound k/P^2.  Enumeration is depth-first over
// non-decreasing cell ids.  Adding a cell can only lower the running
// minimum, so a prefix whose running minimum is <= the best known score can
// be cut exactly.
//
// solve() runs three phases:
//   search   - parallel branch and bound with a shared monotone best value;
//              finds k fast but explores a schedule-dependent node set.
//   certify  - re-enumeration against the fixed threshold k, proving no
//              multiset scores above it.  Its node count depends only on
//              (grid, N, k), so reported statistics are reproducible across
//              thread counts and resumed runs.
//   witness  - ordered single-threaded descent that stops at the first
//              multiset attaining k, which is the lexicographically
//              smallest canonical witness.
//
// Symmetry reduction restricts the root of the enumeration: the first cell
// must be minimal in its orbit, and later cells must keep every symmetry
// image at or above it.  Each multiset orbit keeps at least one member, so
// the reduction is exactness-preserving; scores are orbit-invariant.

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "heilbronn/checkpoint.hpp"
#include "heilbronn/grid.hpp"
#include "heilbronn/triple_cache.hpp"

namespace heilbronn {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000'000ULL;

struct SearchParams {
  GridSpec grid;
  int n = 5;
  bool use_symmetry = true;
  int thread_count = 1;
  std::optional<DoubledArea> initial_bound;  // warm-start lower bound on k
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::string checkpoint_path;  // empty: no checkpointing
  int max_n = 12;               // practical guard

  void validate() const {
    grid.validate();
    if (n < 3) throw std::invalid_argument("SearchParams: N must be >= 3");
    if (n > max_n)
      throw std::invalid_argument("SearchParams: N exceeds the max_n guard");
    if (n > 16)
      throw std::invalid_argument("SearchParams: N exceeds the engine limit");
    if (thread_count < 1)
      throw std::invalid_argument("SearchParams: thread_count must be >= 1");
    if (initial_bound && *initial_bound < 0)
      throw std::invalid_argument("SearchParams: negative warm start");
  }
};

// Sorted multiset of cell ids.
struct CellTuple {
  std::vector<std::uint32_t> cells;

  friend bool operator==(const CellTuple&, const CellTuple&) = default;
  friend auto operator<=>(const CellTuple&, const CellTuple&) = default;
};

struct BoundResult {
  int n = 0;
  GridSpec grid;
  DoubledArea k = 0;                       // max-min value in grid units
  std::int64_t bound_num = 0;              // k / P^2, reduced
  std::int64_t bound_den = 1;
  CellTuple witness;
  std::vector<DoubledArea> witness_triple_values;  // index triples i<j<k
  std::uint64_t nodes_explored = 0;
  std::chrono::milliseconds elapsed{0};
};

// Node budget exceeded before the bound was certified.
class IncompleteSearch : public std::runtime_error {
 public:
  IncompleteSearch(std::uint64_t nodes, std::string checkpoint)
      : std::runtime_error(
            "search incomplete: node budget exhausted after " +
            std::to_string(nodes) + " nodes" +
            (checkpoint.empty() ? std::string{}
                                : " (resume from " + checkpoint + ")")),
        nodes_visited(nodes),
        checkpoint_path(std::move(checkpoint)) {}

  std::uint64_t nodes_visited;
  std::string checkpoint_path;
};

// The supplied warm start exceeded every multiset score: the caller's
// lower bound was wrong, and reporting it would be unsound.
class WarmStartError : public std::runtime_error {
 public:
  explicit WarmStartError(DoubledArea bound)
      : std::runtime_error("warm start " + std::to_string(bound) +
                           " not attained by any multiset; "
                           "the supplied configuration bound is inconsistent") {
  }
};

inline DoubledArea tuple_score(const CellTuple& t, const TripleCache& cache) {
  const auto& c = t.cells;
  if (c.size() < 3)
    throw std::invalid_argument("tuple_score: tuple has fewer than 3 cells");
  assert(std::is_sorted(c.begin(), c.end()));
  DoubledArea best = std::numeric_limits<DoubledArea>::max();
  for (std::size_t i = 0; i + 2 < c.size(); ++i)
    for (std::size_t j = i + 1; j + 1 < c.size(); ++j)
      for (std::size_t k = j + 1; k < c.size(); ++k)
        best = std::min<DoubledArea>(best, cache.value(c[i], c[j], c[k]));
  return best;
}

// Lexicographically smallest image of the multiset under the six lattice
// symmetries.  Idempotent; scores are constant on orbits.
inline CellTuple canonicalize(const CellTuple& t, const Grid& grid) {
  CellTuple best = t;
  std::sort(best.cells.begin(), best.cells.end());
  std::vector<std::uint32_t> image(t.cells.size());
  for (int k = 1; k < kSymmetryCount; ++k) {
    for (std::size_t i = 0; i < t.cells.size(); ++i)
      image[i] = grid.map_cell(k, t.cells[i]);
    std::sort(image.begin(), image.end());
    if (image < best.cells) best.cells = image;
  }
  return best;
}

namespace detail {

struct CandEntry {
  std::uint32_t id;
  std::uint32_t v;  // min triple value over pairs from the prefix with id
};

inline constexpr std::uint32_t kNoTriple = std::numeric_limits<std::uint32_t>::max();

class Engine {
 public:
  Engine(const Grid& grid, const TripleCache& cache, const SearchParams& params)
      : grid_(grid), cache_(cache), params_(params), m_(grid.size()) {}

  BoundResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    base_ = params_.initial_bound ? *params_.initial_bound - 1 : -1;
    best_.store(base_, std::memory_order_relaxed);
    build_tasks();
    setup_checkpoint();

    presolve();
    run_search_phase();
    const DoubledArea k = best_.load(std::memory_order_relaxed);
    if (params_.initial_bound && k < *params_.initial_bound)
      throw WarmStartError(*params_.initial_bound);
    log_.search_done(k);

    const std::uint64_t certify_nodes = run_certify_phase(k);
    log_.certify_done();

    BoundResult result;
    result.n = params_.n;
    result.grid = grid_.spec();
    result.k = k;
    const std::int64_t den = grid_.p() * grid_.p();
    const std::int64_t g = std::gcd(k, den);
    result.bound_num = k / g;
    result.bound_den = den / g;
    result.nodes_explored = certify_nodes + run_witness_phase(k, result.witness);
    result.witness_triple_values.clear();
    const auto& w = result.witness.cells;
    for (std::size_t i = 0; i + 2 < w.size(); ++i)
      for (std::size_t j = i + 1; j + 1 < w.size(); ++j)
        for (std::size_t l = j + 1; l < w.size(); ++l)
          result.witness_triple_values.push_back(cache_.value(w[i], w[j], w[l]));
    result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    return result;
  }

 private:
  enum class Mode { search, certify, witness };

  struct Task {
    std::uint32_t c1, c2;
  };

  struct WorkerState {
    std::vector<std::vector<CandEntry>> lists;  // per prefix length
    std::array<std::uint32_t, 16> prefix{};
    std::uint64_t nodes = 0;       // this task
    std::int64_t local_best = -1;  // best leaf score in this task
    std::uint64_t unsynced = 0;    // nodes not yet added to the global count
    bool found_witness = false;
    std::vector<std::uint32_t> witness;
  };

  void build_tasks() {
    tasks_.clear();
    for (std::uint32_t c1 = 0; c1 < m_; ++c1) {
      if (params_.use_symmetry && grid_.min_image(c1) != c1) continue;
      for (std::uint32_t c2 = c1; c2 < m_; ++c2) {
        if (params_.use_symmetry && grid_.min_image(c2) < c1) continue;
        tasks_.push_back({c1, c2});
      }
    }
  }

  void setup_checkpoint() {
    if (params_.checkpoint_path.empty()) return;
    resume_ = load_checkpoint(params_.checkpoint_path);
    CheckpointMeta meta;
    meta.p = grid_.p();
    meta.n = params_.n;
    meta.variant = grid_.spec().variant;
    meta.symmetry = params_.use_symmetry;
    meta.initial = base_;
    meta.tasks = tasks_.size();
    if (resume_.present && resume_.meta != meta)
      throw std::runtime_error(
          "checkpoint: file does not match this run (different p/n/variant/"
          "symmetry/warm start)");
    log_.open(params_.checkpoint_path, meta, resume_.present);
  }

  // Deterministic sampling pass: seeds the shared best with real multiset
  // scores so the search phase starts with a useful cut.
  void presolve() {
    if (resume_.search_done_k) return;
    std::mt19937_64 rng(0x48454C42ULL ^ (static_cast<std::uint64_t>(grid_.p()) << 20) ^
                        (static_cast<std::uint64_t>(params_.n) << 4) ^
                        static_cast<std::uint64_t>(grid_.spec().variant));
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(m_ - 1));
    std::vector<std::uint32_t> t(static_cast<std::size_t>(params_.n));
    CellTuple tuple;
    const int samples = 4096;
    for (int s = 0; s < samples; ++s) {
      for (auto& c : t) c = pick(rng);
      std::sort(t.begin(), t.end());
      tuple.cells = t;
      raise_best(tuple_score(tuple, cache_));
    }
  }

  void raise_best(std::int64_t s) {
    std::int64_t cur = best_.load(std::memory_order_relaxed);
    while (s > cur &&
           !best_.compare_exchange_weak(cur, s, std::memory_order_relaxed)) {
    }
  }

  void run_search_phase() {
    if (resume_.search_done_k) {
      // A prior session finished searching; its k is the exact maximum.
      raise_best(*resume_.search_done_k);
      return;
    }
    for (const auto& [id, rec] : resume_.search_tasks) raise_best(rec.best);
    run_parallel(Mode::search, -1, &resume_.search_tasks, "search", nullptr);
  }

  std::uint64_t run_certify_phase(DoubledArea k) {
    std::uint64_t nodes = 0;
    if (resume_.certify_done) {
      for (const auto& [id, rec] : resume_.certify_tasks) nodes += rec.nodes;
      return nodes;
    }
    for (const auto& [id, rec] : resume_.certify_tasks) nodes += rec.nodes;
    run_parallel(Mode::certify, k, &resume_.certify_tasks, "certify", &nodes);
    return nodes;
  }

  void run_parallel(Mode mode, DoubledArea threshold,
                    const std::unordered_map<std::uint32_t, TaskRecord>* done,
                    const char* phase, std::uint64_t* node_sink) {
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> phase_nodes{0};
    const int threads = std::min(
        params_.thread_count,
        static_cast<int>(std::max<std::size_t>(tasks_.size(), 1)));
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;

    auto body = [&] {
      WorkerState ws;
      ws.lists.resize(static_cast<std::size_t>(params_.n) + 1);
      try {
        for (;;) {
          if (abort_.load(std::memory_order_relaxed)) return;
          const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= tasks_.size()) return;
          if (done && done->count(static_cast<std::uint32_t>(i))) continue;
          ws.nodes = 0;
          ws.local_best = -1;
          run_task(tasks_[i], mode, threshold, ws);
          if (abort_.load(std::memory_order_relaxed)) return;
          phase_nodes.fetch_add(ws.nodes, std::memory_order_relaxed);
          log_.task_done(phase, static_cast<std::uint32_t>(i), ws.local_best,
                         ws.nodes);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        abort_.store(true, std::memory_order_relaxed);
      }
    };

    for (int t = 1; t < threads; ++t) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    if (abort_.load(std::memory_order_relaxed))
      throw IncompleteSearch(session_nodes_.load(std::memory_order_relaxed),
                             params_.checkpoint_path);
    if (node_sink) *node_sink += phase_nodes.load(std::memory_order_relaxed);
  }

  // Ordered first-fit descent at threshold k-1: the first leaf reached is
  // the lexicographically smallest multiset scoring k, which equals the
  // smallest canonical witness.
  std::uint64_t run_witness_phase(DoubledArea k, CellTuple& out) {
    WorkerState ws;
    ws.lists.resize(static_cast<std::size_t>(params_.n) + 1);
    for (const Task& task : tasks_) {
      run_task(task, Mode::witness, k - 1, ws);
      if (ws.found_witness) {
        out.cells = ws.witness;
        return ws.nodes;
      }
      if (abort_.load(std::memory_order_relaxed))
        throw IncompleteSearch(session_nodes_.load(std::memory_order_relaxed),
                               params_.checkpoint_path);
    }
    throw std::logic_error(
        "internal inconsistency: no multiset attains the computed maximum");
  }

  bool charge_node(WorkerState& ws) {
    ++ws.nodes;
    if (++ws.unsynced >= 1024) {
      const std::uint64_t total =
          session_nodes_.fetch_add(ws.unsynced, std::memory_order_relaxed) +
          ws.unsynced;
      ws.unsynced = 0;
      if (total > params_.node_budget) {
        abort_.store(true, std::memory_order_relaxed);
        return false;
      }
    }
    return !abort_.load(std::memory_order_relaxed);
  }

  void run_task(const Task& task, Mode mode, DoubledArea threshold,
                WorkerState& ws) {
    ws.prefix[0] = task.c1;
    ws.prefix[1] = task.c2;
    if (!charge_node(ws) || !charge_node(ws)) return;

    const std::int64_t thr = mode == Mode::search
                                 ? best_.load(std::memory_order_relaxed)
                                 : threshold;
    auto& cands = ws.lists[2];
    cands.clear();
    for (std::uint32_t x = task.c2; x < m_; ++x) {
      if (params_.use_symmetry && grid_.min_image(x) < task.c1) continue;
      const std::uint32_t v = cache_.value(task.c1, task.c2, x);
      if (static_cast<std::int64_t>(v) > thr) cands.push_back({x, v});
    }
    extend(2, kNoTriple, mode, threshold, ws);
  }

  // prefix[0..len) is fixed and ws.lists[len] holds its viable extensions.
  void extend(int len, std::uint32_t rm, Mode mode, DoubledArea threshold,
              WorkerState& ws) {
    const auto& cands = ws.lists[static_cast<std::size_t>(len)];
    const int n = params_.n;
    for (std::size_t idx = 0; idx < cands.size(); ++idx) {
      if (mode == Mode::witness && ws.found_witness) return;
      const CandEntry e = cands[idx];
      const std::int64_t thr = mode == Mode::search
                                   ? best_.load(std::memory_order_relaxed)
                                   : threshold;
      if (static_cast<std::int64_t>(e.v) <= thr) continue;
      const std::uint32_t new_rm = std::min(rm, e.v);
      assert(new_rm <= rm);  // adding a cell never raises the running min
      if (!charge_node(ws)) return;

      if (len + 1 == n) {
        handle_leaf(e.id, new_rm, mode, ws);
        if (mode == Mode::witness && ws.found_witness) return;
        continue;
      }

      auto& next = ws.lists[static_cast<std::size_t>(len) + 1];
      next.clear();
      for (std::size_t j = idx; j < cands.size(); ++j) {
        const CandEntry y = cands[j];
        std::uint32_t v2 = y.v;
        if (static_cast<std::int64_t>(v2) <= thr) continue;
        for (int i = 0; i < len; ++i) {
          v2 = std::min(v2, cache_.value(ws.prefix[i], e.id, y.id));
          if (static_cast<std::int64_t>(v2) <= thr) break;
        }
        if (static_cast<std::int64_t>(v2) > thr) next.push_back({y.id, v2});
      }
      ws.prefix[static_cast<std::size_t>(len)] = e.id;
      extend(len + 1, new_rm, mode, threshold, ws);
      if (abort_.load(std::memory_order_relaxed)) return;
    }
  }

  void handle_leaf(std::uint32_t last, std::uint32_t score, Mode mode,
                   WorkerState& ws) {
    switch (mode) {
      case Mode::search:
        raise_best(score);
        ws.local_best = std::max<std::int64_t>(ws.local_best, score);
        break;
      case Mode::certify:
        // The search phase is exhaustive; a leaf above its maximum means a
        // broken invariant, not a better bound.
        throw std::logic_error(
            "internal inconsistency: certify phase exceeded the search "
            "maximum");
      case Mode::witness:
        ws.found_witness = true;
        ws.witness.assign(ws.prefix.begin(),
                          ws.prefix.begin() + params_.n - 1);
        ws.witness.push_back(last);
        std::sort(ws.witness.begin(), ws.witness.end());
        break;
    }
  }

  const Grid& grid_;
  const TripleCache& cache_;
  const SearchParams& params_;
  std::uint64_t m_;
  std::int64_t base_ = -1;
  std::vector<Task> tasks_;
  std::atomic<std::int64_t> best_{-1};
  std::atomic<std::uint64_t> session_nodes_{0};
  std::atomic<bool> abort_{false};
  CheckpointState resume_;
  CheckpointLog log_;
};

}  // namespace detail

// Exact maximum of tuple_score over all N-multisets of cells, with the
// smallest canonical witness attaining it.  Identical results for any
// thread count and for symmetry reduction on or off.
inline BoundResult solve(const Grid& grid, const TripleCache& cache,
                         const SearchParams& params) {
  params.validate();
  if (grid.spec() != params.grid)
    throw std::invalid_argument("solve: grid does not match params.grid");
  return detail::Engine(grid, cache, params).run();
}

inline BoundResult solve(const SearchParams& params) {
  params.validate();
  Grid grid(params.grid);
  TripleCache cache(grid, 700,
                    static_cast<unsigned>(std::max(params.thread_count, 1)));
  return solve(grid, cache, params);
}

// Unpruned validation oracle: a plain loop over every N-multiset.
inline BoundResult solve_naive(const Grid& grid, const TripleCache& cache,
                               const SearchParams& params) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t m = grid.size();
  const int n = params.n;

  // Refuse instances with more than 10^8 multisets: C(m+n-1, n).
  {
    long double est = 1.0L;
    for (int i = 0; i < n; ++i)
      est *= static_cast<long double>(m + static_cast<std::uint64_t>(n) - 1 - i) /
             static_cast<long double>(n - i);
    if (est > 1e8L)
      throw std::invalid_argument("solve_naive: instance too large");
  }

  std::vector<std::uint32_t> t(static_cast<std::size_t>(n), 0);
  CellTuple tuple;
  std::int64_t best = -1;
  std::vector<std::uint32_t> witness;
  std::uint64_t count = 0;
  for (;;) {
    ++count;
    tuple.cells = t;
    const DoubledArea s = tuple_score(tuple, cache);
    if (s > best) {
      best = s;
      witness = t;
    }
    // odometer over non-decreasing tuples
    int pos = n - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == m - 1) --pos;
    if (pos < 0) break;
    const std::uint32_t v = t[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < n; ++i) t[static_cast<std::size_t>(i)] = v;
  }

  if (params.initial_bound && best < *params.initial_bound)
    throw WarmStartError(*params.initial_bound);

  BoundResult result;
  result.n = n;
  result.grid = grid.spec();
  result.k = best;
  const std::int64_t den = grid.p() * grid.p();
  const std::int64_t g = std::gcd(best, den);
  result.bound_num = best / g;
  result.bound_den = den / g;
  result.witness.cells = witness;
  for (std::size_t i = 0; i + 2 < witness.size(); ++i)
    for (std::size_t j = i + 1; j + 1 < witness.size(); ++j)
      for (std::size_t l = j + 1; l < witness.size(); ++l)
        result.witness_triple_values.push_back(
            cache.value(witness[i], witness[j], witness[l]));
  result.nodes_explored = count;
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - t0);
  return result;
}

inline BoundResult solve_naive(const SearchParams& params) {
  params.validate();
  Grid grid(params.grid);
  TripleCache cache(grid, 700,
                    static_cast<unsigned>(std::max(params.thread_count, 1)));
  return solve_naive(grid, cache, params);
}

}  // namespace heilbronn
