#pragma once

// Line-delimited checkpoint files for long searches.
//
//   heilbronn-checkpoint 1
//   meta p=15 n=5 variant=interior symmetry=1 initial=-1 tasks=25425
//   search-task id=17 status=done best=21 nodes=4567
//   search-done k=46
//   certify-task id=3 status=done best=-1 nodes=123
//   certify-done
//
// Tasks are the (first,second)-cell subtrees of the enumeration, identified
// by a stable lexicographic index, so a resumed run skips completed subtrees
// and reaches the same final value as an uninterrupted one.  A trailing
// partial line (interrupted write) is ignored on load.

#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "heilbronn/geometry.hpp"

namespace heilbronn {

struct CheckpointMeta {
  std::int64_t p = 0;
  int n = 0;
  GridVariant variant = GridVariant::interior;
  bool symmetry = true;
  std::int64_t initial = -1;  // warm-start floor minus one, -1 if none
  std::uint64_t tasks = 0;

  friend bool operator==(const CheckpointMeta&, const CheckpointMeta&) = default;
};

struct TaskRecord {
  std::int64_t best = -1;  // best leaf score found inside the subtree
  std::uint64_t nodes = 0;
};

struct CheckpointState {
  bool present = false;
  CheckpointMeta meta;
  std::unordered_map<std::uint32_t, TaskRecord> search_tasks;
  std::optional<std::int64_t> search_done_k;
  std::unordered_map<std::uint32_t, TaskRecord> certify_tasks;
  bool certify_done = false;
};

namespace detail {

inline std::unordered_map<std::string, std::string> parse_kv(
    std::istringstream& in) {
  std::unordered_map<std::string, std::string> kv;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("checkpoint: malformed field '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

inline std::int64_t kv_int(const std::unordered_map<std::string, std::string>& kv,
                           const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::runtime_error("checkpoint: missing field '" + key + "'");
  return std::stoll(it->second);
}

}  // namespace detail

inline CheckpointState load_checkpoint(const std::string& path) {
  CheckpointState state;
  std::ifstream in(path);
  if (!in) return state;

  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header_seen) {
      int version = 0;
      if (tag != "heilbronn-checkpoint" || !(ls >> version) || version != 1)
        throw std::runtime_error("checkpoint: unrecognized header in " + path);
      header_seen = true;
      state.present = true;
      continue;
    }
    if (tag == "meta") {
      auto kv = detail::parse_kv(ls);
      state.meta.p = detail::kv_int(kv, "p");
      state.meta.n = static_cast<int>(detail::kv_int(kv, "n"));
      state.meta.variant = kv.at("variant") == "perimeter"
                               ? GridVariant::perimeter
                               : GridVariant::interior;
      state.meta.symmetry = detail::kv_int(kv, "symmetry") != 0;
      state.meta.initial = detail::kv_int(kv, "initial");
      state.meta.tasks = static_cast<std::uint64_t>(detail::kv_int(kv, "tasks"));
    } else if (tag == "search-task" || tag == "certify-task") {
      auto kv = detail::parse_kv(ls);
      if (kv.count("status") && kv.at("status") != "done") continue;
      TaskRecord rec;
      rec.best = detail::kv_int(kv, "best");
      rec.nodes = static_cast<std::uint64_t>(detail::kv_int(kv, "nodes"));
      const auto id = static_cast<std::uint32_t>(detail::kv_int(kv, "id"));
      (tag[0] == 's' ? state.search_tasks : state.certify_tasks)[id] = rec;
    } else if (tag == "search-done") {
      auto kv = detail::parse_kv(ls);
      state.search_done_k = detail::kv_int(kv, "k");
    } else if (tag == "certify-done") {
      state.certify_done = true;
    } else {
      // Unknown tag or interrupted final line: skip.
    }
  }
  return state;
}

// Append-only writer.  Records are flushed line by line; tasks are coarse
// enough that this costs nothing next to the search itself.
class CheckpointLog {
 public:
  CheckpointLog() = default;

  void open(const std::string& path, const CheckpointMeta& meta,
            bool resuming) {
    std::lock_guard<std::mutex> lock(mu_);
    out_.open(path, resuming ? std::ios::app : std::ios::trunc);
    if (!out_)
      throw std::runtime_error("checkpoint: cannot open " + path);
    if (!resuming) {
      out_ << "heilbronn-checkpoint 1\n";
      out_ << "meta p=" << meta.p << " n=" << meta.n
           << " variant=" << to_string(meta.variant)
           << " symmetry=" << (meta.symmetry ? 1 : 0)
           << " initial=" << meta.initial << " tasks=" << meta.tasks << "\n";
      out_.flush();
    }
  }

  bool active() const { return out_.is_open(); }

  void task_done(const char* phase, std::uint32_t id, std::int64_t best,
                 std::uint64_t nodes) {
    if (!out_.is_open()) return;
    std::lock_guard<std::mutex> lock(mu_);
    out_ << phase << "-task id=" << id << " status=done best=" << best
         << " nodes=" << nodes << "\n";
    out_.flush();
  }

  void search_done(std::int64_t k) {
    if (!out_.is_open()) return;
    std::lock_guard<std::mutex> lock(mu_);
    out_ << "search-done k=" << k << "\n";
    out_.flush();
  }

  void certify_done() {
    if (!out_.is_open()) return;
    std::lock_guard<std::mutex> lock(mu_);
    out_ << "certify-done\n";
    out_.flush();
  }

 private:
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace heilbronn
