#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "apfmapf/grid.hpp"
#include "apfmapf/path.hpp"

namespace apfmapf {

constexpr int kInfTime = std::numeric_limits<int>::max();

namespace detail {
// Edge keys are normalized to (min, max) so a traversal blocks both
// directions. Time is the departure step of the transition.
inline uint64_t edge_key(int u, int v, int t) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 44) |
         (static_cast<uint64_t>(static_cast<uint32_t>(v)) << 24) |
         static_cast<uint32_t>(t);
}
}  // namespace detail

// Hard and soft occupancy derived from other agents' paths. Hard entries must
// not be violated; soft entries are the SIPPS minimization target. A path's
// terminal vertex stays occupied from its last step onward (parking).
class ConstraintTables {
 public:
  explicit ConstraintTables(const GridMap& map) : map_(&map) {}

  // --- construction -------------------------------------------------------

  // Adds a path as hard constraints. If park is true the terminal vertex is
  // blocked forever from the path's last step; windowed callers pass false
  // and cap occupancy at the path's own end.
  void add_hard_path(const Path& p, bool park = true) {
    if (p.empty()) return;
    for (int t = 0; t <= p.last_step(); ++t) {
      add_hard_vertex(p.vertices[t], t);
      if (t > 0 && !(p.vertices[t] == p.vertices[t - 1]))
        add_hard_edge(p.vertices[t - 1], p.vertices[t], t - 1);
    }
    if (park) park_hard(p.vertices.back(), p.last_step());
  }

  void add_soft_path(const Path& p, bool park = true) {
    if (p.empty()) return;
    int last = p.last_step();
    for (int t = 0; t <= last; ++t) {
      if (t < last || !park) add_soft_vertex(p.vertices[t], t);
      if (t > 0 && !(p.vertices[t] == p.vertices[t - 1])) {
        uint64_t key = detail::edge_key(map_->index(p.vertices[t - 1]),
                                        map_->index(p.vertices[t]), t - 1);
        soft_edges_[key] += 1;
      }
    }
    if (park) park_soft(p.vertices.back(), last);
  }

  void add_hard_vertex(const Vertex& v, int t) {
    events_[map_->index(v)].hard_times.push_back(t);
    latest_hard_time_ = std::max(latest_hard_time_, t);
    dirty_ = true;
  }
  void add_hard_edge(const Vertex& u, const Vertex& v, int t) {
    hard_edges_.insert(detail::edge_key(map_->index(u), map_->index(v), t));
    latest_hard_time_ = std::max(latest_hard_time_, t);
  }
  void park_hard(const Vertex& v, int from) {
    auto& e = events_[map_->index(v)];
    if (e.hard_park_from < 0 || from < e.hard_park_from)
      e.hard_park_from = from;
  }
  void add_soft_vertex(const Vertex& v, int t) {
    events_[map_->index(v)].soft_times.push_back(t);
    latest_soft_time_ = std::max(latest_soft_time_, t);
    dirty_ = true;
  }
  void park_soft(const Vertex& v, int from) {
    auto& e = events_[map_->index(v)];
    if (e.soft_park_from < 0 || from < e.soft_park_from)
      e.soft_park_from = from;
    latest_soft_time_ = std::max(latest_soft_time_, from);
  }

  // --- queries -------------------------------------------------------------

  bool hard_vertex(const Vertex& v, int t) const {
    finalize();
    auto it = events_.find(map_->index(v));
    if (it == events_.end()) return false;
    const auto& e = it->second;
    if (e.hard_park_from >= 0 && t >= e.hard_park_from) return true;
    return std::binary_search(e.hard_times.begin(), e.hard_times.end(), t);
  }
  bool hard_edge(const Vertex& u, const Vertex& v, int t) const {
    return hard_edges_.count(
               detail::edge_key(map_->index(u), map_->index(v), t)) > 0;
  }
  bool soft_vertex(const Vertex& v, int t) const {
    finalize();
    auto it = events_.find(map_->index(v));
    if (it == events_.end()) return false;
    const auto& e = it->second;
    if (e.soft_park_from >= 0 && t >= e.soft_park_from) return true;
    return std::binary_search(e.soft_times.begin(), e.soft_times.end(), t);
  }
  bool soft_edge(const Vertex& u, const Vertex& v, int t) const {
    return soft_edges_.count(
               detail::edge_key(map_->index(u), map_->index(v), t)) > 0;
  }

  // True when the vertex is hard-blocked forever from some time on.
  bool hard_parked(const Vertex& v, int* from = nullptr) const {
    auto it = events_.find(map_->index(v));
    if (it == events_.end() || it->second.hard_park_from < 0) return false;
    if (from) *from = it->second.hard_park_from;
    return true;
  }
  bool soft_parked(const Vertex& v, int* from = nullptr) const {
    auto it = events_.find(map_->index(v));
    if (it == events_.end() || it->second.soft_park_from < 0) return false;
    if (from) *from = it->second.soft_park_from;
    return true;
  }
  int latest_transient_hard_at(const Vertex& v) const {
    finalize();
    auto it = events_.find(map_->index(v));
    if (it == events_.end() || it->second.hard_times.empty()) return -1;
    return it->second.hard_times.back();
  }
  // Transient soft occupancies at v with time strictly greater than t.
  int soft_after(const Vertex& v, int t) const {
    finalize();
    auto it = events_.find(map_->index(v));
    if (it == events_.end()) return 0;
    const auto& times = it->second.soft_times;
    return static_cast<int>(times.end() -
                            std::upper_bound(times.begin(), times.end(), t));
  }

  int latest_hard_time() const { return latest_hard_time_; }
  int latest_soft_time() const { return latest_soft_time_; }
  const GridMap& map() const { return *map_; }

  struct VertexEvents {
    std::vector<int> hard_times;  // sorted, deduplicated after finalize
    std::vector<int> soft_times;
    int hard_park_from = -1;
    int soft_park_from = -1;
  };

  const VertexEvents* events_at(const Vertex& v) const {
    finalize();
    auto it = events_.find(map_->index(v));
    return it == events_.end() ? nullptr : &it->second;
  }

 private:
  void finalize() const {
    if (!dirty_) return;
    for (auto& [idx, e] : events_) {
      auto dedup = [](std::vector<int>& xs) {
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      };
      dedup(e.hard_times);
      dedup(e.soft_times);
    }
    dirty_ = false;
  }

  const GridMap* map_;
  mutable std::unordered_map<int, VertexEvents> events_;
  std::unordered_set<uint64_t> hard_edges_;
  std::unordered_map<uint64_t, int> soft_edges_;
  int latest_hard_time_ = 0;
  int latest_soft_time_ = 0;
  mutable bool dirty_ = false;
};

// Maximal contiguous intervals at a vertex: hard-blocked steps are cut out and
// every interval is homogeneous in soft occupancy. Ordered by t_start; the id
// of an interval is its position in the list.
struct SafeInterval {
  int t_start = 0;
  int t_end = kInfTime;  // exclusive
  bool soft = false;
};

inline std::vector<SafeInterval> build_safe_intervals(
    const ConstraintTables& tables, const Vertex& v) {
  const auto* e = tables.events_at(v);
  std::vector<SafeInterval> out;
  auto status = [&](int t) -> int {  // 0 free, 1 soft, 2 hard
    if (!e) return 0;
    if ((e->hard_park_from >= 0 && t >= e->hard_park_from) ||
        std::binary_search(e->hard_times.begin(), e->hard_times.end(), t))
      return 2;
    if ((e->soft_park_from >= 0 && t >= e->soft_park_from) ||
        std::binary_search(e->soft_times.begin(), e->soft_times.end(), t))
      return 1;
    return 0;
  };
  int horizon = 1;  // beyond all events the status is constant
  if (e) {
    if (!e->hard_times.empty()) horizon = std::max(horizon, e->hard_times.back() + 2);
    if (!e->soft_times.empty()) horizon = std::max(horizon, e->soft_times.back() + 2);
    if (e->hard_park_from >= 0) horizon = std::max(horizon, e->hard_park_from + 1);
    if (e->soft_park_from >= 0) horizon = std::max(horizon, e->soft_park_from + 1);
  }
  int run_start = 0, run_status = status(0);
  for (int t = 1; t <= horizon; ++t) {
    int s = status(t);
    if (s != run_status) {
      if (run_status != 2)
        out.push_back({run_start, t, run_status == 1});
      run_start = t;
      run_status = s;
    }
  }
  if (run_status != 2) out.push_back({run_start, kInfTime, run_status == 1});
  return out;
}

}  // namespace apfmapf
