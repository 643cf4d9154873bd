#pragma once

#include <deque>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "apfmapf/grid.hpp"

namespace apfmapf {

constexpr int kUnreachable = std::numeric_limits<int>::max();

// Exact unit-cost shortest-path distances from every free cell to one goal,
// computed by BFS. Serves as the admissible, consistent h(g, v).
class DistanceTable {
 public:
  DistanceTable(const GridMap& map, Vertex goal) : goal_(goal) {
    if (!map.free(goal))
      throw std::invalid_argument("DistanceTable: goal blocked or out of bounds");
    dist_.assign(map.size(), kUnreachable);
    std::deque<int> queue;
    dist_[map.index(goal)] = 0;
    queue.push_back(map.index(goal));
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      int d = dist_[cur];
      map.for_each_neighbor(map.vertex(cur), [&](const Vertex& u) {
        int ui = map.index(u);
        if (dist_[ui] == kUnreachable) {
          dist_[ui] = d + 1;
          queue.push_back(ui);
        }
      });
    }
    width_ = map.width();
  }

  Vertex goal() const { return goal_; }
  int at(const Vertex& v) const { return dist_[v.row * width_ + v.col]; }
  int at_index(int idx) const { return dist_[idx]; }
  bool reachable(const Vertex& v) const { return at(v) != kUnreachable; }

 private:
  Vertex goal_;
  int width_ = 0;
  std::vector<int> dist_;
};

inline std::shared_ptr<const DistanceTable> bfs_distance_table(
    const GridMap& map, Vertex goal) {
  return std::make_shared<const DistanceTable>(map, goal);
}

// Per-map cache of distance tables, keyed by goal cell. Lifelong runs request
// tables for many goals and reuse them across replans; lookups and inserts may
// happen from concurrent solver runs.
class DistanceTableCache {
 public:
  explicit DistanceTableCache(const GridMap& map) : map_(&map) {}

  std::shared_ptr<const DistanceTable> get(Vertex goal) const {
    int key = map_->index(goal);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = tables_.find(key);
      if (it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<const DistanceTable>(*map_, goal);
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = tables_.emplace(key, table);
    return it->second;
  }

  const GridMap& map() const { return *map_; }

 private:
  const GridMap* map_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<int, std::shared_ptr<const DistanceTable>> tables_;
};

}  // namespace apfmapf
