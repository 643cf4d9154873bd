#pragma once

#include <chrono>
#include <cstdint>
#include <queue>
#include <random>
#include <unordered_map>
#include <vector>

#include "apfmapf/apf.hpp"
#include "apfmapf/constraints.hpp"
#include "apfmapf/heuristics.hpp"
#include "apfmapf/rng.hpp"

namespace apfmapf {

using Clock = std::chrono::steady_clock;
constexpr Clock::time_point kNoDeadline = Clock::time_point::max();

struct PlanQuery {
  const GridMap* map = nullptr;
  Vertex start;
  Vertex goal;
  const ConstraintTables* tables = nullptr;
  const AggregatedAPF* apf = nullptr;  // null or empty: vanilla behavior
  const DistanceTable* h = nullptr;    // distances to goal
  // -1: plan all the way to the goal and hold it. Otherwise produce exactly
  // `horizon` steps; the path need not reach the goal.
  int horizon = -1;
  Clock::time_point deadline = kNoDeadline;
  uint64_t tie_seed = 0;
};

struct PlanResult {
  bool success = false;
  Path path;
  int soft_collisions = 0;
  double g_apf = 0.0;
};

namespace detail {

struct TAStarNode {
  int v = -1;
  int t = 0;
  double g_apf = 0.0;
  int h = 0;
  uint64_t tie = 0;
  int parent = -1;
};

struct TAStarEntry {
  double f;
  int h;
  uint64_t tie;
  int node;
};
struct TAStarOrder {
  bool operator()(const TAStarEntry& a, const TAStarEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.tie > b.tie;
  }
};

inline bool deadline_hit(const Clock::time_point& deadline, int& counter) {
  if (deadline == kNoDeadline) return false;
  if (++counter % 256 != 0) return false;
  return Clock::now() >= deadline;
}

}  // namespace detail

// Time-expanded A* over (vertex, time) states with unit move/wait costs.
// Hard constraints are never violated. With a non-empty APF stack the
// accumulated cost becomes g_APF(n) = g_APF(p) + 1 + apf(v, t); expansion
// order follows f = g_APF + h while duplicate detection stays keyed on the
// original (vertex, time), so the reachable search space is unchanged.
inline PlanResult plan_temporal_astar(const PlanQuery& q) {
  PlanResult result;
  const GridMap& map = *q.map;
  const ConstraintTables& tables = *q.tables;
  static const AggregatedAPF kEmptyApf;
  const AggregatedAPF& apf = q.apf ? *q.apf : kEmptyApf;

  if (!map.free(q.start) || !map.free(q.goal)) return result;
  if (!q.h->reachable(q.start)) return result;
  if (tables.hard_vertex(q.start, 0)) return result;

  const bool windowed = q.horizon >= 0;
  const int t_limit = windowed ? q.horizon
                               : tables.latest_hard_time() + map.num_free();
  const int goal_idx = map.index(q.goal);
  int latest_goal_hard = tables.latest_transient_hard_at(q.goal);
  bool goal_parked = tables.hard_parked(q.goal);

  // Accepts a popped node as terminal.
  auto accept = [&](int v, int t) {
    if (windowed) {
      if (t == q.horizon) return true;
      if (v != goal_idx) return false;
      if (goal_parked) {
        int from;
        tables.hard_parked(q.goal, &from);
        if (from <= q.horizon) return false;
      }
      for (int u = t + 1; u <= q.horizon; ++u)
        if (tables.hard_vertex(q.goal, u)) return false;
      return true;
    }
    return v == goal_idx && !goal_parked && t >= latest_goal_hard;
  };

  std::mt19937_64 rng = make_rng(q.tie_seed, "tastar");
  std::vector<detail::TAStarNode> pool;
  std::priority_queue<detail::TAStarEntry, std::vector<detail::TAStarEntry>,
                      detail::TAStarOrder>
      open;
  // best known g_apf per (v, t); also acts as the duplicate table
  std::unordered_map<uint64_t, double> best;

  auto push = [&](int v, int t, double g, int parent) {
    uint64_t key = detail::vt_key(v, t);
    auto it = best.find(key);
    if (it != best.end() && it->second <= g) return;
    best[key] = g;
    int h = q.h->at_index(v);
    pool.push_back({v, t, g, h, rng(), parent});
    open.push({g + h, h, pool.back().tie, static_cast<int>(pool.size()) - 1});
  };

  push(map.index(q.start), 0, 0.0, -1);
  int tick = 0;
  while (!open.empty()) {
    if (detail::deadline_hit(q.deadline, tick)) return result;
    auto entry = open.top();
    open.pop();
    const auto node = pool[entry.node];
    uint64_t key = detail::vt_key(node.v, node.t);
    if (best.at(key) < node.g_apf) continue;  // superseded

    if (accept(node.v, node.t)) {
      std::vector<Vertex> chain;
      for (int i = entry.node; i >= 0; i = pool[i].parent)
        chain.push_back(map.vertex(pool[i].v));
      std::reverse(chain.begin(), chain.end());
      if (windowed)
        while (static_cast<int>(chain.size()) <= q.horizon)
          chain.push_back(chain.back());
      result.success = true;
      result.path.vertices = std::move(chain);
      result.g_apf = node.g_apf;
      return result;
    }

    if (node.t >= t_limit) continue;
    int t2 = node.t + 1;
    Vertex here = map.vertex(node.v);
    auto consider = [&](const Vertex& u, bool is_move) {
      if (tables.hard_vertex(u, t2)) return;
      if (is_move && tables.hard_edge(here, u, node.t)) return;
      if (q.h->at(u) == kUnreachable) return;
      double g = node.g_apf + 1.0 + apf.at(map, u, t2);
      push(map.index(u), t2, g, entry.node);
    };
    consider(here, false);
    map.for_each_neighbor(here, [&](const Vertex& u) { consider(u, true); });
  }
  return result;
}

}  // namespace apfmapf
