#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

#include "apfmapf/apf.hpp"
#include "apfmapf/constraints.hpp"
#include "apfmapf/heuristics.hpp"
#include "apfmapf/rng.hpp"
#include "apfmapf/temporal_astar.hpp"  // PlanQuery / PlanResult / deadline

namespace apfmapf {

// Search node over (vertex, safe interval). g is the earliest arrival time
// t_start; c counts the soft collisions of the realized prefix (arrival steps,
// waits inside soft intervals and opposing soft edge traversals, one per
// time-step). c_apf and g_apf carry the APF-augmented keys; with no fields
// they coincide with c and g.
struct SippsNode {
  int v = -1;
  int interval_id = 0;
  int t_start = 0;
  int t_end = kInfTime;
  bool is_goal = false;
  bool hold_to_horizon = false;  // windowed frontier: wait here through k
  bool soft = false;
  int h = 0;
  int c = 0;
  double c_apf = 0.0;
  double g_apf = 0.0;
  uint64_t tie = 0;
  int parent = -1;
  bool alive = true;
};

namespace detail {

struct SippsEntry {
  double c_apf;
  double f;
  int h;
  uint64_t tie;
  int node;
};
struct SippsOrder {
  bool operator()(const SippsEntry& a, const SippsEntry& b) const {
    if (a.c_apf != b.c_apf) return a.c_apf > b.c_apf;
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.tie > b.tie;
  }
};

struct ParetoEntry {
  int g;
  int c;
  int node;
};

inline uint64_t sipps_key(int v, int interval_id, bool is_goal) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(v)) << 24) |
         (static_cast<uint64_t>(static_cast<uint32_t>(interval_id)) << 1) |
         (is_goal ? 1u : 0u);
}

}  // namespace detail

// True per-step soft-collision count of a concrete path against the soft
// occupancy in `tables`: vertex overlaps and opposing edge traversals, one per
// time-step, plus (when counting the terminal tail) the soft events at the
// final vertex after arrival and one count for a soft path parked there.
inline int count_soft_collisions(const ConstraintTables& tables,
                                 const Path& path, bool count_tail) {
  if (path.empty()) return 0;
  int c = 0;
  for (int t = 0; t <= path.last_step(); ++t) {
    if (tables.soft_vertex(path.vertices[t], t)) ++c;
    if (t > 0 && !(path.vertices[t] == path.vertices[t - 1]) &&
        tables.soft_edge(path.vertices[t - 1], path.vertices[t], t - 1))
      ++c;
  }
  if (count_tail) {
    const Vertex& g = path.vertices.back();
    int arrival = path.last_step();
    c += tables.soft_after(g, arrival);
    int park_from;
    if (tables.soft_parked(g, &park_from)) ++c;
  }
  return c;
}

// Safe Interval Path Planning with Soft constraints. Hard constraints are
// never violated; the open list orders by (c, g + h) — or (c_APF, g_APF + h)
// when fields are present, where cost_APF(n) is the highest aggregated field
// value over n's interval. Duplicate pruning is keyed on (v, interval id,
// is_goal) over the original (g, c) values only, so the APF variant explores
// the same reachable space.
inline PlanResult plan_sipps(const PlanQuery& q) {
  PlanResult result;
  const GridMap& map = *q.map;
  const ConstraintTables& tables = *q.tables;
  static const AggregatedAPF kEmptyApf;
  const AggregatedAPF& apf = q.apf ? *q.apf : kEmptyApf;

  if (!map.free(q.start) || !map.free(q.goal)) return result;
  if (!q.h->reachable(q.start)) return result;

  const bool windowed = q.horizon >= 0;
  const int k = q.horizon;
  const int goal_idx = map.index(q.goal);
  const int t_cap = windowed ? k
                             : tables.latest_hard_time() +
                                   tables.latest_soft_time() + map.num_free() + 2;

  std::unordered_map<int, std::vector<SafeInterval>> interval_cache;
  auto intervals_at = [&](int v) -> const std::vector<SafeInterval>& {
    auto it = interval_cache.find(v);
    if (it == interval_cache.end())
      it = interval_cache.emplace(v, build_safe_intervals(tables, map.vertex(v)))
               .first;
    return it->second;
  };

  std::mt19937_64 rng = make_rng(q.tie_seed, "sipps");
  std::vector<SippsNode> pool;
  std::priority_queue<detail::SippsEntry, std::vector<detail::SippsEntry>,
                      detail::SippsOrder>
      open;
  std::unordered_map<uint64_t, std::vector<detail::ParetoEntry>> seen;

  auto push_open = [&](int idx) {
    const SippsNode& n = pool[idx];
    open.push({n.c_apf, n.g_apf + n.h, n.h, n.tie, idx});
  };

  // Duplicate pruning per the SIPPS rule over OPEN and CLOSED: a new node is
  // dropped if an existing one weakly dominates it on (g, c); existing nodes
  // it dominates are removed (dead heap entries are skipped on pop).
  auto insert = [&](SippsNode&& n) {
    uint64_t key = detail::sipps_key(n.v, n.interval_id, n.is_goal);
    auto& entries = seen[key];
    for (const auto& e : entries)
      if (e.g <= n.t_start && e.c <= n.c) return;
    std::erase_if(entries, [&](const detail::ParetoEntry& e) {
      if (n.t_start <= e.g && n.c <= e.c) {
        pool[e.node].alive = false;
        return true;
      }
      return false;
    });
    n.tie = rng();
    pool.push_back(std::move(n));
    int idx = static_cast<int>(pool.size()) - 1;
    entries.push_back({pool[idx].t_start, pool[idx].c, idx});
    push_open(idx);
  };

  // Root: the interval containing t = 0 must exist and start at 0.
  {
    const auto& ivs = intervals_at(map.index(q.start));
    if (ivs.empty() || ivs[0].t_start != 0) return result;
    SippsNode root;
    root.v = map.index(q.start);
    root.interval_id = 0;
    root.t_start = 0;
    root.t_end = ivs[0].t_end;
    root.soft = ivs[0].soft;
    root.is_goal = (root.v == goal_idx && root.t_end == kInfTime);
    root.h = q.h->at(q.start);
    root.c = ivs[0].soft ? 1 : 0;
    root.c_apf = root.c + apf.max_in(map, q.start, 0, root.t_end);
    root.g_apf = 0.0 + apf.max_in(map, q.start, 0, root.t_end);
    if (root.is_goal) {
      root.c += tables.soft_after(q.goal, 0);
      int park_from;
      if (tables.soft_parked(q.goal, &park_from) && !root.soft) ++root.c;
      root.c_apf = root.c + apf.max_in(map, q.start, 0, root.t_end);
    }
    insert(std::move(root));
  }

  auto extract = [&](int idx) {
    std::vector<int> chain;
    for (int i = idx; i >= 0; i = pool[i].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    std::vector<Vertex> verts;
    for (size_t i = 0; i < chain.size(); ++i) {
      const SippsNode& n = pool[chain[i]];
      int until = (i + 1 < chain.size()) ? pool[chain[i + 1]].t_start - 1
                                         : n.t_start;
      if (n.hold_to_horizon) until = k;
      for (int t = static_cast<int>(verts.size()); t <= until; ++t)
        verts.push_back(map.vertex(n.v));
    }
    if (windowed)
      while (static_cast<int>(verts.size()) <= k) verts.push_back(verts.back());
    result.success = true;
    result.path.vertices = std::move(verts);
    result.g_apf = pool[idx].g_apf;
    result.soft_collisions =
        count_soft_collisions(tables, result.path, /*count_tail=*/!windowed);
  };

  int tick = 0;
  while (!open.empty()) {
    if (detail::deadline_hit(q.deadline, tick)) return result;
    auto entry = open.top();
    open.pop();
    if (!pool[entry.node].alive) continue;
    pool[entry.node].alive = false;  // expanded; rivals may still insert
    const SippsNode n = pool[entry.node];

    if (windowed ? (n.is_goal && n.t_start <= k) || n.hold_to_horizon
                 : n.is_goal) {
      extract(entry.node);
      return result;
    }
    if (n.hold_to_horizon) continue;

    // Windowed frontier: wait in place through the horizon.
    if (windowed && n.t_end > k && n.t_start <= k) {
      SippsNode hold = n;
      hold.hold_to_horizon = true;
      hold.parent = entry.node;
      hold.c = n.c + (n.soft ? k - n.t_start : 0);
      hold.c_apf = n.c_apf + (n.soft ? k - n.t_start : 0);
      hold.g_apf = k;
      hold.h = q.h->at_index(n.v);
      hold.tie = rng();
      pool.push_back(hold);
      // bypasses dominance: the hold variant never competes on (g, c)
      pool.back().alive = true;
      push_open(static_cast<int>(pool.size()) - 1);
    }

    Vertex here = map.vertex(n.v);
    auto generate = [&](int u_idx, const SafeInterval& iv, int interval_id,
                        bool is_move) {
      // Arrival window: depart within n's interval, arrive within iv.
      int lo = std::max(n.t_start + 1, iv.t_start);
      int hi = std::min(n.t_end == kInfTime ? kInfTime : n.t_end,
                        iv.t_end == kInfTime ? kInfTime : iv.t_end - 1);
      if (!is_move) lo = iv.t_start;  // contiguous same-vertex transition
      if (lo > hi || lo > t_cap) return;
      Vertex u = map.vertex(u_idx);
      int t_arr = lo;
      if (is_move) {
        while (t_arr <= hi && tables.hard_edge(here, u, t_arr - 1)) ++t_arr;
        if (t_arr > hi || t_arr > t_cap) return;
      }
      SippsNode child;
      child.v = u_idx;
      child.interval_id = interval_id;
      child.t_start = t_arr;
      child.t_end = iv.t_end;
      child.soft = iv.soft;
      child.is_goal = (u_idx == goal_idx && iv.t_end == kInfTime);
      child.h = q.h->at_index(u_idx);
      if (child.h == kUnreachable) return;
      int wait_steps = t_arr - 1 - n.t_start;  // presence at n.v after arrival
      int dc = (n.soft ? wait_steps : 0) + (iv.soft ? 1 : 0) +
               (is_move && tables.soft_edge(here, u, t_arr - 1) ? 1 : 0);
      child.c = n.c + dc;
      double cost_apf = apf.max_in(map, u, t_arr, iv.t_end);
      child.c_apf = n.c_apf + dc + cost_apf;
      child.g_apf = t_arr + cost_apf;
      child.parent = entry.node;
      if (child.is_goal) {
        child.c += tables.soft_after(u, t_arr);
        int park_from;
        if (tables.soft_parked(u, &park_from) && !iv.soft) ++child.c;
        child.c_apf += child.c - (n.c + dc);
      }
      insert(std::move(child));
    };

    const auto& here_ivs = intervals_at(n.v);
    if (n.interval_id + 1 < static_cast<int>(here_ivs.size()) &&
        here_ivs[n.interval_id].t_end == here_ivs[n.interval_id + 1].t_start)
      generate(n.v, here_ivs[n.interval_id + 1], n.interval_id + 1, false);
    map.for_each_neighbor(here, [&](const Vertex& u) {
      int u_idx = map.index(u);
      const auto& ivs = intervals_at(u_idx);
      for (int id = 0; id < static_cast<int>(ivs.size()); ++id)
        generate(u_idx, ivs[id], id, true);
    });
  }
  return result;
}

}  // namespace apfmapf
