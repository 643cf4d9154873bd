#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "apfmapf/grid.hpp"
#include "apfmapf/path.hpp"

namespace apfmapf {

// Repulsion parameters. w scales the strength, gamma the decay rate per cell
// of distance, d_max the influence radius; t_max is the PIBT lookahead depth.
// w = 0 or d_max = 0 turns every field off, which degenerates each augmented
// solver into its vanilla counterpart.
struct APFParams {
  double w = 0.0;
  double gamma = 2.0;
  int d_max = 0;
  int t_max = 0;

  bool active() const { return w > 0.0 && d_max > 0; }
};

// Repulsion kernel: w * gamma^(-d) within the influence radius, 0 from
// d >= d_max on. The d = d_max ring is already outside the field.
inline double point_repulsion(int d, const APFParams& p) {
  if (p.w <= 0.0 || d >= p.d_max) return 0.0;
  return p.w * std::pow(p.gamma, -static_cast<double>(d));
}

namespace detail {
inline uint64_t vt_key(int vertex_index, int t) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(t)) << 32) |
         static_cast<uint32_t>(vertex_index);
}
}  // namespace detail

// Sparse time-indexed repulsion field induced by one agent's path. Zero values
// are never stored. Queries outside the stored support return 0.
class APFField {
 public:
  APFField() = default;
  int owner() const { return owner_; }
  double at(const GridMap& map, const Vertex& v, int t) const {
    auto it = entries_.find(detail::vt_key(map.index(v), t));
    return it == entries_.end() ? 0.0 : it->second;
  }
  const std::unordered_map<uint64_t, double>& entries() const {
    return entries_;
  }
  int max_time() const { return max_time_; }

  friend APFField build_path_apf(const GridMap& map, const Path& path,
                                 const APFParams& params, int t_from, int t_to);

 private:
  int owner_ = -1;
  int max_time_ = -1;
  std::unordered_map<uint64_t, double> entries_;
};

// Builds the field of one path over the time range [t_from, t_to]; each step's
// position acts as a repulsion source over all cells within d_max - 1, with
// the terminal vertex padding positions past the path's end.
inline APFField build_path_apf(const GridMap& map, const Path& path,
                               const APFParams& params, int t_from, int t_to) {
  APFField field;
  field.owner_ = path.agent;
  if (path.empty() || !params.active()) return field;
  field.max_time_ = t_to;
  int radius = params.d_max - 1;
  for (int t = t_from; t <= t_to; ++t) {
    Vertex src = path.at(t);
    for (int dr = -radius; dr <= radius; ++dr) {
      int rem = radius - std::abs(dr);
      for (int dc = -rem; dc <= rem; ++dc) {
        Vertex v{src.row + dr, src.col + dc};
        if (!map.in_bounds(v)) continue;
        double val = point_repulsion(std::abs(dr) + std::abs(dc), params);
        if (val > 0.0)
          field.entries_[detail::vt_key(map.index(v), t)] += val;
      }
    }
  }
  return field;
}

inline double sum_fields_at(const GridMap& map,
                            const std::vector<APFField>& fields,
                            const Vertex& v, int t) {
  double sum = 0.0;
  for (const auto& f : fields) sum += f.at(map, v, t);
  return sum;
}

// Highest aggregated repulsion over t in [t_start, t_end).
inline double max_over_interval(const GridMap& map,
                                const std::vector<APFField>& fields,
                                const Vertex& v, int t_start, int t_end) {
  double best = 0.0;
  int cap = -1;
  for (const auto& f : fields) cap = std::max(cap, f.max_time());
  int stop = std::min(t_end - 1, cap);
  for (int t = t_start; t <= stop; ++t)
    best = std::max(best, sum_fields_at(map, fields, v, t));
  return best;
}

// Merged view of many fields: one sparse map holding the per-(vertex, time)
// sums. Planners query this instead of iterating the field list per node.
class AggregatedAPF {
 public:
  AggregatedAPF() = default;
  explicit AggregatedAPF(const GridMap& map,
                         const std::vector<APFField>& fields) {
    for (const auto& f : fields) add(f);
    (void)map;
  }

  void add(const APFField& field) {
    for (const auto& [key, val] : field.entries()) entries_[key] += val;
    max_time_ = std::max(max_time_, field.max_time());
  }

  bool empty() const { return entries_.empty(); }
  int max_time() const { return max_time_; }

  double at(const GridMap& map, const Vertex& v, int t) const {
    if (entries_.empty()) return 0.0;
    auto it = entries_.find(detail::vt_key(map.index(v), t));
    return it == entries_.end() ? 0.0 : it->second;
  }

  double max_in(const GridMap& map, const Vertex& v, int t_start,
                int t_end) const {
    if (entries_.empty()) return 0.0;
    double best = 0.0;
    int stop = std::min(t_end - 1, max_time_);
    for (int t = t_start; t <= stop; ++t)
      best = std::max(best, at(map, v, t));
    return best;
  }

 private:
  int max_time_ = -1;
  std::unordered_map<uint64_t, double> entries_;
};

// Time-collapsed field for PIBT: the per-step kernels along a lookahead path
// summed over the time dimension.
class SpatialAPFField {
 public:
  SpatialAPFField() = default;
  int owner() const { return owner_; }
  double at(const GridMap& map, const Vertex& v) const {
    auto it = entries_.find(map.index(v));
    return it == entries_.end() ? 0.0 : it->second;
  }
  const std::unordered_map<int, double>& entries() const { return entries_; }

  friend SpatialAPFField build_pibt_apf(const GridMap& map, int owner,
                                        const std::vector<Vertex>& lookahead,
                                        const APFParams& params);

 private:
  int owner_ = -1;
  std::unordered_map<int, double> entries_;
};

// lookahead holds the agent's current vertex followed by its next t_max
// positions along an h-optimal path that ignores other agents; shorter
// lookaheads are padded at their final vertex.
inline SpatialAPFField build_pibt_apf(const GridMap& map, int owner,
                                      const std::vector<Vertex>& lookahead,
                                      const APFParams& params) {
  SpatialAPFField field;
  field.owner_ = owner;
  if (lookahead.empty() || !params.active()) return field;
  int radius = params.d_max - 1;
  for (int j = 0; j <= params.t_max; ++j) {
    Vertex src = j < static_cast<int>(lookahead.size())
                     ? lookahead[j]
                     : lookahead.back();
    for (int dr = -radius; dr <= radius; ++dr) {
      int rem = radius - std::abs(dr);
      for (int dc = -rem; dc <= rem; ++dc) {
        Vertex v{src.row + dr, src.col + dc};
        if (!map.in_bounds(v)) continue;
        double val = point_repulsion(std::abs(dr) + std::abs(dc), params);
        if (val > 0.0) field.entries_[map.index(v)] += val;
      }
    }
  }
  return field;
}

}  // namespace apfmapf
