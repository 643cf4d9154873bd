#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "apfmapf/grid.hpp"

namespace apfmapf {

struct ScenEntry {
  Vertex start;
  Vertex goal;
  int bucket = 0;
  double recorded_optimal = 0.0;  // informational, preserved verbatim
};

// MovingAI .scen v1: header "version 1", then tab-separated entries of
// bucket, map name, width, height, start-col, start-row, goal-col, goal-row,
// optimal length.
inline std::vector<ScenEntry> parse_scen(const std::string& text,
                                         const GridMap& map) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("version", 0) != 0)
    throw std::runtime_error("parse_scen: missing 'version' header");

  std::vector<ScenEntry> entries;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    ScenEntry e;
    std::string map_name;
    int width, height, scol, srow, gcol, grow;
    if (!(ls >> e.bucket >> map_name >> width >> height >> scol >> srow >>
          gcol >> grow >> e.recorded_optimal))
      throw std::runtime_error("parse_scen: malformed line " +
                               std::to_string(lineno));
    if (width != map.width() || height != map.height())
      throw std::runtime_error("parse_scen: line " + std::to_string(lineno) +
                               " dimensions do not match map");
    e.start = {srow, scol};
    e.goal = {grow, gcol};
    if (!map.free(e.start))
      throw std::runtime_error("parse_scen: line " + std::to_string(lineno) +
                               " start out of bounds or blocked");
    if (!map.free(e.goal))
      throw std::runtime_error("parse_scen: line " + std::to_string(lineno) +
                               " goal out of bounds or blocked");
    entries.push_back(e);
  }
  return entries;
}

}  // namespace apfmapf
