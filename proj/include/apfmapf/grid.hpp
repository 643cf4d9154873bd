#pragma once

#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace apfmapf {

struct Vertex {
  int row = 0;
  int col = 0;

  bool operator==(const Vertex&) const = default;
  bool operator<(const Vertex& o) const {
    return row != o.row ? row < o.row : col < o.col;
  }
};

inline int manhattan(const Vertex& a, const Vertex& b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

// 4-connected grid. Cells are stored row-major; free cells form the vertex set.
class GridMap {
 public:
  GridMap() = default;
  GridMap(int height, int width, std::vector<uint8_t> blocked)
      : height_(height), width_(width), blocked_(std::move(blocked)) {
    if (height_ <= 0 || width_ <= 0 ||
        blocked_.size() != static_cast<size_t>(height_) * width_)
      throw std::invalid_argument("GridMap: bad dimensions");
  }

  int height() const { return height_; }
  int width() const { return width_; }
  int size() const { return height_ * width_; }

  bool in_bounds(const Vertex& v) const {
    return v.row >= 0 && v.row < height_ && v.col >= 0 && v.col < width_;
  }
  bool blocked(const Vertex& v) const { return blocked_[index(v)] != 0; }
  bool free(const Vertex& v) const { return in_bounds(v) && !blocked(v); }

  int index(const Vertex& v) const { return v.row * width_ + v.col; }
  Vertex vertex(int idx) const { return {idx / width_, idx % width_}; }
  bool free_index(int idx) const { return blocked_[idx] == 0; }

  int num_free() const {
    int n = 0;
    for (uint8_t b : blocked_) n += (b == 0);
    return n;
  }

  std::vector<Vertex> free_cells() const {
    std::vector<Vertex> out;
    out.reserve(num_free());
    for (int i = 0; i < size(); ++i)
      if (blocked_[i] == 0) out.push_back(vertex(i));
    return out;
  }

  // Neighbors in fixed order: up, right, down, left.
  template <typename Fn>
  void for_each_neighbor(const Vertex& v, Fn&& fn) const {
    static constexpr int dr[4] = {-1, 0, 1, 0};
    static constexpr int dc[4] = {0, 1, 0, -1};
    for (int k = 0; k < 4; ++k) {
      Vertex u{v.row + dr[k], v.col + dc[k]};
      if (free(u)) fn(u);
    }
  }

  std::vector<Vertex> neighbors(const Vertex& v) const {
    std::vector<Vertex> out;
    out.reserve(4);
    for_each_neighbor(v, [&](const Vertex& u) { out.push_back(u); });
    return out;
  }

  bool operator==(const GridMap& o) const {
    return height_ == o.height_ && width_ == o.width_ && blocked_ == o.blocked_;
  }

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<uint8_t> blocked_;
};

// MovingAI .map format: header (type/height/width/map), then one row per line.
// '.' and 'G' are free; '@', 'T' and 'O' are blocked.
inline GridMap parse_map(const std::string& text) {
  std::istringstream in(text);
  std::string line, key;
  int height = -1, width = -1;

  if (!std::getline(in, line) || line.rfind("type", 0) != 0)
    throw std::runtime_error("parse_map: missing 'type' header");
  for (int i = 0; i < 2; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("parse_map: truncated header");
    std::istringstream ls(line);
    int value;
    if (!(ls >> key >> value) || value <= 0)
      throw std::runtime_error("parse_map: bad header line: " + line);
    if (key == "height")
      height = value;
    else if (key == "width")
      width = value;
    else
      throw std::runtime_error("parse_map: unexpected header key: " + key);
  }
  if (height <= 0 || width <= 0)
    throw std::runtime_error("parse_map: height/width missing");
  if (!std::getline(in, line) || line.rfind("map", 0) != 0)
    throw std::runtime_error("parse_map: missing 'map' marker");

  std::vector<uint8_t> blocked;
  blocked.reserve(static_cast<size_t>(height) * width);
  for (int r = 0; r < height; ++r) {
    if (!std::getline(in, line))
      throw std::runtime_error("parse_map: missing row " + std::to_string(r));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != width)
      throw std::runtime_error("parse_map: row " + std::to_string(r) +
                               " has length " + std::to_string(line.size()) +
                               ", expected " + std::to_string(width));
    for (char c : line) {
      switch (c) {
        case '.':
        case 'G':
          blocked.push_back(0);
          break;
        case '@':
        case 'T':
        case 'O':
          blocked.push_back(1);
          break;
        default:
          throw std::runtime_error(std::string("parse_map: unknown cell '") +
                                   c + "'");
      }
    }
  }
  return GridMap(height, width, std::move(blocked));
}

inline std::string serialize_map(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) +
                    "\nwidth " + std::to_string(map.width()) + "\nmap\n";
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c)
      out += map.blocked({r, c}) ? '@' : '.';
    out += '\n';
  }
  return out;
}

}  // namespace apfmapf
