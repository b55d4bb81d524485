#include "fwm/contour.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>

#include "fwm/errors.hpp"

namespace fwm {

namespace {

struct Segment {
  std::int64_t edge_a;
  std::int64_t edge_b;
  ContourVertex a;
  ContourVertex b;
};

class Tracer {
 public:
  Tracer(std::span<const double> field, const UniformAxis& x, const UniformAxis& y, double level)
      : field_(field), x_(x), y_(y), level_(level) {}

  std::vector<Contour> run() {
    for (int j = 0; j + 1 < y_.count; ++j) {
      for (int i = 0; i + 1 < x_.count; ++i) emit_cell(i, j);
    }
    return stitch();
  }

 private:
  enum Side { kBottom, kRight, kTop, kLeft };

  double value(int i, int j) const { return field_[static_cast<std::size_t>(j) * x_.count + i]; }

  std::int64_t edge_id(int i, int j, Side side) const {
    // Horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1) get
    // distinct even/odd ids.
    switch (side) {
      case kBottom: return (static_cast<std::int64_t>(j) * x_.count + i) * 2;
      case kTop: return (static_cast<std::int64_t>(j + 1) * x_.count + i) * 2;
      case kLeft: return (static_cast<std::int64_t>(j) * x_.count + i) * 2 + 1;
      case kRight: return (static_cast<std::int64_t>(j) * x_.count + i + 1) * 2 + 1;
    }
    return -1;
  }

  ContourVertex crossing(int i, int j, Side side) const {
    int i0 = i, j0 = j, i1 = i, j1 = j;
    switch (side) {
      case kBottom: i1 = i + 1; break;
      case kTop: j0 = j1 = j + 1; i1 = i + 1; break;
      case kLeft: j1 = j + 1; break;
      case kRight: i0 = i1 = i + 1; j1 = j + 1; break;
    }
    const double v0 = value(i0, j0);
    const double v1 = value(i1, j1);
    const double t = (v1 == v0) ? 0.5 : (level_ - v0) / (v1 - v0);
    const double x0 = x_.at(i0), y0 = y_.at(j0);
    return {x0 + t * (x_.at(i1) - x0), y0 + t * (y_.at(j1) - y0)};
  }

  void add(int i, int j, Side s0, Side s1) {
    segments_.push_back({edge_id(i, j, s0), edge_id(i, j, s1), crossing(i, j, s0), crossing(i, j, s1)});
  }

  void emit_cell(int i, int j) {
    const double v00 = value(i, j), v10 = value(i + 1, j);
    const double v11 = value(i + 1, j + 1), v01 = value(i, j + 1);
    const bool b0 = v00 > level_, b1 = v10 > level_, b2 = v11 > level_, b3 = v01 > level_;
    std::array<Side, 4> cut{};
    int n = 0;
    if (b0 != b1) cut[n++] = kBottom;
    if (b1 != b2) cut[n++] = kRight;
    if (b2 != b3) cut[n++] = kTop;
    if (b3 != b0) cut[n++] = kLeft;
    if (n == 2) {
      add(i, j, cut[0], cut[1]);
    } else if (n == 4) {
      const bool centre = 0.25 * (v00 + v10 + v11 + v01) > level_;
      if (centre == b0) {
        // Corners 0 and 2 connect through the centre; cut off corners 1 and 3.
        add(i, j, kBottom, kRight);
        add(i, j, kTop, kLeft);
      } else {
        add(i, j, kLeft, kBottom);
        add(i, j, kRight, kTop);
      }
    }
  }

  std::vector<Contour> stitch() {
    std::unordered_map<std::int64_t, std::array<int, 2>> by_edge;
    by_edge.reserve(segments_.size() * 2);
    for (int s = 0; s < static_cast<int>(segments_.size()); ++s) {
      for (auto e : {segments_[s].edge_a, segments_[s].edge_b}) {
        auto [it, inserted] = by_edge.try_emplace(e, std::array<int, 2>{s, -1});
        if (!inserted) it->second[1] = s;
      }
    }
    const auto neighbour = [&](std::int64_t edge, int from) {
      const auto& pair = by_edge.at(edge);
      return pair[0] == from ? pair[1] : pair[0];
    };

    std::vector<bool> used(segments_.size(), false);
    std::vector<Contour> out;
    for (int start = 0; start < static_cast<int>(segments_.size()); ++start) {
      if (used[start]) continue;
      used[start] = true;
      Contour c;
      c.level = level_;
      std::vector<ContourVertex> forward{segments_[start].a, segments_[start].b};
      const std::int64_t start_edge = segments_[start].edge_a;

      // Walk forward from edge_b.
      std::int64_t edge = segments_[start].edge_b;
      int current = start;
      bool closed = false;
      while (true) {
        const int next = neighbour(edge, current);
        if (next < 0) break;
        if (next == start) {
          closed = true;
          break;
        }
        if (used[next]) break;
        used[next] = true;
        const auto& seg = segments_[next];
        const bool enter_a = seg.edge_a == edge;
        edge = enter_a ? seg.edge_b : seg.edge_a;
        forward.push_back(enter_a ? seg.b : seg.a);
        current = next;
        if (edge == start_edge) {
          closed = true;
          break;
        }
      }

      if (!closed) {
        // Open line: extend backwards from the start segment's edge_a.
        std::vector<ContourVertex> backward;
        edge = start_edge;
        current = start;
        while (true) {
          const int next = neighbour(edge, current);
          if (next < 0 || used[next]) break;
          used[next] = true;
          const auto& seg = segments_[next];
          const bool enter_a = seg.edge_a == edge;
          edge = enter_a ? seg.edge_b : seg.edge_a;
          backward.push_back(enter_a ? seg.b : seg.a);
          current = next;
        }
        c.vertices.assign(backward.rbegin(), backward.rend());
        c.vertices.insert(c.vertices.end(), forward.begin(), forward.end());
      } else {
        c.vertices = std::move(forward);
        if (c.vertices.front().x != c.vertices.back().x ||
            c.vertices.front().y != c.vertices.back().y) {
          c.vertices.push_back(c.vertices.front());
        }
      }
      c.closed = closed;
      out.push_back(std::move(c));
    }
    return out;
  }

  std::span<const double> field_;
  const UniformAxis& x_;
  const UniformAxis& y_;
  double level_;
  std::vector<Segment> segments_;
};

}  // namespace

std::vector<Contour> trace_isolines(std::span<const double> field, const UniformAxis& x_axis,
                                    const UniformAxis& y_axis, double level) {
  x_axis.validate();
  y_axis.validate();
  if (field.size() != static_cast<std::size_t>(x_axis.count) * y_axis.count) {
    throw ContractError("trace_isolines: field size does not match the axes");
  }
  return Tracer(field, x_axis, y_axis, level).run();
}

std::vector<Contour> trace_contours(const PmMap& map, double level) {
  return trace_isolines(map.values, map.pump_axis, map.detuning_axis, level);
}

bool contains_point(const Contour& loop, double x, double y) {
  bool inside = false;
  const auto& v = loop.vertices;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > y) != (v[j].y > y) &&
        x < (v[j].x - v[i].x) * (y - v[i].y) / (v[j].y - v[i].y) + v[i].x) {
      inside = !inside;
    }
  }
  return inside;
}

}  // namespace fwm
