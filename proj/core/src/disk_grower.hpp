#pragma once

#include <functional>
#include <queue>
#include <vector>

#include "dtutte/triangulation.hpp"

namespace dtutte::detail {

// A triangulated disk grown one vertex star at a time. Recorded distances are
// upper bounds relaxed through complete stars; completing vertices in order
// of recorded distance makes them exact up to the completed radius. When a base surface is given, every triangle copies
// the base triangle it projects to (this is how cover charts grow);
// otherwise degrees come from the caller and colors alternate.
class DiskGrower {
 public:
  // Star of one vertex of the given degree (plane mode).
  DiskGrower(int center_degree, Color first_color);
  // Star of a lift of base vertex p (cover mode). The base must be closed.
  DiskGrower(const Triangulation* base, Vertex p);

  int num_vertices() const { return static_cast<int>(dist_.size()); }
  int num_half_edges() const { return static_cast<int>(next_.size()); }
  bool complete(int v) const { return out_b_[v] < 0; }
  int dist(int v) const { return dist_[v]; }
  int degree(int v) const { return deg_[v]; }

  int next(int h) const { return next_[h]; }
  int twin(int h) const { return twin_[h]; }
  int origin(int h) const { return origin_[h]; }
  int head(int h) const { return origin_[next_[h]]; }
  Color color(int h) const { return colors_[h / 3]; }
  // Clockwise neighbor of h around origin(h), -1 across the frontier.
  int cw(int h) const { return twin_[h] < 0 ? -1 : next_[twin_[h]]; }
  int ccw(int h) const { return twin_[next_[next_[h]]]; }
  // Outgoing half-edges of a complete vertex in clockwise order, starting
  // anywhere.
  std::vector<int> rotation(int v) const;
  int any_outgoing(int v) const { return any_out_[v]; }

  HalfEdge projection(int h) const { return proj_[h]; }
  Vertex vertex_projection(int v) const { return vproj_[v]; }

  // Fill the gap at frontier vertex v. In plane mode target_degree must be
  // at least the current degree; in cover mode it is ignored, and frontier
  // neighbours whose fan lacks a single triangle are closed as well.
  void complete_vertex(int v, int target_degree = -1);
  // Incomplete vertex of least recorded distance (ties by id), or -1.
  int next_incomplete() const;

  Triangulation snapshot() const;

 private:
  int new_vertex(int dist, Vertex proj);
  int new_face(Color c);
  void relax(int v, int d);
  void close_if_full(int v);

  const Triangulation* base_ = nullptr;
  std::vector<int> next_, twin_, origin_;
  std::vector<Color> colors_;
  std::vector<HalfEdge> proj_;
  std::vector<Vertex> vproj_;
  std::vector<int> dist_, deg_, out_b_, in_b_, any_out_;
  mutable std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>> queue_;
};

}  // namespace dtutte::detail
