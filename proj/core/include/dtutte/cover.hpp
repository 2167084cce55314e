#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dtutte/drawing.hpp"
#include "dtutte/triangulation.hpp"
#include "dtutte/walk.hpp"

namespace dtutte {

namespace detail {
class DiskGrower;
}

// Finite, lazily grown piece of the universal cover of a closed reducing
// triangulation around a basepoint. Chart vertices are never identified, so
// the explored region is always a disk.
class CoverChart {
 public:
  CoverChart(std::shared_ptr<const Triangulation> base, Vertex basepoint);
  ~CoverChart();
  CoverChart(CoverChart&&) noexcept;
  CoverChart& operator=(CoverChart&&) noexcept;

  const Triangulation& base() const { return *base_; }
  // Chart vertex over the basepoint.
  Vertex root() const { return Vertex(0); }

  // Complete the star of every chart vertex within distance radius of the root.
  void expand(int radius);
  int explored_radius() const { return radius_; }

  int num_vertices() const;
  int num_half_edges() const;
  bool complete(Vertex v) const;
  int dist(Vertex v) const;
  HalfEdge next(HalfEdge h) const;
  HalfEdge twin(HalfEdge h) const;
  Vertex origin(HalfEdge h) const;
  Vertex head(HalfEdge h) const;
  // Outgoing chart half-edges of v in clockwise order; grows the chart if v
  // is not complete yet.
  std::vector<HalfEdge> outgoing(Vertex v);

  HalfEdge project(HalfEdge h) const;
  Vertex project(Vertex v) const;
  // Chart half-edge leaving v that projects to the base half-edge b.
  HalfEdge lift(Vertex v, HalfEdge b);

  // The explored region as a plane triangulation with boundary; half-edge
  // and vertex ids coincide with chart ids.
  Triangulation snapshot() const;

 private:
  void ensure_complete(Vertex v);

  std::shared_ptr<const Triangulation> base_;
  std::unique_ptr<detail::DiskGrower> grower_;
  int radius_ = -1;
};

// Lift of a base walk starting at base_lift; the chart grows as needed.
Walk lift_walk(CoverChart& chart, const Walk& w, Vertex base_lift);

// Vertices -L..L of a line with central vertex index 0. edges[i] runs from
// vertex i-L to vertex i-L+1.
struct LineWindow {
  Side side = Side::Left;
  int half_length = 0;
  std::vector<HalfEdge> edges;  // 2L edges
  Vertex center;

  HalfEdge forward(int i) const { return edges[i + half_length]; }      // leaves vertex i
  HalfEdge backward_in(int i) const { return edges[i - 1 + half_length]; }  // enters vertex i
  Walk as_walk(const CoverChart& chart) const;
};

// Window of the line through chart vertex v leaving it along `first`, which
// must have a red face on its left. Left lines make only 3_r-turns, right
// lines only -3_r-turns.
LineWindow line_window(CoverChart& chart, Vertex v, HalfEdge first, Side side, int L);
// The window through v along its first (clockwise order) outgoing half-edge
// with red on its left.
LineWindow line_window(CoverChart& chart, Vertex v, Side side, int L);
// All windows through v of the given side, one per admissible first edge.
std::vector<LineWindow> line_windows(CoverChart& chart, Vertex v, Side side, int L);

// Escape search for a drawing into a closed host. `vertex` is a vertex of the
// simplicial map. For every line of the given side centred at its image,
// searches walks of at most `depth` edges whose lift stays on the vertices
// 0..L of the line and then leaves it on the escape side (right of a left
// line, left of a right line). Bounded: a negative answer is no disproof.
struct EscapeResult {
  bool escapes = false;
  // Per line through the image (same order as line_windows): a witness as a
  // sequence of simplicial-map vertices, empty when none was found.
  std::vector<std::vector<int>> witnesses;
  int failing_line = -1;  // first line without witness
};
EscapeResult escape_probe(const SimplicialMap& f, int vertex, Side side, int depth, int L);

// Largest s <= cap such that some triangular patch of side s in the
// universal cover has all its interior vertices of degree 6.
int max_flat_zone(const Triangulation& base, int cap);
// Whether the zone of side s spanned at origin(h) by h (bottom side) and
// ccw(h) (left side) is flat.
bool flat_zone_at(const Triangulation& base, HalfEdge h, int s);

}  // namespace dtutte
