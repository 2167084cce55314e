#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dtutte/types.hpp"

namespace dtutte {

// Oriented combinatorial map whose faces are 2-colored. next(h) runs
// counterclockwise inside the face on the left of h; a half-edge without a
// twin lies on the boundary. Immutable once built.
class Triangulation {
 public:
  struct HalfEdgeRecord {
    HalfEdge next;
    HalfEdge twin;  // invalid on the boundary
    Vertex origin;
  };
  struct FaceRecord {
    HalfEdge rep;
    Color color;
  };

  Triangulation() = default;

  // Throws StructuralError when indices are out of range, next is not a
  // permutation or the face table does not list every next-orbit exactly
  // once. Twin/origin inconsistencies are tolerated here and reported by
  // validate_reducing instead.
  Triangulation(std::vector<HalfEdgeRecord> half_edges, std::vector<FaceRecord> faces);

  int num_half_edges() const { return static_cast<int>(he_.size()); }
  int num_vertices() const { return num_vertices_; }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_edges() const { return num_edges_; }
  int num_boundary_half_edges() const { return num_boundary_; }
  bool closed() const { return num_boundary_ == 0; }

  HalfEdge next(HalfEdge h) const { return he_[h.value].next; }
  HalfEdge prev(HalfEdge h) const { return prev_[h.value]; }
  HalfEdge twin(HalfEdge h) const { return he_[h.value].twin; }
  // Walks may also traverse a boundary edge against its half-edge. That
  // direction is the dart num_half_edges() + i for the i-th boundary
  // half-edge in id order; only origin, head and reverse apply to it.
  int num_darts() const { return num_half_edges() + num_boundary_; }
  bool is_reverse_dart(HalfEdge h) const { return h.value >= num_half_edges(); }
  // The opposite direction of a half-edge or dart.
  HalfEdge reverse(HalfEdge h) const;
  Vertex origin(HalfEdge h) const {
    return h.value < num_half_edges() ? he_[h.value].origin : head(boundary_he_[h.value - num_half_edges()]);
  }
  Vertex head(HalfEdge h) const {
    return h.value < num_half_edges() ? origin(next(h)) : origin(boundary_he_[h.value - num_half_edges()]);
  }
  Face face(HalfEdge h) const { return face_of_[h.value]; }
  Color color(Face f) const { return faces_[f.value].color; }
  HalfEdge face_half_edge(Face f) const { return faces_[f.value].rep; }
  // Color of the face on the left of h.
  Color left_color(HalfEdge h) const { return color(face(h)); }
  bool on_boundary(HalfEdge h) const { return !twin(h).valid(); }

  const std::vector<HalfEdgeRecord>& half_edge_table() const { return he_; }
  const std::vector<FaceRecord>& face_table() const { return faces_; }

  // Rotation queries need a consistent twin/origin structure; they throw
  // DomainError when rotation_valid() is false.
  bool rotation_valid() const { return rotation_valid_; }
  // Next outgoing half-edge clockwise around origin(h); invalid past the last
  // slot of a boundary vertex.
  HalfEdge cw(HalfEdge h) const;
  HalfEdge ccw(HalfEdge h) const;
  // Outgoing half-edges of v in clockwise order. For a boundary vertex the
  // order is linear and ends with the outgoing boundary half-edge.
  std::span<const HalfEdge> outgoing(Vertex v) const;
  // Position of h in outgoing(origin(h)).
  int slot(HalfEdge h) const { return slot_[h.value]; }
  // Number of incident edge ends (a loop counts twice).
  int degree(Vertex v) const;
  bool on_boundary(Vertex v) const { return vertex_boundary_[v.value] != 0; }
  // outgoing(v)[(slot(h) + k) mod degree] for an interior vertex.
  HalfEdge rotate_cw(HalfEdge h, int k) const;

  int euler_characteristic() const { return num_vertices_ - num_edges_ + num_faces(); }
  int num_boundary_components() const;
  // Orientable genus from chi = 2 - 2g - b, one value per connected map.
  int genus() const;

  // Boundary half-edges grouped into cycles, each in traversal order.
  std::vector<std::vector<HalfEdge>> boundary_cycles() const;

  friend bool operator==(const Triangulation& a, const Triangulation& b);

 private:
  void build_rotation();
  void require_rotation() const;

  std::vector<HalfEdgeRecord> he_;
  std::vector<FaceRecord> faces_;
  std::vector<Face> face_of_;
  std::vector<HalfEdge> prev_;
  std::vector<HalfEdge> boundary_he_;
  std::vector<int> boundary_index_;
  int num_vertices_ = 0;
  int num_edges_ = 0;
  int num_boundary_ = 0;
  bool rotation_valid_ = false;
  std::vector<int> rot_begin_;
  std::vector<HalfEdge> rot_;
  std::vector<int> slot_;
  std::vector<char> vertex_boundary_;
};

enum class ViolationKind { DegreeTooLow, DualNotBipartite, NonTriangleFace, Disconnected, TwinBroken };

std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string location;  // e.g. "vertex 4", "half-edge 17"
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(ViolationKind k) const;
};

ValidationReport validate_reducing(const Triangulation& t);

// TRI v1 text format. write_tri(read_tri(s)) reproduces canonical text
// exactly; read_tri(write_tri(t)) == t.
std::string write_tri(const Triangulation& t);
Triangulation read_tri(std::istream& in);
Triangulation parse_tri(const std::string& text);

// Assembles triangulations from loose triangles. Half-edge 3f+i is side i of
// face f and runs from corner i to corner i+1; vertices are the classes of
// corners identified by glue(). Half-edge ids survive build() unchanged.
class ComplexBuilder {
 public:
  int add_face(Color c);
  static int side(int face, int i) { return 3 * face + i; }
  static int next_of(int h) { return h - h % 3 + (h % 3 + 1) % 3; }
  static int prev_of(int h) { return h - h % 3 + (h % 3 + 2) % 3; }
  int num_faces() const { return static_cast<int>(colors_.size()); }
  Color face_color(int f) const { return colors_[f]; }

  // Make a and b twins; they must currently be unglued.
  void glue(int a, int b);
  void unglue(int a);
  bool glued(int h) const { return twin_[h] >= 0; }
  int twin(int h) const { return twin_[h]; }

  // Copies t in, returning the builder id of every half-edge of t. With
  // mirror=true the orientation is reversed: half-edge h maps to a half-edge
  // running from head(h) to origin(h). swap_colors exchanges red and blue.
  std::vector<int> append(const Triangulation& t, bool mirror = false, bool swap_colors = false);

  Triangulation build() const;

 private:
  std::vector<Color> colors_;
  std::vector<int> twin_;
};

}  // namespace dtutte
