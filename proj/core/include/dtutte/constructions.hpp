#pragma once

#include <span>
#include <vector>

#include "dtutte/triangulation.hpp"
#include "dtutte/walk.hpp"

namespace dtutte {

// One vertex, three edges, two faces (red, blue).
Triangulation build_torus();

// On the one-vertex torus: the first closed walk of length two, in half-edge
// id order, making one 2_r-turn and one 2_b-turn of opposite signs. No
// reduced closed walk is freely homotopic to it.
Walk torus_obstruction_walk(const Triangulation& torus);

// 1-to-4 split of every face. Sub-faces keep the parent color except the
// central one. Rejects non-reducing input with DomainError.
Triangulation subdivide(const Triangulation& t);

// Annulus made of a circular list of k >= 2 triangles alternating between
// "up" (an edge on the outer boundary) and "down" (an edge on the inner
// boundary). Colors alternate, so odd k has exactly one same-colored pair.
Triangulation crown(int k);

// Disk of k >= 3 triangles around one interior vertex, colors alternating
// around it (odd k leaves one same-colored pair).
Triangulation build_wheel(int k);

// Genus 1, one boundary component made of two edges: the once-subdivided
// torus with one edge cut open.
Triangulation build_one_gadget();
// Three 1-gadgets chained blue side to red side; genus 3.
Triangulation build_three_gadget();

// For a complex whose boundary is a digon: the boundary half-edge with a red
// face on its left and the one with a blue face on its left.
struct GadgetSides {
  HalfEdge red_side;
  HalfEdge blue_side;
};
GadgetSides gadget_sides(const Triangulation& gadget);

// Closes t0 by gluing a mirror copy (reversed orientation, swapped colors)
// along the boundary, every identified edge replaced by a 3-gadget.
Triangulation double_with_gadgets(const Triangulation& t0);

// Same, keeping track of where every half-edge of t0 went.
struct Doubling {
  Triangulation surface;
  std::vector<HalfEdge> copy;    // t0 half-edge -> same half-edge in surface
  std::vector<HalfEdge> mirror;  // t0 half-edge h -> mirror image, running head(h) -> origin(h)
  int gadgets = 0;
};
Doubling double_with_gadgets_mapped(const Triangulation& t0);

namespace detail {

// Faces of a crown around an outer cycle x_0 .. x_{l-1}. U_j has side 0
// running x_{j+1} -> x_j (left free for the caller), side 1 x_j -> apex_j and
// side 2 apex_j -> x_{j+1}. Around x_j, clockwise: U_j, D_{j,1..r_j}, U_{j-1}.
// D_{j,i} has side 0 glued to its clockwise predecessor, side 1 leaving x_j
// and side 2 on the inner boundary.
struct CrownFaces {
  std::vector<int> up;                 // face ids U_j
  std::vector<std::vector<int>> down;  // face ids D_{j,i}
  // Interior crown half-edges leaving x_j in clockwise order (r_j + 1 of them).
  std::vector<std::vector<int>> spokes;
};
CrownFaces add_crown_faces(ComplexBuilder& b, std::span<const Color> up_colors, std::span<const int> downs);

}  // namespace detail

}  // namespace dtutte
