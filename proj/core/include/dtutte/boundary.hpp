#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dtutte/constructions.hpp"
#include "dtutte/drawing.hpp"
#include "dtutte/harmonizer.hpp"

namespace dtutte {

// Throws DomainError unless every anchored vertex sits on its boundary
// vertex, lists are duplicate free and ids are in range.
void check_anchor(const Drawing& f, const Anchor& a);

// Number of anchored vertices per host vertex.
std::vector<int> anchor_counts(const Triangulation& t, const Anchor& a);

// The host 1-skeleton with k degree-one vertices hung at every boundary
// vertex carrying k anchored vertices, and the drawing extended by one edge
// per anchored vertex onto its stem.
struct StarExtension {
  struct Stem {
    Vertex at;
    int anchored = -1;   // vertex of G
    int stub = -1;       // vertex of M*; host vertices keep their ids
    int edge = -1;       // edge of G* drawn onto the stem
    int tip = -1;        // vertex of G* drawn onto the stub
  };
  // One outgoing dart of M*: a host half-edge or a stem.
  struct Dart {
    HalfEdge edge;
    int stem = -1;
  };

  int host_vertices = 0;
  int num_vertices = 0;                  // of M*
  std::vector<Stem> stems;
  std::vector<std::vector<Dart>> rotation;  // per host vertex, clockwise
  Graph graph;                           // G*
  std::vector<int> vertex_image;         // G* vertex -> M* vertex
  std::vector<Walk> edge_walk;           // G* edge -> host walk (empty for stems)
  std::vector<int> edge_stem;            // G* edge -> stem index or -1
};

StarExtension build_star_extension(const Drawing& f, const Anchor& a);

// The closed drawing used for anchored harmonization, and everything needed
// to audit it and map it back.
struct Extension {
  std::shared_ptr<const Triangulation> closed_host;
  Triangulation with_crowns;
  Doubling doubling;
  Drawing drawing;

  int g_vertices = 0;
  int g_edges = 0;
  std::vector<int> mirror_vertex;        // G vertex -> its mirror in the closed drawing
  std::vector<int> mirror_edge;          // G edge -> its mirror
  std::vector<int> stem_edges;           // closed-drawing edges drawn onto stems
  std::vector<int> tips;
  std::vector<int> anchored;             // anchored G vertices
  std::vector<int> crown_edges;          // per host vertex: interior crown edges at it (0 inside)
  std::vector<HalfEdge> guards;          // closed-host half-edges never to be used (both directions)
  std::vector<HalfEdge> copy_of;         // host dart -> closed-host half-edge
  std::vector<HalfEdge> mirror_of;       // host dart h -> mirror half-edge running origin(h)' -> head(h)'
  std::vector<Vertex> vertex_copy;       // host vertex -> closed-host vertex
  std::vector<Vertex> vertex_mirror;
};

// Crowns with at least k+6 interior edges at every boundary vertex carrying
// k anchors, then a mirror copy and gadget doubling. The host must be a
// reducing triangulation with boundary.
Extension extend_for_harmonization(const Drawing& f, const Anchor& a);

struct RelAnchorResult {
  Drawing drawing;
  HarmonizeResult inner;
  long long stem_rewrites = 0;   // moves changing a stem image or an anchored or tip position
  long long guard_uses = 0;      // moves putting an image on a guard edge
  long long outside_moves = 0;   // moves leaving an image of G outside the host or its mirror
  bool anchors_fixed = true;
  std::vector<std::string> violations;

  bool ok() const {
    return stem_rewrites == 0 && guard_uses == 0 && outside_moves == 0 && anchors_fixed &&
           inner.status == HarmonizeStatus::Stable;
  }
};

// Harmonizes the extension and restricts back to G. With strict set, a
// violated guard or an exhausted budget throws InvariantViolation.
RelAnchorResult harmonize_rel_anchor(const Drawing& f, const Anchor& a, const HarmonizeOptions& opt = {},
                                     bool strict = true);

}  // namespace dtutte
