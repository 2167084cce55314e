#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dtutte/triangulation.hpp"
#include "dtutte/walk.hpp"

namespace dtutte {

// Multigraph; loops and parallel edges are allowed.
struct Graph {
  struct Edge {
    int u = -1;
    int v = -1;
    friend bool operator==(const Edge&, const Edge&) = default;
  };
  int num_vertices = 0;
  std::vector<Edge> edges;

  int add_vertex() { return num_vertices++; }
  int add_edge(int u, int v) {
    edges.push_back({u, v});
    return static_cast<int>(edges.size()) - 1;
  }
  int num_edges() const { return static_cast<int>(edges.size()); }
  friend bool operator==(const Graph&, const Graph&) = default;
};

// A graph drawn into the 1-skeleton of the host: vertices to vertices, edges
// to walks from the image of u to the image of v.
struct Drawing {
  std::shared_ptr<const Triangulation> host;
  Graph graph;
  std::vector<Vertex> vertex_map;
  std::vector<Walk> edge_map;
};

// Throws StructuralError on out-of-range ids or walks whose endpoints do
// not match the vertex images.
void check_drawing(const Drawing& f);
bool same_maps(const Drawing& a, const Drawing& b);

struct Lengths {
  std::vector<long long> per_edge;
  long long total = 0;
};
Lengths lengths(const Drawing& f);

// Every edge drawn as a walk of length n >= 2 becomes a path of n edges.
// Vertices 0..|V(G)|-1 are the original ones; subdivision vertices follow in
// edge order and remember (edge, index).
struct SimplicialMap {
  struct Edge {
    int u = -1;
    int v = -1;
    HalfEdge image;  // invalid when the edge is constant; else runs position[u] -> position[v]
    int source_edge = -1;
    int index = 0;  // position along the source edge's path
    bool constant() const { return !image.valid(); }
  };
  struct Provenance {
    int source_vertex = -1;  // set for original vertices
    int source_edge = -1;    // set for subdivision vertices
    int index = -1;
  };

  std::shared_ptr<const Triangulation> host;
  Graph source;
  std::vector<Vertex> position;
  std::vector<Edge> edges;
  std::vector<Provenance> provenance;
  std::vector<std::vector<int>> edge_path;  // per source edge, its edges in order

  int num_vertices() const { return static_cast<int>(position.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  // Per source edge: number of non-constant edges on its path.
  Lengths lengths() const;
  friend bool operator==(const SimplicialMap& a, const SimplicialMap& b);
};

SimplicialMap factor_simplicial(const Drawing& f);
// Concatenates the non-constant images along every path.
Drawing unfactor(const SimplicialMap& s);

// Clusters of a simplicial map: maximal connected sets of vertices joined by
// constant edges.
struct ClusterPartition {
  std::vector<int> cluster_of;               // per vertex of the simplicial map
  std::vector<std::vector<int>> clusters;    // members, ascending; clusters ordered by smallest member
  std::vector<char> spur;                    // per cluster
  std::vector<HalfEdge> spur_edge;           // common outgoing directed edge when spur
};
ClusterPartition clusters_and_spurs(const SimplicialMap& s);

// Clusters contracted: every edge maps to exactly one host edge.
struct Homomorphism {
  struct Edge {
    int u = -1;
    int v = -1;
    HalfEdge image;  // runs position[u] -> position[v]
    int bar_edge = -1;
  };
  // One end of an edge seen from a vertex.
  struct Incidence {
    int edge = -1;
    HalfEdge out;     // leaves the vertex's position along the edge
    int other = -1;   // vertex at the far end
    bool at_u = true; // this vertex is the edge's u end
  };

  std::vector<int> cluster_of;               // simplicial vertex -> vertex
  std::vector<int> rep;                      // vertex -> smallest simplicial vertex of its cluster
  std::vector<std::vector<int>> members;
  std::vector<Vertex> position;
  std::vector<Edge> edges;
  std::vector<std::vector<Incidence>> incidence;

  int num_vertices() const { return static_cast<int>(position.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  // Vertex whose representative is r, or -1.
  int vertex_of_rep(int r) const;
};

// The host must be closed (every image edge needs both directions).
Homomorphism factor_homomorphism(const SimplicialMap& s);
// Pushes vertex images and edge images of h back onto the shape of s.
SimplicialMap expand(const Homomorphism& h, const SimplicialMap& s);

// Ordered G-vertices sitting on one boundary vertex of the host.
struct AnchorList {
  Vertex at;
  std::vector<int> order;
};
using Anchor = std::vector<AnchorList>;

// DRW v1: `vertex <gid> at <tid>`, `edge <gid> <u> <v> walk=<he,...|->`,
// `anchor <tid> order=<gid,...>`.
std::string write_drw(const Drawing& f, const Anchor& anchors = {});
std::pair<Drawing, Anchor> read_drw(std::istream& in, std::shared_ptr<const Triangulation> host);
std::pair<Drawing, Anchor> parse_drw(const std::string& text, std::shared_ptr<const Triangulation> host);

}  // namespace dtutte
