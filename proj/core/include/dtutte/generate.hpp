#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "dtutte/drawing.hpp"

namespace dtutte {

// Uniformly random walk of the given length; at a boundary vertex every
// outgoing half-edge is a candidate as well.
Walk random_walk(const Triangulation& t, Vertex from, int length, std::mt19937_64& rng);
// A shortest walk from `from` to `to` (breadth first, lowest half-edge ids
// first). Throws DomainError when `to` is unreachable.
Walk shortest_walk(const Triangulation& t, Vertex from, Vertex to);

struct RandomDrawingOptions {
  int max_edges = 40;
  int max_walk = 10;
  int start_vertices = 0;  // 0 picks between 1 and max_edges / 4 + 1
};

// Random multigraph drawn by random walks; every edge has a walk of length
// at most max_walk. Deterministic for a given seed.
Drawing random_drawing(std::shared_ptr<const Triangulation> host, uint64_t seed, const RandomDrawingOptions& opt = {});

struct AnchoredInstance {
  Drawing drawing;
  Anchor anchor;
};

// Star drawing on a host with boundary: one interior hub, branches to one or
// two anchored vertices at each of `sites` boundary vertices and a few free
// leaves, all along one breadth-first tree, then null-homotopic detours. The
// result is homotopic to an embedding relative to its anchors.
AnchoredInstance random_anchored_drawing(std::shared_ptr<const Triangulation> host, uint64_t seed, int sites = 2);

}  // namespace dtutte
