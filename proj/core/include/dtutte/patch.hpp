#pragma once

#include <cstdint>
#include <vector>

#include "dtutte/triangulation.hpp"

namespace dtutte {

// A randomly grown triangulated disk with alternating face colors. Every
// vertex at distance <= complete_radius from the center is interior.
struct PlanePatch {
  Triangulation surface;
  Vertex center{0};
  std::vector<int> dist;  // distance to the center, per vertex
  int complete_radius = 0;
};

// Interior degrees are drawn uniformly from `degrees` (values must be even
// and >= 6) among those not smaller than the degree a vertex already has.
PlanePatch generate_plane_patch(int complete_radius, uint64_t seed, const std::vector<int>& degrees = {6, 8});

// Faces of t with keep[f] != 0, glued wherever they were glued in t.
// half_edge_map, when given, receives the new id of every kept half-edge.
Triangulation sub_complex(const Triangulation& t, const std::vector<char>& keep,
                          std::vector<HalfEdge>* half_edge_map = nullptr);

// The patch minus the open star of its center: an annulus.
Triangulation annulus_from_patch(const PlanePatch& p);

}  // namespace dtutte
