#pragma once

#include <string>
#include <vector>

#include "dtutte/drawing.hpp"
#include "dtutte/harmonizer.hpp"

namespace dtutte {

// Undirected DOT graph with one node per vertex, one filled node per face
// (named f<id>) joined to its corners, and one edge per host edge.
std::string export_dot(const Triangulation& t);

// DOT digraph of a drawing: nodes are G vertices labeled with their host
// vertex, edges are labeled with their walks.
std::string drawing_dot(const Drawing& f, const std::string& name = "drawing");

// Planar picture of a disk or annulus host with an optional drawing on top.
// Boundary cycles are pinned to circles and interior vertices are placed by
// Tutte's barycentric method. Throws DomainError for closed hosts.
std::string export_svg(const Triangulation& t, const Drawing* overlay = nullptr);

// Tutte coordinates used by export_svg, per vertex.
std::vector<std::pair<double, double>> tutte_layout(const Triangulation& t);

// Harmonizes f and returns one drawing_dot frame before the first move and
// one after every move.
std::vector<std::string> trace_frames(const Drawing& f, const HarmonizeOptions& opt = {});

}  // namespace dtutte
