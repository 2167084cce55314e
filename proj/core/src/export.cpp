#include "dtutte/export.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dtutte {

namespace {

const char* fill_of(Color c) { return c == Color::Red ? "#e8776f" : "#6f9be8"; }

std::string fixed(double x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << x;
  return os.str();
}

}  // namespace

std::string export_dot(const Triangulation& t) {
  std::ostringstream os;
  os << "graph T {\n";
  for (int v = 0; v < t.num_vertices(); ++v) os << "  v" << v << " [shape=circle];\n";
  for (int f = 0; f < t.num_faces(); ++f)
    os << "  f" << f << " [shape=box, style=filled, fillcolor=\"" << fill_of(t.color(Face(f))) << "\"];\n";
  for (int h = 0; h < t.num_half_edges(); ++h) {
    HalfEdge he(h);
    HalfEdge tw = t.twin(he);
    if (tw.valid() && tw.value < h) continue;
    os << "  v" << t.origin(he).value << " -- v" << t.head(he).value << " [label=\"e" << h << "\"];\n";
  }
  for (int f = 0; f < t.num_faces(); ++f) {
    HalfEdge h = t.face_half_edge(Face(f));
    for (int i = 0; i < 3; ++i, h = t.next(h))
      os << "  f" << f << " -- v" << t.origin(h).value << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

std::string drawing_dot(const Drawing& f, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int v = 0; v < f.graph.num_vertices; ++v)
    os << "  g" << v << " [label=\"" << v << "@" << f.vertex_map[v].value << "\"];\n";
  for (int e = 0; e < f.graph.num_edges(); ++e) {
    const auto& ed = f.graph.edges[e];
    os << "  g" << ed.u << " -> g" << ed.v << " [label=\"" << write_walk(f.edge_map[e]) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::vector<std::pair<double, double>> tutte_layout(const Triangulation& t) {
  if (t.closed()) throw DomainError("tutte_layout: the host has no boundary");
  auto cycles = t.boundary_cycles();
  if (cycles.size() > 2) throw DomainError("tutte_layout: only disks and annuli are supported");
  std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  const int n = t.num_vertices();
  std::vector<std::pair<double, double>> pos(n, {0.0, 0.0});
  std::vector<char> pinned(n, 0);
  for (size_t c = 0; c < cycles.size(); ++c) {
    // The interior lies left of every boundary half-edge: the outer cycle
    // runs counterclockwise, a hole clockwise.
    const double radius = c == 0 ? 1.0 : 0.35;
    const double dir = c == 0 ? 1.0 : -1.0;
    const double k = static_cast<double>(cycles[c].size());
    for (size_t i = 0; i < cycles[c].size(); ++i) {
      Vertex v = t.origin(cycles[c][i]);
      double a = dir * 2.0 * std::numbers::pi * static_cast<double>(i) / k;
      pos[v.value] = {radius * std::cos(a), radius * std::sin(a)};
      pinned[v.value] = 1;
    }
  }
  for (int it = 0; it < 2000; ++it) {
    double moved = 0;
    for (int v = 0; v < n; ++v) {
      if (pinned[v]) continue;
      double x = 0, y = 0;
      auto out = t.outgoing(Vertex(v));
      for (HalfEdge h : out) {
        x += pos[t.head(h).value].first;
        y += pos[t.head(h).value].second;
      }
      x /= static_cast<double>(out.size());
      y /= static_cast<double>(out.size());
      moved = std::max(moved, std::abs(x - pos[v].first) + std::abs(y - pos[v].second));
      pos[v] = {x, y};
    }
    if (moved < 1e-9) break;
  }
  return pos;
}

std::string export_svg(const Triangulation& t, const Drawing* overlay) {
  if (t.closed()) throw DomainError("export_svg: closed surfaces have no planar picture");
  auto pos = tutte_layout(t);
  const double scale = 240, off = 260;
  auto X = [&](Vertex v) { return fixed(off + scale * pos[v.value].first); };
  auto Y = [&](Vertex v) { return fixed(off - scale * pos[v.value].second); };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" viewBox=\"0 0 520 520\">\n";
  os << "<g stroke=\"#333333\" stroke-width=\"0.6\">\n";
  for (int f = 0; f < t.num_faces(); ++f) {
    HalfEdge h = t.face_half_edge(Face(f));
    os << "<polygon fill=\"" << fill_of(t.color(Face(f))) << "\" points=\"";
    for (int i = 0; i < 3; ++i, h = t.next(h)) os << (i ? " " : "") << X(t.origin(h)) << "," << Y(t.origin(h));
    os << "\"/>\n";
  }
  os << "</g>\n";
  if (overlay) {
    os << "<g fill=\"none\" stroke=\"#111111\" stroke-width=\"2.5\">\n";
    for (const Walk& w : overlay->edge_map) {
      if (w.empty()) continue;
      os << "<polyline points=\"" << X(w.start) << "," << Y(w.start);
      for (HalfEdge h : w.edges) os << " " << X(t.head(h)) << "," << Y(t.head(h));
      os << "\"/>\n";
    }
    os << "</g>\n<g fill=\"#111111\">\n";
    for (Vertex v : overlay->vertex_map) os << "<circle cx=\"" << X(v) << "\" cy=\"" << Y(v) << "\" r=\"4\"/>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::string> trace_frames(const Drawing& f, const HarmonizeOptions& opt) {
  std::vector<std::string> frames{drawing_dot(f, "frame0")};
  harmonize(f, opt, [&](const TraceEntry&, const SimplicialMap&, const SimplicialMap& after) {
    frames.push_back(drawing_dot(unfactor(after), "frame" + std::to_string(frames.size())));
  });
  return frames;
}

}  // namespace dtutte
