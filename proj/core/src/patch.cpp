#include "dtutte/patch.hpp"

#include <random>

#include "disk_grower.hpp"

namespace dtutte {

PlanePatch generate_plane_patch(int complete_radius, uint64_t seed, const std::vector<int>& degrees) {
  if (degrees.empty()) throw DomainError("generate_plane_patch: no degree choices");
  for (int d : degrees)
    if (d < 6 || d % 2 != 0) throw DomainError("generate_plane_patch: degrees must be even and at least 6");
  std::mt19937_64 rng(seed);
  auto pick = [&](int at_least) {
    std::vector<int> ok;
    for (int d : degrees)
      if (d >= at_least) ok.push_back(d);
    if (ok.empty()) return at_least + at_least % 2;
    return ok[std::uniform_int_distribution<size_t>(0, ok.size() - 1)(rng)];
  };
  Color first = rng() % 2 ? Color::Blue : Color::Red;
  detail::DiskGrower g(pick(0), first);
  while (true) {
    int v = g.next_incomplete();
    if (v < 0 || g.dist(v) > complete_radius) break;
    g.complete_vertex(v, pick(g.degree(v)));
  }
  PlanePatch p{g.snapshot(), Vertex(0), {}, complete_radius};
  for (int v = 0; v < g.num_vertices(); ++v) p.dist.push_back(g.dist(v));
  return p;
}

Triangulation sub_complex(const Triangulation& t, const std::vector<char>& keep, std::vector<HalfEdge>* half_edge_map) {
  ComplexBuilder b;
  std::vector<int> map(t.num_half_edges(), -1);
  for (int f = 0; f < t.num_faces(); ++f) {
    if (!keep[f]) continue;
    HalfEdge s0 = t.face_half_edge(Face(f));
    HalfEdge s[3] = {s0, t.next(s0), t.prev(s0)};
    int F = b.add_face(t.color(Face(f)));
    for (int i = 0; i < 3; ++i) map[s[i].value] = ComplexBuilder::side(F, i);
  }
  for (int h = 0; h < t.num_half_edges(); ++h) {
    HalfEdge tw = t.twin(HalfEdge(h));
    if (!tw.valid() || tw.value < h || map[h] < 0 || map[tw.value] < 0) continue;
    b.glue(map[h], map[tw.value]);
  }
  if (half_edge_map) {
    half_edge_map->assign(t.num_half_edges(), HalfEdge{});
    for (int h = 0; h < t.num_half_edges(); ++h)
      if (map[h] >= 0) (*half_edge_map)[h] = HalfEdge(map[h]);
  }
  return b.build();
}

Triangulation annulus_from_patch(const PlanePatch& p) {
  const Triangulation& t = p.surface;
  std::vector<char> keep(t.num_faces(), 1);
  for (HalfEdge h : t.outgoing(p.center)) keep[t.face(h).value] = 0;
  return sub_complex(t, keep);
}

}  // namespace dtutte
