#include <doctest.h>

#include <algorithm>

#include "dtutte/boundary.hpp"
#include "dtutte/constructions.hpp"
#include "dtutte/generate.hpp"
#include "dtutte/patch.hpp"
#include "oracles.hpp"

using namespace dtutte;

namespace {

std::shared_ptr<const Triangulation> disk() {
  static auto t = std::make_shared<const Triangulation>(generate_plane_patch(2, 31).surface);
  return t;
}

std::vector<Vertex> boundary_vertices(const Triangulation& t) {
  std::vector<Vertex> out;
  for (int v = 0; v < t.num_vertices(); ++v)
    if (t.on_boundary(Vertex(v))) out.push_back(Vertex(v));
  return out;
}

// Single edge between two boundary vertices, both ends anchored.
AnchoredInstance anchored_path(std::shared_ptr<const Triangulation> host, Vertex p, Vertex q) {
  AnchoredInstance inst;
  Drawing& f = inst.drawing;
  f.host = host;
  f.graph.add_vertex();
  f.graph.add_vertex();
  f.vertex_map = {p, q};
  f.graph.add_edge(0, 1);
  f.edge_map.push_back(shortest_walk(*host, p, q));
  inst.anchor = {AnchorList{p, {0}}, AnchorList{q, {1}}};
  return inst;
}

}  // namespace

TEST_CASE("anchor checks") {
  auto host = disk();
  auto bv = boundary_vertices(*host);
  AnchoredInstance inst = anchored_path(host, bv[0], bv[bv.size() / 2]);
  CHECK_NOTHROW(check_anchor(inst.drawing, inst.anchor));
  Anchor dup = {AnchorList{bv[0], {0, 0}}};
  CHECK_THROWS_AS(check_anchor(inst.drawing, dup), DomainError);
  Anchor wrong = {AnchorList{bv[0], {1}}};
  CHECK_THROWS_AS(check_anchor(inst.drawing, wrong), DomainError);
  Drawing inner = inst.drawing;
  inner.vertex_map[0] = Vertex(0);
  inner.edge_map[0] = shortest_walk(*host, Vertex(0), inner.vertex_map[1]);
  CHECK_FALSE(host->on_boundary(Vertex(0)));
  CHECK_THROWS_AS(check_anchor(inner, {AnchorList{Vertex(0), {0}}}), DomainError);
  CHECK(anchor_counts(*host, inst.anchor)[bv[0].value] == 1);
}

TEST_CASE("star extension") {
  auto host = disk();
  const Triangulation& t = *host;
  auto bv = boundary_vertices(t);
  SUBCASE("no anchors, nothing added") {
    AnchoredInstance inst = anchored_path(host, bv[0], bv[3]);
    StarExtension s = build_star_extension(inst.drawing, {});
    CHECK(s.stems.empty());
    CHECK(s.num_vertices == t.num_vertices());
    CHECK(s.graph == inst.drawing.graph);
  }
  SUBCASE("two anchors at one corner become consecutive stems in list order") {
    Drawing f;
    f.host = host;
    for (int i = 0; i < 3; ++i) {
      f.graph.add_vertex();
      f.vertex_map.push_back(bv[0]);
    }
    f.graph.add_edge(0, 2);
    f.edge_map.push_back(Walk{bv[0], {}, false});
    Anchor a = {AnchorList{bv[0], {1, 0}}};
    StarExtension s = build_star_extension(f, a);
    REQUIRE(s.stems.size() == 2);
    CHECK(s.num_vertices == t.num_vertices() + 2);
    CHECK(s.graph.num_vertices == f.graph.num_vertices + 2);
    CHECK(s.graph.num_edges() == f.graph.num_edges() + 2);
    const auto& rot = s.rotation[bv[0].value];
    std::vector<int> stem_slots;
    for (size_t i = 0; i < rot.size(); ++i)
      if (rot[i].stem >= 0) stem_slots.push_back(static_cast<int>(i));
    REQUIRE(stem_slots.size() == 2);
    CHECK(stem_slots[1] == stem_slots[0] + 1);
    CHECK(s.stems[rot[stem_slots[0]].stem].anchored == 1);
    CHECK(s.stems[rot[stem_slots[1]].stem].anchored == 0);
    // Host darts keep their order around the vertex.
    std::vector<HalfEdge> host_order;
    for (const auto& d : rot)
      if (d.stem < 0) host_order.push_back(d.edge);
    auto out = t.outgoing(bv[0]);
    CHECK(host_order == std::vector<HalfEdge>(out.begin(), out.end()));
    for (const auto& st : s.stems) {
      CHECK(st.at == bv[0]);
      CHECK(s.edge_stem[st.edge] >= 0);
      CHECK(s.edge_walk[st.edge].empty());
      CHECK(s.vertex_image[st.tip] == st.stub);
    }
  }
}

TEST_CASE("extension for harmonization") {
  auto host = disk();
  auto bv = boundary_vertices(*host);
  AnchoredInstance inst = anchored_path(host, bv[0], bv[bv.size() / 2]);
  Extension ext = extend_for_harmonization(inst.drawing, inst.anchor);
  const Triangulation& c = *ext.closed_host;
  CHECK(c.closed());
  CHECK(validate_reducing(c).ok);
  CHECK(validate_reducing(ext.with_crowns).ok);
  CHECK(c.euler_characteristic() == oracle::euler_by_counting(c));
  // Crowns are annuli glued along whole cycles; doubling then adds one gadget per boundary edge.
  CHECK(ext.with_crowns.euler_characteristic() == host->euler_characteristic());
  const int gadget_chi = build_three_gadget().euler_characteristic();
  CHECK(c.euler_characteristic() ==
        2 * ext.with_crowns.euler_characteristic() + ext.with_crowns.num_boundary_half_edges() * (gadget_chi - 1));
  CHECK(ext.doubling.gadgets == ext.with_crowns.num_boundary_half_edges());

  auto counts = anchor_counts(*host, inst.anchor);
  for (Vertex v : bv) CHECK(ext.crown_edges[v.value] >= counts[v.value] + 6);
  CHECK(ext.crown_edges[bv[0].value] >= 7);
  CHECK(ext.guards.size() >= 6 * inst.anchor.size());

  // Mirror symmetry before any move.
  const Drawing& d = ext.drawing;
  for (int v = 0; v < inst.drawing.graph.num_vertices; ++v) {
    CHECK(d.vertex_map[v] == ext.vertex_copy[inst.drawing.vertex_map[v].value]);
    CHECK(d.vertex_map[ext.mirror_vertex[v]] == ext.vertex_mirror[inst.drawing.vertex_map[v].value]);
  }
  for (int e = 0; e < inst.drawing.graph.num_edges(); ++e) {
    const Walk& w = inst.drawing.edge_map[e];
    const Walk& copy = d.edge_map[e];
    const Walk& mirror = d.edge_map[ext.mirror_edge[e]];
    REQUIRE(copy.length() == w.length());
    REQUIRE(mirror.length() == w.length());
    for (size_t i = 0; i < w.length(); ++i) {
      CHECK(copy.edges[i] == ext.copy_of[w.edges[i].value]);
      CHECK(mirror.edges[i] == ext.mirror_of[w.edges[i].value]);
      // Reflection moves the right face to the left and the colors are swapped, so left colors agree.
      CHECK(c.left_color(copy.edges[i]) == c.left_color(mirror.edges[i]));
    }
  }
  for (int e : ext.stem_edges) CHECK(d.edge_map[e].length() == 1);

  Drawing closed = inst.drawing;
  closed.host = std::make_shared<const Triangulation>(build_torus());
  closed.vertex_map = {Vertex(0), Vertex(0)};
  closed.edge_map = {Walk{Vertex(0), {}, false}};
  CHECK_THROWS_AS(extend_for_harmonization(closed, {}), DomainError);
}

TEST_CASE("anchored harmonization") {
  SUBCASE("a path pinned at both ends") {
    auto host = disk();
    auto bv = boundary_vertices(*host);
    AnchoredInstance inst = anchored_path(host, bv[1], bv[bv.size() / 2 + 1]);
    // Make the path long and winding first.
    Walk w = inst.drawing.edge_map[0];
    const Triangulation& t = *host;
    Walk detour = shortest_walk(t, bv[1], Vertex(0));
    Walk home = reversed(t, detour);
    w.edges.insert(w.edges.begin(), home.edges.begin(), home.edges.end());
    w.edges.insert(w.edges.begin(), detour.edges.begin(), detour.edges.end());
    inst.drawing.edge_map[0] = w;
    RelAnchorResult r = harmonize_rel_anchor(inst.drawing, inst.anchor);
    CHECK(r.ok());
    CHECK(r.stem_rewrites == 0);
    CHECK(r.guard_uses == 0);
    CHECK(r.outside_moves == 0);
    CHECK(r.anchors_fixed);
    CHECK(r.drawing.vertex_map == inst.drawing.vertex_map);
    CHECK(lengths(r.drawing).total < lengths(inst.drawing).total);
    CHECK(r.inner.moves > 0);
  }
  SUBCASE("no anchors") {
    auto host = disk();
    AnchoredInstance inst = random_anchored_drawing(host, 3, 1);
    RelAnchorResult r = harmonize_rel_anchor(inst.drawing, {});
    CHECK(r.ok());
    auto before = lengths(inst.drawing).per_edge, after = lengths(r.drawing).per_edge;
    for (size_t e = 0; e < before.size(); ++e) CHECK(after[e] <= before[e]);
  }
  SUBCASE("random star instances on disks and annuli") {
    for (uint64_t seed = 1; seed <= 4; ++seed) {
      PlanePatch p = generate_plane_patch(2, 50 + seed);
      auto host = std::make_shared<const Triangulation>(seed % 2 ? annulus_from_patch(p) : p.surface);
      AnchoredInstance inst = random_anchored_drawing(host, seed, 2);
      RelAnchorResult r = harmonize_rel_anchor(inst.drawing, inst.anchor, {}, false);
      CHECK(r.ok());
      for (const auto& v : r.violations) MESSAGE(v);
      for (const auto& list : inst.anchor)
        for (int v : list.order) CHECK(r.drawing.vertex_map[v] == list.at);
      auto before = lengths(inst.drawing).per_edge, after = lengths(r.drawing).per_edge;
      for (size_t e = 0; e < before.size(); ++e) CHECK(after[e] <= before[e]);
    }
  }
}
