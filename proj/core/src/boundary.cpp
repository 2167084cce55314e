#include "dtutte/boundary.hpp"

#include <algorithm>
#include <set>

namespace dtutte {

void check_anchor(const Drawing& f, const Anchor& a) {
  const Triangulation& t = *f.host;
  std::set<int> seen;
  std::set<int> sites;
  for (const auto& list : a) {
    if (!list.at.valid() || list.at.value >= t.num_vertices()) throw DomainError("anchor: host vertex out of range");
    if (!t.on_boundary(list.at))
      throw DomainError("anchor: host vertex " + std::to_string(list.at.value) + " is not on the boundary");
    if (!sites.insert(list.at.value).second)
      throw DomainError("anchor: two lists for host vertex " + std::to_string(list.at.value));
    for (int v : list.order) {
      if (v < 0 || v >= f.graph.num_vertices) throw DomainError("anchor: vertex out of range");
      if (!seen.insert(v).second) throw DomainError("anchor: vertex " + std::to_string(v) + " listed twice");
      if (f.vertex_map[v] != list.at)
        throw DomainError("anchor: vertex " + std::to_string(v) + " is not drawn on its anchor");
    }
  }
}

std::vector<int> anchor_counts(const Triangulation& t, const Anchor& a) {
  std::vector<int> k(t.num_vertices(), 0);
  for (const auto& list : a) k[list.at.value] += static_cast<int>(list.order.size());
  return k;
}

StarExtension build_star_extension(const Drawing& f, const Anchor& a) {
  check_drawing(f);
  const Triangulation& t = *f.host;
  if (t.closed()) throw DomainError("star extension: the host has no boundary");
  check_anchor(f, a);
  StarExtension x;
  x.host_vertices = t.num_vertices();
  x.num_vertices = t.num_vertices();
  x.graph = f.graph;
  for (Vertex v : f.vertex_map) x.vertex_image.push_back(v.value);
  x.edge_walk = f.edge_map;
  x.edge_stem.assign(f.graph.num_edges(), -1);
  x.rotation.resize(t.num_vertices());
  for (int v = 0; v < t.num_vertices(); ++v)
    for (HalfEdge h : t.outgoing(Vertex(v))) x.rotation[v].push_back({h, -1});
  // Sorted by host vertex so the output does not depend on list order.
  Anchor sorted = a;
  std::sort(sorted.begin(), sorted.end(), [](const auto& p, const auto& q) { return p.at < q.at; });
  for (const auto& list : sorted) {
    // The outgoing boundary half-edge closes the clockwise order; stems follow it.
    for (int g : list.order) {
      StarExtension::Stem s;
      s.at = list.at;
      s.anchored = g;
      s.stub = x.num_vertices++;
      s.tip = x.graph.add_vertex();
      s.edge = x.graph.add_edge(g, s.tip);
      x.vertex_image.push_back(s.stub);
      x.edge_walk.push_back(Walk{list.at, {}, false});
      x.edge_stem.push_back(static_cast<int>(x.stems.size()));
      x.rotation[list.at.value].push_back({HalfEdge{}, static_cast<int>(x.stems.size())});
      x.stems.push_back(s);
    }
  }
  return x;
}

Extension extend_for_harmonization(const Drawing& f, const Anchor& a) {
  check_drawing(f);
  const Triangulation& t = *f.host;
  if (t.closed()) throw DomainError("extend_for_harmonization: the host has no boundary");
  if (!validate_reducing(t).ok) throw DomainError("extend_for_harmonization: the host is not reducing");
  check_anchor(f, a);
  const std::vector<int> k = anchor_counts(t, a);

  Extension ext;
  ComplexBuilder b;
  auto base = b.append(t);
  std::vector<std::vector<int>> spokes_at(t.num_vertices());
  for (const auto& cycle : t.boundary_cycles()) {
    const int l = static_cast<int>(cycle.size());
    std::vector<Color> up(l);
    for (int j = 0; j < l; ++j) up[j] = opposite(t.left_color(cycle[j]));
    std::vector<int> downs(l);
    for (int j = 0; j < l; ++j) {
      // The fan U_j, D_1..D_r, U_{j-1} alternates colors: r odd iff the
      // two up faces agree.
      int r = k[t.origin(cycle[j]).value] + 5;
      bool same = up[j] == up[(j + l - 1) % l];
      if ((r % 2 == 1) != same) ++r;
      downs[j] = r;
    }
    auto cf = detail::add_crown_faces(b, up, downs);
    for (int j = 0; j < l; ++j) {
      b.glue(base[cycle[j].value], ComplexBuilder::side(cf.up[j], 0));
      spokes_at[t.origin(cycle[j]).value] = cf.spokes[j];
    }
  }
  ext.with_crowns = b.build();
  ext.doubling = double_with_gadgets_mapped(ext.with_crowns);
  ext.closed_host = std::make_shared<const Triangulation>(ext.doubling.surface);
  const Triangulation& c = *ext.closed_host;
  const auto& copy = ext.doubling.copy;
  const auto& mirror = ext.doubling.mirror;

  for (int h = 0; h < t.num_half_edges(); ++h) {
    ext.copy_of.push_back(copy[base[h]]);
    HalfEdge m = mirror[base[h]];
    ext.mirror_of.push_back(c.twin(m));
  }
  // Boundary edges run backwards into the crown side of the closed host.
  for (int d = t.num_half_edges(); d < t.num_darts(); ++d) {
    HalfEdge h = t.reverse(HalfEdge(d));
    ext.copy_of.push_back(c.twin(ext.copy_of[h.value]));
    ext.mirror_of.push_back(c.twin(ext.mirror_of[h.value]));
  }
  ext.vertex_copy.assign(t.num_vertices(), Vertex{});
  ext.vertex_mirror.assign(t.num_vertices(), Vertex{});
  for (int h = 0; h < t.num_half_edges(); ++h) {
    Vertex o = t.origin(HalfEdge(h));
    ext.vertex_copy[o.value] = c.origin(copy[base[h]]);
    ext.vertex_mirror[o.value] = c.head(mirror[base[h]]);
  }
  ext.crown_edges.assign(t.num_vertices(), 0);
  for (int v = 0; v < t.num_vertices(); ++v) ext.crown_edges[v] = static_cast<int>(spokes_at[v].size());

  // f on the copy, then stems, then the mirror sharing the tips.
  Drawing& g = ext.drawing;
  g.host = ext.closed_host;
  ext.g_vertices = f.graph.num_vertices;
  ext.g_edges = f.graph.num_edges();
  for (int v = 0; v < f.graph.num_vertices; ++v) {
    g.graph.add_vertex();
    g.vertex_map.push_back(ext.vertex_copy[f.vertex_map[v].value]);
  }
  for (int e = 0; e < f.graph.num_edges(); ++e) {
    g.graph.add_edge(f.graph.edges[e].u, f.graph.edges[e].v);
    Walk w{g.vertex_map[f.graph.edges[e].u], {}, false};
    for (HalfEdge h : f.edge_map[e].edges) w.edges.push_back(ext.copy_of[h.value]);
    g.edge_map.push_back(std::move(w));
  }
  struct PendingStem {
    int anchored;
    int tip;
    int spoke;  // builder id of the crown half-edge
  };
  std::vector<PendingStem> stems;
  Anchor sorted = a;
  std::sort(sorted.begin(), sorted.end(), [](const auto& p, const auto& q) { return p.at < q.at; });
  for (const auto& list : sorted) {
    const auto& sp = spokes_at[list.at.value];
    for (size_t i = 0; i < list.order.size(); ++i) {
      int tip = g.graph.add_vertex();
      int spoke = sp[i + 3];  // e_{i+4} in 1-based terms for the (i+1)-th anchor
      HalfEdge img = copy[spoke];
      g.vertex_map.push_back(c.head(img));
      int e = g.graph.add_edge(list.order[i], tip);
      g.edge_map.push_back(Walk{g.vertex_map[list.order[i]], {img}, false});
      ext.stem_edges.push_back(e);
      ext.tips.push_back(tip);
      ext.anchored.push_back(list.order[i]);
      stems.push_back({list.order[i], tip, spoke});
    }
  }
  for (int v = 0; v < f.graph.num_vertices; ++v) {
    ext.mirror_vertex.push_back(g.graph.add_vertex());
    g.vertex_map.push_back(ext.vertex_mirror[f.vertex_map[v].value]);
  }
  for (int e = 0; e < f.graph.num_edges(); ++e) {
    int u = ext.mirror_vertex[f.graph.edges[e].u], v = ext.mirror_vertex[f.graph.edges[e].v];
    ext.mirror_edge.push_back(g.graph.add_edge(u, v));
    Walk w{g.vertex_map[u], {}, false};
    for (HalfEdge h : f.edge_map[e].edges) w.edges.push_back(ext.mirror_of[h.value]);
    g.edge_map.push_back(std::move(w));
  }
  for (const auto& s : stems) {
    HalfEdge img = c.twin(mirror[s.spoke]);
    if (c.head(img) != g.vertex_map[s.tip]) throw InvariantViolation("extension: mirrored stem misses its tip");
    int e = g.graph.add_edge(ext.mirror_vertex[s.anchored], s.tip);
    g.edge_map.push_back(Walk{g.vertex_map[ext.mirror_vertex[s.anchored]], {img}, false});
    ext.stem_edges.push_back(e);
  }

  // First three and last three crown edges at every boundary vertex.
  for (int v = 0; v < t.num_vertices(); ++v) {
    const auto& sp = spokes_at[v];
    const int n = static_cast<int>(sp.size());
    for (int i = 0; i < n; ++i) {
      if (i >= 3 && i < n - 3) continue;
      for (HalfEdge h : {copy[sp[i]], c.twin(copy[sp[i]]), mirror[sp[i]], c.twin(mirror[sp[i]])})
        if (h.valid()) ext.guards.push_back(h);
    }
  }
  std::sort(ext.guards.begin(), ext.guards.end());
  ext.guards.erase(std::unique(ext.guards.begin(), ext.guards.end()), ext.guards.end());
  check_drawing(g);
  return ext;
}

RelAnchorResult harmonize_rel_anchor(const Drawing& f, const Anchor& a, const HarmonizeOptions& opt, bool strict) {
  Extension ext = extend_for_harmonization(f, a);
  const Triangulation& t = *f.host;
  const Triangulation& c = *ext.closed_host;
  RelAnchorResult res;

  std::vector<char> guard(c.num_half_edges(), 0), flat(c.num_half_edges(), 0);
  for (HalfEdge h : ext.guards) guard[h.value] = 1;
  std::vector<HalfEdge> back(c.num_half_edges());
  for (int h = 0; h < t.num_darts(); ++h) {
    flat[ext.copy_of[h].value] = 1;
    flat[ext.mirror_of[h].value] = 1;
    back[ext.copy_of[h].value] = HalfEdge(h);
  }
  SimplicialMap s = factor_simplicial(ext.drawing);
  std::vector<char> is_stem(ext.drawing.graph.num_edges(), 0);
  for (int e : ext.stem_edges) is_stem[e] = 1;
  std::vector<int> pinned = ext.tips;
  pinned.insert(pinned.end(), ext.anchored.begin(), ext.anchored.end());
  for (int v : ext.anchored) pinned.push_back(ext.mirror_vertex[v]);

  long long moves = 0;
  auto observer = [&](const TraceEntry& e, const SimplicialMap& before, const SimplicialMap& after) {
    bool stem = false, guarded = false, outside = false;
    for (int v : pinned) stem |= before.position[v] != after.position[v];
    for (int i = 0; i < after.num_edges(); ++i) {
      const auto& x = after.edges[i];
      if (x.image == before.edges[i].image) continue;
      if (is_stem[x.source_edge]) stem = true;
      if (x.constant()) continue;
      if (guard[x.image.value]) guarded = true;
      if (!is_stem[x.source_edge] && !flat[x.image.value]) outside = true;
    }
    const std::string where = "move " + std::to_string(moves++) + " (" + to_string(e.kind) + ")";
    if (stem) {
      ++res.stem_rewrites;
      res.violations.push_back(where + " rewrites a stem");
    }
    if (guarded) {
      ++res.guard_uses;
      res.violations.push_back(where + " uses a guard edge");
    }
    if (outside) {
      ++res.outside_moves;
      res.violations.push_back(where + " leaves the host and its mirror");
    }
  };
  res.inner = harmonize(s, opt, observer);

  // Restrict to the copy of G.
  const SimplicialMap& out = res.inner.map;
  Drawing& d = res.drawing;
  d.host = f.host;
  d.graph = f.graph;
  std::vector<Vertex> vertex_back(c.num_vertices());
  for (int v = 0; v < t.num_vertices(); ++v) vertex_back[ext.vertex_copy[v].value] = Vertex(v);
  bool restricted = true;
  for (int v = 0; v < f.graph.num_vertices; ++v) {
    d.vertex_map.push_back(vertex_back[out.position[v].value]);
    if (!d.vertex_map.back().valid()) restricted = false;
  }
  for (const auto& list : a)
    for (int v : list.order)
      if (out.position[v] != ext.vertex_copy[list.at.value]) res.anchors_fixed = false;
  for (int e = 0; e < f.graph.num_edges(); ++e) {
    Walk w{d.vertex_map[f.graph.edges[e].u], {}, false};
    for (int be : out.edge_path[e]) {
      HalfEdge h = out.edges[be].image;
      if (!h.valid()) continue;
      if (!back[h.value].valid()) {
        restricted = false;
        break;
      }
      w.edges.push_back(back[h.value]);
    }
    d.edge_map.push_back(std::move(w));
  }
  if (!restricted) res.violations.push_back("final drawing of G leaves the host");
  if (!res.anchors_fixed) res.violations.push_back("an anchored vertex moved");
  if (res.inner.status != HarmonizeStatus::Stable) res.violations.push_back("move budget exhausted");
  if (restricted) check_drawing(d);
  if (strict && (!res.ok() || !restricted)) {
    std::string msg = "anchored harmonization failed";
    if (!res.violations.empty()) msg += ": " + res.violations.front();
    throw InvariantViolation(msg);
  }
  if (!restricted) ++res.outside_moves;
  return res;
}

}  // namespace dtutte
