#include "dtutte/drawing.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "text_util.hpp"

namespace dtutte {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

void check_drawing(const Drawing& f) {
  if (!f.host) throw StructuralError("drawing has no host");
  const Triangulation& t = *f.host;
  if (static_cast<int>(f.vertex_map.size()) != f.graph.num_vertices)
    throw StructuralError("vertex map size does not match the graph");
  if (static_cast<int>(f.edge_map.size()) != f.graph.num_edges())
    throw StructuralError("edge map size does not match the graph");
  for (int v = 0; v < f.graph.num_vertices; ++v)
    if (f.vertex_map[v].value < 0 || f.vertex_map[v].value >= t.num_vertices())
      throw StructuralError("vertex " + std::to_string(v) + " mapped out of range");
  for (int e = 0; e < f.graph.num_edges(); ++e) {
    auto [u, v] = f.graph.edges[e];
    if (u < 0 || u >= f.graph.num_vertices || v < 0 || v >= f.graph.num_vertices)
      throw StructuralError("edge " + std::to_string(e) + " has an endpoint out of range");
    const Walk& w = f.edge_map[e];
    if (w.closed) throw StructuralError("edge " + std::to_string(e) + " is drawn as a closed walk");
    check_walk(t, w);
    if (w.start != f.vertex_map[u] || walk_end(t, w) != f.vertex_map[v])
      throw StructuralError("edge " + std::to_string(e) + ": walk endpoints do not match its vertices");
  }
}

bool same_maps(const Drawing& a, const Drawing& b) {
  return a.graph == b.graph && a.vertex_map == b.vertex_map && a.edge_map == b.edge_map;
}

Lengths lengths(const Drawing& f) {
  Lengths l;
  for (const Walk& w : f.edge_map) {
    l.per_edge.push_back(static_cast<long long>(w.length()));
    l.total += static_cast<long long>(w.length());
  }
  return l;
}

Lengths SimplicialMap::lengths() const {
  Lengths l;
  for (const auto& path : edge_path) {
    long long n = 0;
    for (int e : path) n += edges[e].constant() ? 0 : 1;
    l.per_edge.push_back(n);
    l.total += n;
  }
  return l;
}

bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
  if (a.source != b.source || a.position != b.position || a.edge_path != b.edge_path) return false;
  if (a.edges.size() != b.edges.size()) return false;
  for (size_t i = 0; i < a.edges.size(); ++i) {
    const auto &x = a.edges[i], &y = b.edges[i];
    if (x.u != y.u || x.v != y.v || x.image != y.image || x.source_edge != y.source_edge || x.index != y.index)
      return false;
  }
  return true;
}

SimplicialMap factor_simplicial(const Drawing& f) {
  check_drawing(f);
  const Triangulation& t = *f.host;
  SimplicialMap s;
  s.host = f.host;
  s.source = f.graph;
  s.position = f.vertex_map;
  for (int v = 0; v < f.graph.num_vertices; ++v) s.provenance.push_back({v, -1, -1});
  s.edge_path.resize(f.graph.num_edges());
  for (int e = 0; e < f.graph.num_edges(); ++e) {
    auto [u, v] = f.graph.edges[e];
    const Walk& w = f.edge_map[e];
    const int n = static_cast<int>(w.length());
    if (n <= 1) {
      s.edge_path[e].push_back(s.num_edges());
      s.edges.push_back({u, v, n == 1 ? w.edges[0] : HalfEdge{}, e, 0});
      continue;
    }
    int prev = u;
    for (int i = 0; i < n; ++i) {
      int next;
      if (i + 1 == n) {
        next = v;
      } else {
        next = s.num_vertices();
        s.position.push_back(t.head(w.edges[i]));
        s.provenance.push_back({-1, e, i + 1});
      }
      s.edge_path[e].push_back(s.num_edges());
      s.edges.push_back({prev, next, w.edges[i], e, i});
      prev = next;
    }
  }
  return s;
}

Drawing unfactor(const SimplicialMap& s) {
  Drawing f;
  f.host = s.host;
  f.graph = s.source;
  f.vertex_map.assign(s.position.begin(), s.position.begin() + s.source.num_vertices);
  for (int e = 0; e < s.source.num_edges(); ++e) {
    Walk w{f.vertex_map[s.source.edges[e].u], {}, false};
    for (int be : s.edge_path[e])
      if (!s.edges[be].constant()) w.edges.push_back(s.edges[be].image);
    f.edge_map.push_back(std::move(w));
  }
  return f;
}

ClusterPartition clusters_and_spurs(const SimplicialMap& s) {
  const int n = s.num_vertices();
  Dsu cl(n), comp(n);
  for (const auto& e : s.edges) {
    comp.unite(e.u, e.v);
    if (e.constant()) cl.unite(e.u, e.v);
  }
  ClusterPartition p;
  p.cluster_of.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (int x = 0; x < n; ++x) {
    int r = cl.find(x);
    if (id_of_root[r] < 0) {
      id_of_root[r] = static_cast<int>(p.clusters.size());
      p.clusters.emplace_back();
    }
    p.cluster_of[x] = id_of_root[r];
    p.clusters[id_of_root[r]].push_back(x);
  }
  const int k = static_cast<int>(p.clusters.size());
  const Triangulation& t = *s.host;
  // Directed host edge as seen from a cluster: (half-edge, reversed) with
  // reversed normalised away whenever the twin exists.
  std::vector<std::vector<std::pair<int, int>>> out(k);
  for (const auto& e : s.edges) {
    if (e.constant()) continue;
    out[p.cluster_of[e.u]].push_back({e.image.value, 0});
    HalfEdge tw = t.twin(e.image);
    out[p.cluster_of[e.v]].push_back(tw.valid() ? std::pair{tw.value, 0} : std::pair{e.image.value, 1});
  }
  p.spur.assign(k, 0);
  p.spur_edge.assign(k, HalfEdge{});
  for (int c = 0; c < k; ++c) {
    if (out[c].empty()) continue;  // the cluster is its whole component
    bool whole = true;
    int root = comp.find(p.clusters[c][0]);
    for (int x = 0; x < n && whole; ++x)
      if (comp.find(x) == root && p.cluster_of[x] != c) whole = false;
    if (whole) continue;
    bool same = std::all_of(out[c].begin(), out[c].end(), [&](auto& k2) { return k2 == out[c][0]; });
    if (same && out[c][0].second == 0) {
      p.spur[c] = 1;
      p.spur_edge[c] = HalfEdge(out[c][0].first);
    }
  }
  return p;
}

int Homomorphism::vertex_of_rep(int r) const {
  auto it = std::lower_bound(rep.begin(), rep.end(), r);
  return it != rep.end() && *it == r ? static_cast<int>(it - rep.begin()) : -1;
}

Homomorphism factor_homomorphism(const SimplicialMap& s) {
  const Triangulation& t = *s.host;
  const int n = s.num_vertices();
  Dsu cl(n);
  for (const auto& e : s.edges)
    if (e.constant()) cl.unite(e.u, e.v);
  Homomorphism h;
  h.cluster_of.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (int x = 0; x < n; ++x) {
    int r = cl.find(x);
    if (id_of_root[r] < 0) {
      id_of_root[r] = h.num_vertices();
      h.rep.push_back(x);
      h.members.emplace_back();
      h.position.push_back(s.position[x]);
    }
    h.cluster_of[x] = id_of_root[r];
    h.members[id_of_root[r]].push_back(x);
  }
  h.incidence.resize(h.num_vertices());
  for (int be = 0; be < s.num_edges(); ++be) {
    const auto& e = s.edges[be];
    if (e.constant()) continue;
    HalfEdge back = t.twin(e.image);
    if (!back.valid()) throw DomainError("factor_homomorphism: edge image on the host boundary");
    int u = h.cluster_of[e.u], v = h.cluster_of[e.v];
    int id = h.num_edges();
    h.edges.push_back({u, v, e.image, be});
    h.incidence[u].push_back({id, e.image, v, true});
    h.incidence[v].push_back({id, back, u, false});
  }
  return h;
}

SimplicialMap expand(const Homomorphism& h, const SimplicialMap& s) {
  SimplicialMap out = s;
  for (int x = 0; x < s.num_vertices(); ++x) out.position[x] = h.position[h.cluster_of[x]];
  for (const auto& e : h.edges) out.edges[e.bar_edge].image = e.image;
  return out;
}

std::string write_drw(const Drawing& f, const Anchor& anchors) {
  std::ostringstream os;
  for (int v = 0; v < f.graph.num_vertices; ++v) os << "vertex " << v << " at " << f.vertex_map[v].value << '\n';
  for (int e = 0; e < f.graph.num_edges(); ++e) {
    std::vector<int> ids;
    for (HalfEdge h : f.edge_map[e].edges) ids.push_back(h.value);
    os << "edge " << e << ' ' << f.graph.edges[e].u << ' ' << f.graph.edges[e].v << " walk=" << text::join_ints(ids)
       << '\n';
  }
  for (const auto& a : anchors) os << "anchor " << a.at.value << " order=" << text::join_ints(a.order) << '\n';
  return os.str();
}

std::pair<Drawing, Anchor> read_drw(std::istream& in, std::shared_ptr<const Triangulation> host) {
  text::LineReader reader(in);
  text::Line line;
  std::map<long long, long long> vertices;
  struct RawEdge {
    long long u, v;
    std::vector<long long> walk;
  };
  std::map<long long, RawEdge> edges;
  Anchor anchors;
  while (reader.next(line)) {
    const auto& tk = line.tokens;
    if (tk[0] == "vertex") {
      if (tk.size() != 4 || tk[2] != "at") text::fail(line.number, "expected 'vertex <gid> at <tid>'");
      long long id = text::parse_int(tk[1], line.number);
      if (!vertices.emplace(id, text::parse_int(tk[3], line.number)).second)
        text::fail(line.number, "duplicate vertex " + std::to_string(id));
    } else if (tk[0] == "edge") {
      if (tk.size() != 5) text::fail(line.number, "expected 'edge <gid> <u> <v> walk=...'");
      long long id = text::parse_int(tk[1], line.number);
      RawEdge e{text::parse_int(tk[2], line.number), text::parse_int(tk[3], line.number),
                text::parse_int_list(text::value_of(tk[4], "walk", line.number), line.number)};
      if (!edges.emplace(id, std::move(e)).second) text::fail(line.number, "duplicate edge " + std::to_string(id));
    } else if (tk[0] == "anchor") {
      if (tk.size() != 3) text::fail(line.number, "expected 'anchor <tid> order=...'");
      AnchorList a;
      a.at = Vertex(static_cast<int32_t>(text::parse_int(tk[1], line.number)));
      for (long long g : text::parse_int_list(text::value_of(tk[2], "order", line.number), line.number))
        a.order.push_back(static_cast<int>(g));
      anchors.push_back(std::move(a));
    } else {
      text::fail(line.number, "unknown record '" + std::string(tk[0]) + "'");
    }
  }
  Drawing f;
  f.host = std::move(host);
  long long expect = 0;
  for (auto& [id, at] : vertices) {
    if (id != expect++) throw StructuralError("vertex ids must be 0.." + std::to_string(vertices.size() - 1));
    f.graph.add_vertex();
    f.vertex_map.push_back(Vertex(static_cast<int32_t>(at)));
  }
  expect = 0;
  for (auto& [id, e] : edges) {
    if (id != expect++) throw StructuralError("edge ids must be 0.." + std::to_string(edges.size() - 1));
    f.graph.add_edge(static_cast<int>(e.u), static_cast<int>(e.v));
    Walk w;
    if (e.u >= 0 && e.u < f.graph.num_vertices) w.start = f.vertex_map[e.u];
    for (long long h : e.walk) w.edges.push_back(HalfEdge(static_cast<int32_t>(h)));
    f.edge_map.push_back(std::move(w));
  }
  check_drawing(f);
  return {std::move(f), std::move(anchors)};
}

std::pair<Drawing, Anchor> parse_drw(const std::string& text, std::shared_ptr<const Triangulation> host) {
  std::istringstream in(text);
  return read_drw(in, std::move(host));
}

}  // namespace dtutte
