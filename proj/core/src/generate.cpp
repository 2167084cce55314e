#include "dtutte/generate.hpp"

#include <algorithm>
#include <queue>

namespace dtutte {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Walk random_walk(const Triangulation& t, Vertex from, int length, std::mt19937_64& rng) {
  Walk w{from, {}, false};
  Vertex at = from;
  for (int i = 0; i < length; ++i) {
    auto out = t.outgoing(at);
    HalfEdge h = out[uniform(rng, 0, static_cast<int>(out.size()) - 1)];
    w.edges.push_back(h);
    at = t.head(h);
  }
  return w;
}

Walk shortest_walk(const Triangulation& t, Vertex from, Vertex to) {
  std::vector<HalfEdge> via(t.num_vertices());
  std::vector<char> seen(t.num_vertices(), 0);
  std::queue<Vertex> q;
  q.push(from);
  seen[from.value] = 1;
  while (!q.empty() && !seen[to.value]) {
    Vertex v = q.front();
    q.pop();
    std::vector<HalfEdge> out(t.outgoing(v).begin(), t.outgoing(v).end());
    std::sort(out.begin(), out.end());
    for (HalfEdge h : out) {
      Vertex w = t.head(h);
      if (seen[w.value]) continue;
      seen[w.value] = 1;
      via[w.value] = h;
      q.push(w);
    }
  }
  if (!seen[to.value]) throw DomainError("shortest_walk: target unreachable");
  Walk w{from, {}, false};
  for (Vertex v = to; v != from; v = t.origin(via[v.value])) w.edges.push_back(via[v.value]);
  std::reverse(w.edges.begin(), w.edges.end());
  return w;
}

Drawing random_drawing(std::shared_ptr<const Triangulation> host, uint64_t seed, const RandomDrawingOptions& opt) {
  const Triangulation& t = *host;
  std::mt19937_64 rng(seed);
  Drawing f;
  f.host = host;
  auto new_vertex = [&](Vertex at) {
    f.vertex_map.push_back(at);
    return f.graph.add_vertex();
  };
  const int start = opt.start_vertices > 0 ? opt.start_vertices : uniform(rng, 1, opt.max_edges / 4 + 1);
  for (int i = 0; i < start; ++i) new_vertex(Vertex(uniform(rng, 0, t.num_vertices() - 1)));
  const int edges = opt.max_edges > 0 ? uniform(rng, 1, opt.max_edges) : 0;
  for (int e = 0; e < edges; ++e) {
    int u = uniform(rng, 0, f.graph.num_vertices - 1);
    Walk w = random_walk(t, f.vertex_map[u], uniform(rng, 0, opt.max_walk), rng);
    Vertex end = walk_end(t, w);
    std::vector<int> there;
    for (int v = 0; v < f.graph.num_vertices; ++v)
      if (f.vertex_map[v] == end) there.push_back(v);
    int v = !there.empty() && uniform(rng, 0, 1) ? there[uniform(rng, 0, static_cast<int>(there.size()) - 1)]
                                                  : new_vertex(end);
    f.graph.add_edge(u, v);
    f.edge_map.push_back(std::move(w));
  }
  return f;
}

AnchoredInstance random_anchored_drawing(std::shared_ptr<const Triangulation> host, uint64_t seed, int sites) {
  const Triangulation& t = *host;
  if (t.closed()) throw DomainError("random_anchored_drawing: the host has no boundary");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> boundary, inner;
  for (int v = 0; v < t.num_vertices(); ++v) (t.on_boundary(Vertex(v)) ? boundary : inner).push_back(Vertex(v));
  if (static_cast<int>(boundary.size()) < sites || inner.empty())
    throw DomainError("random_anchored_drawing: host too small");
  std::shuffle(boundary.begin(), boundary.end(), rng);

  AnchoredInstance inst;
  Drawing& f = inst.drawing;
  f.host = host;
  auto new_vertex = [&](Vertex at) {
    f.vertex_map.push_back(at);
    return f.graph.add_vertex();
  };
  // A star around one hub whose branches follow a single breadth-first tree,
  // so the drawing is homotopic to an embedding relative to the anchors.
  const Vertex hub_at = inner[uniform(rng, 0, static_cast<int>(inner.size()) - 1)];
  const int hub = new_vertex(hub_at);
  auto branch = [&](Vertex to) {
    Walk path = shortest_walk(t, hub_at, to);
    const int pieces = std::min<int>(uniform(rng, 1, 3), std::max<int>(1, static_cast<int>(path.length())));
    int prev = hub;
    size_t at = 0;
    Vertex pos = hub_at;
    for (int p = 0; p < pieces; ++p) {
      size_t to_i = p + 1 == pieces ? path.length() : at + path.length() / pieces;
      Walk seg{pos, {path.edges.begin() + at, path.edges.begin() + to_i}, false};
      pos = walk_end(t, seg);
      int v = new_vertex(pos);
      f.graph.add_edge(prev, v);
      f.edge_map.push_back(std::move(seg));
      prev = v;
      at = to_i;
    }
    return prev;
  };
  for (int s = 0; s < sites; ++s) {
    AnchorList list{boundary[s], {}};
    const int k = uniform(rng, 1, 2);
    for (int i = 0; i < k; ++i) list.order.push_back(branch(boundary[s]));
    inst.anchor.push_back(std::move(list));
  }
  const int free_leaves = uniform(rng, 0, 2);
  for (int i = 0; i < free_leaves; ++i) branch(inner[uniform(rng, 0, static_cast<int>(inner.size()) - 1)]);

  // Null-homotopic detours: spurs and the two other sides of a triangle.
  for (Walk& w : f.edge_map) {
    const int detours = uniform(rng, 0, 2);
    for (int d = 0; d < detours; ++d) {
      if (w.edges.empty() || uniform(rng, 0, 1)) {
        size_t at = uniform(rng, 0, static_cast<int>(w.edges.size()));
        Vertex x = at == 0 ? w.start : t.head(w.edges[at - 1]);
        auto out = t.outgoing(x);
        HalfEdge h = out[uniform(rng, 0, static_cast<int>(out.size()) - 1)];
        if (!t.twin(h).valid()) continue;
        w.edges.insert(w.edges.begin() + static_cast<long>(at), {h, t.twin(h)});
      } else {
        size_t at = uniform(rng, 0, static_cast<int>(w.edges.size()) - 1);
        HalfEdge h = w.edges[at];
        HalfEdge a = t.prev(h), b = t.next(h);
        // h runs along its face; the other two sides go around it.
        if (!t.twin(a).valid() || !t.twin(b).valid()) continue;
        w.edges[at] = t.twin(a);
        w.edges.insert(w.edges.begin() + static_cast<long>(at) + 1, t.twin(b));
      }
    }
  }
  return inst;
}

}  // namespace dtutte
