#include "oracles.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

namespace oracle {

HalfEdge cw_step(const Triangulation& t, HalfEdge h) {
  HalfEdge tw = t.twin(h);
  return tw.valid() ? t.next(tw) : HalfEdge{};
}

int cw_distance(const Triangulation& t, HalfEdge from, HalfEdge to) {
  HalfEdge cur = from;
  for (int k = 0; k <= t.num_half_edges(); ++k) {
    if (cur == to) return k;
    cur = cw_step(t, cur);
    if (!cur.valid() || cur == from) return -1;
  }
  return -1;
}

namespace {

int orbit_size(const Triangulation& t, HalfEdge h) {
  int d = 0;
  HalfEdge cur = h;
  do {
    ++d;
    cur = cw_step(t, cur);
  } while (cur.valid() && cur != h);
  return d;
}

}  // namespace

bool bad_turn(const Triangulation& t, HalfEdge in, HalfEdge out) {
  HalfEdge back = t.twin(in);
  const int d = orbit_size(t, back);
  const int k = cw_distance(t, back, out);
  const int sv = 2 * k <= d ? k : k - d;
  if (sv >= -1 && sv <= 1) return true;
  return (sv == 2 || sv == -2) && t.left_color(in) == Color::Red;
}

bool dual_two_colorable(const Triangulation& t) {
  std::vector<int> side(t.num_faces(), -1);
  for (int s = 0; s < t.num_faces(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      HalfEdge h = t.face_half_edge(Face(f));
      for (int i = 0; i < 3; ++i, h = t.next(h)) {
        HalfEdge tw = t.twin(h);
        if (!tw.valid()) continue;
        int g = t.face(tw).value;
        if (side[g] < 0) {
          side[g] = 1 - side[f];
          q.push(g);
        } else if (side[g] == side[f]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool colors_alternate(const Triangulation& t) {
  for (int h = 0; h < t.num_half_edges(); ++h) {
    HalfEdge tw = t.twin(HalfEdge(h));
    if (tw.valid() && t.left_color(tw) == t.left_color(HalfEdge(h))) return false;
  }
  return true;
}

int euler_by_counting(const Triangulation& t) {
  std::set<int> verts;
  int paired = 0, single = 0;
  for (int h = 0; h < t.num_half_edges(); ++h) {
    verts.insert(t.half_edge_table()[h].origin.value);
    (t.half_edge_table()[h].twin.valid() ? paired : single) += 1;
  }
  std::vector<char> seen(t.num_half_edges(), 0);
  int faces = 0;
  for (int h = 0; h < t.num_half_edges(); ++h) {
    if (seen[h]) continue;
    ++faces;
    for (HalfEdge c(h); !seen[c.value]; c = t.half_edge_table()[c.value].next) seen[c.value] = 1;
  }
  return static_cast<int>(verts.size()) - (paired / 2 + single) + faces;
}

std::vector<int> distances_from(const Triangulation& t, Vertex v) {
  // Undirected: boundary edges count in both directions.
  std::vector<std::vector<int>> adj(t.num_vertices());
  for (int h = 0; h < t.num_half_edges(); ++h) {
    int a = t.origin(HalfEdge(h)).value, b = t.head(HalfEdge(h)).value;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> d(t.num_vertices(), -1);
  std::queue<int> q;
  d[v.value] = 0;
  q.push(v.value);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x])
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(y);
      }
  }
  return d;
}

std::vector<Walk> reduced_walks(const Triangulation& t, Vertex x, Vertex y, int max_len, long long* touched) {
  auto dy = distances_from(t, y);
  std::vector<Walk> out;
  std::vector<HalfEdge> path;
  long long boundary_hits = 0;
  std::function<void(Vertex)> go = [&](Vertex z) {
    if (z == y) out.push_back(Walk{x, path, false});
    const int left = max_len - static_cast<int>(path.size());
    if (left == 0) return;
    if (!path.empty() && t.on_boundary(z)) {
      ++boundary_hits;
      return;
    }
    for (HalfEdge h : t.outgoing(z)) {
      Vertex w = t.head(h);
      if (dy[w.value] < 0 || dy[w.value] > left - 1) continue;
      if (!path.empty() && bad_turn(t, path.back(), h)) continue;
      path.push_back(h);
      go(w);
      path.pop_back();
    }
  };
  go(x);
  if (touched) *touched = boundary_hits;
  return out;
}

std::vector<Walk> reduced_closed_walks(const Triangulation& t, int len) {
  std::vector<Walk> out;
  std::vector<HalfEdge> path;
  std::function<void(Vertex, Vertex)> go = [&](Vertex start, Vertex z) {
    if (static_cast<int>(path.size()) == len) {
      if (z != start) return;
      for (int i = 0; i < len; ++i)
        if (bad_turn(t, path[(i + len - 1) % len], path[i])) return;
      out.push_back(Walk{start, path, true});
      return;
    }
    for (HalfEdge h : t.outgoing(z)) {
      if (!path.empty() && bad_turn(t, path.back(), h)) continue;
      path.push_back(h);
      go(start, t.head(h));
      path.pop_back();
    }
  };
  for (int v = 0; v < t.num_vertices(); ++v) go(Vertex(v), Vertex(v));
  return out;
}

namespace {

// Boundary cycle of a face set if it is a disk, else empty.
std::vector<HalfEdge> disk_boundary(const Triangulation& t, const std::vector<char>& in) {
  std::vector<HalfEdge> b;
  std::set<int> verts;
  int faces = 0;
  for (int f = 0; f < t.num_faces(); ++f) {
    if (!in[f]) continue;
    ++faces;
    HalfEdge h = t.face_half_edge(Face(f));
    for (int i = 0; i < 3; ++i, h = t.next(h)) {
      verts.insert(t.origin(h).value);
      HalfEdge tw = t.twin(h);
      if (!tw.valid() || !in[t.face(tw).value]) b.push_back(h);
    }
  }
  std::map<int, HalfEdge> by_origin;
  for (HalfEdge h : b)
    if (!by_origin.emplace(t.origin(h).value, h).second) return {};
  const int edges = (3 * faces + static_cast<int>(b.size())) / 2;
  if (static_cast<int>(verts.size()) - edges + faces != 1) return {};
  std::vector<HalfEdge> cycle{b.front()};
  while (true) {
    auto it = by_origin.find(t.head(cycle.back()).value);
    if (it == by_origin.end()) return {};
    if (it->second == cycle.front()) break;
    cycle.push_back(it->second);
    if (cycle.size() > b.size()) return {};
  }
  if (cycle.size() != b.size()) return {};
  return cycle;
}

}  // namespace

Walk random_disk_boundary(const PlanePatch& p, int radius, int max_faces, std::mt19937_64& rng) {
  const Triangulation& t = p.surface;
  auto eligible = [&](int f) {
    HalfEdge h = t.face_half_edge(Face(f));
    for (int i = 0; i < 3; ++i, h = t.next(h))
      if (p.dist[t.origin(h).value] > radius || t.on_boundary(t.origin(h))) return false;
    return true;
  };
  std::vector<int> pool;
  for (int f = 0; f < t.num_faces(); ++f)
    if (eligible(f)) pool.push_back(f);
  std::vector<char> in(t.num_faces(), 0);
  in[pool[rng() % pool.size()]] = 1;
  int size = 1;
  const int target = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_faces));
  for (int attempt = 0; attempt < 50 * max_faces && size < target; ++attempt) {
    std::vector<int> cand;
    for (int f = 0; f < t.num_faces(); ++f) {
      if (!in[f]) continue;
      HalfEdge h = t.face_half_edge(Face(f));
      for (int i = 0; i < 3; ++i, h = t.next(h)) {
        HalfEdge tw = t.twin(h);
        if (tw.valid() && !in[t.face(tw).value] && eligible(t.face(tw).value)) cand.push_back(t.face(tw).value);
      }
    }
    if (cand.empty()) break;
    int f = cand[rng() % cand.size()];
    in[f] = 1;
    if (disk_boundary(t, in).empty())
      in[f] = 0;
    else
      ++size;
  }
  auto cycle = disk_boundary(t, in);
  return Walk{t.origin(cycle.front()), cycle, true};
}

Walk closed_line(const Triangulation& t, HalfEdge h, Color c) {
  Walk w{t.origin(h), {}, true};
  HalfEdge cur = h;
  do {
    if (t.left_color(cur) != c) throw std::runtime_error("closed_line: edge does not see the line color");
    w.edges.push_back(cur);
    HalfEdge nxt = t.twin(cur);
    for (int i = 0; i < 3; ++i) nxt = cw_step(t, nxt);
    cur = nxt;
    if (w.edges.size() > static_cast<size_t>(t.num_half_edges())) throw std::runtime_error("closed_line: no period");
  } while (cur != h);
  return w;
}

std::vector<CycleVerdict> three_turn_cycles(const DrawingState& s) {
  const Homomorphism& g = s.hom;
  const Triangulation& t = *s.map.host;
  std::vector<CycleVerdict> out;
  std::vector<int> vs, es;
  std::vector<HalfEdge> imgs;
  std::vector<char> on(g.num_vertices(), 0);

  auto judge = [&]() {
    const size_t n = vs.size();
    Color pass = t.left_color(imgs.back());
    for (size_t i = 0; i < n; ++i) {
      HalfEdge in = imgs[(i + n - 1) % n], o = imgs[i];
      if (t.left_color(in) != pass || cw_distance(t, t.twin(in), o) != 3) return;
    }
    CycleVerdict c;
    c.vertices = vs;
    c.edges = es;
    c.pass = pass;
    // Walks following the cycle: states (vertex, position on the cycle).
    std::set<std::pair<int, size_t>> seen;
    std::queue<std::pair<int, size_t>> q;
    for (size_t i = 0; i < n; ++i) {
      seen.insert({vs[i], i});
      q.push({vs[i], i});
    }
    while (!q.empty()) {
      auto [w, i] = q.front();
      q.pop();
      c.followers.insert(w);
      HalfEdge fwd = imgs[i], bwd = t.twin(imgs[(i + n - 1) % n]);
      for (const auto& inc : g.incidence[w]) {
        std::pair<int, size_t> nxt{-1, 0};
        if (inc.out == fwd) nxt = {inc.other, (i + 1) % n};
        else if (inc.out == bwd) nxt = {inc.other, (i + n - 1) % n};
        if (nxt.first >= 0) {
          if (seen.insert(nxt).second) q.push(nxt);
          continue;
        }
        int r = cw_distance(t, bwd, inc.out);
        if (r == 1 || r == 2) c.pulled_left = true;
        else c.pulled_right = true;
      }
    }
    out.push_back(std::move(c));
  };

  std::function<void(int, int)> dfs = [&](int start, int v) {
    for (const auto& inc : g.incidence[v]) {
      if (inc.other == start) {
        // A two-vertex cycle needs two distinct edges.
        if (vs.size() == 2 && inc.edge == es.back()) continue;
        es.push_back(inc.edge);
        imgs.push_back(inc.out);
        judge();
        es.pop_back();
        imgs.pop_back();
        continue;
      }
      if (inc.other <= start || on[inc.other]) continue;
      on[inc.other] = 1;
      vs.push_back(inc.other);
      es.push_back(inc.edge);
      imgs.push_back(inc.out);
      dfs(start, inc.other);
      on[inc.other] = 0;
      vs.pop_back();
      es.pop_back();
      imgs.pop_back();
    }
  };
  for (int s0 = 0; s0 < g.num_vertices(); ++s0) {
    vs = {s0};
    on[s0] = 1;
    dfs(s0, s0);
    on[s0] = 0;
  }
  return out;
}

bool balanceable(const CycleVerdict& c) { return c.pulled_left && !c.pulled_right; }

Drawing balancing_fixture(std::shared_ptr<const Triangulation> host, uint64_t seed, int max_vertices) {
  const Triangulation& t = *host;
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); };
  const Color c = rng() % 2 ? Color::Blue : Color::Red;
  Walk line;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    HalfEdge h(pick(t.num_half_edges()));
    if (!t.twin(h).valid() || t.left_color(h) != c) continue;
    Walk w = closed_line(t, h, c);
    if (static_cast<int>(w.length()) * 2 <= max_vertices) {
      line = w;
      break;
    }
  }
  if (line.edges.empty()) throw std::runtime_error("balancing_fixture: no short line");
  const int L = static_cast<int>(line.length());
  const int reps = 2 * L + 2 <= max_vertices && pick(3) == 0 ? 2 : 1;
  Drawing f;
  f.host = host;
  const int n = L * reps;
  for (int i = 0; i < n; ++i) {
    f.graph.add_vertex();
    f.vertex_map.push_back(t.origin(line.edges[i % L]));
  }
  for (int i = 0; i < n; ++i) {
    f.graph.add_edge(i, (i + 1) % n);
    f.edge_map.push_back(Walk{f.vertex_map[i], {line.edges[i % L]}, false});
  }
  const int extra = pick(std::min(6, max_vertices - n + 1));
  for (int k = 0; k < extra; ++k) {
    int w = pick(f.graph.num_vertices);
    auto outs = t.outgoing(f.vertex_map[w]);
    HalfEdge h = outs[pick(static_cast<int>(outs.size()))];
    if (w < n && pick(5) < 2) h = pick(2) ? line.edges[w % L] : t.twin(line.edges[(w + n - 1) % n % L]);
    int v = f.graph.add_vertex();
    f.vertex_map.push_back(t.head(h));
    f.graph.add_edge(w, v);
    f.edge_map.push_back(Walk{f.vertex_map[w], {h}, false});
    if (pick(10) < 3) {
      int z = pick(f.graph.num_vertices - 1);
      if (z == w) continue;
      for (HalfEdge o : t.outgoing(f.vertex_map[v]))
        if (t.head(o) == f.vertex_map[z]) {
          f.graph.add_edge(v, z);
          f.edge_map.push_back(Walk{f.vertex_map[v], {o}, false});
          break;
        }
    }
  }
  return f;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace oracle
