#include "dtutte/harmonizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "text_util.hpp"

namespace dtutte {

namespace {

std::atomic<uint64_t> next_version{1};

int rel_slot(const Triangulation& t, HalfEdge h, HalfEdge base) {
  const int d = t.degree(t.origin(base));
  return ((t.slot(h) - t.slot(base)) % d + d) % d;
}

bool has_self_loop(const Homomorphism& h, int v) {
  return std::any_of(h.incidence[v].begin(), h.incidence[v].end(), [&](const auto& i) { return i.other == v; });
}

std::vector<HalfEdge> used_slots(const Homomorphism& h, int v) {
  std::vector<HalfEdge> s;
  for (const auto& i : h.incidence[v]) s.push_back(i.out);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Proposed positions and images; an invalid image marks a constant edge.
struct Proposal {
  std::vector<Vertex> pos;
  std::vector<HalfEdge> img;
  std::vector<char> set;  // per edge: already fixed by a moved endpoint
};

Proposal start_proposal(const DrawingState& s) {
  Proposal p;
  p.pos = s.hom.position;
  for (const auto& e : s.hom.edges) p.img.push_back(e.image);
  p.set.assign(s.hom.num_edges(), 0);
  return p;
}

// Record the new image of an incidence of v as seen from v (leaving v).
// Returns false when the other endpoint already fixed a different image.
bool propose(const Triangulation& t, Proposal& p, const Homomorphism::Incidence& inc, HalfEdge out) {
  HalfEdge img = inc.at_u || !out.valid() ? out : t.twin(out);
  if (p.set[inc.edge]) return p.img[inc.edge] == img;
  p.img[inc.edge] = img;
  p.set[inc.edge] = 1;
  return true;
}

// Every edge touched must be a homomorphism edge between the new positions
// (or constant between equal positions).
bool proposal_valid(const DrawingState& s, const Proposal& p) {
  const Triangulation& t = *s.map.host;
  for (int e = 0; e < s.hom.num_edges(); ++e) {
    if (!p.set[e]) continue;
    const auto& ed = s.hom.edges[e];
    Vertex a = p.pos[ed.u], b = p.pos[ed.v];
    if (!p.img[e].valid()) {
      if (a != b) return false;
    } else if (t.origin(p.img[e]) != a || t.head(p.img[e]) != b) {
      return false;
    }
  }
  return true;
}

DrawingState commit(const DrawingState& s, const Proposal& p) {
  SimplicialMap m = s.map;
  for (int x = 0; x < m.num_vertices(); ++x) m.position[x] = p.pos[s.hom.cluster_of[x]];
  for (int e = 0; e < s.hom.num_edges(); ++e) m.edges[s.hom.edges[e].bar_edge].image = p.img[e];
  return make_state(std::move(m));
}

bool flip_proposal(const DrawingState& s, const Move& m, Proposal& p) {
  const Triangulation& t = *s.map.host;
  HalfEdge a = m.slot, ca = t.cw(a), b = t.cw(ca);
  HalfEdge on_a = t.prev(t.twin(a));
  HalfEdge on_b = t.twin(t.prev(t.twin(ca)));
  p.pos[m.vertex] = t.head(ca);
  for (const auto& inc : s.hom.incidence[m.vertex]) {
    HalfEdge out;
    if (inc.out == a) out = on_a;
    else if (inc.out == b) out = on_b;
    else return false;
    if (!propose(t, p, inc, out)) return false;
  }
  return proposal_valid(s, p);
}

bool shortening_proposal(const DrawingState& s, const Move& m, Proposal& p) {
  const Triangulation& t = *s.map.host;
  HalfEdge a = m.slot, a1 = t.rotate_cw(a, 1), a2 = t.rotate_cw(a, 2);
  p.pos[m.vertex] = m.target;
  for (const auto& inc : s.hom.incidence[m.vertex]) {
    HalfEdge out;
    bool ok = true;
    if (m.width == 1) {
      ok = inc.out == a;
    } else if (m.width == 2) {
      if (m.pick == 0) {
        if (inc.out == a) out = HalfEdge{};
        else if (inc.out == a1) out = t.twin(t.prev(t.twin(a)));
        else ok = false;
      } else {
        if (inc.out == a) out = t.prev(t.twin(a));
        else if (inc.out == a1) out = HalfEdge{};
        else ok = false;
      }
    } else {
      if (inc.out == a) out = t.prev(t.twin(a));
      else if (inc.out == a1) out = HalfEdge{};
      else if (inc.out == a2) out = t.twin(t.prev(t.twin(a1)));
      else ok = false;
    }
    if (!ok || !propose(t, p, inc, out)) return false;
  }
  return proposal_valid(s, p);
}

bool balancing_proposal(const DrawingState& s, const Move& m, Proposal& p) {
  const Triangulation& t = *s.map.host;
  const bool clockwise = m.rotation == Rotation::Clockwise;
  for (size_t i = 0; i < m.followers.size(); ++i) {
    HalfEdge a = m.corner[i];
    p.pos[m.followers[i]] = t.head(t.rotate_cw(a, clockwise ? 1 : 2));
  }
  for (size_t i = 0; i < m.followers.size(); ++i) {
    HalfEdge a = m.corner[i], ca = t.rotate_cw(a, 1), c2 = t.rotate_cw(a, 2), b = t.rotate_cw(a, 3);
    HalfEdge u1 = t.prev(t.twin(a)), u2 = t.next(c2), u3 = t.next(b);
    for (const auto& inc : s.hom.incidence[m.followers[i]]) {
      HalfEdge out;
      if (clockwise) {
        if (inc.out == a) out = t.next(t.twin(u1));
        else if (inc.out == b || inc.out == c2) out = t.twin(u2);
        else if (inc.out == ca) out = HalfEdge{};
        else return false;
      } else {
        if (inc.out == a || inc.out == ca) out = u2;
        else if (inc.out == b) out = t.twin(t.prev(t.twin(u3)));
        else if (inc.out == c2) out = HalfEdge{};
        else return false;
      }
      if (!propose(t, p, inc, out)) return false;
    }
  }
  return proposal_valid(s, p);
}

bool build_proposal(const DrawingState& s, const Move& m, Proposal& p) {
  switch (m.kind) {
    case MoveKind::Flip: return flip_proposal(s, m, p);
    case MoveKind::Shortening: return shortening_proposal(s, m, p);
    case MoveKind::Balancing: return balancing_proposal(s, m, p);
  }
  return false;
}

long long proposal_length(const DrawingState& s, const Proposal& p) {
  long long n = 0;
  for (const auto& e : s.map.edges) n += e.constant() ? 0 : 1;
  for (int e = 0; e < s.hom.num_edges(); ++e) n += (p.img[e].valid() ? 1 : 0) - 1;
  return n;
}

template <class Filter>
std::optional<Move> balancing_pass(const DrawingState& s, Color pass, Filter&& allowed) {
  const Triangulation& t = *s.map.host;
  const Homomorphism& h = s.hom;
  auto corner_of = [&](HalfEdge out) { return t.left_color(t.twin(out)) == pass ? out : t.rotate_cw(out, -3); };

  // Copies of vertices, one per used corner.
  std::vector<int> copy_vertex;
  std::vector<HalfEdge> copy_corner;
  std::vector<std::map<int32_t, int>> copies(h.num_vertices());
  auto copy_id = [&](int v, HalfEdge out) {
    HalfEdge a = corner_of(out);
    auto [it, fresh] = copies[v].emplace(a.value, static_cast<int>(copy_vertex.size()));
    if (fresh) {
      copy_vertex.push_back(v);
      copy_corner.push_back(a);
    }
    return it->second;
  };
  for (int v = 0; v < h.num_vertices(); ++v)
    if (allowed(v))
      for (const auto& inc : h.incidence[v]) copy_id(v, inc.out);
  const int nc = static_cast<int>(copy_vertex.size());
  std::vector<char> red(nc, 0), green(nc, 0);
  for (int c = 0; c < nc; ++c) {
    bool left = false;
    for (const auto& inc : h.incidence[copy_vertex[c]]) {
      int r = rel_slot(t, inc.out, copy_corner[c]);
      if (r >= 4) red[c] = 1;
      if (r == 1 || r == 2) left = true;
    }
    green[c] = !red[c] && left;
  }
  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<int>> succ(nc), pred(nc);
  for (const auto& e : h.edges) {
    if (!allowed(e.u) || !allowed(e.v)) continue;
    int cu = copy_id(e.u, e.image), cv = copy_id(e.v, t.twin(e.image));
    if (t.left_color(e.image) != pass) std::swap(cu, cv);
    succ[cu].push_back(cv);
    pred[cv].push_back(cu);
    int ru = find(cu), rv = find(cv);
    if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
  }
  std::vector<std::vector<int>> comps(nc);
  for (int c = 0; c < nc; ++c) comps[find(c)].push_back(c);

  for (int root = 0; root < nc; ++root) {
    const auto& comp = comps[root];
    if (comp.empty()) continue;
    if (std::any_of(comp.begin(), comp.end(), [&](int c) { return red[c]; })) continue;
    if (std::none_of(comp.begin(), comp.end(), [&](int c) { return green[c]; })) continue;
    // Kahn: copies left over lie on or downstream of a directed cycle.
    std::vector<int> indeg(nc, 0);
    for (int c : comp) indeg[c] = static_cast<int>(pred[c].size());
    std::vector<int> stack;
    for (int c : comp)
      if (indeg[c] == 0) stack.push_back(c);
    std::vector<char> removed(nc, 0);
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      removed[c] = 1;
      for (int d : succ[c])
        if (--indeg[d] == 0) stack.push_back(d);
    }
    int start = -1;
    for (int c : comp)
      if (!removed[c]) {
        start = c;
        break;
      }
    if (start < 0) continue;
    // Walk backwards through remaining copies until one repeats.
    std::vector<int> seen_at(nc, -1), walk;
    int c = start;
    while (seen_at[c] < 0) {
      seen_at[c] = static_cast<int>(walk.size());
      walk.push_back(c);
      int back = -1;
      for (int d : pred[c])
        if (!removed[d]) {
          back = d;
          break;
        }
      c = back;
    }
    std::vector<int> cyc(walk.begin() + seen_at[c], walk.end());
    std::reverse(cyc.begin(), cyc.end());

    Move m;
    m.kind = MoveKind::Balancing;
    m.version = s.version;
    m.pass = pass;
    for (int x : cyc) m.cycle.push_back(copy_vertex[x]);
    std::vector<std::pair<int, HalfEdge>> fs;
    for (int x : comp) fs.push_back({copy_vertex[x], copy_corner[x]});
    std::sort(fs.begin(), fs.end());
    bool twice = false;
    for (size_t i = 1; i < fs.size(); ++i) twice |= fs[i].first == fs[i - 1].first;
    if (twice) continue;
    bool uses_first_left = false;
    for (auto [v, a] : fs) {
      m.followers.push_back(v);
      m.corner.push_back(a);
      for (const auto& inc : h.incidence[v]) uses_first_left |= inc.out == t.rotate_cw(a, 1);
    }
    m.rotation = uses_first_left ? Rotation::Clockwise : Rotation::Counterclockwise;
    Proposal p = start_proposal(s);
    if (!balancing_proposal(s, m, p)) continue;
    if (proposal_length(s, p) >= s.map.lengths().total)
      throw InvariantViolation("balancing does not shorten the drawing");
    return m;
  }
  return std::nullopt;
}

template <class Filter>
std::optional<Move> find_balancing_if(const DrawingState& s, Filter&& allowed) {
  if (auto m = balancing_pass(s, Color::Red, allowed)) return m;
  return balancing_pass(s, Color::Blue, allowed);
}

}  // namespace

DrawingState make_state(SimplicialMap s) {
  DrawingState st;
  st.hom = factor_homomorphism(s);
  st.map = std::move(s);
  st.version = next_version.fetch_add(1);
  return st;
}

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Flip: return "flip";
    case MoveKind::Shortening: return "short";
    case MoveKind::Balancing: return "bal";
  }
  return "?";
}

std::vector<char> left_blue_direction(const Homomorphism& h, const Triangulation& t) {
  std::vector<char> dir;
  for (const auto& e : h.edges) dir.push_back(t.left_color(e.image) == Color::Blue);
  return dir;
}

std::optional<Move> flip_at(const DrawingState& s, int v) {
  const Triangulation& t = *s.map.host;
  if (has_self_loop(s.hom, v)) return std::nullopt;
  auto slots = used_slots(s.hom, v);
  if (slots.size() != 2) return std::nullopt;
  for (int i = 0; i < 2; ++i) {
    HalfEdge a = slots[i], b = slots[1 - i];
    if (t.rotate_cw(a, 2) != b || t.left_color(t.twin(a)) != Color::Red) continue;
    Move m;
    m.kind = MoveKind::Flip;
    m.version = s.version;
    m.vertex = v;
    m.slot = a;
    m.width = 2;
    m.target = t.head(t.cw(a));
    return m;
  }
  return std::nullopt;
}

std::optional<Move> find_flip(const DrawingState& s) {
  for (int v = 0; v < s.hom.num_vertices(); ++v)
    if (auto m = flip_at(s, v)) return m;
  return std::nullopt;
}

std::optional<Move> shortening_at(const DrawingState& s, int v) {
  const Triangulation& t = *s.map.host;
  if (has_self_loop(s.hom, v)) return std::nullopt;
  auto slots = used_slots(s.hom, v);
  const int k = static_cast<int>(slots.size());
  if (k == 0 || k > 3) return std::nullopt;
  for (HalfEdge a : slots) {
    bool run = true;
    for (int i = 1; i < k && run; ++i) run = std::binary_search(slots.begin(), slots.end(), t.rotate_cw(a, i));
    if (!run) continue;
    Move m;
    m.kind = MoveKind::Shortening;
    m.version = s.version;
    m.vertex = v;
    m.slot = a;
    m.width = k;
    if (k == 1) {
      m.target = t.head(a);
    } else if (k == 3) {
      m.target = t.head(t.rotate_cw(a, 1));
    } else {
      HalfEdge a1 = t.rotate_cw(a, 1);
      int na = 0, n1 = 0;
      for (const auto& inc : s.hom.incidence[v]) (inc.out == a ? na : n1) += 1;
      m.pick = n1 > na ? 1 : 0;
      m.target = t.head(m.pick ? a1 : a);
    }
    return m;
  }
  return std::nullopt;
}

std::optional<Move> find_shortening(const DrawingState& s) {
  for (int v = 0; v < s.hom.num_vertices(); ++v)
    if (auto m = shortening_at(s, v)) return m;
  return std::nullopt;
}

std::optional<Move> find_balancing(const DrawingState& s) {
  return find_balancing_if(s, [](int) { return true; });
}

DrawingState apply_move(const DrawingState& s, const Move& m) {
  if (m.version != s.version) throw DomainError("stale move: it was found on a different drawing state");
  Proposal p = start_proposal(s);
  if (!build_proposal(s, m, p)) throw InvariantViolation("move does not produce a homomorphism");
  return commit(s, p);
}

bool is_locally_stable(const DrawingState& s) {
  return !find_shortening(s) && !find_flip(s) && !find_balancing(s);
}

bool is_locally_stable(const Drawing& f) { return is_locally_stable(make_state(factor_simplicial(f))); }

std::optional<std::vector<int>> proper_monotonic_ordering(int n, const std::vector<std::pair<int, int>>& arcs) {
  if (n <= 0) return std::vector<int>{};
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (auto [a, b] : arcs) {
    succ[a].push_back(b);
    ++indeg[b];
  }
  std::vector<int> layer;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) layer.push_back(v);
  if (layer.size() != 1) return std::nullopt;
  std::vector<int> order;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end());
    order.insert(order.end(), layer.begin(), layer.end());
    std::vector<int> next;
    for (int v : layer)
      for (int w : succ[v])
        if (--indeg[w] == 0) next.push_back(w);
    layer = std::move(next);
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

bool is_monotonic_order(const std::vector<int>& order, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<int> pos(order.size(), -1);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  return std::all_of(arcs.begin(), arcs.end(), [&](auto a) { return pos[a.first] < pos[a.second]; });
}

bool is_proper_order(const std::vector<int>& order, int n, const std::vector<std::pair<int, int>>& edges) {
  if (static_cast<int>(order.size()) != n) return false;
  if (n == 0) return true;
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  bool prefix = true;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    bool has_lower = false, low = true;
    for (int w : adj[v]) {
      if (pos[w] < i) has_lower = true;
      if (w != order[0] && pos[w] <= i) low = false;
    }
    if (i > 0 && !has_lower) return false;
    if (low && !prefix) return false;
    if (!low) prefix = false;
  }
  return true;
}

long long MoveTrace::count(MoveKind k) const {
  return std::count_if(entries.begin(), entries.end(), [&](const TraceEntry& e) { return e.kind == k; });
}

long long MoveTrace::flips_in_phase(int phase) const {
  return std::count_if(entries.begin(), entries.end(),
                       [&](const TraceEntry& e) { return e.kind == MoveKind::Flip && e.phase == phase; });
}

long long move_budget_base(const Triangulation& host, const SimplicialMap& s) {
  const long long n = s.num_vertices() + s.num_edges();
  return (host.num_edges() + n) * n * n;
}

HarmonizeResult harmonize(const Drawing& f, const HarmonizeOptions& opt, const MoveObserver& observer) {
  return harmonize(factor_simplicial(f), opt, observer);
}

namespace {

std::vector<char> vertices_on_cycles(int n, const std::vector<std::pair<int, int>>& arcs) {
  // A vertex is on a directed cycle iff its strongly connected component has
  // an internal arc.
  std::vector<std::vector<int>> succ(n), pred(n);
  for (auto [a, b] : arcs) {
    succ[a].push_back(b);
    pred[b].push_back(a);
  }
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<int, size_t>> st{{s, 0}};
    seen[s] = 1;
    while (!st.empty()) {
      auto& [v, i] = st.back();
      if (i < succ[v].size()) {
        int w = succ[v][i++];
        if (!seen[w]) {
          seen[w] = 1;
          st.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        st.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<int> st{*it};
    comp[*it] = nc;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int w : pred[v])
        if (comp[w] < 0) {
          comp[w] = nc;
          st.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<char> out(n, 0);
  for (auto [a, b] : arcs)
    if (comp[a] == comp[b]) out[a] = out[b] = 1;
  return out;
}

}  // namespace

HarmonizeResult harmonize(const SimplicialMap& s0, const HarmonizeOptions& opt, const MoveObserver& observer) {
  if (!s0.host) throw StructuralError("harmonize: drawing has no host");
  const Triangulation& t = *s0.host;
  if (!t.closed()) throw DomainError("harmonize: the host must be closed");
  auto report = validate_reducing(t);
  if (!report.ok) throw DomainError("harmonize: the host is not a reducing triangulation");

  HarmonizeResult res;
  res.torus_host = t.genus() == 1;
  res.budget = opt.budget >= 0 ? opt.budget
                               : static_cast<long long>(std::ceil(opt.budget_constant * move_budget_base(t, s0)));
  MoveTrace& trace = res.trace;
  trace.initial_per_edge = s0.lengths().per_edge;

  // Components of the simplicial graph; moves never leave one.
  const int nv = s0.num_vertices();
  std::vector<int> comp_of(nv);
  std::iota(comp_of.begin(), comp_of.end(), 0);
  auto find = [&](int x) {
    while (comp_of[x] != x) x = comp_of[x] = comp_of[comp_of[x]];
    return x;
  };
  for (const auto& e : s0.edges) {
    int a = find(e.u), b = find(e.v);
    if (a != b) comp_of[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> comp_roots;
  for (int x = 0; x < nv; ++x) {
    comp_of[x] = find(x);
    if (comp_of[x] == x) comp_roots.push_back(x);
  }

  DrawingState state = make_state(s0);
  long long total = s0.lengths().total;
  int run = 0;
  bool exhausted = false;

  auto perform = [&](const Move& m, int phase, int segment) {
    if (res.moves >= res.budget) {
      exhausted = true;
      return false;
    }
    TraceEntry e;
    e.kind = m.kind;
    e.phase = phase;
    e.segment = segment;
    e.len_before = total;
    if (m.kind == MoveKind::Balancing) {
      for (int v : m.cycle) e.cycle_reps.push_back(state.hom.rep[v]);
      for (int v : m.followers) e.follower_reps.push_back(state.hom.rep[v]);
    } else {
      e.vertex = m.vertex;
      e.rep = state.hom.rep[m.vertex];
      e.from = state.hom.position[m.vertex];
      e.target = m.target;
      if (m.kind == MoveKind::Flip) e.flip_edge = t.cw(m.slot);
    }
    DrawingState next = apply_move(state, m);
    Lengths l = next.map.lengths();
    e.len_after = l.total;
    e.per_edge_after = std::move(l.per_edge);
    total = l.total;
    trace.entries.push_back(e);
    ++res.moves;
    if (observer) observer(trace.entries.back(), state.map, next.map);
    state = std::move(next);
    return true;
  };

  for (size_t ci = 0; ci < comp_roots.size() && !exhausted; ++ci) {
    const int croot = comp_roots[ci];
    auto in_comp = [&](int v) { return comp_of[state.hom.rep[v]] == croot; };
    bool done = false;
    while (!done && !exhausted) {
      std::vector<int> vs;
      for (int v = 0; v < state.hom.num_vertices(); ++v)
        if (in_comp(v)) vs.push_back(v);

      int phase = 1;
      // Applies a pending shortening or balancing; true means restart.
      auto interrupt = [&]() {
        for (int v : vs)
          if (auto m = shortening_at(state, v)) {
            perform(*m, phase, -1);
            return true;
          }
        if (auto m = find_balancing_if(state, in_comp)) {
          perform(*m, phase, -1);
          return true;
        }
        return false;
      };
      auto open_segment = [&](int ph, int root) {
        TraceSegment seg;
        seg.phase = ph;
        seg.run = run;
        seg.component = static_cast<int>(ci);
        seg.root = root;
        seg.vertices = vs;
        seg.q = static_cast<int>(vs.size());
        std::vector<int> local(state.hom.num_vertices(), -1);
        for (size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> arcs;
        auto dir = left_blue_direction(state.hom, t);
        for (int e = 0; e < state.hom.num_edges(); ++e) {
          const auto& ed = state.hom.edges[e];
          if (local[ed.u] < 0) continue;
          seg.adjacency.push_back({ed.u, ed.v});
          arcs.push_back(dir[e] ? std::pair{local[ed.u], local[ed.v]} : std::pair{local[ed.v], local[ed.u]});
        }
        seg.on_directed_cycle = vertices_on_cycles(seg.q, arcs);
        trace.segments.push_back(std::move(seg));
        return static_cast<int>(trace.segments.size()) - 1;
      };

      bool restart = false;
      // Phase 1: pin the lowest vertex, flip the others.
      const int r = vs.front();
      int seg = open_segment(1, r);
      while (!exhausted) {
        if (interrupt()) {
          restart = true;
          break;
        }
        std::optional<Move> m;
        for (int v : vs)
          if (v != r && (m = flip_at(state, v))) break;
        if (!m) break;
        perform(*m, phase, seg);
      }
      if (restart || exhausted) {
        ++run;
        continue;
      }

      // Phase 2: proper and monotonic order when the digraph allows one.
      phase = 2;
      {
        std::vector<int> local(state.hom.num_vertices(), -1);
        for (size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> arcs;
        auto dir = left_blue_direction(state.hom, t);
        for (int e = 0; e < state.hom.num_edges(); ++e) {
          const auto& ed = state.hom.edges[e];
          if (local[ed.u] < 0) continue;
          arcs.push_back(dir[e] ? std::pair{local[ed.u], local[ed.v]} : std::pair{local[ed.v], local[ed.u]});
        }
        if (auto order = proper_monotonic_ordering(static_cast<int>(vs.size()), arcs)) {
          seg = open_segment(2, -1);
          for (int i : *order) trace.segments[seg].order.push_back(vs[i]);
          const auto ord = trace.segments[seg].order;
          for (size_t i = 0; !exhausted; ++i) {
            if (interrupt()) {
              restart = true;
              break;
            }
            auto m = flip_at(state, ord[i % ord.size()]);
            if (!m) break;
            perform(*m, phase, seg);
          }
        }
      }
      if (restart || exhausted) {
        ++run;
        continue;
      }

      // Phase 3: flip anything.
      phase = 3;
      seg = open_segment(3, -1);
      while (!exhausted) {
        if (interrupt()) {
          restart = true;
          break;
        }
        std::optional<Move> m;
        for (int v : vs)
          if ((m = flip_at(state, v))) break;
        if (!m) break;
        perform(*m, phase, seg);
      }
      ++run;
      if (!restart) done = true;
    }
  }

  res.status = exhausted ? HarmonizeStatus::BudgetExhausted : HarmonizeStatus::Stable;
  res.map = state.map;
  res.drawing = unfactor(state.map);
  return res;
}

AuditReport audit_trace(const MoveTrace& trace, const Triangulation& host) {
  AuditReport rep;
  auto note = [&](bool& flag, const std::string& msg) {
    flag = false;
    if (rep.messages.size() < 50) rep.messages.push_back(msg);
  };

  std::vector<long long> prev = trace.initial_per_edge;
  for (size_t i = 0; i < trace.entries.size(); ++i) {
    const auto& e = trace.entries[i];
    for (size_t k = 0; k < prev.size() && k < e.per_edge_after.size(); ++k)
      if (e.per_edge_after[k] > prev[k])
        note(rep.lengths_monotone, "move " + std::to_string(i) + " lengthens edge " + std::to_string(k));
    if (e.kind == MoveKind::Flip ? e.len_after != e.len_before : e.len_after >= e.len_before)
      note(rep.lengths_monotone, "move " + std::to_string(i) + " has a wrong total length change");
    prev = e.per_edge_after;
  }

  // Flips grouped by segment, in order.
  std::vector<std::vector<const TraceEntry*>> flips(trace.segments.size());
  for (const auto& e : trace.entries)
    if (e.kind == MoveKind::Flip && e.segment >= 0) flips[e.segment].push_back(&e);

  // Alternation and frozen cycles, per run.
  std::map<int, std::vector<int>> runs;
  for (size_t s = 0; s < trace.segments.size(); ++s) runs[trace.segments[s].run].push_back(static_cast<int>(s));
  for (const auto& [run, segs] : runs) {
    const auto& first = trace.segments[segs.front()];
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : first.adjacency)
      if (a != b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    std::map<int, long long> last;
    std::map<int, char> frozen;
    long long time = 0;
    for (int s : segs) {
      const auto& seg = trace.segments[s];
      for (size_t i = 0; i < seg.vertices.size(); ++i)
        if (seg.on_directed_cycle[i]) frozen[seg.vertices[i]] = 1;
      for (const TraceEntry* e : flips[s]) {
        int v = e->vertex;
        if (frozen.count(v))
          note(rep.cycles_frozen, "run " + std::to_string(run) + ": vertex " + std::to_string(e->rep) +
                                      " on a directed cycle was flipped");
        auto it = last.find(v);
        if (it != last.end())
          for (int w : adj[v]) {
            auto jt = last.find(w);
            if (jt == last.end() || jt->second < it->second)
              note(rep.flips_alternate, "run " + std::to_string(run) + ": vertex " + std::to_string(e->rep) +
                                            " flipped twice without a neighbor flip in between");
          }
        last[v] = time++;
      }
    }
  }

  for (size_t s = 0; s < trace.segments.size(); ++s) {
    const auto& seg = trace.segments[s];
    if (flips[s].empty()) continue;
    std::map<int, int> local;
    for (size_t i = 0; i < seg.vertices.size(); ++i) local[seg.vertices[i]] = static_cast<int>(i);
    const int q = seg.q;
    std::vector<std::vector<int>> adj(q);
    for (auto [a, b] : seg.adjacency) {
      adj[local[a]].push_back(local[b]);
      adj[local[b]].push_back(local[a]);
    }
    std::vector<int> count(q, 0);
    std::vector<std::vector<HalfEdge>> moves_of(q);
    for (const TraceEntry* e : flips[s]) {
      ++count[local[e->vertex]];
      moves_of[local[e->vertex]].push_back(e->flip_edge);
    }
    if (seg.phase == 1 || seg.phase == 3) {
      // Every unflipped vertex bounds the flips at distance i by i.
      std::vector<int> dist(q, -1);
      std::queue<int> bfs;
      for (int v = 0; v < q; ++v)
        if (count[v] == 0) {
          dist[v] = 0;
          bfs.push(v);
        }
      if (bfs.empty()) {
        note(rep.phase3_has_unflipped, "segment " + std::to_string(s) + " flips every vertex");
      } else {
        while (!bfs.empty()) {
          int v = bfs.front();
          bfs.pop();
          for (int w : adj[v])
            if (dist[w] < 0) {
              dist[w] = dist[v] + 1;
              bfs.push(w);
            }
        }
        for (int v = 0; v < q; ++v)
          if (count[v] > 0 && (dist[v] < 0 || count[v] > dist[v]))
            note(rep.flip_bound, "segment " + std::to_string(s) + ": vertex " + std::to_string(seg.vertices[v]) +
                                     " flipped " + std::to_string(count[v]) + " times");
      }
    }
    if (seg.phase == 2) {
      const long long p = static_cast<long long>(flips[s].size());
      const int k = q > 0 ? static_cast<int>((p - 1) / q) : 0;
      int best = 0;
      for (int v = 0; v < q; ++v) {
        const auto& w = moves_of[v];
        int cur = w.empty() ? 0 : 1;
        best = std::max(best, cur);
        for (size_t i = 1; i < w.size(); ++i) {
          Turn tr = turn_between(host, w[i - 1], w[i]);
          cur = tr.clockwise_steps == 3 && tr.subscript == Color::Red ? cur + 1 : 1;
          best = std::max(best, cur);
        }
      }
      if (best < k)
        note(rep.k_forward, "segment " + std::to_string(s) + ": expected " + std::to_string(k) +
                                "-forward, longest straight run " + std::to_string(best));
      rep.max_forward = std::max(rep.max_forward, k);
    }
  }
  return rep;
}

std::string write_trc(const MoveTrace& trace) {
  std::ostringstream os;
  for (size_t i = 0; i < trace.entries.size(); ++i) {
    const auto& e = trace.entries[i];
    os << "move " << i << " kind=" << to_string(e.kind);
    if (e.kind == MoveKind::Balancing) os << " cycle=" << text::join_ints(e.cycle_reps);
    else os << " vertex=" << e.rep;
    os << " len=" << e.len_before << "->" << e.len_after << " phase=" << e.phase << '\n';
  }
  return os.str();
}

std::vector<TrcRecord> read_trc(std::istream& in) {
  text::LineReader reader(in);
  text::Line line;
  std::vector<TrcRecord> out;
  while (reader.next(line)) {
    const auto& tk = line.tokens;
    if (tk.size() != 6 || tk[0] != "move") text::fail(line.number, "expected 'move <i> kind= vertex|cycle= len= phase='");
    TrcRecord r;
    r.index = static_cast<int>(text::parse_int(tk[1], line.number));
    if (r.index != static_cast<int>(out.size())) text::fail(line.number, "move indices must count up from 0");
    auto kind = text::value_of(tk[2], "kind", line.number);
    if (kind == "flip") r.kind = MoveKind::Flip;
    else if (kind == "short") r.kind = MoveKind::Shortening;
    else if (kind == "bal") r.kind = MoveKind::Balancing;
    else text::fail(line.number, "unknown move kind '" + std::string(kind) + "'");
    auto ids = text::value_of(tk[3], r.kind == MoveKind::Balancing ? "cycle" : "vertex", line.number);
    for (long long v : text::parse_int_list(ids, line.number)) r.ids.push_back(static_cast<int>(v));
    if (r.ids.empty() || (r.kind != MoveKind::Balancing && r.ids.size() != 1))
      text::fail(line.number, "bad vertex list");
    auto len = text::value_of(tk[4], "len", line.number);
    auto arrow = len.find("->");
    if (arrow == std::string_view::npos) text::fail(line.number, "expected len=<before>-><after>");
    r.len_before = text::parse_int(len.substr(0, arrow), line.number);
    r.len_after = text::parse_int(len.substr(arrow + 2), line.number);
    r.phase = static_cast<int>(text::parse_int(text::value_of(tk[5], "phase", line.number), line.number));
    if (r.phase < 1 || r.phase > 3) text::fail(line.number, "phase must be 1, 2 or 3");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TrcRecord> parse_trc(const std::string& text) {
  std::istringstream in(text);
  return read_trc(in);
}

}  // namespace dtutte
