#include "dtutte/cover.hpp"

#include <algorithm>
#include <queue>

#include "disk_grower.hpp"

namespace dtutte {

CoverChart::CoverChart(std::shared_ptr<const Triangulation> base, Vertex basepoint)
    : base_(std::move(base)), grower_(std::make_unique<detail::DiskGrower>(base_.get(), basepoint)), radius_(0) {}

CoverChart::~CoverChart() = default;
CoverChart::CoverChart(CoverChart&&) noexcept = default;
CoverChart& CoverChart::operator=(CoverChart&&) noexcept = default;

void CoverChart::expand(int radius) {
  while (true) {
    int v = grower_->next_incomplete();
    if (v < 0 || grower_->dist(v) > radius) break;
    grower_->complete_vertex(v);
  }
  radius_ = std::max(radius_, radius);
}

int CoverChart::num_vertices() const { return grower_->num_vertices(); }
int CoverChart::num_half_edges() const { return grower_->num_half_edges(); }
bool CoverChart::complete(Vertex v) const { return grower_->complete(v.value); }
int CoverChart::dist(Vertex v) const { return grower_->dist(v.value); }
HalfEdge CoverChart::next(HalfEdge h) const { return HalfEdge(grower_->next(h.value)); }
HalfEdge CoverChart::twin(HalfEdge h) const {
  int t = grower_->twin(h.value);
  return t < 0 ? HalfEdge{} : HalfEdge(t);
}
Vertex CoverChart::origin(HalfEdge h) const { return Vertex(grower_->origin(h.value)); }
Vertex CoverChart::head(HalfEdge h) const { return Vertex(grower_->head(h.value)); }
HalfEdge CoverChart::project(HalfEdge h) const { return grower_->projection(h.value); }
Vertex CoverChart::project(Vertex v) const { return grower_->vertex_projection(v.value); }

void CoverChart::ensure_complete(Vertex v) {
  if (!complete(v)) grower_->complete_vertex(v.value);
}

std::vector<HalfEdge> CoverChart::outgoing(Vertex v) {
  ensure_complete(v);
  std::vector<HalfEdge> out;
  for (int h : grower_->rotation(v.value)) out.push_back(HalfEdge(h));
  // Start at the lift of the base's first slot so orders match the base.
  HalfEdge first = base_->outgoing(project(v)).front();
  auto it = std::find_if(out.begin(), out.end(), [&](HalfEdge h) { return project(h) == first; });
  std::rotate(out.begin(), it, out.end());
  return out;
}

HalfEdge CoverChart::lift(Vertex v, HalfEdge b) {
  if (base_->origin(b) != project(v)) throw DomainError("lift: base half-edge does not leave the projected vertex");
  for (HalfEdge h : outgoing(v))
    if (project(h) == b) return h;
  throw InvariantViolation("lift: no chart half-edge over the base half-edge");
}

Triangulation CoverChart::snapshot() const { return grower_->snapshot(); }

Walk lift_walk(CoverChart& chart, const Walk& w, Vertex base_lift) {
  if (chart.project(base_lift) != w.start) throw DomainError("lift_walk: lift does not sit over the walk's start");
  Walk out{base_lift, {}, false};
  Vertex at = base_lift;
  for (HalfEdge b : w.edges) {
    HalfEdge h = chart.lift(at, b);
    out.edges.push_back(h);
    at = chart.head(h);
  }
  out.closed = w.closed && at == base_lift;
  return out;
}

Walk LineWindow::as_walk(const CoverChart& chart) const {
  return Walk{edges.empty() ? center : chart.origin(edges.front()), edges, false};
}

namespace {

int slot_in(const std::vector<HalfEdge>& rot, HalfEdge h) {
  auto it = std::find(rot.begin(), rot.end(), h);
  if (it == rot.end()) throw InvariantViolation("line window: half-edge missing from its rotation");
  return static_cast<int>(it - rot.begin());
}

}  // namespace

LineWindow line_window(CoverChart& chart, Vertex v, HalfEdge first, Side side, int L) {
  if (L < 1) throw DomainError("line_window: L must be positive");
  if (chart.origin(first) != v) throw DomainError("line_window: first edge does not leave v");
  if (chart.base().left_color(chart.project(first)) != Color::Red)
    throw DomainError("line_window: first edge must have a red face on its left");
  auto step_of = [&](int d) { return side == Side::Left ? 3 : d - 3; };
  LineWindow win;
  win.side = side;
  win.half_length = L;
  win.center = v;
  std::vector<HalfEdge> fwd{first};
  for (int i = 1; i < L; ++i) {
    HalfEdge back = chart.twin(fwd.back());
    auto rot = chart.outgoing(chart.head(fwd.back()));
    int d = static_cast<int>(rot.size());
    fwd.push_back(rot[(slot_in(rot, back) + step_of(d)) % d]);
  }
  std::vector<HalfEdge> bwd;
  HalfEdge cur = first;
  for (int i = 0; i < L; ++i) {
    auto rot = chart.outgoing(chart.origin(cur));
    int d = static_cast<int>(rot.size());
    HalfEdge back = rot[((slot_in(rot, cur) - step_of(d)) % d + d) % d];
    cur = chart.twin(back);
    bwd.push_back(cur);
  }
  win.edges.assign(bwd.rbegin(), bwd.rend());
  win.edges.insert(win.edges.end(), fwd.begin(), fwd.end());
  return win;
}

std::vector<LineWindow> line_windows(CoverChart& chart, Vertex v, Side side, int L) {
  std::vector<LineWindow> out;
  for (HalfEdge h : chart.outgoing(v))
    if (chart.base().left_color(chart.project(h)) == Color::Red) out.push_back(line_window(chart, v, h, side, L));
  return out;
}

LineWindow line_window(CoverChart& chart, Vertex v, Side side, int L) {
  for (HalfEdge h : chart.outgoing(v))
    if (chart.base().left_color(chart.project(h)) == Color::Red) return line_window(chart, v, h, side, L);
  throw InvariantViolation("line_window: vertex has no red sector");
}

EscapeResult escape_probe(const SimplicialMap& f, int vertex, Side side, int depth, int L) {
  const Triangulation& t = *f.host;
  if (!t.closed()) throw DomainError("escape_probe: host must be closed");
  if (vertex < 0 || vertex >= f.num_vertices()) throw DomainError("escape_probe: vertex out of range");
  CoverChart chart(f.host, f.position[vertex]);
  auto windows = line_windows(chart, chart.root(), side, L);

  struct Inc {
    int other;
    HalfEdge out;  // invalid for constant edges
  };
  std::vector<std::vector<Inc>> adj(f.num_vertices());
  for (const auto& e : f.edges) {
    adj[e.u].push_back({e.v, e.image});
    adj[e.v].push_back({e.u, e.constant() ? HalfEdge{} : t.twin(e.image)});
  }

  EscapeResult res;
  res.escapes = true;
  for (size_t w = 0; w < windows.size(); ++w) {
    const LineWindow& win = windows[w];
    std::vector<HalfEdge> base_edges;
    for (HalfEdge h : win.edges) base_edges.push_back(chart.project(h));
    const int states = f.num_vertices() * (L + 1);
    std::vector<int> parent(states, -2), steps(states, 0);
    std::queue<int> q;
    int start = vertex * (L + 1);
    parent[start] = -1;
    q.push(start);
    std::vector<int> witness;
    while (!q.empty() && witness.empty()) {
      int s = q.front();
      q.pop();
      int x = s / (L + 1), i = s % (L + 1);
      if (steps[s] >= depth) continue;
      HalfEdge back = t.twin(base_edges[i - 1 + L]);
      HalfEdge fwd = i < L ? base_edges[i + L] : HalfEdge{};
      const int d = t.degree(t.origin(back));
      const int k = side == Side::Left ? 3 : d - 3;
      for (const Inc& inc : adj[x]) {
        int to = -1;
        if (!inc.out.valid()) {
          to = inc.other * (L + 1) + i;
        } else {
          int r = ((t.slot(inc.out) - t.slot(back)) % d + d) % d;
          bool escape = side == Side::Left ? r > k : (r > 0 && r < k);
          if (escape) {
            for (int c = s; c >= 0; c = parent[c]) witness.push_back(c / (L + 1));
            std::reverse(witness.begin(), witness.end());
            witness.push_back(inc.other);
            break;
          }
          if (r == 0 && i > 0) to = inc.other * (L + 1) + (i - 1);
          if (r == k && fwd.valid() && inc.out == fwd) to = inc.other * (L + 1) + (i + 1);
        }
        if (to >= 0 && parent[to] == -2) {
          parent[to] = s;
          steps[to] = steps[s] + 1;
          q.push(to);
        }
      }
    }
    if (witness.empty() && res.failing_line < 0) {
      res.failing_line = static_cast<int>(w);
      res.escapes = false;
    }
    res.witnesses.push_back(std::move(witness));
  }
  return res;
}

bool flat_zone_at(const Triangulation& base, HalfEdge h, int s) {
  if (s <= 2) return true;
  HalfEdge bottom = h;
  for (int i = 0; i + 1 <= s - 1; ++i) {
    HalfEdge cur = bottom;
    for (int j = 0; i + j <= s - 1; ++j) {
      Vertex p = base.origin(cur);
      if (i >= 1 && j >= 1 && base.degree(p) != 6) return false;
      if (i + j + 1 <= s - 1) cur = base.rotate_cw(base.twin(base.rotate_cw(cur, -1)), -2);
    }
    bottom = base.rotate_cw(base.twin(bottom), 3);
  }
  return true;
}

int max_flat_zone(const Triangulation& base, int cap) {
  int best = 1;
  for (int h = 0; h < base.num_half_edges() && best < cap; ++h) {
    int s = best;
    while (s < cap && flat_zone_at(base, HalfEdge(h), s + 1)) ++s;
    best = std::max(best, s);
  }
  return best;
}

}  // namespace dtutte
