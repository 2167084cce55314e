#include "dtutte/triangulation.hpp"

#include <algorithm>
#include <numeric>

namespace dtutte {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Triangulation::Triangulation(std::vector<HalfEdgeRecord> half_edges, std::vector<FaceRecord> faces)
    : he_(std::move(half_edges)), faces_(std::move(faces)) {
  const int n = num_half_edges();
  int max_vertex = -1;
  std::vector<int> incoming(n, 0);
  for (int i = 0; i < n; ++i) {
    const auto& r = he_[i];
    if (r.next.value < 0 || r.next.value >= n)
      throw StructuralError("half-edge " + std::to_string(i) + ": next out of range");
    if (r.twin.value < -1 || r.twin.value >= n)
      throw StructuralError("half-edge " + std::to_string(i) + ": twin out of range");
    if (r.origin.value < 0) throw StructuralError("half-edge " + std::to_string(i) + ": negative origin");
    max_vertex = std::max(max_vertex, r.origin.value);
    if (++incoming[r.next.value] > 1)
      throw StructuralError("next is not a permutation (half-edge " + std::to_string(r.next.value) + ")");
  }
  num_vertices_ = max_vertex + 1;
  std::vector<char> used(num_vertices_, 0);
  for (const auto& r : he_) used[r.origin.value] = 1;
  for (int v = 0; v < num_vertices_; ++v)
    if (!used[v]) throw StructuralError("vertex " + std::to_string(v) + " has no outgoing half-edge");

  prev_.assign(n, HalfEdge{});
  for (int i = 0; i < n; ++i) prev_[he_[i].next.value] = HalfEdge(i);

  face_of_.assign(n, Face{});
  for (int f = 0; f < num_faces(); ++f) {
    HalfEdge rep = faces_[f].rep;
    if (rep.value < 0 || rep.value >= n) throw StructuralError("face " + std::to_string(f) + ": he out of range");
    HalfEdge h = rep;
    do {
      if (face_of_[h.value].valid())
        throw StructuralError("face " + std::to_string(f) + " shares its orbit with face " +
                              std::to_string(face_of_[h.value].value));
      face_of_[h.value] = Face(f);
      h = next(h);
    } while (h != rep);
  }
  for (int i = 0; i < n; ++i)
    if (!face_of_[i].valid()) throw StructuralError("half-edge " + std::to_string(i) + " belongs to no listed face");

  int paired = 0;
  boundary_index_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (he_[i].twin.valid()) {
      ++paired;
    } else {
      boundary_index_[i] = num_boundary_++;
      boundary_he_.push_back(HalfEdge(i));
    }
  }
  num_edges_ = paired / 2 + num_boundary_;
  build_rotation();
}

HalfEdge Triangulation::reverse(HalfEdge h) const {
  if (is_reverse_dart(h)) return boundary_he_[h.value - num_half_edges()];
  HalfEdge t = twin(h);
  return t.valid() ? t : HalfEdge(num_half_edges() + boundary_index_[h.value]);
}

void Triangulation::build_rotation() {
  const int n = num_half_edges();
  rotation_valid_ = false;
  for (int i = 0; i < n; ++i) {
    HalfEdge t = he_[i].twin;
    if (!t.valid()) continue;
    if (t.value == i || twin(t) != HalfEdge(i)) return;
    if (origin(t) != head(HalfEdge(i))) return;
  }
  std::vector<std::vector<HalfEdge>> out(num_vertices_);
  for (int i = 0; i < n; ++i) out[he_[i].origin.value].push_back(HalfEdge(i));

  rot_begin_.assign(num_vertices_ + 1, 0);
  rot_.clear();
  rot_.reserve(n);
  slot_.assign(n, -1);
  vertex_boundary_.assign(num_vertices_, 0);
  for (int v = 0; v < num_vertices_; ++v) {
    rot_begin_[v] = static_cast<int>(rot_.size());
    HalfEdge start;
    int starts = 0;
    for (HalfEdge h : out[v]) {
      if (!twin(prev(h)).valid()) {
        start = h;
        ++starts;
      }
    }
    if (starts > 1) return;
    const bool boundary = starts == 1;
    if (!boundary) start = out[v].front();
    HalfEdge h = start;
    for (size_t k = 0; k < out[v].size(); ++k) {
      if (slot_[h.value] >= 0) return;
      slot_[h.value] = static_cast<int>(k);
      rot_.push_back(h);
      HalfEdge t = twin(h);
      if (!t.valid()) {
        if (!boundary || k + 1 != out[v].size()) return;
        break;
      }
      h = next(t);
    }
    if (rot_.size() - rot_begin_[v] != out[v].size()) return;
    if (!boundary && h != start) return;
    vertex_boundary_[v] = boundary ? 1 : 0;
  }
  rot_begin_[num_vertices_] = static_cast<int>(rot_.size());
  rotation_valid_ = true;
}

void Triangulation::require_rotation() const {
  if (!rotation_valid_) throw DomainError("rotation system undefined: twin structure is broken");
}

HalfEdge Triangulation::cw(HalfEdge h) const {
  HalfEdge t = twin(h);
  return t.valid() ? next(t) : HalfEdge{};
}

HalfEdge Triangulation::ccw(HalfEdge h) const { return twin(prev(h)); }

std::span<const HalfEdge> Triangulation::outgoing(Vertex v) const {
  require_rotation();
  return {rot_.data() + rot_begin_[v.value], rot_.data() + rot_begin_[v.value + 1]};
}

int Triangulation::degree(Vertex v) const {
  require_rotation();
  return rot_begin_[v.value + 1] - rot_begin_[v.value] + (vertex_boundary_[v.value] ? 1 : 0);
}

HalfEdge Triangulation::rotate_cw(HalfEdge h, int k) const {
  require_rotation();
  Vertex v = origin(h);
  int d = rot_begin_[v.value + 1] - rot_begin_[v.value];
  int s = ((slot(h) + k) % d + d) % d;
  return rot_[rot_begin_[v.value] + s];
}

std::vector<std::vector<HalfEdge>> Triangulation::boundary_cycles() const {
  require_rotation();
  std::vector<std::vector<HalfEdge>> cycles;
  std::vector<char> seen(num_half_edges(), 0);
  for (int i = 0; i < num_half_edges(); ++i) {
    if (twin(HalfEdge(i)).valid() || seen[i]) continue;
    std::vector<HalfEdge> cycle;
    HalfEdge h(i);
    while (!seen[h.value]) {
      seen[h.value] = 1;
      cycle.push_back(h);
      auto out = outgoing(head(h));
      h = out.back();
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

int Triangulation::num_boundary_components() const { return static_cast<int>(boundary_cycles().size()); }

int Triangulation::genus() const { return (2 - num_boundary_components() - euler_characteristic()) / 2; }

bool operator==(const Triangulation& a, const Triangulation& b) {
  if (a.he_.size() != b.he_.size() || a.faces_.size() != b.faces_.size()) return false;
  for (size_t i = 0; i < a.he_.size(); ++i) {
    const auto &x = a.he_[i], &y = b.he_[i];
    if (x.next != y.next || x.twin != y.twin || x.origin != y.origin) return false;
  }
  for (size_t f = 0; f < a.faces_.size(); ++f)
    if (a.faces_[f].rep != b.faces_[f].rep || a.faces_[f].color != b.faces_[f].color) return false;
  return true;
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::DegreeTooLow: return "DegreeTooLow";
    case ViolationKind::DualNotBipartite: return "DualNotBipartite";
    case ViolationKind::NonTriangleFace: return "NonTriangleFace";
    case ViolationKind::Disconnected: return "Disconnected";
    case ViolationKind::TwinBroken: return "TwinBroken";
  }
  return "?";
}

bool ValidationReport::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

ValidationReport validate_reducing(const Triangulation& t) {
  ValidationReport rep;
  auto add = [&](ViolationKind k, std::string where) { rep.violations.push_back({k, std::move(where)}); };
  const int n = t.num_half_edges();

  for (int f = 0; f < t.num_faces(); ++f) {
    HalfEdge h = t.face_half_edge(Face(f));
    int len = 0;
    HalfEdge g = h;
    do {
      ++len;
      g = t.next(g);
    } while (g != h);
    if (len != 3) add(ViolationKind::NonTriangleFace, "face " + std::to_string(f));
  }

  for (int i = 0; i < n; ++i) {
    HalfEdge h(i), tw = t.twin(h);
    if (!tw.valid()) continue;
    if (tw == h || t.twin(tw) != h || t.origin(tw) != t.head(h)) {
      add(ViolationKind::TwinBroken, "half-edge " + std::to_string(i));
      continue;
    }
    if (i < tw.value && t.left_color(h) == t.left_color(tw))
      add(ViolationKind::DualNotBipartite, "edge " + std::to_string(i) + "/" + std::to_string(tw.value));
  }
  if (!t.rotation_valid() && !rep.has(ViolationKind::TwinBroken))
    add(ViolationKind::TwinBroken, "vertex fans are not single cycles or chains");

  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    uf.unite(i, t.next(HalfEdge(i)).value);
    HalfEdge tw = t.twin(HalfEdge(i));
    if (tw.valid()) uf.unite(i, tw.value);
  }
  for (int i = 0; i < n; ++i)
    if (uf.find(i) != 0) {
      add(ViolationKind::Disconnected, "half-edge " + std::to_string(i));
      break;
    }

  if (t.rotation_valid()) {
    for (int v = 0; v < t.num_vertices(); ++v) {
      if (t.on_boundary(Vertex(v))) continue;
      if (t.degree(Vertex(v)) < 6)
        add(ViolationKind::DegreeTooLow,
            "vertex " + std::to_string(v) + " (degree " + std::to_string(t.degree(Vertex(v))) + ")");
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

int ComplexBuilder::add_face(Color c) {
  colors_.push_back(c);
  twin_.insert(twin_.end(), 3, -1);
  return num_faces() - 1;
}

void ComplexBuilder::glue(int a, int b) {
  if (a == b || twin_.at(a) >= 0 || twin_.at(b) >= 0)
    throw StructuralError("glue: half-edges " + std::to_string(a) + ", " + std::to_string(b) + " not free");
  twin_[a] = b;
  twin_[b] = a;
}

void ComplexBuilder::unglue(int a) {
  int b = twin_.at(a);
  if (b < 0) return;
  twin_[a] = -1;
  twin_[b] = -1;
}

std::vector<int> ComplexBuilder::append(const Triangulation& t, bool mirror, bool swap_colors) {
  std::vector<int> map(t.num_half_edges(), -1);
  for (int f = 0; f < t.num_faces(); ++f) {
    HalfEdge s0 = t.face_half_edge(Face(f));
    HalfEdge s[3] = {s0, t.next(s0), t.next(t.next(s0))};
    if (t.next(s[2]) != s0) throw StructuralError("append: face " + std::to_string(f) + " is not a triangle");
    Color c = t.color(Face(f));
    int F = add_face(swap_colors ? opposite(c) : c);
    for (int i = 0; i < 3; ++i) map[s[i].value] = side(F, mirror ? 2 - i : i);
  }
  for (int i = 0; i < t.num_half_edges(); ++i) {
    HalfEdge tw = t.twin(HalfEdge(i));
    if (tw.valid() && i < tw.value) glue(map[i], map[tw.value]);
  }
  return map;
}

Triangulation ComplexBuilder::build() const {
  const int n = static_cast<int>(twin_.size());
  UnionFind uf(n);
  for (int a = 0; a < n; ++a) {
    int b = twin_[a];
    if (b < a) continue;
    uf.unite(a, next_of(b));
    uf.unite(next_of(a), b);
  }
  std::vector<int> vid(n, -1);
  int nv = 0;
  std::vector<Triangulation::HalfEdgeRecord> he(n);
  for (int h = 0; h < n; ++h) {
    int root = uf.find(h);
    if (vid[root] < 0) vid[root] = nv++;
    he[h] = {HalfEdge(next_of(h)), twin_[h] >= 0 ? HalfEdge(twin_[h]) : HalfEdge{}, Vertex(vid[root])};
  }
  std::vector<Triangulation::FaceRecord> faces(num_faces());
  for (int f = 0; f < num_faces(); ++f) faces[f] = {HalfEdge(3 * f), colors_[f]};
  return Triangulation(std::move(he), std::move(faces));
}

}  // namespace dtutte
