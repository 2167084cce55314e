#include "disk_grower.hpp"

namespace dtutte::detail {

int DiskGrower::new_vertex(int dist, Vertex proj) {
  dist_.push_back(dist);
  deg_.push_back(0);
  out_b_.push_back(-1);
  in_b_.push_back(-1);
  any_out_.push_back(-1);
  vproj_.push_back(proj);
  queue_.emplace(dist, num_vertices() - 1);
  return num_vertices() - 1;
}

int DiskGrower::new_face(Color c) {
  int f = static_cast<int>(colors_.size());
  colors_.push_back(c);
  for (int i = 0; i < 3; ++i) {
    next_.push_back(3 * f + (i + 1) % 3);
    twin_.push_back(-1);
    origin_.push_back(-1);
    proj_.push_back(HalfEdge{});
  }
  return f;
}

DiskGrower::DiskGrower(int center_degree, Color first_color) {
  if (center_degree < 2 || center_degree % 2 != 0) throw DomainError("DiskGrower: center degree must be even");
  const int d = center_degree;
  int root = new_vertex(0, Vertex{});
  std::vector<int> ring(d);
  for (int i = 0; i < d; ++i) ring[i] = new_vertex(1, Vertex{});
  std::vector<int> faces(d);
  for (int i = 0; i < d; ++i) {
    faces[i] = new_face(i % 2 == 0 ? first_color : opposite(first_color));
    int s0 = 3 * faces[i];
    origin_[s0] = root;
    origin_[s0 + 1] = ring[i];
    origin_[s0 + 2] = ring[(i + 1) % d];
  }
  for (int i = 0; i < d; ++i) {
    int s0 = 3 * faces[i], prev_s2 = 3 * faces[(i + d - 1) % d] + 2;
    twin_[s0] = prev_s2;
    twin_[prev_s2] = s0;
    out_b_[ring[i]] = s0 + 1;
    in_b_[ring[(i + 1) % d]] = s0 + 1;
    deg_[ring[i]] = 3;
    any_out_[ring[i]] = s0 + 1;
  }
  deg_[root] = d;
  any_out_[root] = 3 * faces[0];
}

DiskGrower::DiskGrower(const Triangulation* base, Vertex p) : base_(base) {
  if (!base->closed()) throw DomainError("cover chart: base surface must be closed");
  auto out = base->outgoing(p);
  const int d = static_cast<int>(out.size());
  int root = new_vertex(0, p);
  std::vector<int> ring(d);
  std::vector<HalfEdge> spoke(d);
  for (int i = 0; i < d; ++i) {
    spoke[i] = out[(d - i) % d];
    ring[i] = new_vertex(1, base->head(spoke[i]));
  }
  std::vector<int> faces(d);
  for (int i = 0; i < d; ++i) {
    faces[i] = new_face(base->left_color(spoke[i]));
    int s0 = 3 * faces[i];
    origin_[s0] = root;
    origin_[s0 + 1] = ring[i];
    origin_[s0 + 2] = ring[(i + 1) % d];
    proj_[s0] = spoke[i];
    proj_[s0 + 1] = base->next(spoke[i]);
    proj_[s0 + 2] = base->prev(spoke[i]);
    if (base->head(proj_[s0 + 1]) != vproj_[ring[(i + 1) % d]])
      throw InvariantViolation("cover chart: base star is inconsistent");
  }
  for (int i = 0; i < d; ++i) {
    int s0 = 3 * faces[i], prev_s2 = 3 * faces[(i + d - 1) % d] + 2;
    twin_[s0] = prev_s2;
    twin_[prev_s2] = s0;
    out_b_[ring[i]] = s0 + 1;
    in_b_[ring[(i + 1) % d]] = s0 + 1;
    deg_[ring[i]] = 3;
    any_out_[ring[i]] = s0 + 1;
  }
  deg_[root] = d;
  any_out_[root] = 3 * faces[0];
}

std::vector<int> DiskGrower::rotation(int v) const {
  if (!complete(v)) throw DomainError("rotation: vertex " + std::to_string(v) + " is not complete");
  std::vector<int> rot;
  int h = any_out_[v];
  do {
    rot.push_back(h);
    h = cw(h);
  } while (h != any_out_[v]);
  return rot;
}

void DiskGrower::complete_vertex(int v, int target_degree) {
  if (complete(v)) return;
  const int h_out = out_b_[v], h_in = in_b_[v];
  const int u = origin_[h_in];
  const int d = base_ ? base_->degree(vproj_[v]) : target_degree;
  const int j = d - deg_[v];
  if (j < 0) throw InvariantViolation("complete_vertex: vertex " + std::to_string(v) + " already exceeds its degree");

  auto fill = [&](int f, int prev_side) {
    int s0 = 3 * f;
    twin_[s0] = prev_side;
    twin_[prev_side] = s0;
    if (base_) {
      HalfEdge b0 = base_->twin(proj_[prev_side]);
      proj_[s0] = b0;
      proj_[s0 + 1] = base_->next(b0);
      proj_[s0 + 2] = base_->prev(b0);
    }
  };
  auto face_color = [&](int prev_side) {
    return base_ ? base_->left_color(base_->twin(proj_[prev_side])) : opposite(colors_[prev_side / 3]);
  };

  int prev_side = h_out;
  int prev_head = head(h_out);
  for (int i = 0; i < j; ++i) {
    int f = new_face(face_color(prev_side));
    fill(f, prev_side);
    int s0 = 3 * f;
    Vertex vp = base_ ? base_->head(proj_[s0 + 1]) : Vertex{};
    int c = new_vertex(dist_[v] + 1, vp);
    origin_[s0] = prev_head;
    origin_[s0 + 1] = v;
    origin_[s0 + 2] = c;
    deg_[c] += 2;
    deg_[prev_head] += 1;
    deg_[v] += 1;
    out_b_[c] = s0 + 2;
    in_b_[prev_head] = s0 + 2;
    any_out_[c] = s0 + 2;
    prev_side = s0 + 1;
    prev_head = c;
  }
  int f = new_face(face_color(prev_side));
  fill(f, prev_side);
  int s0 = 3 * f;
  origin_[s0] = prev_head;
  origin_[s0 + 1] = v;
  origin_[s0 + 2] = u;
  twin_[s0 + 1] = h_in;
  twin_[h_in] = s0 + 1;
  if (base_) {
    if (base_->twin(proj_[h_in]) != proj_[s0 + 1])
      throw InvariantViolation("complete_vertex: chart fan does not close consistently");
  } else if (colors_[f] == colors_[h_in / 3]) {
    throw InvariantViolation("complete_vertex: closing triangle breaks the coloring (odd degree?)");
  }
  deg_[u] += 1;
  deg_[prev_head] += 1;
  out_b_[u] = s0 + 2;
  in_b_[prev_head] = s0 + 2;
  out_b_[v] = -1;
  in_b_[v] = -1;
  if (!base_) return;
  for (int h : rotation(v)) relax(head(h), dist_[v] + 1);
  close_if_full(u);
  close_if_full(prev_head);
}

void DiskGrower::relax(int v, int d) {
  std::vector<std::pair<int, int>> todo{{v, d}};
  while (!todo.empty()) {
    auto [x, dx] = todo.back();
    todo.pop_back();
    if (dx >= dist_[x]) continue;
    dist_[x] = dx;
    queue_.emplace(dx, x);
    if (complete(x))
      for (int h : rotation(x)) todo.emplace_back(head(h), dx + 1);
  }
}

// In the cover a frontier vertex missing exactly one triangle has both
// frontier neighbours adjacent; add that triangle now so later fans never
// wrap past the vertex's degree.
void DiskGrower::close_if_full(int v) {
  if (!complete(v) && deg_[v] == base_->degree(vproj_[v])) complete_vertex(v);
}

int DiskGrower::next_incomplete() const {
  while (!queue_.empty()) {
    auto [d, v] = queue_.top();
    if (!complete(v) && d == dist_[v]) return v;
    queue_.pop();
  }
  return -1;
}

Triangulation DiskGrower::snapshot() const {
  std::vector<Triangulation::HalfEdgeRecord> he(num_half_edges());
  for (int h = 0; h < num_half_edges(); ++h)
    he[h] = {HalfEdge(next_[h]), twin_[h] >= 0 ? HalfEdge(twin_[h]) : HalfEdge{}, Vertex(origin_[h])};
  std::vector<Triangulation::FaceRecord> faces(colors_.size());
  for (size_t f = 0; f < colors_.size(); ++f) faces[f] = {HalfEdge(static_cast<int32_t>(3 * f)), colors_[f]};
  return Triangulation(std::move(he), std::move(faces));
}

}  // namespace dtutte::detail
