#include "dtutte/constructions.hpp"

#include <cstdlib>

namespace dtutte {

Triangulation build_torus() {
  // Half-edges a+, b+, c-, c+, a-, b-; the lower-left triangle is red.
  ComplexBuilder b;
  int lower = b.add_face(Color::Red);
  int upper = b.add_face(Color::Blue);
  b.glue(ComplexBuilder::side(lower, 0), ComplexBuilder::side(upper, 1));
  b.glue(ComplexBuilder::side(lower, 1), ComplexBuilder::side(upper, 2));
  b.glue(ComplexBuilder::side(lower, 2), ComplexBuilder::side(upper, 0));
  return b.build();
}

Walk torus_obstruction_walk(const Triangulation& torus) {
  if (torus.num_vertices() != 1 || !torus.closed() || torus.genus() != 1)
    throw DomainError("torus_obstruction_walk: expects a one-vertex torus");
  for (int a = 0; a < torus.num_half_edges(); ++a)
    for (int b = 0; b < torus.num_half_edges(); ++b) {
      Walk w{Vertex(0), {HalfEdge(a), HalfEdge(b)}, true};
      auto tr = turns(torus, w);
      int r = 0, bl = 0;
      for (const Turn& x : tr) {
        if (std::abs(x.signed_value()) != 2) break;
        (x.subscript == Color::Red ? r : bl) += x.signed_value();
      }
      if (tr.size() == 2 && std::abs(r) == 2 && std::abs(bl) == 2 && r + bl == 0) return w;
    }
  throw InvariantViolation("torus_obstruction_walk: no such walk");
}

Triangulation subdivide(const Triangulation& t) {
  if (!validate_reducing(t).ok) throw DomainError("subdivide: input is not a reducing triangulation");
  ComplexBuilder b;
  const int n = t.num_half_edges();
  std::vector<int> first_half(n), second_half(n);
  for (int f = 0; f < t.num_faces(); ++f) {
    HalfEdge s0 = t.face_half_edge(Face(f));
    HalfEdge s[3] = {s0, t.next(s0), t.prev(s0)};
    Color c = t.color(Face(f));
    int corner[3];
    for (int i = 0; i < 3; ++i) corner[i] = b.add_face(c);
    int central = b.add_face(opposite(c));
    for (int i = 0; i < 3; ++i) {
      b.glue(ComplexBuilder::side(corner[i], 1), ComplexBuilder::side(central, (i + 2) % 3));
      first_half[s[i].value] = ComplexBuilder::side(corner[i], 0);
      second_half[s[i].value] = ComplexBuilder::side(corner[(i + 1) % 3], 2);
    }
  }
  for (int h = 0; h < n; ++h) {
    HalfEdge tw = t.twin(HalfEdge(h));
    if (!tw.valid() || tw.value < h) continue;
    b.glue(first_half[h], second_half[tw.value]);
    b.glue(second_half[h], first_half[tw.value]);
  }
  return b.build();
}

namespace detail {

CrownFaces add_crown_faces(ComplexBuilder& b, std::span<const Color> up_colors, std::span<const int> downs) {
  const int l = static_cast<int>(up_colors.size());
  CrownFaces cf;
  for (int j = 0; j < l; ++j) cf.up.push_back(b.add_face(up_colors[j]));
  cf.down.resize(l);
  cf.spokes.resize(l);
  for (int j = 0; j < l; ++j) {
    int prev_spoke = ComplexBuilder::side(cf.up[j], 1);
    cf.spokes[j].push_back(prev_spoke);
    Color c = up_colors[j];
    for (int i = 0; i < downs[j]; ++i) {
      c = opposite(c);
      int d = b.add_face(c);
      cf.down[j].push_back(d);
      b.glue(prev_spoke, ComplexBuilder::side(d, 0));
      prev_spoke = ComplexBuilder::side(d, 1);
      cf.spokes[j].push_back(prev_spoke);
    }
    b.glue(prev_spoke, ComplexBuilder::side(cf.up[(j + l - 1) % l], 2));
  }
  return cf;
}

}  // namespace detail

Triangulation crown(int k) {
  if (k < 2) throw DomainError("crown: needs at least two triangles");
  const int ups = (k + 1) / 2;
  const int total_downs = k / 2;
  std::vector<int> downs(ups, 0);
  for (int j = 0; j < total_downs; ++j) downs[j] = 1;
  // Walk the circular order U_{l-1}, D.., U_{l-2}, ... assigning alternating colors.
  std::vector<Color> colors(ups);
  Color c = Color::Red;
  for (int j = ups - 1; j >= 0; --j) {
    colors[j] = c;
    if (downs[j] % 2 == 0) c = opposite(c);
  }
  ComplexBuilder b;
  detail::add_crown_faces(b, colors, downs);
  return b.build();
}

Triangulation build_wheel(int k) {
  if (k < 3) throw DomainError("wheel: needs at least three triangles");
  ComplexBuilder b;
  for (int i = 0; i < k; ++i) b.add_face(i % 2 == 0 ? Color::Red : Color::Blue);
  for (int i = 0; i < k; ++i) b.glue(ComplexBuilder::side(i, 2), ComplexBuilder::side((i + 1) % k, 0));
  return b.build();
}

GadgetSides gadget_sides(const Triangulation& gadget) {
  GadgetSides s;
  for (int h = 0; h < gadget.num_half_edges(); ++h) {
    HalfEdge e(h);
    if (!gadget.on_boundary(e)) continue;
    if (gadget.left_color(e) == Color::Red) {
      if (s.red_side.valid()) throw DomainError("gadget_sides: more than one red boundary edge");
      s.red_side = e;
    } else {
      if (s.blue_side.valid()) throw DomainError("gadget_sides: more than one blue boundary edge");
      s.blue_side = e;
    }
  }
  if (!s.red_side.valid() || !s.blue_side.valid()) throw DomainError("gadget_sides: boundary is not a two-colored digon");
  return s;
}

Triangulation build_one_gadget() {
  ComplexBuilder b;
  auto map = b.append(subdivide(build_torus()));
  b.unglue(map[0]);
  return b.build();
}

Triangulation build_three_gadget() {
  Triangulation one = build_one_gadget();
  GadgetSides s = gadget_sides(one);
  ComplexBuilder b;
  std::vector<std::vector<int>> maps;
  for (int i = 0; i < 3; ++i) maps.push_back(b.append(one));
  for (int i = 0; i + 1 < 3; ++i) b.glue(maps[i][s.blue_side.value], maps[i + 1][s.red_side.value]);
  return b.build();
}

Doubling double_with_gadgets_mapped(const Triangulation& t0) {
  if (t0.closed()) throw DomainError("double_with_gadgets: input has no boundary");
  ComplexBuilder b;
  auto copy = b.append(t0);
  auto mirror = b.append(t0, true, true);
  Triangulation three = build_three_gadget();
  GadgetSides s = gadget_sides(three);
  int gadgets = 0;
  for (int h = 0; h < t0.num_half_edges(); ++h) {
    if (!t0.on_boundary(HalfEdge(h))) continue;
    auto g = b.append(three);
    ++gadgets;
    // The gadget side facing the original copy must carry the other color.
    bool blue_outside = t0.left_color(HalfEdge(h)) == Color::Blue;
    int toward_copy = g[(blue_outside ? s.red_side : s.blue_side).value];
    int toward_mirror = g[(blue_outside ? s.blue_side : s.red_side).value];
    b.glue(copy[h], toward_copy);
    b.glue(mirror[h], toward_mirror);
  }
  Doubling d{b.build(), {}, {}, gadgets};
  for (int h = 0; h < t0.num_half_edges(); ++h) {
    d.copy.push_back(HalfEdge(copy[h]));
    d.mirror.push_back(HalfEdge(mirror[h]));
  }
  return d;
}

Triangulation double_with_gadgets(const Triangulation& t0) { return double_with_gadgets_mapped(t0).surface; }

}  // namespace dtutte
