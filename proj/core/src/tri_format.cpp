#include <istream>
#include <sstream>

#include "dtutte/triangulation.hpp"
#include "text_util.hpp"

namespace dtutte {

std::string write_tri(const Triangulation& t) {
  std::ostringstream os;
  os << "tri " << t.num_half_edges() << '\n';
  for (int h = 0; h < t.num_half_edges(); ++h) {
    const auto& r = t.half_edge_table()[h];
    os << "he " << h << " next=" << r.next.value << " twin=";
    if (r.twin.valid())
      os << r.twin.value;
    else
      os << '-';
    os << " origin=" << r.origin.value << '\n';
  }
  for (int f = 0; f < t.num_faces(); ++f) {
    const auto& r = t.face_table()[f];
    os << "face " << f << " color=" << color_char(r.color) << " he=" << r.rep.value << '\n';
  }
  return os.str();
}

Triangulation read_tri(std::istream& in) {
  text::LineReader reader(in);
  text::Line line;
  if (!reader.next(line)) throw StructuralError("empty TRI input");
  if (line.tokens.size() != 2 || line.tokens[0] != "tri") text::fail(line.number, "expected header 'tri <n>'");
  long long n = text::parse_int(line.tokens[1], line.number);
  if (n < 0 || n > (1 << 28)) text::fail(line.number, "bad half-edge count");

  std::vector<Triangulation::HalfEdgeRecord> he(n);
  std::vector<char> seen(n, 0);
  std::vector<Triangulation::FaceRecord> faces;
  std::vector<char> face_seen;
  while (reader.next(line)) {
    const auto& tk = line.tokens;
    if (tk[0] == "he") {
      if (tk.size() != 5) text::fail(line.number, "he line needs 4 fields");
      long long id = text::parse_int(tk[1], line.number);
      if (id < 0 || id >= n) text::fail(line.number, "half-edge id out of range");
      if (seen[id]) text::fail(line.number, "duplicate half-edge " + std::to_string(id));
      seen[id] = 1;
      long long nx = text::parse_int(text::value_of(tk[2], "next", line.number), line.number);
      auto tw_text = text::value_of(tk[3], "twin", line.number);
      long long tw = tw_text == "-" ? -1 : text::parse_int(tw_text, line.number);
      long long org = text::parse_int(text::value_of(tk[4], "origin", line.number), line.number);
      if (nx < 0 || nx >= n || tw < -1 || tw >= n || org < 0 || org >= n)
        text::fail(line.number, "index out of range");
      he[id] = {HalfEdge(static_cast<int32_t>(nx)), HalfEdge(static_cast<int32_t>(tw)),
                Vertex(static_cast<int32_t>(org))};
    } else if (tk[0] == "face") {
      if (tk.size() != 4) text::fail(line.number, "face line needs 3 fields");
      long long id = text::parse_int(tk[1], line.number);
      if (id < 0 || id >= n) text::fail(line.number, "face id out of range");
      if (static_cast<size_t>(id) >= faces.size()) {
        faces.resize(id + 1);
        face_seen.resize(id + 1, 0);
      }
      if (face_seen[id]) text::fail(line.number, "duplicate face " + std::to_string(id));
      face_seen[id] = 1;
      auto col = text::value_of(tk[2], "color", line.number);
      if (col != "r" && col != "b") text::fail(line.number, "color must be r or b");
      long long rep = text::parse_int(text::value_of(tk[3], "he", line.number), line.number);
      if (rep < 0 || rep >= n) text::fail(line.number, "face he out of range");
      faces[id] = {HalfEdge(static_cast<int32_t>(rep)), col == "r" ? Color::Red : Color::Blue};
    } else {
      text::fail(line.number, "unknown record '" + std::string(tk[0]) + "'");
    }
  }
  for (long long i = 0; i < n; ++i)
    if (!seen[i]) throw StructuralError("half-edge " + std::to_string(i) + " missing");
  for (size_t f = 0; f < faces.size(); ++f)
    if (!face_seen[f]) throw StructuralError("face " + std::to_string(f) + " missing");
  return Triangulation(std::move(he), std::move(faces));
}

Triangulation parse_tri(const std::string& text) {
  std::istringstream in(text);
  return read_tri(in);
}

}  // namespace dtutte
