#include "dtutte/walk.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace dtutte {

std::string Turn::to_string() const {
  return std::to_string(signed_value()) + "_" + color_char(subscript);
}

TurnClass classify(const Turn& t) {
  int k = t.signed_value();
  if (k >= -1 && k <= 1) return TurnClass::Bad;
  if ((k == 2 || k == -2) && t.subscript == Color::Red) return TurnClass::Bad;
  return TurnClass::Good;
}

void check_walk(const Triangulation& t, const Walk& w) {
  if (w.start.value < 0 || w.start.value >= t.num_vertices()) throw StructuralError("walk start out of range");
  Vertex at = w.start;
  for (size_t i = 0; i < w.edges.size(); ++i) {
    HalfEdge h = w.edges[i];
    if (h.value < 0 || h.value >= t.num_darts())
      throw StructuralError("walk edge " + std::to_string(i) + " out of range");
    if (t.origin(h) != at) throw StructuralError("walk edge " + std::to_string(i) + " does not start where the walk is");
    at = t.head(h);
  }
  if (w.closed && at != w.start) throw StructuralError("closed walk does not return to its start");
}

Vertex walk_end(const Triangulation& t, const Walk& w) { return w.edges.empty() ? w.start : t.head(w.edges.back()); }

Walk reversed(const Triangulation& t, const Walk& w) {
  Walk r{walk_end(t, w), {}, w.closed};
  for (auto it = w.edges.rbegin(); it != w.edges.rend(); ++it) r.edges.push_back(t.reverse(*it));
  return r;
}

Turn turn_between(const Triangulation& t, HalfEdge in, HalfEdge out) {
  Vertex v = t.origin(out);
  if (t.head(in) != v) throw StructuralError("turn: half-edges are not consecutive");
  if (t.on_boundary(v)) throw ChartExpansionRequired(v, "turn at boundary vertex " + std::to_string(v.value));
  HalfEdge back = t.twin(in);
  int d = t.degree(v);
  int steps = ((t.slot(out) - t.slot(back)) % d + d) % d;
  return Turn{steps, d, t.left_color(in)};
}

Turn turn(const Triangulation& t, const Walk& w, size_t i) {
  const size_t n = w.edges.size();
  if (w.closed) {
    if (i >= n) throw DomainError("turn: position out of range");
    return turn_between(t, w.edges[(i + n - 1) % n], w.edges[i]);
  }
  if (i == 0 || i >= n) throw DomainError("turn: open walks have no turn at their ends");
  return turn_between(t, w.edges[i - 1], w.edges[i]);
}

std::vector<Turn> turns(const Triangulation& t, const Walk& w) {
  std::vector<Turn> out;
  const size_t n = w.edges.size();
  for (size_t i = w.closed ? 0 : 1; i < n; ++i) out.push_back(turn(t, w, i));
  return out;
}

bool is_reduced(const Triangulation& t, const Walk& w) {
  for (const Turn& tr : turns(t, w))
    if (is_bad(tr)) return false;
  return true;
}

namespace {

HalfEdge need_twin(const Triangulation& t, HalfEdge h) {
  HalfEdge tw = t.twin(h);
  if (!tw.valid()) throw ChartExpansionRequired(t.origin(h), "rewrite crosses the boundary");
  return tw;
}

// Replacement for the corner (h1, h2) with the given turn. Empty for a spur.
std::vector<HalfEdge> corner_replacement(const Triangulation& t, HalfEdge h1, HalfEdge h2, const Turn& tr) {
  const int k = tr.signed_value();
  if (k == 0) return {};
  if (k == 1) return {need_twin(t, t.next(h2))};
  if (k == -1) return {t.next(need_twin(t, h1))};
  if (k == 2) {
    HalfEdge mid = t.next(h1);
    return {need_twin(t, t.next(mid)), need_twin(t, t.next(h2))};
  }
  if (k == -2) {
    HalfEdge back = need_twin(t, h1);
    HalfEdge mid = need_twin(t, t.prev(back));
    return {t.next(back), t.next(mid)};
  }
  throw InvariantViolation("corner_replacement: turn is not bad");
}

int priority(const Turn& tr) {
  int k = std::abs(tr.signed_value());
  if (k == 0) return 0;
  if (k == 1) return 1;
  return 2;
}

std::vector<int> canonical_rotation(const std::vector<HalfEdge>& e) {
  const size_t n = e.size();
  std::vector<int> best;
  for (size_t r = 0; r < n; ++r) {
    std::vector<int> cand(n);
    for (size_t i = 0; i < n; ++i) cand[i] = e[(r + i) % n].value;
    if (best.empty() || cand < best) best = std::move(cand);
  }
  return best;
}

}  // namespace

Rewrite rewrite_once(const Triangulation& t, Walk& w) {
  const size_t n = w.edges.size();
  if (n < (w.closed ? 1u : 2u)) return Rewrite::None;
  int best_pri = 3;
  size_t best_pos = 0;
  Turn best_turn;
  for (size_t i = w.closed ? 0 : 1; i < n; ++i) {
    Turn tr = turn(t, w, i);
    if (!is_bad(tr)) continue;
    int p = priority(tr);
    if (p < best_pri) {
      best_pri = p;
      best_pos = i;
      best_turn = tr;
      if (p == 0) break;
    }
  }
  if (best_pri == 3) return Rewrite::None;
  if (n == 1) throw DomainError("rewrite: a one-edge closed walk with a bad turn has no corner to replace");
  if (w.closed && best_pos == 0) {
    std::rotate(w.edges.rbegin(), w.edges.rbegin() + 1, w.edges.rend());
    best_pos = 1;
  }
  HalfEdge h1 = w.edges[best_pos - 1], h2 = w.edges[best_pos];
  auto repl = corner_replacement(t, h1, h2, best_turn);
  w.edges.erase(w.edges.begin() + (best_pos - 1), w.edges.begin() + best_pos + 1);
  w.edges.insert(w.edges.begin() + (best_pos - 1), repl.begin(), repl.end());
  if (w.closed) w.start = w.edges.empty() ? t.origin(h1) : t.origin(w.edges.front());
  return best_pri == 0 ? Rewrite::Spur : best_pri == 1 ? Rewrite::OneTurn : Rewrite::TwoTurn;
}

Walk reduce_open(const Triangulation& t, Walk w, long long budget) {
  if (w.closed) throw DomainError("reduce_open: walk is closed");
  if (budget < 0) budget = 1000 + 10LL * static_cast<long long>(w.length() * w.length());
  std::set<std::vector<HalfEdge>> seen;
  for (long long step = 0;; ++step) {
    if (step > budget) throw DomainError("reduce_open: budget exhausted");
    Rewrite r = rewrite_once(t, w);
    if (r == Rewrite::None) return w;
    if (r == Rewrite::TwoTurn && !seen.insert(w.edges).second)
      throw DomainError("reduce_open: rewriting entered a cycle");
  }
}

ClosedReduction reduce_closed(const Triangulation& t, Walk w, long long budget) {
  if (!w.closed) throw DomainError("reduce_closed: walk is open");
  ClosedReduction res;
  std::map<std::vector<int>, long long> seen;
  seen.emplace(canonical_rotation(w.edges), 0);
  for (long long step = 0;; ++step) {
    if (step >= budget) {
      res.outcome = ClosedReduction::Outcome::Stalled;
      res.budget_hit = true;
      break;
    }
    Rewrite r = rewrite_once(t, w);
    if (r == Rewrite::None) break;
    res.steps = step + 1;
    auto [it, fresh] = seen.emplace(canonical_rotation(w.edges), res.steps);
    if (!fresh) {
      res.outcome = ClosedReduction::Outcome::Stalled;
      res.first_seen = it->second;
      break;
    }
  }
  res.walk = std::move(w);
  return res;
}

std::string write_walk(const Walk& w) {
  std::vector<int> ids;
  for (HalfEdge h : w.edges) ids.push_back(h.value);
  return "walk closed=" + std::string(w.closed ? "1" : "0") + " start=" + std::to_string(w.start.value) +
         " he=" + text::join_ints(ids);
}

namespace {

Walk walk_from_tokens(const std::vector<std::string_view>& tk, int lineno) {
  if (tk.size() < 3 || tk.size() > 4 || tk[0] != "walk") text::fail(lineno, "expected 'walk closed= start= he='");
  Walk w;
  auto c = text::value_of(tk[1], "closed", lineno);
  if (c != "0" && c != "1") text::fail(lineno, "closed must be 0 or 1");
  w.closed = c == "1";
  w.start = Vertex(static_cast<int32_t>(text::parse_int(text::value_of(tk[2], "start", lineno), lineno)));
  if (tk.size() == 4) {
    std::string_view he = tk[3] == "he=" ? std::string_view("-") : text::value_of(tk[3], "he", lineno);
    for (long long id : text::parse_int_list(he, lineno)) w.edges.push_back(HalfEdge(static_cast<int32_t>(id)));
  }
  return w;
}

}  // namespace

Walk parse_walk(const std::string& line) {
  auto tk = text::split_ws(text::strip_comment(line));
  return walk_from_tokens(tk, 1);
}

Walk read_walk(std::istream& in) {
  text::LineReader reader(in);
  text::Line line;
  if (!reader.next(line)) throw StructuralError("no walk record");
  return walk_from_tokens(line.tokens, line.number);
}

}  // namespace dtutte
