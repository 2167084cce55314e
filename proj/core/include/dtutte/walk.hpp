#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dtutte/triangulation.hpp"

namespace dtutte {

struct Turn {
  int clockwise_steps = 0;
  int degree = 0;
  Color subscript = Color::Red;

  int signed_value() const { return 2 * clockwise_steps <= degree ? clockwise_steps : clockwise_steps - degree; }
  std::string to_string() const;
};

enum class TurnClass { Bad, Good };

TurnClass classify(const Turn& t);
inline bool is_bad(const Turn& t) { return classify(t) == TurnClass::Bad; }

struct Walk {
  Vertex start;
  std::vector<HalfEdge> edges;
  bool closed = false;

  size_t length() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  friend bool operator==(const Walk&, const Walk&) = default;
};

// Throws StructuralError unless consecutive half-edges are incident (and the
// walk returns to its start when closed).
void check_walk(const Triangulation& t, const Walk& w);
Vertex walk_end(const Triangulation& t, const Walk& w);
// Walk running backwards; boundary edges are reversed through their darts.
Walk reversed(const Triangulation& t, const Walk& w);

// Raised when an operation needs the star of a boundary vertex or a missing
// twin. On cover charts this is a request to expand the chart.
class ChartExpansionRequired : public DomainError {
 public:
  ChartExpansionRequired(Vertex v, const std::string& what) : DomainError(what), vertex(v) {}
  Vertex vertex;
};

// Turn made when entering head(in) by `in` and leaving by `out`.
Turn turn_between(const Triangulation& t, HalfEdge in, HalfEdge out);
// Turn at the i-th vertex of w: between edges i-1 and i (cyclically when
// closed). Open walks have turns at 1..length-1, closed ones at 0..length-1.
Turn turn(const Triangulation& t, const Walk& w, size_t i);
std::vector<Turn> turns(const Triangulation& t, const Walk& w);
bool is_reduced(const Triangulation& t, const Walk& w);

// Rewrites (spur deletion, then 1-turn shortcut, then 2_r reroute) until no
// bad turn remains. Throws ChartExpansionRequired when a rewrite touches a
// boundary vertex and DomainError if the budget runs out or a state recurs.
// budget < 0 picks a default that grows quadratically with the length.
Walk reduce_open(const Triangulation& t, Walk w, long long budget = -1);

struct ClosedReduction {
  enum class Outcome { Reduced, Stalled } outcome = Outcome::Reduced;
  Walk walk;                // reduced walk, or the state at which we stopped
  long long steps = 0;      // rewrites applied
  long long first_seen = -1;  // step at which the recurring state first appeared
  bool budget_hit = false;
  bool stalled() const { return outcome == Outcome::Stalled; }
};

// The rewrites applied cyclically. Rotations of a closed walk are considered
// the same state; the result may start at a different vertex.
ClosedReduction reduce_closed(const Triangulation& t, Walk w, long long budget = 10000);

enum class Rewrite { None, Spur, OneTurn, TwoTurn };
// One rewrite at the highest-priority bad turn; returns None when reduced.
Rewrite rewrite_once(const Triangulation& t, Walk& w);

std::string write_walk(const Walk& w);
Walk parse_walk(const std::string& line);
Walk read_walk(std::istream& in);

}  // namespace dtutte
