#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dtutte/drawing.hpp"

namespace dtutte {

// A simplicial map together with its homomorphism factorization. Every
// state carries a process-wide unique version; moves found on one state
// cannot be applied to another.
struct DrawingState {
  SimplicialMap map;
  Homomorphism hom;
  uint64_t version = 0;
};

// The host must be closed.
DrawingState make_state(SimplicialMap s);

enum class MoveKind { Flip, Shortening, Balancing };
enum class Rotation { Clockwise, Counterclockwise };

std::string to_string(MoveKind k);

struct Move {
  MoveKind kind = MoveKind::Flip;
  uint64_t version = 0;

  // Flip and shortening: the moved vertex of the homomorphism and its target.
  int vertex = -1;
  Vertex target;
  // Flip: slot a of the 2_r corner {a, cw^2 a}. Shortening: first used slot
  // in clockwise order, and the number of consecutive slots used.
  HalfEdge slot;
  int width = 0;
  int pick = 0;  // width 2: 0 moves onto head(slot), 1 onto head(cw slot)

  // Balancing.
  Color pass = Color::Red;
  std::vector<int> cycle;       // vertices of the homomorphism, in cycle order
  std::vector<int> followers;   // ascending; includes the cycle
  std::vector<HalfEdge> corner; // per follower: slot a of its corner (a, cw^3 a)
  Rotation rotation = Rotation::Clockwise;
};

// Per edge of the homomorphism: true when it runs u -> v, i.e. its image has
// a blue face on its left.
std::vector<char> left_blue_direction(const Homomorphism& h, const Triangulation& t);

// Flip of vertex v if it applies. Vertices with a self-loop never flip.
std::optional<Move> flip_at(const DrawingState& s, int v);
// First applicable move of each kind, scanning vertices in ascending order.
std::optional<Move> find_flip(const DrawingState& s);
std::optional<Move> find_shortening(const DrawingState& s);
std::optional<Move> shortening_at(const DrawingState& s, int v);
// Runs the split-graph search for 3_r cycles, then for 3_b cycles.
std::optional<Move> find_balancing(const DrawingState& s);

// Throws DomainError when m was found on another state.
DrawingState apply_move(const DrawingState& s, const Move& m);

bool is_locally_stable(const DrawingState& s);
bool is_locally_stable(const Drawing& f);

// Layered order of a digraph with a single source and no directed cycle;
// nullopt otherwise. arcs are (tail, head) pairs over vertices 0..n-1.
std::optional<std::vector<int>> proper_monotonic_ordering(int n, const std::vector<std::pair<int, int>>& arcs);
bool is_monotonic_order(const std::vector<int>& order, const std::vector<std::pair<int, int>>& arcs);
bool is_proper_order(const std::vector<int>& order, int n, const std::vector<std::pair<int, int>>& edges);

// One flip-only phase of the routine on one component, between restarts.
struct TraceSegment {
  int phase = 1;
  int run = 0;                  // segments of one run are separated by no interrupt
  int component = 0;            // index of the component being processed
  int root = -1;                // pinned vertex of the homomorphism (phase 1), else -1
  int q = 0;                    // vertices of the homomorphism in the component
  std::vector<int> vertices;    // homomorphism vertices of the component, ascending
  std::vector<std::pair<int, int>> adjacency;  // homomorphism edges inside the component
  std::vector<char> on_directed_cycle;         // per entry of `vertices`, at segment start
  std::vector<int> order;       // phase 2 ordering (homomorphism vertices)
};

struct TraceEntry {
  MoveKind kind = MoveKind::Flip;
  int vertex = -1;              // homomorphism vertex (flip, shortening)
  int rep = -1;                 // its smallest simplicial vertex
  std::vector<int> cycle_reps;  // balancing
  std::vector<int> follower_reps;
  Vertex from;
  Vertex target;
  HalfEdge flip_edge;           // flip: host half-edge from the old to the new position
  long long len_before = 0;
  long long len_after = 0;
  std::vector<long long> per_edge_after;  // per edge of G
  int phase = 1;
  int segment = -1;             // flips only
};

struct MoveTrace {
  std::vector<long long> initial_per_edge;
  std::vector<TraceSegment> segments;
  std::vector<TraceEntry> entries;

  long long count(MoveKind k) const;
  long long flips_in_phase(int phase) const;
  long long interrupts() const { return count(MoveKind::Shortening) + count(MoveKind::Balancing); }
};

struct HarmonizeOptions {
  double budget_constant = 8.0;
  long long budget = -1;  // explicit move budget; < 0 uses budget_constant
};

enum class HarmonizeStatus { Stable, BudgetExhausted };

struct HarmonizeResult {
  HarmonizeStatus status = HarmonizeStatus::Stable;
  Drawing drawing;
  SimplicialMap map;
  MoveTrace trace;
  long long budget = 0;
  long long moves = 0;
  bool torus_host = false;  // the routine is not guaranteed to stop on the torus
};

// Called after every move with the trace entry and the maps around it.
using MoveObserver = std::function<void(const TraceEntry&, const SimplicialMap& before, const SimplicialMap& after)>;

// (m + n) n^2 with m host edges and n the size (vertices + edges) of the
// simplicial map.
long long move_budget_base(const Triangulation& host, const SimplicialMap& s);

HarmonizeResult harmonize(const Drawing& f, const HarmonizeOptions& opt = {}, const MoveObserver& observer = {});
HarmonizeResult harmonize(const SimplicialMap& s, const HarmonizeOptions& opt = {}, const MoveObserver& observer = {});

struct AuditReport {
  bool lengths_monotone = true;       // per edge non-increasing, strict total drop at interrupts
  bool flips_alternate = true;        // adjacent vertices alternate within a run
  bool flip_bound = true;             // flips(v) <= dist(v, r) in phases 1 and 3
  bool phase3_has_unflipped = true;
  bool k_forward = true;              // phase 2 segments of kq+1 flips are k-forward
  bool cycles_frozen = true;          // no vertex on a directed cycle is flipped within a run
  int max_forward = 0;                // largest k established in phase 2
  std::vector<std::string> messages;

  bool ok() const {
    return lengths_monotone && flips_alternate && flip_bound && phase3_has_unflipped && k_forward && cycles_frozen;
  }
};

AuditReport audit_trace(const MoveTrace& trace, const Triangulation& host);

// TRC v1, one line per move.
std::string write_trc(const MoveTrace& trace);

struct TrcRecord {
  int index = 0;
  MoveKind kind = MoveKind::Flip;
  std::vector<int> ids;  // the vertex, or the cycle of a balancing
  long long len_before = 0;
  long long len_after = 0;
  int phase = 1;
};
// Throws StructuralError on malformed lines or out-of-order indices.
std::vector<TrcRecord> read_trc(std::istream& in);
std::vector<TrcRecord> parse_trc(const std::string& text);

}  // namespace dtutte
