// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 when any
// criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dtutte/boundary.hpp"
#include "dtutte/constructions.hpp"
#include "dtutte/generate.hpp"
#include "dtutte/harmonizer.hpp"
#include "dtutte/patch.hpp"
#include "oracles.hpp"

using namespace dtutte;

namespace {

// Pinned parameters.
constexpr int kPatchRadius = 6;                   // criterion 1
constexpr int kPairsPerPatch = 20;
constexpr int kMaxWalk = 8;
constexpr int kPairSpread = 3;                    // max distance between x and y
constexpr int kDiskWalks = 100;                   // criterion 2
constexpr int kMinBadLeftTurns = 3;
constexpr int kTorusMaxLen = 6;                   // criterion 3
constexpr int kDrawings = 120;                    // criterion 4
constexpr int kMaxEdges = 40;
constexpr int kMaxWalkLen = 10;
constexpr double kBudgetConstant = 8.0;
constexpr long long kTorusBudget = 300;           // criterion 5, torus cycles
constexpr int kBalancingFixtures = 50;            // criterion 6
constexpr int kFixtureVertices = 15;
constexpr int kAnchoredInstances = 20;            // criterion 7

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 10) notes.push_back(why);
  }
};

void report(int id, const std::string& name, const Outcome& o, double seconds) {
  std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
              seconds);
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

std::shared_ptr<const Triangulation> host0() {
  static auto t = std::make_shared<const Triangulation>(double_with_gadgets(crown(4)));
  return t;
}

std::shared_ptr<const Triangulation> host1() {
  static auto t = std::make_shared<const Triangulation>(subdivide(*host0()));
  return t;
}

// 1. Unique reduced walks between nearby pairs of deep vertices.
Outcome reduced_walk_uniqueness() {
  Outcome o;
  long long pairs = 0, found = 0, mismatches = 0, touches = 0;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    PlanePatch p = generate_plane_patch(kPatchRadius, 1000 + seed, {6, 8});
    const Triangulation& t = p.surface;
    std::mt19937_64 rng(seed);
    std::vector<Vertex> near_center;
    for (int v = 0; v < t.num_vertices(); ++v)
      if (p.dist[v] <= 1) near_center.push_back(Vertex(v));
    for (int k = 0; k < kPairsPerPatch; ++k) {
      Vertex x = near_center[rng() % near_center.size()];
      auto dx = oracle::distances_from(t, x);
      std::vector<Vertex> close;
      for (int v = 0; v < t.num_vertices(); ++v)
        if (dx[v] >= 1 && dx[v] <= kPairSpread) close.push_back(Vertex(v));
      Vertex y = close[rng() % close.size()];
      // A winding input walk from x to y: a random excursion, then straight to y.
      Walk w = random_walk(t, x, 4, rng);
      Walk tail = shortest_walk(t, walk_end(t, w), y);
      w.edges.insert(w.edges.end(), tail.edges.begin(), tail.edges.end());
      ++pairs;
      long long touched = 0;
      auto all = oracle::reduced_walks(t, x, y, kMaxWalk, &touched);
      touches += touched;
      Walk r;
      try {
        r = reduce_open(t, w);
      } catch (const DomainError& e) {
        ++mismatches;
        o.fail("reduce_open threw on pair " + std::to_string(x.value) + "->" + std::to_string(y.value) + ": " +
               e.what());
        continue;
      }
      bool ok = r.length() <= static_cast<size_t>(kMaxWalk) ? all.size() == 1 && all[0] == r : all.empty();
      if (!is_reduced(t, r) || walk_end(t, r) != y) ok = false;
      found += static_cast<long long>(all.size());
      if (!ok) {
        ++mismatches;
        o.fail("pair " + std::to_string(x.value) + "->" + std::to_string(y.value) + ": " +
               std::to_string(all.size()) + " reduced walks, reduce_open length " + std::to_string(r.length()));
      }
    }
  }
  if (touches != 0) o.fail("enumeration reached the patch boundary " + std::to_string(touches) + " times");
  o.detail = "pairs=" + std::to_string(pairs) + " reduced_found=" + std::to_string(found) +
             " mismatches=" + std::to_string(mismatches) + " boundary_touches=" + std::to_string(touches);
  return o;
}

// 2. Disk-bounding simple closed walks make at least three sharp left turns.
Outcome three_bad_left_turns() {
  Outcome o;
  int walks = 0, min_count = 1 << 30;
  std::mt19937_64 rng(77);
  for (uint64_t seed = 1; walks < kDiskWalks; ++seed) {
    PlanePatch p = generate_plane_patch(3, 2000 + seed, {6, 8});
    for (int k = 0; k < 10 && walks < kDiskWalks; ++k) {
      Walk w = oracle::random_disk_boundary(p, 3, 1 + static_cast<int>(rng() % 30), rng);
      const Triangulation& t = p.surface;
      std::set<int> seen;
      for (HalfEdge h : w.edges) seen.insert(t.origin(h).value);
      if (!w.closed || seen.size() != w.length()) {
        o.fail("generated boundary is not a simple closed walk");
        continue;
      }
      ++walks;
      int count = 0;
      const size_t n = w.length();
      for (size_t i = 0; i < n; ++i) {
        HalfEdge in = w.edges[(i + n - 1) % n], out = w.edges[i];
        int steps = oracle::cw_distance(t, t.twin(in), out);
        if (steps == 1 || (steps == 2 && t.left_color(in) == Color::Red)) ++count;
      }
      min_count = std::min(min_count, count);
      if (count < kMinBadLeftTurns)
        o.fail("walk of length " + std::to_string(n) + " has only " + std::to_string(count) + " bad left turns");
    }
  }
  o.detail = "walks=" + std::to_string(walks) + " min_bad_left_turns=" + std::to_string(min_count);
  return o;
}

// 3. Torus: reduced closed walks are lines; the obstruction walk never reduces.
Outcome torus_fixtures() {
  Outcome o;
  Triangulation t = build_torus();
  long long total = 0;
  for (int len = 1; len <= kTorusMaxLen; ++len) {
    for (const Walk& w : oracle::reduced_closed_walks(t, len)) {
      ++total;
      const size_t n = w.length();
      std::set<std::pair<int, int>> kinds;
      for (size_t i = 0; i < n; ++i) {
        HalfEdge in = w.edges[(i + n - 1) % n], out = w.edges[i];
        kinds.insert({oracle::cw_distance(t, t.twin(in), out), static_cast<int>(t.left_color(in))});
      }
      if (kinds.size() != 1 || kinds.begin()->first != 3) o.fail("closed walk " + write_walk(w) + " is not a line");
    }
  }
  Walk c = torus_obstruction_walk(t);
  ClosedReduction r = reduce_closed(t, c);
  if (!r.stalled()) o.fail("obstruction walk reduced to " + write_walk(r.walk));
  if (r.budget_hit) o.fail("obstruction walk ran out of budget instead of cycling");
  o.detail = "reduced_closed_walks=" + std::to_string(total) + " obstruction=" + (r.stalled() ? "stalled" : "reduced") +
             " first_seen=" + std::to_string(r.first_seen) + " steps=" + std::to_string(r.steps);
  return o;
}

struct HarmonizeRun {
  uint64_t seed = 0;
  SimplicialMap input;
  HarmonizeResult result;
  long long base = 0;
  long long rerun_moves = 0;
  bool stable = false;
};

std::vector<HarmonizeRun> harmonize_runs() {
  std::vector<HarmonizeRun> runs(kDrawings);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < kDrawings; i = next++) {
      HarmonizeRun& r = runs[i];
      r.seed = 5000 + i;
      RandomDrawingOptions o;
      o.max_edges = kMaxEdges;
      o.max_walk = kMaxWalkLen;
      Drawing f = random_drawing(i % 2 ? host1() : host0(), r.seed, o);
      r.input = factor_simplicial(f);
      HarmonizeOptions opt;
      opt.budget_constant = kBudgetConstant;
      r.result = harmonize(f, opt);
      r.base = move_budget_base(*f.host, r.input);
      r.stable = is_locally_stable(r.result.drawing);
      r.rerun_moves = harmonize(r.result.drawing, opt).moves;
    }
  };
  unsigned n = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return runs;
}

// 4. Monotone harmonization within the move budget.
Outcome monotone_harmonization(const std::vector<HarmonizeRun>& runs) {
  Outcome o;
  double max_ratio = 0;
  long long moves = 0, flips = 0, short_moves = 0, bal = 0;
  for (const auto& r : runs) {
    const std::string id = "seed " + std::to_string(r.seed);
    const auto& tr = r.result.trace;
    std::vector<long long> prev = r.input.lengths().per_edge;
    // The map's per-edge lengths are the drawing's.
    if (prev != tr.initial_per_edge) o.fail(id + ": trace starts from other lengths");
    for (size_t i = 0; i < tr.entries.size(); ++i) {
      const auto& e = tr.entries[i];
      long long before = 0, after = 0;
      for (size_t k = 0; k < prev.size(); ++k) {
        if (e.per_edge_after[k] > prev[k]) o.fail(id + ": move " + std::to_string(i) + " lengthens an edge");
        before += prev[k];
        after += e.per_edge_after[k];
      }
      if (e.kind == MoveKind::Flip && after != before) o.fail(id + ": flip changes the length");
      if (e.kind != MoveKind::Flip && after >= before) o.fail(id + ": interrupt does not shorten");
      prev = e.per_edge_after;
    }
    if (prev != lengths(r.result.drawing).per_edge) o.fail(id + ": trace does not end at the output");
    if (r.result.status != HarmonizeStatus::Stable) o.fail(id + ": budget exhausted");
    if (!r.stable) o.fail(id + ": output not locally stable");
    if (r.rerun_moves != 0) o.fail(id + ": rerun applied " + std::to_string(r.rerun_moves) + " moves");
    if (r.base > 0) {
      double ratio = static_cast<double>(r.result.moves) / static_cast<double>(r.base);
      max_ratio = std::max(max_ratio, ratio);
      if (ratio > kBudgetConstant) o.fail(id + ": moves exceed the budget");
    } else if (r.result.moves != 0) {
      o.fail(id + ": moves on an empty map");
    }
    moves += r.result.moves;
    flips += tr.count(MoveKind::Flip);
    short_moves += tr.count(MoveKind::Shortening);
    bal += tr.count(MoveKind::Balancing);
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "drawings=%zu moves=%lld flips=%lld shortenings=%lld balancings=%lld max_ratio=%.6f (C=%.0f)",
                runs.size(), moves, flips, short_moves, bal, max_ratio, kBudgetConstant);
  o.detail = buf;
  return o;
}

// 5. Flip-phase bounds, recomputed from the segments, plus k-forwardness.
Outcome flip_phase_bounds(const std::vector<HarmonizeRun>& runs) {
  Outcome o;
  long long segs[4] = {0, 0, 0, 0}, checked_flips = 0, long_phase2 = 0, testable_phase2 = 0;
  int max_forward = 0;
  for (const auto& r : runs) {
    const auto& tr = r.result.trace;
    const std::string id = "seed " + std::to_string(r.seed);
    std::vector<std::vector<int>> flipped(tr.segments.size());
    for (const auto& e : tr.entries)
      if (e.kind == MoveKind::Flip && e.segment >= 0) flipped[e.segment].push_back(e.vertex);
    for (size_t s = 0; s < tr.segments.size(); ++s) {
      const auto& seg = tr.segments[s];
      if (seg.phase >= 1 && seg.phase <= 3) ++segs[seg.phase];
      if (seg.phase == 2 && seg.q > 0) {
        long_phase2 = std::max(long_phase2, static_cast<long long>(flipped[s].size()));
        if (static_cast<long long>(flipped[s].size()) >= seg.q + 2) ++testable_phase2;
      }
      if (seg.phase == 2 || flipped[s].empty()) continue;
      std::map<int, int> count;
      for (int v : flipped[s]) ++count[v];
      std::map<int, std::vector<int>> adj;
      for (auto [a, b] : seg.adjacency) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      // Sources: the pinned root in phase 1, every unflipped vertex in phase 3.
      std::vector<int> sources;
      if (seg.phase == 1 && seg.root >= 0) {
        sources.push_back(seg.root);
        if (count.count(seg.root)) o.fail(id + ": pinned root flipped in segment " + std::to_string(s));
      } else {
        for (int v : seg.vertices)
          if (!count.count(v)) sources.push_back(v);
      }
      if (sources.empty()) {
        o.fail(id + ": segment " + std::to_string(s) + " has no unflipped vertex");
        continue;
      }
      std::map<int, int> dist;
      std::queue<int> q;
      for (int v : sources) {
        dist[v] = 0;
        q.push(v);
      }
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
          if (!dist.count(w)) {
            dist[w] = dist[v] + 1;
            q.push(w);
          }
      }
      for (auto [v, c] : count) {
        ++checked_flips;
        auto it = dist.find(v);
        if (it == dist.end() || c > it->second)
          o.fail(id + ": vertex flipped " + std::to_string(c) + " times at distance " +
                 (it == dist.end() ? std::string("inf") : std::to_string(it->second)) + " in segment " +
                 std::to_string(s));
      }
    }
    AuditReport a = audit_trace(tr, *r.result.drawing.host);
    max_forward = std::max(max_forward, a.max_forward);
    if (!a.k_forward) o.fail(id + ": phase 2 segment is not k-forward");
    if (!a.flip_bound || !a.phase3_has_unflipped) o.fail(id + ": library audit rejects the flip bound");
    for (size_t k = 0; k < a.messages.size() && k < 2; ++k) o.fail(id + ": " + a.messages[k]);
  }
  // Random drawings rarely reach long phase-2 runs, so cycle drawings on the
  // flat torus, where phase 2 slides forever, exercise k-forwardness.
  int torus_runs = 0, torus_forward = 0;
  for (auto host : {std::make_shared<const Triangulation>(build_torus()),
                    std::make_shared<const Triangulation>(subdivide(build_torus()))}) {
    const int n = host->num_half_edges();
    for (int len = 2; len <= 3; ++len) {
      std::vector<int> w(len, 0);
      std::function<void(int)> go = [&](int i) {
        if (i < len) {
          for (int h = 0; h < n; ++h) {
            w[i] = h;
            if (i == 0 || host->head(HalfEdge(w[i - 1])) == host->origin(HalfEdge(h))) go(i + 1);
          }
          return;
        }
        if (host->head(HalfEdge(w[len - 1])) != host->origin(HalfEdge(w[0]))) return;
        Drawing f;
        f.host = host;
        for (int k = 0; k < len; ++k) {
          f.graph.add_vertex();
          f.vertex_map.push_back(host->origin(HalfEdge(w[k])));
        }
        for (int k = 0; k < len; ++k) {
          f.graph.add_edge(k, (k + 1) % len);
          f.edge_map.push_back(Walk{host->origin(HalfEdge(w[k])), {HalfEdge(w[k])}, false});
        }
        HarmonizeOptions opt;
        opt.budget = kTorusBudget;
        HarmonizeResult r = harmonize(f, opt);
        AuditReport a = audit_trace(r.trace, *host);
        ++torus_runs;
        torus_forward = std::max(torus_forward, a.max_forward);
        if (!a.k_forward || !a.flip_bound) {
          std::string ids;
          for (int x : w) ids += " " + std::to_string(x);
          o.fail("torus cycle on half-edges" + ids + ": audit fails");
        }
      };
      go(0);
    }
  }
  if (torus_forward < 1) o.fail("no phase-2 segment long enough to test k-forwardness");
  o.detail = "torus_cycle_runs=" + std::to_string(torus_runs) + " torus_max_forward=" + std::to_string(torus_forward) +
             " | random: segments phase1=" + std::to_string(segs[1]) + " phase2=" + std::to_string(segs[2]) +
             " phase3=" + std::to_string(segs[3]) + " vertex_flip_counts_checked=" + std::to_string(checked_flips) +
             " max_forward=" + std::to_string(max_forward) + " longest_phase2_flips=" + std::to_string(long_phase2) +
             " phase2_segments_with_q+2_flips=" + std::to_string(testable_phase2);
  return o;
}

// 6. Balancing detector against brute force.
Outcome balancing_equivalence() {
  Outcome o;
  int fixtures = 0, found = 0, agree = 0;
  for (uint64_t seed = 1; fixtures < kBalancingFixtures; ++seed) {
    auto host = seed % 2 ? host0() : host1();
    Drawing f = oracle::balancing_fixture(host, seed, kFixtureVertices);
    DrawingState s = make_state(factor_simplicial(f));
    if (s.hom.num_vertices() > kFixtureVertices) continue;
    ++fixtures;
    const std::string id = "fixture " + std::to_string(seed);
    auto cycles = oracle::three_turn_cycles(s);
    bool brute = std::any_of(cycles.begin(), cycles.end(), [](const auto& c) { return oracle::balanceable(c); });
    auto m = find_balancing(s);
    if (m.has_value() != brute) {
      o.fail(id + ": detector says " + (m ? "found" : "none") + ", brute force says " + (brute ? "found" : "none"));
      continue;
    }
    ++agree;
    if (!m) continue;
    ++found;
    // The witness is a balanceable 3-turn cycle of the brute-force list.
    std::set<int> cyc(m->cycle.begin(), m->cycle.end());
    bool listed = false;
    for (const auto& c : cycles)
      if (oracle::balanceable(c) && c.pass == m->pass && std::set<int>(c.vertices.begin(), c.vertices.end()) == cyc &&
          std::includes(m->followers.begin(), m->followers.end(), c.followers.begin(), c.followers.end()))
        listed = true;
    if (!listed) o.fail(id + ": witness cycle is not a balanceable 3-turn cycle");
    DrawingState s2 = apply_move(s, *m);
    if (s2.map.lengths().total >= s.map.lengths().total) o.fail(id + ": balancing does not shorten");
  }
  o.detail = "fixtures=" + std::to_string(fixtures) + " agree=" + std::to_string(agree) +
             " balanceable=" + std::to_string(found);
  return o;
}

// 7. Anchored harmonization never touches stems, guards or the outside.
Outcome boundary_guard() {
  Outcome o;
  long long moves = 0;
  int disks = 0, annuli = 0;
  for (int i = 0; i < kAnchoredInstances; ++i) {
    PlanePatch p = generate_plane_patch(2, 3000 + i, {6, 8});
    bool annulus = i % 2 == 1;
    auto host = std::make_shared<const Triangulation>(annulus ? annulus_from_patch(p) : p.surface);
    (annulus ? annuli : disks)++;
    // Anchors at two or three distinct boundary vertices.
    AnchoredInstance inst = random_anchored_drawing(host, 100 + i, 2 + i % 2);
    const std::string id = std::string(annulus ? "annulus " : "disk ") + std::to_string(i);
    RelAnchorResult r;
    try {
      r = harmonize_rel_anchor(inst.drawing, inst.anchor, {}, false);
    } catch (const std::exception& e) {
      o.fail(id + ": " + e.what());
      continue;
    }
    moves += r.inner.moves;
    if (r.stem_rewrites) o.fail(id + ": stem rewrites " + std::to_string(r.stem_rewrites));
    if (r.guard_uses) o.fail(id + ": guard uses " + std::to_string(r.guard_uses));
    if (r.outside_moves) o.fail(id + ": images left the host " + std::to_string(r.outside_moves) + " times");
    if (r.inner.status != HarmonizeStatus::Stable) o.fail(id + ": not stable");
    for (const auto& list : inst.anchor)
      for (int v : list.order)
        if (r.drawing.vertex_map[v] != inst.drawing.vertex_map[v]) o.fail(id + ": anchored vertex moved");
    // Images of G stay inside the host.
    try {
      check_drawing(r.drawing);
    } catch (const std::exception& e) {
      o.fail(id + ": restricted drawing is broken: " + e.what());
    }
    for (const auto& v : r.violations) o.fail(id + ": " + v);
  }
  o.detail = "instances=" + std::to_string(disks + annuli) + " (disks=" + std::to_string(disks) +
             " annuli=" + std::to_string(annuli) + ") inner_moves=" + std::to_string(moves);
  return o;
}

// Not a criterion: when every anchor of a tree sits on one boundary vertex,
// the extended drawing is contractible onto that vertex's crown and the stems
// are shortened away. Reported so the gap stays visible.
void single_site_diagnostic() {
  int instances = 0, affected = 0;
  long long rewrites = 0;
  for (int i = 0; i < 10; ++i) {
    PlanePatch p = generate_plane_patch(2, 3000 + i, {6, 8});
    auto host = std::make_shared<const Triangulation>(i % 2 ? annulus_from_patch(p) : p.surface);
    AnchoredInstance inst = random_anchored_drawing(host, 100 + i, 1);
    RelAnchorResult r = harmonize_rel_anchor(inst.drawing, inst.anchor, {}, false);
    ++instances;
    affected += !r.ok();
    rewrites += r.stem_rewrites;
  }
  std::printf("NOTE single-anchor-vertex trees (outside criterion 7): instances=%d failing=%d stem_rewrites=%lld\n",
              instances, affected, rewrites);
}

// 8. Constructors validate and their Euler characteristics add up.
Outcome constructor_validation() {
  Outcome o;
  int validated = 0;
  auto expect_ok = [&](const std::string& name, const Triangulation& t) {
    ++validated;
    ValidationReport r = validate_reducing(t);
    if (!r.ok) o.fail(name + " fails validation: " + to_string(r.violations.front().kind));
    int chi = t.euler_characteristic();
    if (chi != oracle::euler_by_counting(t)) o.fail(name + ": chi disagrees with a direct count");
    if (chi != 2 - 2 * t.genus() - t.num_boundary_components()) o.fail(name + ": chi disagrees with genus");
    if (!oracle::dual_two_colorable(t) || !oracle::colors_alternate(t)) o.fail(name + ": coloring is not proper");
  };
  const int gadget_chi = build_three_gadget().euler_characteristic();
  auto doubled = [&](const std::string& name, const Triangulation& t0) {
    Triangulation d = double_with_gadgets(t0);
    expect_ok(name, d);
    if (!d.closed()) o.fail(name + " is not closed");
    if (d.euler_characteristic() != 2 * t0.euler_characteristic() + t0.num_boundary_half_edges() * (gadget_chi - 1))
      o.fail(name + ": chi disagrees with the doubling count");
    return d;
  };

  Triangulation torus = build_torus();
  expect_ok("torus", torus);
  if (torus.euler_characteristic() != 0 || torus.genus() != 1) o.fail("torus is not a torus");
  expect_ok("subdivided torus", subdivide(torus));
  for (int k = 2; k <= 12; k += 2) {
    Triangulation c = crown(k);
    expect_ok("crown(" + std::to_string(k) + ")", c);
    if (c.euler_characteristic() != 0) o.fail("crown is not an annulus");
    if (k >= 4) {
      expect_ok("subdivided crown(" + std::to_string(k) + ")", subdivide(c));
      doubled("doubled crown(" + std::to_string(k) + ")", c);
    }
  }
  for (int k = 3; k <= 11; k += 2) {
    ValidationReport r = validate_reducing(crown(k));
    std::set<ViolationKind> kinds;
    for (const auto& v : r.violations) kinds.insert(v.kind);
    if (r.ok || kinds != std::set<ViolationKind>{ViolationKind::DualNotBipartite})
      o.fail("crown(" + std::to_string(k) + ") does not fail exactly on DualNotBipartite");
  }
  Triangulation g1 = build_one_gadget(), g3 = build_three_gadget();
  expect_ok("1-gadget", g1);
  expect_ok("3-gadget", g3);
  if (g1.genus() != 1 || g3.genus() != 3) o.fail("gadget genus is wrong");
  if (g1.num_boundary_half_edges() != 2 || g3.num_boundary_half_edges() != 2) o.fail("gadget boundary is not a digon");
  Triangulation d4 = doubled("doubled crown(4)", crown(4));
  expect_ok("subdivided doubled crown(4)", subdivide(d4));
  doubled("doubled subdivided crown(4)", subdivide(crown(4)));
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    PlanePatch p = generate_plane_patch(2, 4000 + seed, {6, 8});
    doubled("doubled disk " + std::to_string(seed), p.surface);
    doubled("doubled annulus " + std::to_string(seed), annulus_from_patch(p));
  }
  o.detail = "validated=" + std::to_string(validated) + " odd_crowns_rejected=5";
  return o;
}

template <class F>
bool run(int id, const std::string& name, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("unexpected exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, name, o, secs);
  return o.pass;
}

}  // namespace

int main() {
  bool all = true;
  all &= run(1, "reduced-walk uniqueness", reduced_walk_uniqueness);
  all &= run(2, "three bad left turns", three_bad_left_turns);
  all &= run(3, "torus fixtures", torus_fixtures);
  std::vector<HarmonizeRun> runs;
  auto t0 = std::chrono::steady_clock::now();
  bool harmonized = true;
  std::string why;
  try {
    runs = harmonize_runs();
  } catch (const std::exception& e) {
    harmonized = false;
    why = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("     harmonized %zu drawings in %.1fs\n", runs.size(), secs);
  all &= run(4, "monotone harmonization", [&] {
    if (!harmonized) throw std::runtime_error(why);
    return monotone_harmonization(runs);
  });
  all &= run(5, "flip-phase bounds", [&] {
    if (!harmonized) throw std::runtime_error(why);
    return flip_phase_bounds(runs);
  });
  all &= run(6, "balancing detector", balancing_equivalence);
  all &= run(7, "boundary guard", boundary_guard);
  all &= run(8, "constructor validation", constructor_validation);
  try {
    single_site_diagnostic();
  } catch (const std::exception& e) {
    std::printf("NOTE single-anchor-vertex diagnostic threw: %s\n", e.what());
  }
  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
