#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qclock/potential.hpp"
#include "qclock/quiver.hpp"

namespace qclock {

// ---------------------------------------------------------------------------
// Cycles of the underlying multigraph
// ---------------------------------------------------------------------------

enum class Direction : unsigned char { forward = 0, backward = 1 };

inline Direction flip(Direction d) {
  return d == Direction::forward ? Direction::backward : Direction::forward;
}

struct Step {
  ArrowId arrow = 0;
  Direction direction = Direction::forward;

  auto operator<=>(const Step&) const = default;
};

/// A cyclically ordered list of arrow traversals. "Clockwise" means the
/// walk's own traversal direction.
class CycleWalk {
 public:
  CycleWalk() = default;
  explicit CycleWalk(std::vector<Step> steps) : steps_(std::move(steps)) {}

  const std::vector<Step>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }

  /// Vertex at which step i begins.
  static VertexId tail(const Quiver& q, const Step& s) {
    const Arrow& a = q.arrow(s.arrow);
    return s.direction == Direction::forward ? a.source : a.target;
  }
  static VertexId head(const Quiver& q, const Step& s) {
    const Arrow& a = q.arrow(s.arrow);
    return s.direction == Direction::forward ? a.target : a.source;
  }

  /// Visited vertices, one per step, starting at the first step's tail.
  std::vector<VertexId> vertices(const Quiver& q) const {
    std::vector<VertexId> out;
    for (const Step& s : steps_) out.push_back(tail(q, s));
    return out;
  }

  /// Closed, consecutive steps meet, vertices pairwise distinct.
  bool is_simple_cycle(const Quiver& q) const {
    if (steps_.empty()) return false;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const Step& next = steps_[(i + 1) % steps_.size()];
      if (head(q, steps_[i]) != tail(q, next)) return false;
    }
    auto vs = vertices(q);
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
    std::vector<ArrowId> used;
    for (const Step& s : steps_) used.push_back(s.arrow);
    std::sort(used.begin(), used.end());
    return std::adjacent_find(used.begin(), used.end()) == used.end();
  }

  std::size_t count(Direction d) const {
    return static_cast<std::size_t>(std::count_if(
        steps_.begin(), steps_.end(),
        [d](const Step& s) { return s.direction == d; }));
  }

  friend bool operator==(const CycleWalk&, const CycleWalk&) = default;
  friend auto operator<=>(const CycleWalk& a, const CycleWalk& b) {
    return a.steps_ <=> b.steps_;
  }

 private:
  std::vector<Step> steps_;
};

inline CycleWalk rotated(const CycleWalk& c, std::size_t k) {
  std::vector<Step> s = c.steps();
  if (!s.empty()) std::rotate(s.begin(), s.begin() + (k % s.size()), s.end());
  return CycleWalk(std::move(s));
}

/// Same cycle traversed the other way round.
inline CycleWalk reflected(const CycleWalk& c) {
  std::vector<Step> s(c.steps().rbegin(), c.steps().rend());
  for (Step& x : s) x.direction = flip(x.direction);
  return CycleWalk(std::move(s));
}

/// Lexicographically least rotation or reflection. Since arrows of a simple
/// cycle are distinct this starts at the smallest arrow, traversed forward.
inline CycleWalk canonical(const CycleWalk& c) {
  if (c.size() == 0) return c;
  CycleWalk best = c;
  CycleWalk refl = reflected(c);
  for (std::size_t k = 0; k < c.size(); ++k) {
    best = std::min(best, rotated(c, k));
    best = std::min(best, rotated(refl, k));
  }
  return best;
}

inline std::string render_cycle(const Quiver& q, const CycleWalk& c) {
  std::string out;
  for (const Step& s : c.steps()) {
    out += q.vertex_name(CycleWalk::tail(q, s));
    out += s.direction == Direction::forward ? " -" : " <";
    out += q.arrow(s.arrow).name;
    out += s.direction == Direction::forward ? "> " : "- ";
  }
  if (c.size() != 0) out += q.vertex_name(CycleWalk::tail(q, c.steps().front()));
  return out;
}

/// All simple cycles of the underlying undirected multigraph, canonicalised
/// and sorted. Loops are 1-cycles, parallel arrows give 2-cycles. Backtracking
/// from each root over larger vertices only; the second traversal direction
/// is suppressed by requiring first edge < closing edge.
inline std::vector<CycleWalk> simple_cycles(const Quiver& q,
                                            std::size_t cap = 100000) {
  std::vector<CycleWalk> out;
  auto push = [&](std::vector<Step> steps) {
    out.push_back(canonical(CycleWalk(std::move(steps))));
    if (out.size() > cap)
      throw Error(ErrorKind::guard,
                  "more than " + std::to_string(cap) +
                      " simple cycles; raise the limit with --cycle-cap");
  };

  const std::size_t n = q.vertex_count();
  std::vector<std::vector<ArrowId>> incident(n);
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (arr.source == arr.target) continue;
    incident[arr.source].push_back(a);
    incident[arr.target].push_back(a);
  }
  for (ArrowId a = 0; a < q.arrow_count(); ++a)
    if (q.arrow(a).source == q.arrow(a).target) push({{a, Direction::forward}});

  std::vector<bool> on_path(n, false);
  std::vector<Step> path;
  std::function<void(VertexId, VertexId)> extend = [&](VertexId root, VertexId u) {
    for (ArrowId a : incident[u]) {
      const Arrow& arr = q.arrow(a);
      Direction d = arr.source == u ? Direction::forward : Direction::backward;
      VertexId v = d == Direction::forward ? arr.target : arr.source;
      if (v == root) {
        if (!path.empty() && path.front().arrow < a) {
          path.push_back({a, d});
          push(path);
          path.pop_back();
        }
        continue;
      }
      if (v < root || on_path[v]) continue;
      on_path[v] = true;
      path.push_back({a, d});
      extend(root, v);
      path.pop_back();
      on_path[v] = false;
    }
  };
  for (VertexId root = 0; root < n; ++root) {
    on_path[root] = true;
    extend(root, root);
    on_path[root] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Chords and the clock tally
// ---------------------------------------------------------------------------

/// Maximal run of equi-directed steps. `arrows` is the run as a directed
/// path in arrow orientation (for a backward chord, the reversed steps).
struct Chord {
  Direction direction = Direction::forward;
  bool cyclic = false;      // the whole cycle is one directed run
  std::size_t offset = 0;   // index in the walk of the chord's first step
  std::vector<Step> steps;  // traversal order
  std::vector<ArrowId> arrows;

  VertexId source(const Quiver& q) const { return q.arrow(arrows.front()).source; }
  VertexId target(const Quiver& q) const { return q.arrow(arrows.back()).target; }
};

/// Splits a cycle into chords, in traversal order starting at the first
/// direction change at or after the walk's first step.
inline std::vector<Chord> chords(const CycleWalk& c) {
  const auto& s = c.steps();
  const std::size_t L = s.size();
  std::vector<Chord> out;
  if (L == 0) return out;
  auto finish = [](Chord ch) {
    if (ch.direction == Direction::forward) {
      for (const Step& x : ch.steps) ch.arrows.push_back(x.arrow);
    } else {
      for (auto it = ch.steps.rbegin(); it != ch.steps.rend(); ++it)
        ch.arrows.push_back(it->arrow);
    }
    return ch;
  };
  if (c.count(s.front().direction) == L) {
    Chord ch{s.front().direction, true, 0, s, {}};
    out.push_back(finish(std::move(ch)));
    return out;
  }
  std::size_t start = 0;
  while (s[start].direction == s[(start + L - 1) % L].direction) ++start;
  std::size_t i = start;
  do {
    Chord ch{s[i].direction, false, i, {}, {}};
    while (true) {
      ch.steps.push_back(s[i]);
      i = (i + 1) % L;
      if (s[i].direction != ch.direction) break;
    }
    out.push_back(finish(std::move(ch)));
  } while (i != start);
  return out;
}

struct Embedding {
  std::size_t relation = 0;  // index into pres.relations()
  std::size_t chord = 0;     // index into chords(cycle)
  std::size_t offset = 0;    // start position within the chord's arrows

  bool operator==(const Embedding&) const = default;
};

struct ClockTally {
  CycleWalk cycle;
  std::vector<Embedding> clockwise;
  std::vector<Embedding> counterclockwise;

  std::size_t clockwise_count() const noexcept { return clockwise.size(); }
  std::size_t counterclockwise_count() const noexcept { return counterclockwise.size(); }
  bool balanced() const noexcept { return clockwise.size() == counterclockwise.size(); }
  std::int64_t imbalance() const noexcept {
    return static_cast<std::int64_t>(clockwise.size()) -
           static_cast<std::int64_t>(counterclockwise.size());
  }
};

/// Relations embedded along each chord of `c`. Within a cyclic chord a
/// relation may wrap around; each start position counts once.
inline ClockTally clock_tally(const MonomialPresentation& pres, const CycleWalk& c) {
  ClockTally tally{c, {}, {}};
  auto cs = chords(c);
  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    const Chord& ch = cs[ci];
    const std::size_t len = ch.arrows.size();
    for (std::size_t ri = 0; ri < pres.relations().size(); ++ri) {
      auto rel = pres.relations()[ri].arrows();
      const std::size_t m = rel.size();
      std::size_t starts = ch.cyclic ? len : (m <= len ? len - m + 1 : 0);
      for (std::size_t p = 0; p < starts; ++p) {
        bool match = true;
        for (std::size_t k = 0; k < m && match; ++k) {
          std::size_t idx = p + k;
          if (ch.cyclic) idx %= len;
          match = ch.arrows[idx] == rel[k];
        }
        if (!match) continue;
        auto& side = ch.direction == Direction::forward ? tally.clockwise
                                                        : tally.counterclockwise;
        side.push_back({ri, ci, p});
      }
    }
  }
  return tally;
}

struct ClockVerdict {
  bool satisfied = true;
  std::vector<ClockTally> tallies;        // one per simple cycle, in order
  std::optional<std::size_t> witness;     // index of first violating cycle
};

inline ClockVerdict satisfies_clock(const MonomialPresentation& pres,
                                    std::size_t cycle_cap = 100000) {
  ClockVerdict v;
  for (const CycleWalk& c : simple_cycles(pres.quiver(), cycle_cap)) {
    v.tallies.push_back(clock_tally(pres, c));
    if (!v.tallies.back().balanced() && !v.witness) {
      v.satisfied = false;
      v.witness = v.tallies.size() - 1;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Algebra classes
// ---------------------------------------------------------------------------

inline bool is_quadratic(const MonomialPresentation& pres) {
  return std::all_of(pres.relations().begin(), pres.relations().end(),
                     [](const Path& r) { return r.length() == 2; });
}

/// Every composable pair of arrows is a relation.
inline bool is_radical_square_zero(const MonomialPresentation& pres) {
  const Quiver& q = pres.quiver();
  for (ArrowId a = 0; a < q.arrow_count(); ++a)
    for (ArrowId b : q.outgoing(q.arrow(a).target)) {
      ArrowId pair[] = {a, b};
      if (!pres.is_relation(pair)) return false;
    }
  return true;
}

enum class GentleClause {
  none,
  not_quadratic,
  degree,               // at most two in / two out at every vertex
  relation_pairing,     // at most one relation continuing each arrow, each side
  nonrelation_pairing,  // at most one non-relation continuation, each side
};

inline const char* to_string(GentleClause c) {
  switch (c) {
    case GentleClause::none: return "none";
    case GentleClause::not_quadratic: return "not-quadratic";
    case GentleClause::degree: return "clause-1";
    case GentleClause::relation_pairing: return "clause-2";
    case GentleClause::nonrelation_pairing: return "clause-3";
  }
  return "?";
}

struct GentleVerdict {
  bool gentle = true;
  GentleClause violated = GentleClause::none;
  std::string detail;
};

inline GentleVerdict is_gentle(const MonomialPresentation& pres) {
  const Quiver& q = pres.quiver();
  if (!is_quadratic(pres))
    return {false, GentleClause::not_quadratic, "a relation has length > 2"};
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    if (q.incoming(v).size() > 2 || q.outgoing(v).size() > 2)
      return {false, GentleClause::degree,
              "vertex '" + q.vertex_name(v) + "' has in-degree " +
                  std::to_string(q.incoming(v).size()) + " and out-degree " +
                  std::to_string(q.outgoing(v).size())};
  }
  // Right-to-left products: "alpha beta" continues beta by alpha.
  auto count = [&](ArrowId beta, bool after, bool want_relation) {
    std::size_t n = 0;
    const Arrow& b = q.arrow(beta);
    auto others = after ? q.outgoing(b.target) : q.incoming(b.source);
    for (ArrowId o : others) {
      ArrowId pair[2] = {after ? beta : o, after ? o : beta};
      if (pres.is_relation(pair) == want_relation) ++n;
    }
    return n;
  };
  for (int clause = 2; clause <= 3; ++clause) {
    bool want_relation = clause == 2;
    for (ArrowId beta = 0; beta < q.arrow_count(); ++beta) {
      if (count(beta, true, want_relation) > 1 || count(beta, false, want_relation) > 1)
        return {false,
                clause == 2 ? GentleClause::relation_pairing
                            : GentleClause::nonrelation_pairing,
                "arrow '" + q.arrow(beta).name + "'"};
    }
  }
  return {};
}

struct OneCycleVerdict {
  bool one_cycle = false;
  std::int64_t betti = 0;
};

inline std::size_t connected_components(const Quiver& q) {
  std::vector<std::size_t> parent(q.vertex_count());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t comps = q.vertex_count();
  for (const Arrow& a : q.arrows()) {
    auto r1 = find(a.source), r2 = find(a.target);
    if (r1 != r2) {
      parent[r1] = r2;
      --comps;
    }
  }
  return comps;
}

/// First Betti number of the underlying multigraph equals one. Cross-checked
/// against the simple-cycle count.
inline OneCycleVerdict is_one_cycle(const Quiver& q, std::size_t cycle_cap = 100000) {
  std::int64_t betti = static_cast<std::int64_t>(q.arrow_count()) -
                       static_cast<std::int64_t>(q.vertex_count()) +
                       static_cast<std::int64_t>(connected_components(q));
  bool by_betti = betti == 1;
  if (betti <= 1) {
    bool by_cycles = simple_cycles(q, cycle_cap).size() == 1;
    if (by_cycles != by_betti) throw_internal("Betti number and cycle count disagree");
  }
  return {by_betti, betti};
}

struct VertexPotential {
  std::optional<std::vector<std::int64_t>> labels;
  std::optional<CycleWalk> witness;
};

/// Integer labels with s(target) = s(source) + 1 for every arrow, rooted at 0
/// on the first vertex of each component; otherwise an unbalanced cycle.
inline VertexPotential vertex_potential(const Quiver& q) {
  std::vector<UnitEdge> edges;
  for (const Arrow& a : q.arrows()) edges.push_back({a.source, a.target});
  auto res = solve_unit_potential(q.vertex_count(), edges);
  if (res.labels) return {std::move(res.labels), std::nullopt};
  std::vector<Step> steps;
  for (const EdgeStep& s : res.witness)
    steps.push_back({s.edge, s.forward ? Direction::forward : Direction::backward});
  return {std::nullopt, canonical(CycleWalk(std::move(steps)))};
}

struct ArrowTally {
  std::size_t clockwise = 0;
  std::size_t counterclockwise = 0;
};

inline ArrowTally arrow_tally(const CycleWalk& c) {
  return {c.count(Direction::forward), c.count(Direction::backward)};
}

}  // namespace qclock
