#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qclock/classify.hpp"
#include "qclock/diffmod.hpp"

namespace qclock {

/// Greedy merge along a chord: repeatedly replace the first neighbouring pair
/// of segments whose composite path is nonzero by that composite. On exit no
/// segment vanishes and every neighbouring composite does. A cyclic chord
/// also treats (last, first) as neighbours.
inline std::vector<Path> contract_chord(const Chord& chord,
                                        const MonomialPresentation& pres) {
  const Quiver& q = pres.quiver();
  std::vector<Path> segs;
  for (ArrowId a : chord.arrows) segs.push_back(Path::arrow(q, a));

  while (true) {
    const std::size_t k = segs.size();
    std::size_t pairs = chord.cyclic ? (k > 1 ? k : 0) : (k > 0 ? k - 1 : 0);
    std::optional<std::size_t> at;
    for (std::size_t l = 0; l < pairs && !at; ++l)
      if (!pres.is_zero(segs[l].then(segs[(l + 1) % k]))) at = l;
    if (!at) break;
    const std::size_t l = *at;
    if (l + 1 < k) {
      segs[l] = segs[l].then(segs[l + 1]);
      segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(l + 1));
    } else {
      Path merged = segs[l].then(segs[0]);
      segs.pop_back();
      segs.front() = std::move(merged);
    }
  }
  return segs;
}

struct ContractedChord {
  Direction direction = Direction::forward;
  bool cyclic = false;
  std::vector<ArrowId> arrows;       // contracted arrow ids, directed-path order
  std::size_t embedded_relations = 0;
};

struct ContractionResult {
  CycleWalk original_cycle;
  std::vector<Chord> original_chords;
  ClockTally tally;
  std::vector<ContractedChord> chords;
  /// Radical square zero presentation on the contracted cycle.
  PresentationRef contracted;
  /// Contracted cycle, traversed in the same orientation as original_cycle.
  CycleWalk contracted_cycle;
  std::vector<Path> arrow_map;       // contracted arrow -> path in the original
  std::vector<VertexId> vertex_map;  // contracted vertex -> original vertex
  bool balanced = false;             // original cycle already satisfied the tally
  bool quadratic = true;
};

/// Contracts every chord of `c` and assembles the contracted cycle and its
/// radical square zero presentation. Runs on balanced cycles too; the result
/// then reports `balanced`.
inline ContractionResult contract_cycle(const MonomialPresentation& pres,
                                        const CycleWalk& c) {
  const Quiver& q = pres.quiver();
  ContractionResult out;
  out.original_cycle = c;
  out.original_chords = chords(c);
  out.tally = clock_tally(pres, c);
  out.balanced = out.tally.balanced();
  out.quadratic = is_quadratic(pres);

  std::vector<std::vector<Path>> segments;
  std::set<VertexId> used;
  for (const Chord& ch : out.original_chords) {
    segments.push_back(contract_chord(ch, pres));
    for (const Path& p : segments.back()) {
      used.insert(p.source());
      used.insert(p.target());
    }
  }

  Quiver cq;
  std::vector<VertexId> to_new(q.vertex_count(), 0);
  for (VertexId v : used) {  // std::set iterates in declaration order
    to_new[v] = cq.add_vertex(q.vertex_name(v));
    out.vertex_map.push_back(v);
  }

  std::set<std::string> taken;
  auto fresh_name = [&](const Path& p) {
    std::string base = render_product(q, p);
    std::string name = base;
    for (std::size_t k = 2; taken.contains(name); ++k) name = base + "_" + std::to_string(k);
    taken.insert(name);
    return name;
  };

  std::vector<Step> steps;
  for (std::size_t ci = 0; ci < out.original_chords.size(); ++ci) {
    const Chord& ch = out.original_chords[ci];
    ContractedChord cc{ch.direction, ch.cyclic, {}, 0};
    for (const Embedding& e : out.tally.clockwise) cc.embedded_relations += e.chord == ci;
    for (const Embedding& e : out.tally.counterclockwise) cc.embedded_relations += e.chord == ci;
    for (const Path& p : segments[ci]) {
      ArrowId id = cq.add_arrow(fresh_name(p), to_new[p.source()], to_new[p.target()]);
      out.arrow_map.push_back(p);
      cc.arrows.push_back(id);
    }
    if (ch.direction == Direction::forward) {
      for (ArrowId a : cc.arrows) steps.push_back({a, Direction::forward});
    } else {
      for (auto it = cc.arrows.rbegin(); it != cc.arrows.rend(); ++it)
        steps.push_back({*it, Direction::backward});
    }
    out.chords.push_back(std::move(cc));
  }
  out.contracted_cycle = CycleWalk(std::move(steps));

  std::vector<Path> rels;
  for (ArrowId a = 0; a < cq.arrow_count(); ++a)
    for (ArrowId b : cq.outgoing(cq.arrow(a).target)) rels.push_back(Path::of(cq, {a, b}));
  out.contracted = share(MonomialPresentation(pres.name() + "_contracted", std::move(cq),
                                              std::move(rels)));
  return out;
}

struct Witness {
  DifferentialModule module;
  ContractionResult contraction;
  GradingResult grading;
  std::size_t cycle_index = 0;  // 0-based, into simple_cycles order
  /// Non-quadratic relations: the construction is the heuristic extension,
  /// so only the strict-grading failure is a proven fact.
  bool conjectural = false;
};

/// Pulls the contracted cycle back to the original algebra: one summand per
/// contracted vertex, each contracted arrow contributing its path with
/// coefficient 1.
inline DifferentialModule translate_contraction(const PresentationRef& pres,
                                                const ContractionResult& cr) {
  const Quiver& cq = cr.contracted->quiver();
  const std::size_t n = cr.vertex_map.size();
  PathMatrix eps(n, n);
  for (ArrowId a = 0; a < cq.arrow_count(); ++a) {
    const Arrow& arr = cq.arrow(a);
    eps.at(arr.target, arr.source).add_term(*pres, cr.arrow_map[a], Scalar(1));
  }
  return DifferentialModule::unchecked(pres, cr.vertex_map, std::move(eps));
}

/// Explicit non-gradable relatively projective differential module from a
/// clock-violating cycle. `cycle_index` selects among simple_cycles (0-based);
/// by default the first violating cycle is used.
inline Witness witness_diffmod(const PresentationRef& pres,
                               std::optional<std::size_t> cycle_index = std::nullopt,
                               std::size_t cycle_cap = 100000) {
  ClockVerdict verdict = satisfies_clock(*pres, cycle_cap);
  if (verdict.satisfied) throw_input("clock condition holds; no witness");
  std::size_t idx = cycle_index.value_or(*verdict.witness);
  if (idx >= verdict.tallies.size())
    throw_input("cycle #" + std::to_string(idx + 1) + " does not exist (" +
                std::to_string(verdict.tallies.size()) + " simple cycles)");
  if (verdict.tallies[idx].balanced())
    throw_input("cycle #" + std::to_string(idx + 1) + " satisfies the clock condition");

  ContractionResult cr = contract_cycle(*pres, verdict.tallies[idx].cycle);
  DifferentialModule dm = translate_contraction(pres, cr);
  auto sq = check_square_zero(dm);
  if (!sq.square_zero) throw_internal("contracted witness does not square to zero");
  dm = DifferentialModule::create(pres, dm.summands(), dm.eps());

  GradingResult grading = strict_grading(dm);
  const bool quadratic = cr.quadratic;
  if (quadratic) {
    if (grading.assignment) throw_internal("contracted witness admits a strict grading");
    ArrowTally at = arrow_tally(cr.contracted_cycle);
    auto arrow_imbalance = static_cast<std::int64_t>(at.clockwise) -
                           static_cast<std::int64_t>(at.counterclockwise);
    if (arrow_imbalance != cr.tally.imbalance())
      throw_internal("contraction changed the clock imbalance");
  }
  std::set<VertexId> on_cycle;
  for (VertexId v : cr.original_cycle.vertices(pres->quiver())) on_cycle.insert(v);
  for (std::size_t s : grading.witness_cycle)
    if (!on_cycle.contains(dm.summands()[s]))
      throw_internal("grading witness leaves the chosen cycle");

  return Witness{std::move(dm), std::move(cr), std::move(grading), idx, !quadratic};
}

}  // namespace qclock
