#pragma once

// Machine-readable analysis reports and their text rendering.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qclock/classify.hpp"
#include "qclock/contraction.hpp"
#include "qclock/diffmod.hpp"
#include "qclock/io.hpp"

namespace qclock {

struct ClassificationReport {
  bool quadratic = false;
  bool radical_square_zero = false;
  bool gentle = false;
  std::string gentle_violation;  // "" when gentle
  std::string gentle_detail;
  bool one_cycle = false;
  std::size_t betti_number = 0;
  bool finite_dimensional = false;
  std::vector<std::string> pumping_cycle;

  bool operator==(const ClassificationReport&) const = default;
};

struct CycleReport {
  std::size_t index = 0;  // 1-based
  std::string walk;
  std::size_t clockwise = 0;
  std::size_t counterclockwise = 0;
  bool balanced = true;

  bool operator==(const CycleReport&) const = default;
};

struct ClockReport {
  bool satisfied = true;
  std::optional<std::size_t> violating_cycle;  // 1-based
  std::size_t cycle_count = 0;
  std::vector<CycleReport> cycles;

  bool operator==(const ClockReport&) const = default;
};

struct ChordReport {
  std::string direction;
  bool cyclic = false;
  std::vector<std::string> arrows;
  std::vector<std::string> contracted_arrows;
  std::size_t embedded_relations = 0;

  bool operator==(const ChordReport&) const = default;
};

struct ContractedArrowReport {
  std::string name;
  std::string source;
  std::string target;

  bool operator==(const ContractedArrowReport&) const = default;
};

struct WitnessReport {
  std::size_t cycle = 0;  // 1-based
  std::string walk;
  std::size_t clockwise_relations = 0;
  std::size_t counterclockwise_relations = 0;
  std::vector<ChordReport> chords;
  std::vector<std::string> contracted_vertices;
  std::vector<ContractedArrowReport> contracted_arrows;
  std::size_t contracted_clockwise_arrows = 0;
  std::size_t contracted_counterclockwise_arrows = 0;
  std::vector<std::string> summands;
  std::string eps;
  bool square_zero = false;
  bool conjectural = false;

  bool operator==(const WitnessReport&) const = default;
};

struct GradingReport {
  bool gradable = false;
  std::vector<std::int64_t> degrees;
  std::vector<std::size_t> witness_cycle;  // 1-based summand indices
  std::optional<bool> oracle_agrees;

  bool operator==(const GradingReport&) const = default;
};

struct CheckReport {
  std::string name;
  bool passed = false;

  bool operator==(const CheckReport&) const = default;
};

struct PeriodicReport {
  std::string operation;
  std::size_t period = 0;
  std::vector<std::size_t> position_sizes;
  std::vector<CheckReport> checks;

  bool operator==(const PeriodicReport&) const = default;
};

struct Report {
  std::string command;
  std::string input;
  std::optional<ClassificationReport> classification;
  std::optional<ClockReport> clock;
  std::optional<WitnessReport> witness;
  std::optional<GradingReport> grading;
  std::optional<PeriodicReport> periodic;
  std::string interpretation;
  std::vector<std::string> warnings;
  /// Text of the emitted .dm / .pcx file, when the command produces one.
  std::optional<std::string> artifact;

  bool operator==(const Report&) const = default;
};

// --- JSON -------------------------------------------------------------------

namespace detail {

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    v = it->template get<T>();
  } else {
    v.reset();
  }
}

}  // namespace detail

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassificationReport, quadratic, radical_square_zero, gentle,
                                   gentle_violation, gentle_detail, one_cycle, betti_number,
                                   finite_dimensional, pumping_cycle)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CycleReport, index, walk, clockwise, counterclockwise, balanced)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ChordReport, direction, cyclic, arrows, contracted_arrows,
                                   embedded_relations)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ContractedArrowReport, name, source, target)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(WitnessReport, cycle, walk, clockwise_relations,
                                   counterclockwise_relations, chords, contracted_vertices,
                                   contracted_arrows, contracted_clockwise_arrows,
                                   contracted_counterclockwise_arrows, summands, eps, square_zero,
                                   conjectural)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CheckReport, name, passed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PeriodicReport, operation, period, position_sizes, checks)

inline void to_json(nlohmann::json& j, const ClockReport& r) {
  j = nlohmann::json{{"satisfied", r.satisfied}, {"cycle_count", r.cycle_count}, {"cycles", r.cycles}};
  detail::put_optional(j, "violating_cycle", r.violating_cycle);
}

inline void from_json(const nlohmann::json& j, ClockReport& r) {
  j.at("satisfied").get_to(r.satisfied);
  j.at("cycle_count").get_to(r.cycle_count);
  j.at("cycles").get_to(r.cycles);
  detail::get_optional(j, "violating_cycle", r.violating_cycle);
}

inline void to_json(nlohmann::json& j, const GradingReport& r) {
  j = nlohmann::json{{"gradable", r.gradable}, {"degrees", r.degrees}, {"witness_cycle", r.witness_cycle}};
  detail::put_optional(j, "oracle_agrees", r.oracle_agrees);
}

inline void from_json(const nlohmann::json& j, GradingReport& r) {
  j.at("gradable").get_to(r.gradable);
  j.at("degrees").get_to(r.degrees);
  j.at("witness_cycle").get_to(r.witness_cycle);
  detail::get_optional(j, "oracle_agrees", r.oracle_agrees);
}

inline void to_json(nlohmann::json& j, const Report& r) {
  j = nlohmann::json{{"command", r.command},
                     {"input", r.input},
                     {"interpretation", r.interpretation},
                     {"warnings", r.warnings}};
  detail::put_optional(j, "classification", r.classification);
  detail::put_optional(j, "clock", r.clock);
  detail::put_optional(j, "witness", r.witness);
  detail::put_optional(j, "grading", r.grading);
  detail::put_optional(j, "periodic", r.periodic);
  detail::put_optional(j, "artifact", r.artifact);
}

inline void from_json(const nlohmann::json& j, Report& r) {
  j.at("command").get_to(r.command);
  j.at("input").get_to(r.input);
  j.at("interpretation").get_to(r.interpretation);
  j.at("warnings").get_to(r.warnings);
  detail::get_optional(j, "classification", r.classification);
  detail::get_optional(j, "clock", r.clock);
  detail::get_optional(j, "witness", r.witness);
  detail::get_optional(j, "grading", r.grading);
  detail::get_optional(j, "periodic", r.periodic);
  detail::get_optional(j, "artifact", r.artifact);
}

// --- builders -----------------------------------------------------------------

inline ClassificationReport classify_report(const MonomialPresentation& pres,
                                            std::size_t cycle_cap = 100000) {
  ClassificationReport r;
  const Quiver& q = pres.quiver();
  r.quadratic = is_quadratic(pres);
  r.radical_square_zero = is_radical_square_zero(pres);
  GentleVerdict g = is_gentle(pres);
  r.gentle = g.gentle;
  r.gentle_violation = g.gentle ? "" : to_string(g.violated);
  r.gentle_detail = g.detail;
  OneCycleVerdict oc = is_one_cycle(q, cycle_cap);
  r.one_cycle = oc.one_cycle;
  r.betti_number = oc.betti;
  FiniteDimensionality fd = is_finite_dimensional(pres);
  r.finite_dimensional = fd.finite;
  for (ArrowId a : fd.pumping_cycle) r.pumping_cycle.push_back(q.arrow(a).name);
  return r;
}

inline ClockReport clock_report(const MonomialPresentation& pres, const ClockVerdict& v) {
  ClockReport r;
  r.satisfied = v.satisfied;
  r.cycle_count = v.tallies.size();
  if (v.witness) r.violating_cycle = *v.witness + 1;
  for (std::size_t i = 0; i < v.tallies.size(); ++i) {
    const ClockTally& t = v.tallies[i];
    r.cycles.push_back({i + 1, render_cycle(pres.quiver(), t.cycle), t.clockwise_count(),
                        t.counterclockwise_count(), t.balanced()});
  }
  return r;
}

inline WitnessReport witness_report(const Witness& w) {
  const MonomialPresentation& pres = w.module.presentation();
  const Quiver& q = pres.quiver();
  const ContractionResult& cr = w.contraction;
  const Quiver& cq = cr.contracted->quiver();
  WitnessReport r;
  r.cycle = w.cycle_index + 1;
  r.walk = render_cycle(q, cr.original_cycle);
  r.clockwise_relations = cr.tally.clockwise_count();
  r.counterclockwise_relations = cr.tally.counterclockwise_count();
  for (std::size_t i = 0; i < cr.original_chords.size(); ++i) {
    const Chord& ch = cr.original_chords[i];
    ChordReport c;
    c.direction = ch.direction == Direction::forward ? "clockwise" : "counterclockwise";
    c.cyclic = ch.cyclic;
    for (ArrowId a : ch.arrows) c.arrows.push_back(q.arrow(a).name);
    for (ArrowId a : cr.chords[i].arrows) c.contracted_arrows.push_back(cq.arrow(a).name);
    c.embedded_relations = cr.chords[i].embedded_relations;
    r.chords.push_back(std::move(c));
  }
  r.contracted_vertices.assign(cq.vertex_names().begin(), cq.vertex_names().end());
  for (const Arrow& a : cq.arrows())
    r.contracted_arrows.push_back({a.name, cq.vertex_name(a.source), cq.vertex_name(a.target)});
  ArrowTally at = arrow_tally(cr.contracted_cycle);
  r.contracted_clockwise_arrows = at.clockwise;
  r.contracted_counterclockwise_arrows = at.counterclockwise;
  for (VertexId v : w.module.summands()) r.summands.push_back(q.vertex_name(v));
  PathVector total;
  for (std::size_t j = 0; j < w.module.size(); ++j)
    for (std::size_t k = 0; k < w.module.size(); ++k) total += w.module.eps().at(j, k);
  r.eps = render_terms(q, total);
  r.square_zero = check_square_zero(w.module).square_zero;
  r.conjectural = w.conjectural;
  return r;
}

inline GradingReport grading_report(const GradingResult& g) {
  GradingReport r;
  r.gradable = g.assignment.has_value();
  if (g.assignment) r.degrees = g.assignment->degrees;
  for (std::size_t s : g.witness_cycle) r.witness_cycle.push_back(s + 1);
  return r;
}

// --- text -------------------------------------------------------------------

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace detail

/// The one-line clock verdict.
inline std::string clock_headline(const ClockReport& c) {
  if (c.cycle_count == 0) return "SATISFIED (no cycles)";
  if (c.satisfied) return "SATISFIED (" + std::to_string(c.cycle_count) + " cycles balanced)";
  const CycleReport& v = c.cycles.at(*c.violating_cycle - 1);
  return "VIOLATED: cycle #" + std::to_string(v.index) + ", clockwise relations " +
         std::to_string(v.clockwise) + ", counter-clockwise " + std::to_string(v.counterclockwise);
}

inline std::string render_text(const Report& r, bool all_cycles = false) {
  std::ostringstream os;
  if (const auto& c = r.classification) {
    os << "quadratic monomial:  " << detail::yes_no(c->quadratic) << '\n'
       << "radical square zero: " << detail::yes_no(c->radical_square_zero) << '\n'
       << "gentle:              " << detail::yes_no(c->gentle);
    if (!c->gentle) os << " (" << c->gentle_violation << ": " << c->gentle_detail << ')';
    os << '\n'
       << "one-cycle:           " << detail::yes_no(c->one_cycle) << " (betti number "
       << c->betti_number << ")\n"
       << "finite-dimensional:  " << detail::yes_no(c->finite_dimensional);
    if (!c->finite_dimensional) os << " (pumping cycle " << detail::join(c->pumping_cycle, " ") << ')';
    os << '\n';
  }
  if (const auto& c = r.clock) {
    os << clock_headline(*c) << '\n';
    if (all_cycles || c->cycle_count <= 10)
      for (const CycleReport& cy : c->cycles)
        os << "  #" << cy.index << "  " << cy.walk << "  clockwise " << cy.clockwise
           << ", counter-clockwise " << cy.counterclockwise << (cy.balanced ? "" : "  (unbalanced)")
           << '\n';
  }
  if (const auto& w = r.witness) {
    os << "cycle #" << w->cycle << ": " << w->walk << '\n'
       << "relations: clockwise " << w->clockwise_relations << ", counter-clockwise "
       << w->counterclockwise_relations << '\n'
       << "chords:\n";
    for (const ChordReport& ch : w->chords)
      os << "  " << ch.direction << (ch.cyclic ? " (cyclic)" : "") << ": "
         << detail::join(ch.arrows, " ") << "  ->  " << detail::join(ch.contracted_arrows, ", ")
         << "  (" << ch.embedded_relations << " relations)\n";
    os << "contracted quiver: " << w->contracted_vertices.size() << " vertices, "
       << w->contracted_arrows.size() << " arrows\n";
    for (const ContractedArrowReport& a : w->contracted_arrows)
      os << "  " << a.name << " : " << a.source << " -> " << a.target << '\n';
    os << "contracted arrows: clockwise " << w->contracted_clockwise_arrows
       << ", counter-clockwise " << w->contracted_counterclockwise_arrows << '\n'
       << "summands: P" << detail::join(w->summands, " + P") << '\n'
       << "eps = " << w->eps << '\n'
       << "eps * eps = 0: " << detail::yes_no(w->square_zero) << '\n';
    if (w->conjectural)
      os << "note: relations longer than 2; the contraction is the heuristic extension\n";
  }
  if (const auto& g = r.grading) {
    if (g->gradable) {
      os << "strictly gradable: degrees";
      for (std::int64_t d : g->degrees) os << ' ' << d;
      os << '\n';
    } else {
      os << "not strictly gradable: failing cycle of summands";
      for (std::size_t s : g->witness_cycle) os << ' ' << s;
      os << '\n';
    }
    if (g->oracle_agrees) os << "oracle agrees: " << detail::yes_no(*g->oracle_agrees) << '\n';
  }
  if (const auto& p = r.periodic) {
    os << p->operation << ": period " << p->period << ", position sizes";
    for (std::size_t s : p->position_sizes) os << ' ' << s;
    os << '\n';
    for (const CheckReport& c : p->checks)
      os << "  check " << c.name << ": " << (c.passed ? "ok" : "FAILED") << '\n';
  }
  if (!r.interpretation.empty()) os << "interpretation: " << r.interpretation << '\n';
  for (const std::string& w : r.warnings) os << "warning: " << w << '\n';
  return os.str();
}

}  // namespace qclock
