#pragma once

// Line-oriented text formats.
//
//   .quiver   quiver <name>
//             vertices <id> ...
//             arrow <id> : <src> -> <tgt>
//             relation <arrow> <arrow> ...      (traversal order)
//
//   .dm       diffmod
//             summands <vertex> ...
//             entry <row> <col> : <coeff> <arrow>... [+ <coeff> <arrow>...]
//
//   .cpx      complex
//             degree <i> : <vertex> ...
//             d <i> : <row> <col> : <terms>
//
//   .pcx      pcomplex
//             period <n>
//             position <r> : <vertex> ...
//             d <r> : <row> <col> : <terms>
//
// `#` starts a comment. Indices are 1-based. A file may carry several
// sections; .dm/.cpx/.pcx files written by this library start with the
// quiver section they refer to.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qclock/diffmod.hpp"
#include "qclock/error.hpp"
#include "qclock/path_vector.hpp"
#include "qclock/periodic.hpp"
#include "qclock/quiver.hpp"

namespace qclock {

struct Token {
  std::string text;
  SourcePos pos;
};

struct SourceLine {
  std::vector<Token> tokens;
  SourcePos pos;
};

struct Section {
  std::string keyword;
  SourceLine header;
  std::vector<SourceLine> lines;
};

/// Named sections of tokenised lines with positions retained per token.
struct SourceDocument {
  std::vector<Section> sections;

  const Section* find(std::string_view keyword) const {
    const Section* hit = nullptr;
    for (const Section& s : sections) {
      if (s.keyword != keyword) continue;
      if (hit) throw ParseError(s.header.pos, "duplicate '" + std::string(keyword) + "' section");
      hit = &s;
    }
    return hit;
  }
};

inline constexpr std::string_view kSectionKeywords[] = {"quiver", "diffmod", "complex",
                                                        "pcomplex"};

inline bool is_section_keyword(std::string_view w) {
  for (auto k : kSectionKeywords)
    if (k == w) return true;
  return false;
}

/// Splits into sections. `:` is always a token of its own. Accepts LF and
/// CRLF. Rejects non-ASCII and control bytes.
inline SourceDocument parse_document(std::string_view text) {
  SourceDocument doc;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    SourceLine line{{}, {line_no, 1}};
    std::size_t i = 0;
    while (i < raw.size()) {
      unsigned char ch = static_cast<unsigned char>(raw[i]);
      if (ch == '#') break;
      if (ch == ' ' || ch == '\t') {
        ++i;
        continue;
      }
      if (ch >= 0x80)
        throw ParseError({line_no, i + 1},
                         "non-ASCII byte; identifiers are ASCII (write alpha1 for the Greek letter)");
      if (ch < 0x20 || ch == 0x7f) throw ParseError({line_no, i + 1}, "control character");
      if (ch == ':') {
        line.tokens.push_back({":", {line_no, i + 1}});
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size()) {
        unsigned char c = static_cast<unsigned char>(raw[j]);
        if (c == ' ' || c == '\t' || c == '#' || c == ':' || c >= 0x80 || c < 0x20 || c == 0x7f)
          break;
        ++j;
      }
      line.tokens.push_back({std::string(raw.substr(i, j - i)), {line_no, i + 1}});
      i = j;
    }
    if (!line.tokens.empty()) {
      line.pos = line.tokens.front().pos;
      const std::string& head = line.tokens.front().text;
      if (is_section_keyword(head)) {
        doc.sections.push_back({head, line, {}});
      } else if (doc.sections.empty()) {
        throw ParseError(line.pos, "expected a section header (quiver, diffmod, complex, pcomplex), got '" + head + "'");
      } else {
        doc.sections.back().lines.push_back(std::move(line));
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return doc;
}

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '.' || c == '\'';
    if (!ok) return false;
  }
  return true;
}

inline const Token& expect_identifier(const Token& t, std::string_view what) {
  if (!is_identifier(t.text))
    throw ParseError(t.pos, "invalid " + std::string(what) + " '" + t.text + "'");
  return t;
}

inline void expect_literal(const SourceLine& line, std::size_t i, std::string_view lit) {
  if (i >= line.tokens.size())
    throw ParseError(line.pos, "expected '" + std::string(lit) + "' at end of line");
  if (line.tokens[i].text != lit)
    throw ParseError(line.tokens[i].pos,
                     "expected '" + std::string(lit) + "', got '" + line.tokens[i].text + "'");
}

inline const Token& token_at(const SourceLine& line, std::size_t i, std::string_view what) {
  if (i >= line.tokens.size())
    throw ParseError(line.pos, "missing " + std::string(what));
  return line.tokens[i];
}

inline std::int64_t parse_int(const Token& t, std::string_view what) {
  auto s = parse_scalar(t.text);
  if (!s || s->denominator() != 1 || t.text.find('/') != std::string::npos)
    throw ParseError(t.pos, "expected an integer " + std::string(what) + ", got '" + t.text + "'");
  return s->numerator();
}

inline std::size_t parse_index(const Token& t, std::size_t bound, std::string_view what) {
  std::int64_t v = parse_int(t, what);
  if (v < 1 || static_cast<std::size_t>(v) > bound)
    throw ParseError(t.pos, std::string(what) + " " + t.text + " out of range 1.." +
                                std::to_string(bound));
  return static_cast<std::size_t>(v - 1);
}

inline VertexId lookup_vertex(const Quiver& q, const Token& t) {
  auto v = q.find_vertex(t.text);
  if (!v) throw ParseError(t.pos, "unknown vertex '" + t.text + "'");
  return *v;
}

/// `<coeff> <arrow>... [+ <coeff> <arrow>...]` from token i to end of line.
/// Every path must run from `source` to `target`.
inline PathVector parse_terms(const SourceLine& line, std::size_t i,
                              const MonomialPresentation& pres, VertexId source, VertexId target,
                              std::vector<Diagnostic>* warnings) {
  const Quiver& q = pres.quiver();
  PathVector out;
  if (i >= line.tokens.size()) throw ParseError(line.pos, "missing terms after ':'");
  while (i < line.tokens.size()) {
    const Token& ct = line.tokens[i];
    auto coeff = parse_scalar(ct.text);
    if (!coeff) throw ParseError(ct.pos, "expected a coefficient, got '" + ct.text + "'");
    if (coeff->numerator() == 0) throw ParseError(ct.pos, "zero coefficient");
    ++i;
    std::vector<ArrowId> arrows;
    SourcePos term_pos = ct.pos;
    while (i < line.tokens.size() && line.tokens[i].text != "+") {
      const Token& at = line.tokens[i];
      auto a = q.find_arrow(at.text);
      if (!a) throw ParseError(at.pos, "unknown arrow '" + at.text + "'");
      if (!arrows.empty() && q.arrow(arrows.back()).target != q.arrow(*a).source)
        throw ParseError(at.pos, "non-composable: '" + q.arrow(arrows.back()).name +
                                     "' then '" + at.text + "'");
      arrows.push_back(*a);
      ++i;
    }
    if (arrows.empty())
      throw ParseError(term_pos, "term needs at least one arrow (differentials lie in the radical)");
    Path p = Path::of(q, arrows);
    if (p.source() != source || p.target() != target)
      throw ParseError(term_pos, "endpoint mismatch: path runs " + q.vertex_name(p.source()) +
                                     " -> " + q.vertex_name(p.target()) + ", entry needs " +
                                     q.vertex_name(source) + " -> " + q.vertex_name(target));
    if (pres.is_zero(p)) {
      if (warnings)
        warnings->push_back({term_pos, "path '" + render_path(q, p) +
                                           "' contains a relation; term dropped"});
    } else {
      out.add_term(pres, p, *coeff);
    }
    if (i < line.tokens.size()) {
      ++i;  // '+'
      if (i == line.tokens.size()) throw ParseError(line.tokens[i - 1].pos, "dangling '+'");
    }
  }
  return out;
}

inline void render_matrix_entries(std::ostringstream& os, std::string_view prefix,
                                  const Quiver& q, const PathMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const PathVector& v = m.at(r, c);
      if (v.is_zero()) continue;
      os << prefix << (r + 1) << ' ' << (c + 1) << " : " << render_terms(q, v) << '\n';
    }
}

inline std::string join_vertices(const Quiver& q, std::span<const VertexId> vs) {
  std::string out;
  for (VertexId v : vs) out += " " + q.vertex_name(v);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

inline MonomialPresentation presentation_from_section(const Section& sec) {
  using namespace detail;
  if (sec.header.tokens.size() != 2)
    throw ParseError(sec.header.pos, "expected 'quiver <name>'");
  std::string name = expect_identifier(sec.header.tokens[1], "quiver name").text;

  Quiver q;
  std::vector<Path> relations;
  for (const SourceLine& line : sec.lines) {
    const std::string& kw = line.tokens.front().text;
    if (kw == "vertices") {
      if (line.tokens.size() < 2) throw ParseError(line.pos, "'vertices' needs at least one id");
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        const Token& t = expect_identifier(line.tokens[i], "vertex id");
        if (q.find_vertex(t.text)) throw ParseError(t.pos, "duplicate vertex '" + t.text + "'");
        q.add_vertex(t.text);
      }
    } else if (kw == "arrow") {
      const Token& id = expect_identifier(token_at(line, 1, "arrow id"), "arrow id");
      expect_literal(line, 2, ":");
      const Token& src = token_at(line, 3, "source vertex");
      expect_literal(line, 4, "->");
      const Token& tgt = token_at(line, 5, "target vertex");
      if (line.tokens.size() > 6) throw ParseError(line.tokens[6].pos, "unexpected token");
      if (q.find_arrow(id.text)) throw ParseError(id.pos, "duplicate arrow id '" + id.text + "'");
      q.add_arrow(id.text, lookup_vertex(q, src), lookup_vertex(q, tgt));
    } else if (kw == "relation") {
      if (line.tokens.size() < 3)
        throw ParseError(line.pos, "relation must have length >= 2");
      std::vector<ArrowId> arrows;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        const Token& t = line.tokens[i];
        auto a = q.find_arrow(t.text);
        if (!a) throw ParseError(t.pos, "unknown arrow '" + t.text + "'");
        if (!arrows.empty() && q.arrow(arrows.back()).target != q.arrow(*a).source)
          throw ParseError(t.pos, "non-composable relation: '" + q.arrow(arrows.back()).name +
                                      "' then '" + t.text + "'");
        arrows.push_back(*a);
      }
      relations.push_back(Path::of(q, std::move(arrows)));
    } else {
      throw ParseError(line.pos, "unknown keyword '" + kw + "' in quiver section");
    }
  }
  return MonomialPresentation(std::move(name), std::move(q), std::move(relations));
}

/// Reads the quiver section of `text`; other sections are ignored.
inline MonomialPresentation parse_presentation(std::string_view text) {
  SourceDocument doc = parse_document(text);
  const Section* sec = doc.find("quiver");
  if (!sec) throw ParseError({1, 1}, "no 'quiver' section");
  return presentation_from_section(*sec);
}

inline std::string render_presentation(const MonomialPresentation& pres) {
  const Quiver& q = pres.quiver();
  std::ostringstream os;
  os << "quiver " << pres.name() << '\n';
  if (q.vertex_count() > 0) os << "vertices" << detail::join_vertices(q, [&] {
    std::vector<VertexId> all(q.vertex_count());
    for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
    return all;
  }()) << '\n';
  for (const Arrow& a : q.arrows())
    os << "arrow " << a.name << " : " << q.vertex_name(a.source) << " -> "
       << q.vertex_name(a.target) << '\n';
  for (const Path& r : pres.relations()) os << "relation " << render_path(q, r) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Differential modules
// ---------------------------------------------------------------------------

inline DifferentialModule diffmod_from_section(const Section& sec, const PresentationRef& pres,
                                               std::vector<Diagnostic>* warnings) {
  using namespace detail;
  const Quiver& q = pres->quiver();
  if (sec.header.tokens.size() != 1)
    throw ParseError(sec.header.tokens[1].pos, "unexpected token after 'diffmod'");
  std::vector<VertexId> summands;
  struct PendingEntry {
    const SourceLine* line;
  };
  std::vector<PendingEntry> entries;
  for (const SourceLine& line : sec.lines) {
    const std::string& kw = line.tokens.front().text;
    if (kw == "summands") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        summands.push_back(lookup_vertex(q, line.tokens[i]));
    } else if (kw == "entry") {
      entries.push_back({&line});
    } else {
      throw ParseError(line.pos, "unknown keyword '" + kw + "' in diffmod section");
    }
  }
  const std::size_t n = summands.size();
  PathMatrix eps(n, n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : entries) {
    const SourceLine& line = *e.line;
    std::size_t r = parse_index(token_at(line, 1, "row index"), n, "row index");
    std::size_t c = parse_index(token_at(line, 2, "column index"), n, "column index");
    expect_literal(line, 3, ":");
    if (!seen.insert({r, c}).second)
      throw ParseError(line.pos, "duplicate entry " + std::to_string(r + 1) + " " +
                                     std::to_string(c + 1));
    eps.at(r, c) = parse_terms(line, 4, *pres, summands[c], summands[r], warnings);
  }
  DifferentialModule dm = DifferentialModule::unchecked(pres, std::move(summands), std::move(eps));
  auto sq = check_square_zero(dm);
  if (!sq.square_zero)
    throw ParseError(sec.header.pos,
                     "differential does not square to zero: entry (" +
                         std::to_string(sq.offending->first + 1) + "," +
                         std::to_string(sq.offending->second + 1) + ") of eps*eps is " +
                         render_terms(q, sq.value));
  return DifferentialModule::create(dm.presentation_ref(), dm.summands(), dm.eps());
}

inline DifferentialModule parse_diffmod(std::string_view text, const PresentationRef& pres,
                                        std::vector<Diagnostic>* warnings = nullptr) {
  SourceDocument doc = parse_document(text);
  const Section* sec = doc.find("diffmod");
  if (!sec) throw ParseError({1, 1}, "no 'diffmod' section");
  return diffmod_from_section(*sec, pres, warnings);
}

/// Self-contained .dm: the quiver section followed by the diffmod section.
inline DifferentialModule load_diffmod(std::string_view text,
                                       std::vector<Diagnostic>* warnings = nullptr) {
  return parse_diffmod(text, share(parse_presentation(text)), warnings);
}

inline std::string render_diffmod_section(const DifferentialModule& dm) {
  const Quiver& q = dm.presentation().quiver();
  std::ostringstream os;
  os << "diffmod\n";
  os << "summands" << detail::join_vertices(q, dm.summands()) << '\n';
  detail::render_matrix_entries(os, "entry ", q, dm.eps());
  return os.str();
}

inline std::string render_diffmod(const DifferentialModule& dm) {
  return render_presentation(dm.presentation()) + "\n" + render_diffmod_section(dm);
}

// ---------------------------------------------------------------------------
// Bounded and periodic complexes
// ---------------------------------------------------------------------------

namespace detail {

/// Largest accepted degree span of a complex, and largest period.
inline constexpr std::int64_t kMaxSpan = 1 << 16;

/// `d <i> : <row> <col> : <terms>` lines collected per differential index.
struct DifferentialLine {
  std::int64_t index;
  const SourceLine* line;
};

inline std::int64_t parse_d_index(const SourceLine& line) {
  std::int64_t i = parse_int(token_at(line, 1, "differential index"), "differential index");
  expect_literal(line, 2, ":");
  return i;
}

inline PathMatrix fill_matrix(const std::vector<const SourceLine*>& lines,
                              const MonomialPresentation& pres,
                              std::span<const VertexId> rows, std::span<const VertexId> cols,
                              std::vector<Diagnostic>* warnings) {
  PathMatrix m(rows.size(), cols.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const SourceLine* lp : lines) {
    const SourceLine& line = *lp;
    std::size_t r = parse_index(token_at(line, 3, "row index"), rows.size(), "row index");
    std::size_t c = parse_index(token_at(line, 4, "column index"), cols.size(), "column index");
    expect_literal(line, 5, ":");
    if (!seen.insert({r, c}).second) throw ParseError(line.pos, "duplicate entry");
    m.at(r, c) = parse_terms(line, 6, pres, cols[c], rows[r], warnings);
  }
  return m;
}

}  // namespace detail

inline BoundedComplex complex_from_section(const Section& sec, const PresentationRef& pres,
                                           std::vector<Diagnostic>* warnings) {
  using namespace detail;
  const Quiver& q = pres->quiver();
  if (sec.header.tokens.size() != 1)
    throw ParseError(sec.header.tokens[1].pos, "unexpected token after 'complex'");
  std::map<std::int64_t, std::vector<VertexId>> degrees;
  std::map<std::int64_t, std::vector<const SourceLine*>> dlines;
  for (const SourceLine& line : sec.lines) {
    const std::string& kw = line.tokens.front().text;
    if (kw == "degree") {
      const Token& it = token_at(line, 1, "degree");
      std::int64_t i = parse_int(it, "degree");
      expect_literal(line, 2, ":");
      if (degrees.contains(i)) throw ParseError(it.pos, "duplicate degree " + it.text);
      auto& vs = degrees[i];
      for (std::size_t k = 3; k < line.tokens.size(); ++k) vs.push_back(lookup_vertex(q, line.tokens[k]));
    } else if (kw == "d") {
      dlines[parse_d_index(line)].push_back(&line);
    } else {
      throw ParseError(line.pos, "unknown keyword '" + kw + "' in complex section");
    }
  }
  std::int64_t lo = degrees.empty() ? 0 : degrees.begin()->first;
  std::int64_t hi = degrees.empty() ? -1 : degrees.rbegin()->first;
  if (static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) >= kMaxSpan)
    throw ParseError(sec.header.pos, "degree span exceeds " + std::to_string(kMaxSpan));
  std::vector<std::vector<VertexId>> terms;
  for (std::int64_t i = lo; i <= hi; ++i)
    terms.push_back(degrees.contains(i) ? degrees[i] : std::vector<VertexId>{});
  for (const auto& [i, lines] : dlines)
    if (i < lo || i >= hi)
      throw ParseError(lines.front()->tokens[1].pos,
                       "differential d " + std::to_string(i) + " has no target degree");
  std::vector<PathMatrix> diffs;
  for (std::int64_t i = lo; i < hi; ++i) {
    const auto& src = terms[static_cast<std::size_t>(i - lo)];
    const auto& dst = terms[static_cast<std::size_t>(i - lo + 1)];
    auto it = dlines.find(i);
    diffs.push_back(it == dlines.end() ? PathMatrix(dst.size(), src.size())
                                       : fill_matrix(it->second, *pres, dst, src, warnings));
  }
  for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
    if (!compose(diffs[k + 1], diffs[k], *pres).is_zero()) {
      std::int64_t i = lo + static_cast<std::int64_t>(k);
      auto it = dlines.find(i + 1);
      SourcePos pos = it != dlines.end() ? it->second.front()->pos : sec.header.pos;
      throw ParseError(pos, "d " + std::to_string(i + 1) + " after d " + std::to_string(i) +
                                " is nonzero (degrees " + std::to_string(i) + " -> " +
                                std::to_string(i + 2) + ")");
    }
  }
  return BoundedComplex::create(pres, lo, std::move(terms), std::move(diffs));
}

inline BoundedComplex parse_complex(std::string_view text, const PresentationRef& pres,
                                    std::vector<Diagnostic>* warnings = nullptr) {
  SourceDocument doc = parse_document(text);
  const Section* sec = doc.find("complex");
  if (!sec) throw ParseError({1, 1}, "no 'complex' section");
  return complex_from_section(*sec, pres, warnings);
}

inline BoundedComplex load_complex(std::string_view text,
                                   std::vector<Diagnostic>* warnings = nullptr) {
  return parse_complex(text, share(parse_presentation(text)), warnings);
}

inline std::string render_complex_section(const BoundedComplex& x) {
  const Quiver& q = x.presentation().quiver();
  std::ostringstream os;
  os << "complex\n";
  for (std::int64_t i = x.lowest_degree(); i < x.end_degree(); ++i)
    os << "degree " << i << " :" << detail::join_vertices(q, x.term(i)) << '\n';
  for (std::int64_t i = x.lowest_degree(); i + 1 < x.end_degree(); ++i)
    detail::render_matrix_entries(os, "d " + std::to_string(i) + " : ", q, x.differential(i));
  return os.str();
}

inline std::string render_complex(const BoundedComplex& x) {
  return render_presentation(x.presentation()) + "\n" + render_complex_section(x);
}

inline PeriodicComplex periodic_from_section(const Section& sec, const PresentationRef& pres,
                                             std::vector<Diagnostic>* warnings) {
  using namespace detail;
  const Quiver& q = pres->quiver();
  if (sec.header.tokens.size() != 1)
    throw ParseError(sec.header.tokens[1].pos, "unexpected token after 'pcomplex'");
  std::optional<std::size_t> period;
  std::map<std::int64_t, std::pair<SourcePos, std::vector<VertexId>>> positions;
  std::map<std::int64_t, std::vector<const SourceLine*>> dlines;
  for (const SourceLine& line : sec.lines) {
    const std::string& kw = line.tokens.front().text;
    if (kw == "period") {
      const Token& t = token_at(line, 1, "period");
      std::int64_t n = parse_int(t, "period");
      if (n < 1) throw ParseError(t.pos, "period must be at least 1");
      if (n > kMaxSpan) throw ParseError(t.pos, "period exceeds " + std::to_string(kMaxSpan));
      if (period) throw ParseError(line.pos, "duplicate 'period'");
      if (line.tokens.size() > 2) throw ParseError(line.tokens[2].pos, "unexpected token");
      period = static_cast<std::size_t>(n);
    } else if (kw == "position") {
      const Token& t = token_at(line, 1, "position");
      std::int64_t r = parse_int(t, "position");
      expect_literal(line, 2, ":");
      if (positions.contains(r)) throw ParseError(t.pos, "duplicate position " + t.text);
      auto& [pos, vs] = positions[r];
      pos = t.pos;
      for (std::size_t k = 3; k < line.tokens.size(); ++k) vs.push_back(lookup_vertex(q, line.tokens[k]));
    } else if (kw == "d") {
      dlines[parse_d_index(line)].push_back(&line);
    } else {
      throw ParseError(line.pos, "unknown keyword '" + kw + "' in pcomplex section");
    }
  }
  if (!period) throw ParseError(sec.header.pos, "missing 'period'");
  const std::size_t n = *period;
  std::vector<std::vector<VertexId>> pos(n);
  for (auto& [r, entry] : positions) {
    if (r < 0 || static_cast<std::size_t>(r) >= n)
      throw ParseError(entry.first, "position " + std::to_string(r) + " out of range 0.." +
                                        std::to_string(n - 1));
    pos[static_cast<std::size_t>(r)] = entry.second;
  }
  for (const auto& [r, lines] : dlines)
    if (r < 0 || static_cast<std::size_t>(r) >= n)
      throw ParseError(lines.front()->tokens[1].pos, "differential index out of range");
  std::vector<PathMatrix> diffs;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& src = pos[r];
    const auto& dst = pos[(r + 1) % n];
    auto it = dlines.find(static_cast<std::int64_t>(r));
    diffs.push_back(it == dlines.end() ? PathMatrix(dst.size(), src.size())
                                       : fill_matrix(it->second, *pres, dst, src, warnings));
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!compose(diffs[(r + 1) % n], diffs[r], *pres).is_zero())
      throw ParseError(sec.header.pos, "d " + std::to_string((r + 1) % n) + " after d " +
                                           std::to_string(r) + " is nonzero");
  }
  return PeriodicComplex::create(pres, std::move(pos), std::move(diffs));
}

inline PeriodicComplex parse_periodic(std::string_view text, const PresentationRef& pres,
                                      std::vector<Diagnostic>* warnings = nullptr) {
  SourceDocument doc = parse_document(text);
  const Section* sec = doc.find("pcomplex");
  if (!sec) throw ParseError({1, 1}, "no 'pcomplex' section");
  return periodic_from_section(*sec, pres, warnings);
}

inline PeriodicComplex load_periodic(std::string_view text,
                                     std::vector<Diagnostic>* warnings = nullptr) {
  return parse_periodic(text, share(parse_presentation(text)), warnings);
}

inline std::string render_periodic_section(const PeriodicComplex& p) {
  const Quiver& q = p.presentation().quiver();
  std::ostringstream os;
  os << "pcomplex\nperiod " << p.period() << '\n';
  for (std::size_t r = 0; r < p.period(); ++r)
    os << "position " << r << " :" << detail::join_vertices(q, p.position(r)) << '\n';
  for (std::size_t r = 0; r < p.period(); ++r)
    detail::render_matrix_entries(os, "d " + std::to_string(r) + " : ", q, p.differential(r));
  return os.str();
}

inline std::string render_periodic(const PeriodicComplex& p) {
  return render_presentation(p.presentation()) + "\n" + render_periodic_section(p);
}

}  // namespace qclock
