#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qclock/classify.hpp"
#include "qclock/path_vector.hpp"
#include "qclock/potential.hpp"

namespace qclock {

inline constexpr const char* kNonGradableInterpretation =
    "a relatively projective non-gradable differential module exists, so the "
    "orbit category D^b(mod A)/Sigma^n is not triangulated for any n >= 1";

/// A relatively projective differential module: a direct sum of
/// indecomposable projectives P_a (one per entry of `summands`) with a
/// square-zero endomorphism. Entry (j,k) of eps maps summand k to summand j.
class DifferentialModule {
 public:
  /// Full validation, including eps·eps = 0 and the radical condition.
  static DifferentialModule create(PresentationRef pres, std::vector<VertexId> summands,
                                   PathMatrix eps) {
    DifferentialModule dm = unchecked(std::move(pres), std::move(summands), std::move(eps));
    for (std::size_t r = 0; r < dm.eps_.rows(); ++r)
      for (std::size_t c = 0; c < dm.eps_.cols(); ++c)
        for (const auto& [p, coeff] : dm.eps_.at(r, c).terms())
          if (p.is_trivial())
            throw_input("differential must lie in the radical: entry (" +
                        std::to_string(r + 1) + "," + std::to_string(c + 1) +
                        ") has a trivial-path term");
    if (!compose(dm.eps_, dm.eps_, *dm.pres_).is_zero())
      throw_input("differential does not square to zero");
    return dm;
  }

  /// Shape and endpoint validation only; used to examine candidate matrices.
  static DifferentialModule unchecked(PresentationRef pres, std::vector<VertexId> summands,
                                      PathMatrix eps) {
    if (!pres) throw_input("null presentation");
    for (VertexId v : summands)
      if (v >= pres->quiver().vertex_count()) throw_input("summand vertex out of range");
    if (eps.rows() != summands.size() || eps.cols() != summands.size())
      throw_input("differential must be a square matrix matching the summand list");
    if (auto bad = endpoint_mismatch(eps, summands, summands))
      throw_input("endpoint mismatch in entry (" + std::to_string(bad->first + 1) +
                  "," + std::to_string(bad->second + 1) + ")");
    return DifferentialModule(std::move(pres), std::move(summands), std::move(eps));
  }

  const MonomialPresentation& presentation() const noexcept { return *pres_; }
  const PresentationRef& presentation_ref() const noexcept { return pres_; }
  const std::vector<VertexId>& summands() const noexcept { return summands_; }
  const PathMatrix& eps() const noexcept { return eps_; }
  std::size_t size() const noexcept { return summands_.size(); }

  friend bool operator==(const DifferentialModule& a, const DifferentialModule& b) {
    return *a.pres_ == *b.pres_ && a.summands_ == b.summands_ && a.eps_ == b.eps_;
  }

 private:
  DifferentialModule(PresentationRef pres, std::vector<VertexId> summands, PathMatrix eps)
      : pres_(std::move(pres)), summands_(std::move(summands)), eps_(std::move(eps)) {}

  PresentationRef pres_;
  std::vector<VertexId> summands_;
  PathMatrix eps_;
};

struct SquareZeroCheck {
  bool square_zero = true;
  std::optional<std::pair<std::size_t, std::size_t>> offending;  // 0-based
  PathVector value;
};

inline SquareZeroCheck check_square_zero(const DifferentialModule& dm) {
  PathMatrix sq = compose(dm.eps(), dm.eps(), dm.presentation());
  for (std::size_t r = 0; r < sq.rows(); ++r)
    for (std::size_t c = 0; c < sq.cols(); ++c)
      if (!sq.at(r, c).is_zero()) return {false, std::pair{r, c}, sq.at(r, c)};
  return {};
}

/// Σ k_a · a over all arrows; k_a = 1 unless given. Zero coefficients are
/// rejected since the element would not be generic.
inline PathVector generic_element(const MonomialPresentation& pres,
                                  const std::map<ArrowId, Scalar>& coefficients = {}) {
  const Quiver& q = pres.quiver();
  PathVector e;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    Scalar k(1);
    if (auto it = coefficients.find(a); it != coefficients.end()) {
      if (it->second.numerator() == 0) throw_input("not generic: coefficient of '" + q.arrow(a).name + "' is zero");
      k = it->second;
    }
    e.add_term(pres, Path::arrow(q, a), k);
  }
  return e;
}

/// (Λ, e): one summand P_a per vertex, entry (j,k) the terms of e from k to j.
inline DifferentialModule regular_diffmod(const PresentationRef& pres, const PathVector& e) {
  PathVector square = multiply(e, e, *pres);
  if (!square.is_zero())
    throw_input("e*e is nonzero: contains the term " +
                render_path(pres->quiver(), square.terms().begin()->first));
  const std::size_t n = pres->quiver().vertex_count();
  std::vector<VertexId> summands(n);
  for (VertexId v = 0; v < n; ++v) summands[v] = v;
  PathMatrix eps(n, n);
  for (const auto& [p, c] : e.terms()) {
    if (p.is_trivial()) throw_input("e must lie in the radical");
    eps.at(p.target(), p.source()).add_term(*pres, p, c);
  }
  return DifferentialModule::create(pres, std::move(summands), std::move(eps));
}

struct GradingAssignment {
  std::vector<std::int64_t> degrees;  // by summand index

  bool operator==(const GradingAssignment&) const = default;
};

struct GradingResult {
  std::optional<GradingAssignment> assignment;
  /// On failure: summand indices around a cycle of nonzero entries whose
  /// forward and backward counts differ.
  std::vector<std::size_t> witness_cycle;
  std::vector<EdgeStep> witness_steps;  // edges index nonzero entries, row-major
};

/// Constraint edges k -> j for every nonzero entry (j,k), row-major order.
inline std::vector<std::pair<std::size_t, std::size_t>> support_edges(
    const DifferentialModule& dm) {
  std::vector<std::pair<std::size_t, std::size_t>> out;  // (from k, to j)
  for (std::size_t j = 0; j < dm.size(); ++j)
    for (std::size_t k = 0; k < dm.size(); ++k)
      if (!dm.eps().at(j, k).is_zero()) out.emplace_back(k, j);
  return out;
}

/// Degrees with eps strictly raising degree by one, relative to the given
/// decomposition into indecomposable projectives.
inline GradingResult strict_grading(const DifferentialModule& dm) {
  std::vector<UnitEdge> edges;
  for (auto [k, j] : support_edges(dm)) edges.push_back({k, j});
  auto res = solve_unit_potential(dm.size(), edges);
  GradingResult out;
  if (res.labels) {
    out.assignment = GradingAssignment{std::move(*res.labels)};
    return out;
  }
  out.witness_steps = res.witness;
  for (const EdgeStep& s : res.witness)
    out.witness_cycle.push_back(s.forward ? edges[s.edge].from : edges[s.edge].to);
  return out;
}

/// Exhaustive backtracking over degree maps into [-bound, bound] with the
/// first summand of each component pinned at 0. Test oracle only.
inline std::optional<GradingAssignment> strict_grading_oracle(const DifferentialModule& dm,
                                                              std::int64_t degree_bound) {
  constexpr std::size_t kMaxSummands = 12;
  if (dm.size() > kMaxSummands)
    throw Error(ErrorKind::guard, "oracle is limited to " + std::to_string(kMaxSummands) +
                                      " summands, got " + std::to_string(dm.size()));
  const std::size_t n = dm.size();
  auto edges = support_edges(dm);

  // component leaders by plain union-find, independent of the labeller
  std::vector<std::size_t> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = i;
  auto find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (auto [k, j] : edges) {
    auto a = find(k), b = find(j);
    if (a != b) comp[std::max(a, b)] = std::min(a, b);
  }
  std::vector<bool> pinned(n);
  for (std::size_t i = 0; i < n; ++i) pinned[i] = find(i) == i;

  std::vector<std::int64_t> deg(n, 0);
  auto consistent_upto = [&](std::size_t i) {
    for (auto [k, j] : edges)
      if (k <= i && j <= i && (k == i || j == i) && deg[j] != deg[k] + 1) return false;
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == n) return true;
    std::int64_t lo = pinned[i] ? 0 : -degree_bound;
    std::int64_t hi = pinned[i] ? 0 : degree_bound;
    for (std::int64_t d = lo; d <= hi; ++d) {
      deg[i] = d;
      if (consistent_upto(i) && search(i + 1)) return true;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return GradingAssignment{deg};
}

struct RszGradability {
  bool gradable = false;
  ClockVerdict clock;
  VertexPotential potential;
  GradingResult grading;
};

/// Whether (Λ, ε) with generic ε is gradable for a radical-square-zero Λ.
/// The clock verdict is cross-checked against strict grading of the regular
/// module and against the vertex potential.
inline RszGradability gradable_generic_rsz(const PresentationRef& pres,
                                           std::size_t cycle_cap = 100000) {
  if (!is_radical_square_zero(*pres)) throw_input("not radical square zero");
  RszGradability out;
  out.clock = satisfies_clock(*pres, cycle_cap);
  out.potential = vertex_potential(pres->quiver());
  out.grading = strict_grading(regular_diffmod(pres, generic_element(*pres)));
  out.gradable = out.clock.satisfied;
  if (out.gradable != out.grading.assignment.has_value() ||
      out.gradable != out.potential.labels.has_value())
    throw_internal("clock condition, vertex potential and strict grading disagree");
  return out;
}

}  // namespace qclock
