#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qclock/diffmod.hpp"
#include "qclock/path_vector.hpp"

namespace qclock {

/// Non-negative residue of i modulo n.
inline std::size_t residue(std::int64_t i, std::size_t n) {
  auto m = static_cast<std::int64_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

/// Bounded complex of projectives 0 -> X^lo -> ... -> X^hi -> 0. Degree i
/// holds a list of summand vertices; d^i maps degree i to degree i+1, with
/// entry (j,k) from summand k of X^i to summand j of X^{i+1}.
class BoundedComplex {
 public:
  BoundedComplex() = default;

  static BoundedComplex create(PresentationRef pres, std::int64_t lowest,
                               std::vector<std::vector<VertexId>> terms,
                               std::vector<PathMatrix> differentials) {
    if (!pres) throw_input("null presentation");
    const std::size_t expected = terms.empty() ? 0 : terms.size() - 1;
    if (differentials.size() != expected)
      throw_input("a complex with " + std::to_string(terms.size()) + " degrees needs " +
                  std::to_string(expected) + " differentials");
    for (std::size_t i = 0; i < differentials.size(); ++i) {
      const PathMatrix& d = differentials[i];
      std::int64_t deg = lowest + static_cast<std::int64_t>(i);
      if (d.rows() != terms[i + 1].size() || d.cols() != terms[i].size())
        throw_input("differential d " + std::to_string(deg) + " has the wrong shape");
      if (endpoint_mismatch(d, terms[i + 1], terms[i]))
        throw_input("endpoint mismatch in differential d " + std::to_string(deg));
    }
    for (std::size_t i = 0; i + 1 < differentials.size(); ++i) {
      if (!compose(differentials[i + 1], differentials[i], *pres).is_zero()) {
        std::int64_t deg = lowest + static_cast<std::int64_t>(i);
        throw_input("d " + std::to_string(deg + 1) + " after d " + std::to_string(deg) +
                    " is nonzero (degrees " + std::to_string(deg) + " -> " +
                    std::to_string(deg + 2) + ")");
      }
    }
    BoundedComplex x;
    x.pres_ = std::move(pres);
    x.lowest_ = lowest;
    x.terms_ = std::move(terms);
    x.diffs_ = std::move(differentials);
    return x;
  }

  const MonomialPresentation& presentation() const noexcept { return *pres_; }
  const PresentationRef& presentation_ref() const noexcept { return pres_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::int64_t lowest_degree() const noexcept { return lowest_; }
  /// One past the highest degree.
  std::int64_t end_degree() const noexcept {
    return lowest_ + static_cast<std::int64_t>(terms_.size());
  }

  std::span<const VertexId> term(std::int64_t degree) const {
    if (degree < lowest_ || degree >= end_degree()) return {};
    return terms_[static_cast<std::size_t>(degree - lowest_)];
  }

  /// d^degree : X^degree -> X^{degree+1}; a zero matrix outside the support.
  PathMatrix differential(std::int64_t degree) const {
    if (degree < lowest_ || degree + 1 >= end_degree())
      return PathMatrix(term(degree + 1).size(), term(degree).size());
    return diffs_[static_cast<std::size_t>(degree - lowest_)];
  }

  const std::vector<std::vector<VertexId>>& terms() const noexcept { return terms_; }
  const std::vector<PathMatrix>& differentials() const noexcept { return diffs_; }

  BoundedComplex shifted(std::int64_t by) const {
    BoundedComplex x = *this;
    x.lowest_ += by;
    return x;
  }

  friend bool operator==(const BoundedComplex& a, const BoundedComplex& b) {
    return *a.pres_ == *b.pres_ && a.lowest_ == b.lowest_ && a.terms_ == b.terms_ &&
           a.diffs_ == b.diffs_;
  }

 private:
  PresentationRef pres_;
  std::int64_t lowest_ = 0;
  std::vector<std::vector<VertexId>> terms_;
  std::vector<PathMatrix> diffs_;
};

/// n-periodic complex: positions 0..n-1 and d_r from position r to r+1 mod n,
/// with d_{r+1} d_r = 0 for every r.
class PeriodicComplex {
 public:
  PeriodicComplex() = default;

  static PeriodicComplex create(PresentationRef pres,
                                std::vector<std::vector<VertexId>> positions,
                                std::vector<PathMatrix> differentials) {
    if (!pres) throw_input("null presentation");
    const std::size_t n = positions.size();
    if (n == 0) throw_input("period must be at least 1");
    if (differentials.size() != n) throw_input("need one differential per position");
    for (std::size_t r = 0; r < n; ++r) {
      const auto& src = positions[r];
      const auto& dst = positions[(r + 1) % n];
      if (differentials[r].rows() != dst.size() || differentials[r].cols() != src.size())
        throw_input("differential d " + std::to_string(r) + " has the wrong shape");
      if (endpoint_mismatch(differentials[r], dst, src))
        throw_input("endpoint mismatch in differential d " + std::to_string(r));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (!compose(differentials[(r + 1) % n], differentials[r], *pres).is_zero())
        throw_input("d " + std::to_string((r + 1) % n) + " after d " + std::to_string(r) +
                    " is nonzero");
    }
    PeriodicComplex p;
    p.pres_ = std::move(pres);
    p.positions_ = std::move(positions);
    p.diffs_ = std::move(differentials);
    return p;
  }

  static PeriodicComplex zero(PresentationRef pres, std::size_t n) {
    return create(std::move(pres), std::vector<std::vector<VertexId>>(n),
                  std::vector<PathMatrix>(n));
  }

  static PeriodicComplex from_diffmod(const DifferentialModule& dm) {
    return create(dm.presentation_ref(), {dm.summands()}, {dm.eps()});
  }

  DifferentialModule to_diffmod() const {
    if (period() != 1) throw_input("only a 1-periodic complex is a differential module");
    return DifferentialModule::unchecked(pres_, positions_[0], diffs_[0]);
  }

  const MonomialPresentation& presentation() const noexcept { return *pres_; }
  const PresentationRef& presentation_ref() const noexcept { return pres_; }
  std::size_t period() const noexcept { return positions_.size(); }
  const std::vector<VertexId>& position(std::size_t r) const { return positions_.at(r); }
  const PathMatrix& differential(std::size_t r) const { return diffs_.at(r); }
  const std::vector<std::vector<VertexId>>& positions() const noexcept { return positions_; }
  const std::vector<PathMatrix>& differentials() const noexcept { return diffs_; }

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& p : positions_) n += p.size();
    return n;
  }

  friend bool operator==(const PeriodicComplex& a, const PeriodicComplex& b) {
    return *a.pres_ == *b.pres_ && a.positions_ == b.positions_ && a.diffs_ == b.diffs_;
  }

 private:
  PresentationRef pres_;
  std::vector<std::vector<VertexId>> positions_;
  std::vector<PathMatrix> diffs_;
};

namespace detail {

/// Position layout: for each position, the degrees placed there in order and
/// each degree's block offset.
struct Layout {
  std::vector<std::vector<VertexId>> positions;
  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> where;  // degree -> (pos, offset)
};

inline void place(Layout& lay, const BoundedComplex& x, std::int64_t degree, std::size_t pos) {
  lay.where[degree] = {pos, lay.positions[pos].size()};
  auto t = x.term(degree);
  lay.positions[pos].insert(lay.positions[pos].end(), t.begin(), t.end());
}

/// d_r blocks: degree i sits at (pos, offset); d^i goes to where[i+1].
inline std::vector<PathMatrix> place_differentials(const Layout& lay, const BoundedComplex& x) {
  const std::size_t n = lay.positions.size();
  std::vector<PathMatrix> d;
  for (std::size_t r = 0; r < n; ++r)
    d.emplace_back(lay.positions[(r + 1) % n].size(), lay.positions[r].size());
  for (const auto& [deg, at] : lay.where) {
    auto next = lay.where.find(deg + 1);
    if (next == lay.where.end()) continue;
    auto [pos, col] = at;
    auto [pos2, row] = next->second;
    if (pos2 != (pos + 1) % n) throw_internal("layout breaks the period");
    d[pos].set_block(row, col, x.differential(deg));
  }
  return d;
}

}  // namespace detail

/// Folding: position r gathers X^i for i ≡ r (mod n), in increasing degree.
inline PeriodicComplex fold(const BoundedComplex& x, std::size_t n) {
  if (n == 0) throw_input("period must be at least 1");
  detail::Layout lay;
  lay.positions.resize(n);
  for (std::int64_t i = x.lowest_degree(); i < x.end_degree(); ++i)
    detail::place(lay, x, i, residue(i, n));
  return PeriodicComplex::create(x.presentation_ref(), lay.positions,
                                 detail::place_differentials(lay, x));
}

/// Coproduct over one period with the induced differential: d_r lands in
/// block (r+1 mod n, r) of the single position.
inline PeriodicComplex collapse(const PeriodicComplex& p) {
  const std::size_t n = p.period();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t r = 0; r < n; ++r) offset[r + 1] = offset[r] + p.position(r).size();
  std::vector<VertexId> all;
  for (std::size_t r = 0; r < n; ++r)
    all.insert(all.end(), p.position(r).begin(), p.position(r).end());
  PathMatrix d(all.size(), all.size());
  for (std::size_t r = 0; r < n; ++r) d.set_block(offset[(r + 1) % n], offset[r], p.differential(r));
  return PeriodicComplex::create(p.presentation_ref(), {std::move(all)}, {std::move(d)});
}

/// A 1-periodic complex regarded as n-periodic.
inline PeriodicComplex include(const PeriodicComplex& p, std::size_t n) {
  if (p.period() != 1) throw_input("include expects a 1-periodic complex");
  if (n == 0) throw_input("period must be at least 1");
  return PeriodicComplex::create(p.presentation_ref(),
                                 std::vector<std::vector<VertexId>>(n, p.position(0)),
                                 std::vector<PathMatrix>(n, p.differential(0)));
}

/// Reindex positions r -> r + s (mod n): new position r is old position r+s.
inline PeriodicComplex rotate(const PeriodicComplex& p, std::int64_t s) {
  const std::size_t n = p.period();
  std::vector<std::vector<VertexId>> pos(n);
  std::vector<PathMatrix> d(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t from = residue(static_cast<std::int64_t>(r) + s, n);
    pos[r] = p.position(from);
    d[r] = p.differential(from);
  }
  return PeriodicComplex::create(p.presentation_ref(), std::move(pos), std::move(d));
}

/// Positionwise concatenation with block-diagonal differentials.
inline PeriodicComplex direct_sum(std::span<const PeriodicComplex> parts) {
  if (parts.empty()) throw_input("direct sum of nothing");
  const std::size_t n = parts.front().period();
  for (const auto& p : parts)
    if (p.period() != n) throw_input("direct sum needs equal periods");
  std::vector<std::vector<VertexId>> pos(n);
  for (const auto& p : parts)
    for (std::size_t r = 0; r < n; ++r)
      pos[r].insert(pos[r].end(), p.position(r).begin(), p.position(r).end());
  std::vector<PathMatrix> d;
  for (std::size_t r = 0; r < n; ++r) d.emplace_back(pos[(r + 1) % n].size(), pos[r].size());
  std::vector<std::size_t> off(n, 0);
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < n; ++r)
      d[r].set_block(off[(r + 1) % n], off[r], p.differential(r));
    for (std::size_t r = 0; r < n; ++r) off[r] += p.position(r).size();
  }
  return PeriodicComplex::create(parts.front().presentation_ref(), std::move(pos), std::move(d));
}

/// Splits include(fold(x,1), n) by residue class: summand r holds, at
/// position p, the blocks X^i with i - p ≡ r (mod n). The collapsed
/// differential only moves X^i at p to X^{i+1} at p+1, so each class is a
/// chain-level direct summand.
inline std::vector<PeriodicComplex> decompose_residues(const BoundedComplex& x, std::size_t n) {
  if (n == 0) throw_input("period must be at least 1");
  std::vector<PeriodicComplex> out;
  for (std::size_t r = 0; r < n; ++r) {
    detail::Layout lay;
    lay.positions.resize(n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::int64_t i = x.lowest_degree(); i < x.end_degree(); ++i)
        if (residue(i - static_cast<std::int64_t>(p), n) == r) detail::place(lay, x, i, p);
    out.push_back(PeriodicComplex::create(x.presentation_ref(), lay.positions,
                                          detail::place_differentials(lay, x)));
  }
  return out;
}

/// perm[r][k] = index in q's position r of p's k-th summand there.
using PositionPermutation = std::vector<std::vector<std::size_t>>;

/// The complex obtained by moving p's k-th summand at position r to index
/// perm[r][k]; permutation_equal(p, permuted(p, perm)) holds.
inline PeriodicComplex permuted(const PeriodicComplex& p, const PositionPermutation& perm) {
  const std::size_t n = p.period();
  if (perm.size() != n) throw_input("permutation needs one entry per position");
  std::vector<std::vector<VertexId>> pos(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t m = p.position(r).size();
    if (perm[r].size() != m) throw_input("permutation size mismatch at position " + std::to_string(r));
    pos[r].assign(m, 0);
    std::vector<bool> hit(m, false);
    for (std::size_t k = 0; k < m; ++k) {
      if (perm[r][k] >= m || hit[perm[r][k]]) throw_input("not a permutation at position " + std::to_string(r));
      hit[perm[r][k]] = true;
      pos[r][perm[r][k]] = p.position(r)[k];
    }
  }
  std::vector<PathMatrix> d;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t s = (r + 1) % n;
    PathMatrix m(pos[s].size(), pos[r].size());
    for (std::size_t j = 0; j < pos[s].size(); ++j)
      for (std::size_t k = 0; k < pos[r].size(); ++k)
        m.at(perm[s][j], perm[r][k]) = p.differential(r).at(j, k);
    d.push_back(std::move(m));
  }
  return PeriodicComplex::create(p.presentation_ref(), std::move(pos), std::move(d));
}

/// Strict chain-level equality up to reordering summands within each
/// position. Colour refinement narrows candidates, then backtracking checks
/// every entry exactly.
inline std::optional<PositionPermutation> permutation_equal(const PeriodicComplex& p,
                                                            const PeriodicComplex& q) {
  const std::size_t n = p.period();
  if (q.period() != n || !(p.presentation() == q.presentation())) return std::nullopt;
  for (std::size_t r = 0; r < n; ++r) {
    auto a = p.position(r), b = q.position(r);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  struct Node {
    std::size_t pos, idx;
  };
  struct Side {
    const PeriodicComplex* cx;
    std::vector<Node> nodes;
    std::vector<std::size_t> base;  // first node id of each position
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out, in;  // (label, node)
  };
  std::map<PathVector, std::size_t> labels;
  auto build = [&](const PeriodicComplex& cx) {
    Side s{&cx, {}, {}, {}, {}};
    for (std::size_t r = 0; r < n; ++r) {
      s.base.push_back(s.nodes.size());
      for (std::size_t k = 0; k < cx.position(r).size(); ++k) s.nodes.push_back({r, k});
    }
    s.out.resize(s.nodes.size());
    s.in.resize(s.nodes.size());
    for (std::size_t r = 0; r < n; ++r) {
      const PathMatrix& d = cx.differential(r);
      for (std::size_t j = 0; j < d.rows(); ++j)
        for (std::size_t k = 0; k < d.cols(); ++k) {
          if (d.at(j, k).is_zero()) continue;
          auto label = labels.try_emplace(d.at(j, k), labels.size()).first->second;
          std::size_t from = s.base[r] + k, to = s.base[(r + 1) % n] + j;
          s.out[from].emplace_back(label, to);
          s.in[to].emplace_back(label, from);
        }
    }
    return s;
  };
  Side sp = build(p), sq = build(q);
  const std::size_t total = sp.nodes.size();

  // colour refinement over both sides with a shared signature table
  std::vector<std::size_t> cp(total), cq(total);
  {
    std::map<std::pair<std::size_t, VertexId>, std::size_t> init;
    auto colour0 = [&](const Side& s, std::size_t v) {
      auto key = std::pair{s.nodes[v].pos, s.cx->position(s.nodes[v].pos)[s.nodes[v].idx]};
      return init.try_emplace(key, init.size()).first->second;
    };
    for (std::size_t v = 0; v < total; ++v) cp[v] = colour0(sp, v);
    for (std::size_t v = 0; v < total; ++v) cq[v] = colour0(sq, v);
  }
  std::size_t classes = 0;
  while (true) {
    using Sig = std::tuple<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>,
                           std::vector<std::pair<std::size_t, std::size_t>>>;
    std::map<Sig, std::size_t> table;
    auto refine = [&](const Side& s, const std::vector<std::size_t>& c) {
      std::vector<std::size_t> next(total);
      for (std::size_t v = 0; v < total; ++v) {
        Sig sig{c[v], {}, {}};
        for (auto [l, w] : s.out[v]) std::get<1>(sig).emplace_back(l, c[w]);
        for (auto [l, w] : s.in[v]) std::get<2>(sig).emplace_back(l, c[w]);
        std::sort(std::get<1>(sig).begin(), std::get<1>(sig).end());
        std::sort(std::get<2>(sig).begin(), std::get<2>(sig).end());
        next[v] = table.try_emplace(std::move(sig), table.size()).first->second;
      }
      return next;
    };
    auto np = refine(sp, cp);
    auto nq = refine(sq, cq);
    cp = std::move(np);
    cq = std::move(nq);
    if (table.size() == classes) break;
    classes = table.size();
  }
  {
    auto a = cp, b = cq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  auto entry = [](const Side& s, std::size_t from, std::size_t to) -> std::optional<std::size_t> {
    for (auto [l, w] : s.out[from])
      if (w == to) return l;
    return std::nullopt;
  };
  std::vector<std::optional<std::size_t>> map_to(total);
  std::vector<bool> used(total, false);
  std::vector<std::size_t> order(total);
  for (std::size_t v = 0; v < total; ++v) order[v] = v;

  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == total) return true;
    std::size_t u = order[i];
    for (std::size_t cand = 0; cand < total; ++cand) {
      if (used[cand] || cq[cand] != cp[u]) continue;
      bool ok = true;
      for (std::size_t k = 0; k <= i && ok; ++k) {
        std::size_t w = order[k];
        std::size_t w2 = w == u ? cand : *map_to[w];
        ok = entry(sp, u, w) == entry(sq, cand, w2) && entry(sp, w, u) == entry(sq, w2, cand);
      }
      if (!ok) continue;
      map_to[u] = cand;
      used[cand] = true;
      if (assign(i + 1)) return true;
      used[cand] = false;
      map_to[u].reset();
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  PositionPermutation perm(n);
  for (std::size_t v = 0; v < total; ++v) {
    const Node& a = sp.nodes[v];
    perm[a.pos].push_back(sq.nodes[*map_to[v]].idx);
  }
  return perm;
}

}  // namespace qclock
