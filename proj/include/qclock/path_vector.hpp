#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qclock/quiver.hpp"
#include "qclock/scalar.hpp"

namespace qclock {

/// Formal linear combination of nonzero paths. Terms are kept reduced: no
/// stored path contains a relation and no coefficient is zero.
class PathVector {
 public:
  using Terms = std::map<Path, Scalar>;

  PathVector() = default;

  static PathVector single(const MonomialPresentation& pres, Path p,
                           Scalar c = Scalar(1)) {
    PathVector v;
    v.add_term(pres, std::move(p), c);
    return v;
  }

  /// Adds c·p; drops the term when p vanishes modulo the relations.
  void add_term(const MonomialPresentation& pres, Path p, Scalar c) {
    if (c.numerator() == 0 || pres.is_zero(p)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(p), c);
    if (!inserted) {
      it->second += c;
      if (it->second.numerator() == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  PathVector& operator+=(const PathVector& other) {
    for (const auto& [p, c] : other.terms_) {
      auto [it, inserted] = terms_.try_emplace(p, c);
      if (!inserted) {
        it->second += c;
        if (it->second.numerator() == 0) terms_.erase(it);
      }
    }
    return *this;
  }

  friend PathVector operator+(PathVector a, const PathVector& b) { return a += b; }

  friend PathVector operator*(const Scalar& s, const PathVector& v) {
    PathVector out;
    if (s.numerator() == 0) return out;
    for (const auto& [p, c] : v.terms_) out.terms_.emplace(p, s * c);
    return out;
  }

  friend bool operator==(const PathVector&, const PathVector&) = default;
  friend auto operator<=>(const PathVector& a, const PathVector& b) {
    return a.terms_ <=> b.terms_;
  }

 private:
  Terms terms_;
};

/// Product p·q in traversal order (p first). Zero if the concatenation
/// contains a relation. Throws `non-composable` on mismatched endpoints.
inline PathVector compose_paths(const Path& p, const Path& q,
                                const MonomialPresentation& pres) {
  if (p.target() != q.source())
    throw_input("non-composable: path ending at '" +
                pres.quiver().vertex_name(p.target()) +
                "' followed by path starting at '" +
                pres.quiver().vertex_name(q.source()) + "'");
  return PathVector::single(pres, p.then(q));
}

/// Bilinear extension of compose_paths; non-composable term pairs give zero.
inline PathVector multiply(const PathVector& first, const PathVector& second,
                           const MonomialPresentation& pres) {
  PathVector out;
  for (const auto& [p, a] : first.terms()) {
    for (const auto& [q, b] : second.terms()) {
      if (p.target() != q.source()) continue;
      out.add_term(pres, p.then(q), a * b);
    }
  }
  return out;
}

inline std::string render_terms(const Quiver& q, const PathVector& v) {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [p, c] : v.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + " " + render_path(q, p);
  }
  return out;
}

/// Dense matrix of PathVectors. Entry (row, col) is a map from the col-th
/// summand to the row-th summand, so a path in it runs col -> row.
class PathMatrix {
 public:
  PathMatrix() = default;
  PathMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const PathVector& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return entries_[r * cols_ + c];
  }
  PathVector& at(std::size_t r, std::size_t c) {
    check(r, c);
    return entries_[r * cols_ + c];
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  /// Copies `block` with its top-left corner at (row0, col0).
  void set_block(std::size_t row0, std::size_t col0, const PathMatrix& block) {
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c)
        at(row0 + r, col0 + c) = block.at(r, c);
  }

  PathMatrix block(std::size_t row0, std::size_t col0, std::size_t rows,
                   std::size_t cols) const {
    PathMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = at(row0 + r, col0 + c);
    return out;
  }

  friend bool operator==(const PathMatrix&, const PathMatrix&) = default;

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
      throw_input("matrix index (" + std::to_string(r + 1) + "," +
                  std::to_string(c + 1) + ") out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<PathVector> entries_;
};

/// outer ∘ inner: entry (j,m) = Σ_k inner(k,m) followed by outer(j,k).
inline PathMatrix compose(const PathMatrix& outer, const PathMatrix& inner,
                          const MonomialPresentation& pres) {
  if (outer.cols() != inner.rows())
    throw_input("matrix shapes do not compose");
  PathMatrix out(outer.rows(), inner.cols());
  for (std::size_t j = 0; j < outer.rows(); ++j)
    for (std::size_t k = 0; k < outer.cols(); ++k) {
      const PathVector& o = outer.at(j, k);
      if (o.is_zero()) continue;
      for (std::size_t m = 0; m < inner.cols(); ++m) {
        const PathVector& i = inner.at(k, m);
        if (i.is_zero()) continue;
        out.at(j, m) += multiply(i, o, pres);
      }
    }
  return out;
}

/// Checks that every path in entry (r,c) runs from col_vertices[c] to
/// row_vertices[r]. Returns the first offending position.
inline std::optional<std::pair<std::size_t, std::size_t>> endpoint_mismatch(
    const PathMatrix& m, std::span<const VertexId> row_vertices,
    std::span<const VertexId> col_vertices) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (const auto& [p, coeff] : m.at(r, c).terms())
        if (p.source() != col_vertices[c] || p.target() != row_vertices[r])
          return std::pair{r, c};
  return std::nullopt;
}

}  // namespace qclock
