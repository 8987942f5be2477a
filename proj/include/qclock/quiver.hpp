#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qclock/error.hpp"

namespace qclock {

using VertexId = std::size_t;
using ArrowId = std::size_t;

struct Arrow {
  std::string name;
  VertexId source = 0;
  VertexId target = 0;

  bool operator==(const Arrow&) const = default;
};

/// Finite directed multigraph. Vertices and arrows keep declaration order,
/// which is the tie-break everywhere else in the library.
class Quiver {
 public:
  VertexId add_vertex(std::string name) {
    if (vertex_index_.contains(name))
      throw_input("duplicate vertex '" + name + "'");
    vertex_index_.emplace(name, vertices_.size());
    vertices_.push_back(std::move(name));
    outgoing_.emplace_back();
    incoming_.emplace_back();
    return vertices_.size() - 1;
  }

  ArrowId add_arrow(std::string name, VertexId source, VertexId target) {
    if (arrow_index_.contains(name))
      throw_input("duplicate arrow '" + name + "'");
    if (source >= vertices_.size() || target >= vertices_.size())
      throw_input("arrow '" + name + "' has an undeclared endpoint");
    ArrowId id = arrows_.size();
    arrow_index_.emplace(name, id);
    arrows_.push_back({std::move(name), source, target});
    outgoing_[source].push_back(id);
    incoming_[target].push_back(id);
    return id;
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  std::span<const Arrow> arrows() const noexcept { return arrows_; }
  std::span<const std::string> vertex_names() const noexcept { return vertices_; }

  /// Arrows leaving / entering `v`, in declaration order.
  std::span<const ArrowId> outgoing(VertexId v) const { return outgoing_.at(v); }
  std::span<const ArrowId> incoming(VertexId v) const { return incoming_.at(v); }

  std::optional<VertexId> find_vertex(std::string_view name) const {
    auto it = vertex_index_.find(std::string(name));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<ArrowId> find_arrow(std::string_view name) const {
    auto it = arrow_index_.find(std::string(name));
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const Quiver& other) const {
    return vertices_ == other.vertices_ && arrows_ == other.arrows_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<ArrowId>> outgoing_;
  std::vector<std::vector<ArrowId>> incoming_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, ArrowId> arrow_index_;
};

/// A path stored in traversal order (source to target). The algebraic
/// product "beta alpha" (alpha first) is the path {alpha, beta} here.
class Path {
 public:
  static Path trivial(VertexId v) { return Path(v, v, {}); }

  /// Throws `non-composable` if consecutive arrows do not meet.
  static Path of(const Quiver& q, std::vector<ArrowId> arrows) {
    if (arrows.empty()) throw_input("empty arrow list; use Path::trivial");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i) {
      if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source)
        throw_input("non-composable: '" + q.arrow(arrows[i]).name + "' then '" +
                    q.arrow(arrows[i + 1]).name + "'");
    }
    VertexId s = q.arrow(arrows.front()).source;
    VertexId t = q.arrow(arrows.back()).target;
    return Path(s, t, std::move(arrows));
  }

  static Path arrow(const Quiver& q, ArrowId a) { return of(q, {a}); }

  VertexId source() const noexcept { return source_; }
  VertexId target() const noexcept { return target_; }
  std::size_t length() const noexcept { return arrows_.size(); }
  bool is_trivial() const noexcept { return arrows_.empty(); }
  std::span<const ArrowId> arrows() const noexcept { return arrows_; }

  /// Concatenation "this, then next". Caller guarantees target() == next.source().
  Path then(const Path& next) const {
    std::vector<ArrowId> joined = arrows_;
    joined.insert(joined.end(), next.arrows_.begin(), next.arrows_.end());
    return Path(source_, next.target_, std::move(joined));
  }

  /// Basis order: length, then arrow ids lexicographically, then source vertex.
  std::strong_ordering operator<=>(const Path& other) const {
    if (auto c = arrows_.size() <=> other.arrows_.size(); c != 0) return c;
    if (auto c = arrows_ <=> other.arrows_; c != 0) return c;
    if (auto c = source_ <=> other.source_; c != 0) return c;
    return target_ <=> other.target_;
  }
  bool operator==(const Path&) const = default;

 private:
  Path(VertexId s, VertexId t, std::vector<ArrowId> arrows)
      : source_(s), target_(t), arrows_(std::move(arrows)) {}

  VertexId source_;
  VertexId target_;
  std::vector<ArrowId> arrows_;
};

inline bool is_subpath(std::span<const ArrowId> needle,
                       std::span<const ArrowId> haystack) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

/// Renders in traversal order, e.g. "alpha1 alpha2", or "e_v" for a trivial path.
inline std::string render_path(const Quiver& q, const Path& p) {
  if (p.is_trivial()) return "e_" + q.vertex_name(p.source());
  std::string out;
  for (ArrowId a : p.arrows()) {
    if (!out.empty()) out += ' ';
    out += q.arrow(a).name;
  }
  return out;
}

/// Renders in the algebraic right-to-left convention, e.g. "alpha2alpha1".
inline std::string render_product(const Quiver& q, const Path& p) {
  if (p.is_trivial()) return "e_" + q.vertex_name(p.source());
  std::string out;
  for (auto it = p.arrows().rbegin(); it != p.arrows().rend(); ++it)
    out += q.arrow(*it).name;
  return out;
}

/// Aho-Corasick automaton over the arrow alphabet recognising any word that
/// contains a relation as a factor. States are prefixes of relations; a state
/// is dead when some suffix of it is a relation.
class FactorAutomaton {
 public:
  FactorAutomaton() : nodes_(1) {}

  explicit FactorAutomaton(std::span<const Path> relations) : nodes_(1) {
    for (const Path& r : relations) {
      std::size_t cur = 0;
      for (ArrowId a : r.arrows()) {
        auto it = nodes_[cur].children.find(a);
        if (it == nodes_[cur].children.end()) {
          nodes_.push_back({});
          it = nodes_[cur].children.emplace(a, nodes_.size() - 1).first;
        }
        cur = it->second;
      }
      nodes_[cur].dead = true;
    }
    // breadth-first fail links
    std::vector<std::size_t> queue;
    for (auto& [a, child] : nodes_[0].children) {
      nodes_[child].fail = 0;
      queue.push_back(child);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t u = queue[head];
      nodes_[u].dead = nodes_[u].dead || nodes_[nodes_[u].fail].dead;
      for (auto& [a, child] : nodes_[u].children) {
        nodes_[child].fail = step(nodes_[u].fail, a);
        queue.push_back(child);
      }
    }
  }

  static constexpr std::size_t root = 0;

  std::size_t step(std::size_t state, ArrowId a) const {
    while (true) {
      auto it = nodes_[state].children.find(a);
      if (it != nodes_[state].children.end()) return it->second;
      if (state == 0) return 0;
      state = nodes_[state].fail;
    }
  }

  bool dead(std::size_t state) const { return nodes_[state].dead; }
  std::size_t state_count() const noexcept { return nodes_.size(); }

  bool contains_factor(std::span<const ArrowId> word) const {
    std::size_t s = root;
    for (ArrowId a : word) {
      s = step(s, a);
      if (dead(s)) return true;
    }
    return false;
  }

 private:
  struct Node {
    std::map<ArrowId, std::size_t> children;
    std::size_t fail = 0;
    bool dead = false;
  };
  std::vector<Node> nodes_;
};

/// Quiver plus a set of monomial relations; the pair defining kQ/I.
/// The relation set is normalised to an antichain under the subpath order,
/// keeping the first-declared representative of each survivor.
class MonomialPresentation {
 public:
  MonomialPresentation() = default;

  MonomialPresentation(std::string name, Quiver quiver, std::vector<Path> relations)
      : name_(std::move(name)), quiver_(std::move(quiver)) {
    for (const Path& r : relations) {
      if (r.length() < 2)
        throw_input("relation '" + render_path(quiver_, r) +
                    "' has length < 2");
    }
    for (std::size_t i = 0; i < relations.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < relations.size() && !redundant; ++j) {
        if (i == j) continue;
        const Path& other = relations[j];
        if (other == relations[i]) {
          redundant = j < i;
        } else if (is_subpath(other.arrows(), relations[i].arrows())) {
          redundant = true;
        }
      }
      if (!redundant) relations_.push_back(relations[i]);
    }
    automaton_ = FactorAutomaton(relations_);
  }

  const std::string& name() const noexcept { return name_; }
  const Quiver& quiver() const noexcept { return quiver_; }
  std::span<const Path> relations() const noexcept { return relations_; }
  const FactorAutomaton& automaton() const noexcept { return automaton_; }

  /// True if `p` vanishes in the algebra, i.e. contains a relation.
  bool is_zero(const Path& p) const { return automaton_.contains_factor(p.arrows()); }

  bool is_relation(std::span<const ArrowId> arrows) const {
    return std::any_of(relations_.begin(), relations_.end(), [&](const Path& r) {
      return std::ranges::equal(r.arrows(), arrows);
    });
  }

  bool operator==(const MonomialPresentation& other) const {
    return name_ == other.name_ && quiver_ == other.quiver_ &&
           relations_ == other.relations_;
  }

 private:
  std::string name_;
  Quiver quiver_;
  std::vector<Path> relations_;
  FactorAutomaton automaton_;
};

using PresentationRef = std::shared_ptr<const MonomialPresentation>;

inline PresentationRef share(MonomialPresentation pres) {
  return std::make_shared<const MonomialPresentation>(std::move(pres));
}

struct FiniteDimensionality {
  bool finite = true;
  /// On failure, a closed walk of arrows whose powers never vanish.
  std::vector<ArrowId> pumping_cycle;
};

/// Decides whether the set of nonzero paths is finite: the reachable part of
/// the (vertex, automaton state) graph must be acyclic.
inline FiniteDimensionality is_finite_dimensional(const MonomialPresentation& pres) {
  const Quiver& q = pres.quiver();
  const FactorAutomaton& fa = pres.automaton();
  const std::size_t n_states = fa.state_count();
  auto index = [&](VertexId v, std::size_t s) { return v * n_states + s; };

  enum : unsigned char { white, grey, black };
  std::vector<unsigned char> colour(q.vertex_count() * n_states, white);

  struct Frame {
    VertexId vertex;
    std::size_t state;
    std::size_t next_edge;
    ArrowId via;
  };

  for (VertexId start = 0; start < q.vertex_count(); ++start) {
    if (colour[index(start, FactorAutomaton::root)] != white) continue;
    std::vector<Frame> stack{{start, FactorAutomaton::root, 0, 0}};
    colour[index(start, FactorAutomaton::root)] = grey;
    while (!stack.empty()) {
      Frame& top = stack.back();
      auto out = q.outgoing(top.vertex);
      if (top.next_edge == out.size()) {
        colour[index(top.vertex, top.state)] = black;
        stack.pop_back();
        continue;
      }
      ArrowId a = out[top.next_edge++];
      std::size_t s = fa.step(top.state, a);
      if (fa.dead(s)) continue;
      VertexId v = q.arrow(a).target;
      unsigned char& c = colour[index(v, s)];
      if (c == grey) {
        FiniteDimensionality result{false, {}};
        std::size_t k = stack.size();
        while (k > 0 && !(stack[k - 1].vertex == v && stack[k - 1].state == s)) --k;
        for (std::size_t i = k; i < stack.size(); ++i)
          result.pumping_cycle.push_back(stack[i].via);
        result.pumping_cycle.push_back(a);
        return result;
      }
      if (c == white) {
        c = grey;
        stack.push_back({v, s, 0, a});
      }
    }
  }
  return {};
}

/// Basis of the algebra: every path avoiding all relations, ordered by length
/// and then lexicographically by arrow declaration order.
inline std::vector<Path> nonzero_paths(const MonomialPresentation& pres) {
  if (!is_finite_dimensional(pres).finite) throw_input("not finite-dimensional");
  const Quiver& q = pres.quiver();
  const FactorAutomaton& fa = pres.automaton();
  std::vector<Path> out;

  struct Item {
    std::vector<ArrowId> arrows;
    VertexId at;
    std::size_t state;
  };
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    out.push_back(Path::trivial(v));
    std::vector<Item> stack{{{}, v, FactorAutomaton::root}};
    while (!stack.empty()) {
      Item item = std::move(stack.back());
      stack.pop_back();
      for (ArrowId a : q.outgoing(item.at)) {
        std::size_t s = fa.step(item.state, a);
        if (fa.dead(s)) continue;
        Item next{item.arrows, q.arrow(a).target, s};
        next.arrows.push_back(a);
        out.push_back(Path::of(q, next.arrows));
        stack.push_back(std::move(next));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qclock
