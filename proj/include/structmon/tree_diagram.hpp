#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "structmon/structure_monoid.hpp"
#include "structmon/term.hpp"

namespace structmon {

/// An n-ary tree; a node with no children is a leaf. The arity is carried by
/// the context (every internal node has exactly n children).
struct NTree {
  std::vector<NTree> children;

  static NTree leaf() { return {}; }
  /// One internal node with n leaves.
  static NTree caret(int n);

  bool is_leaf() const { return children.empty(); }
  std::size_t leaf_count() const;
  std::size_t caret_count() const;

  bool operator==(const NTree&) const = default;
  std::strong_ordering operator<=>(const NTree& other) const;
};

/// Leaf addresses in lexicographic order (the root leaf has the empty address).
std::vector<Address> leaves(const NTree& t);
/// Replaces the leaf with 0-based index `leaf` by a caret. Throws std::out_of_range.
NTree expand(const NTree& t, std::size_t leaf, int n);
/// The tree whose internal addresses are the union of both trees' internal addresses.
NTree minimal_common_expansion(const NTree& a, const NTree& b);
/// Shape of a term: labels forgotten.
NTree tree_of_term(const Term& t);

/// (domain, range, perm): leaf i of the domain (lexicographic, 0-based) is
/// paired with leaf perm[i] of the range.
struct TreeDiagram {
  int n = 2;
  NTree domain;
  NTree range;
  std::vector<std::size_t> perm;

  /// Throws std::invalid_argument unless the leaf counts agree and perm is a bijection.
  void validate() const;

  bool operator==(const TreeDiagram&) const = default;
  std::strong_ordering operator<=>(const TreeDiagram& other) const;
};

/// Simple expansion at domain leaf `leaf` and range leaf perm[leaf].
TreeDiagram expand_diagram(const TreeDiagram& d, std::size_t leaf);

/// Domain leaf indices l at which a reducible caret pair starts, ascending.
std::vector<std::size_t> reducible_carets(const TreeDiagram& d);
/// Collapses the reducible caret pair starting at domain leaf l; inverse of
/// expand_diagram. Throws std::invalid_argument if it is not reducible.
TreeDiagram collapse(const TreeDiagram& d, std::size_t l);

/// Canonical representative of a tree symbol: a diagram with no reducible
/// caret pair. This is the group element type of G_{n,1}.
class ReducedDiagram {
 public:
  const TreeDiagram& diagram() const { return d_; }
  int arity() const { return d_.n; }

  bool operator==(const ReducedDiagram&) const = default;
  std::strong_ordering operator<=>(const ReducedDiagram& o) const { return d_ <=> o.d_; }

 private:
  friend ReducedDiagram reduce(const TreeDiagram& d);
  explicit ReducedDiagram(TreeDiagram d) : d_(std::move(d)) {}
  TreeDiagram d_;
};

ReducedDiagram reduce(const TreeDiagram& d);
ReducedDiagram identity_diagram(int n);
/// d1 followed by d2. Throws std::invalid_argument on an arity mismatch.
ReducedDiagram multiply(const ReducedDiagram& d1, const ReducedDiagram& d2);
ReducedDiagram invert(const ReducedDiagram& d);
/// Membership in F_{n,1}: the leaf bijection preserves order.
bool is_order_preserving(const ReducedDiagram& d);

/// Image of a linear seed: (T(s), T(t), pi) with pi sending leaf i of s to
/// the position of the same variable in U(t), reduced. Throws
/// std::invalid_argument for the empty operator, nonlinear seeds or
/// non-Catalan terms.
ReducedDiagram theta(const Operator& op, int n);

nlohmann::json to_json(const TreeDiagram& d);
nlohmann::json to_json(const ReducedDiagram& d);
TreeDiagram diagram_from_json(const nlohmann::json& j);
/// Graphviz rendering: both trees, dashed edges between paired leaves.
std::string to_dot(const TreeDiagram& d);

}  // namespace structmon
