#include "structmon/tree_diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace structmon {

// --- trees -----------------------------------------------------------------------

NTree NTree::caret(int n) {
  NTree t;
  t.children.resize(static_cast<std::size_t>(n));
  return t;
}

std::size_t NTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t sum = 0;
  for (const auto& c : children) sum += c.leaf_count();
  return sum;
}

std::size_t NTree::caret_count() const {
  if (is_leaf()) return 0;
  std::size_t sum = 1;
  for (const auto& c : children) sum += c.caret_count();
  return sum;
}

std::strong_ordering NTree::operator<=>(const NTree& other) const {
  return std::lexicographical_compare_three_way(children.begin(), children.end(),
                                                other.children.begin(), other.children.end());
}

std::vector<Address> leaves(const NTree& t) {
  std::vector<Address> out;
  std::vector<int> path;
  std::function<void(const NTree&)> walk = [&](const NTree& u) {
    if (u.is_leaf()) {
      out.push_back(Address::of(path));
      return;
    }
    for (std::size_t i = 0; i < u.children.size(); ++i) {
      path.push_back(static_cast<int>(i + 1));
      walk(u.children[i]);
      path.pop_back();
    }
  };
  walk(t);
  return out;
}

namespace {

// Applies `f` to the subtree rooted at the node whose leaves start at leaf
// index `start`, choosing the leaf itself when `want_leaf`, otherwise the
// lowest internal node whose children are all leaves.
bool rewrite_at(NTree& t, std::size_t start, bool want_leaf, std::size_t& counter,
                const std::function<void(NTree&)>& f) {
  if (t.is_leaf()) {
    if (want_leaf && counter == start) {
      f(t);
      return true;
    }
    ++counter;
    return false;
  }
  if (!want_leaf && counter == start &&
      std::all_of(t.children.begin(), t.children.end(), [](const NTree& c) { return c.is_leaf(); })) {
    f(t);
    return true;
  }
  for (auto& c : t.children) {
    if (rewrite_at(c, start, want_leaf, counter, f)) return true;
  }
  return false;
}

void caret_starts(const NTree& t, std::size_t& counter, std::vector<std::size_t>& out) {
  if (t.is_leaf()) {
    ++counter;
    return;
  }
  if (std::all_of(t.children.begin(), t.children.end(), [](const NTree& c) { return c.is_leaf(); })) {
    out.push_back(counter);
    counter += t.children.size();
    return;
  }
  for (const auto& c : t.children) caret_starts(c, counter, out);
}

std::vector<std::size_t> caret_starts(const NTree& t) {
  std::vector<std::size_t> out;
  std::size_t counter = 0;
  caret_starts(t, counter, out);
  return out;
}

NTree collapse_tree(const NTree& t, std::size_t start) {
  NTree out = t;
  std::size_t counter = 0;
  if (!rewrite_at(out, start, false, counter, [](NTree& node) { node.children.clear(); })) {
    throw std::invalid_argument("no caret starts at that leaf");
  }
  return out;
}

// First leaf index of `t` below which `s` still has structure, if any.
std::optional<std::size_t> first_short_leaf(const NTree& t, const NTree& s, std::size_t& counter) {
  if (t.is_leaf()) {
    if (!s.is_leaf()) return counter;
    ++counter;
    return std::nullopt;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (auto hit = first_short_leaf(t.children[i], s.children[i], counter)) return hit;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_short_leaf(const NTree& t, const NTree& s) {
  std::size_t counter = 0;
  return first_short_leaf(t, s, counter);
}

void check_arity(const NTree& t, int n) {
  if (t.is_leaf()) return;
  if (static_cast<int>(t.children.size()) != n) {
    throw std::invalid_argument("tree node does not have " + std::to_string(n) + " children");
  }
  for (const auto& c : t.children) check_arity(c, n);
}

}  // namespace

NTree expand(const NTree& t, std::size_t leaf, int n) {
  NTree out = t;
  std::size_t counter = 0;
  if (!rewrite_at(out, leaf, true, counter, [n](NTree& node) { node = NTree::caret(n); })) {
    throw std::out_of_range("leaf index " + std::to_string(leaf) + " out of range");
  }
  return out;
}

NTree minimal_common_expansion(const NTree& a, const NTree& b) {
  if (a.is_leaf()) return b;
  if (b.is_leaf()) return a;
  if (a.children.size() != b.children.size()) {
    throw std::invalid_argument("trees of different arity");
  }
  NTree out;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    out.children.push_back(minimal_common_expansion(a.children[i], b.children[i]));
  }
  return out;
}

NTree tree_of_term(const Term& t) {
  NTree out;
  for (const auto& c : t.children()) out.children.push_back(tree_of_term(c));
  return out;
}

// --- diagrams --------------------------------------------------------------------

void TreeDiagram::validate() const {
  if (n < 2) throw std::invalid_argument("diagram arity must be >= 2");
  check_arity(domain, n);
  check_arity(range, n);
  const auto m = domain.leaf_count();
  if (range.leaf_count() != m) throw std::invalid_argument("trees have different leaf counts");
  if (perm.size() != m) throw std::invalid_argument("permutation has the wrong size");
  std::vector<bool> hit(m, false);
  for (auto p : perm) {
    if (p >= m || hit[p]) throw std::invalid_argument("perm is not a bijection");
    hit[p] = true;
  }
}

std::strong_ordering TreeDiagram::operator<=>(const TreeDiagram& other) const {
  if (auto c = n <=> other.n; c != 0) return c;
  if (auto c = domain <=> other.domain; c != 0) return c;
  if (auto c = range <=> other.range; c != 0) return c;
  return perm <=> other.perm;
}

TreeDiagram expand_diagram(const TreeDiagram& d, std::size_t leaf) {
  if (leaf >= d.perm.size()) throw std::out_of_range("leaf index out of range");
  const std::size_t grow = static_cast<std::size_t>(d.n - 1);
  const std::size_t r = d.perm[leaf];
  TreeDiagram out{d.n, expand(d.domain, leaf, d.n), expand(d.range, r, d.n), {}};
  out.perm.reserve(d.perm.size() + grow);
  for (std::size_t i = 0; i < d.perm.size(); ++i) {
    if (i == leaf) {
      for (std::size_t k = 0; k <= grow; ++k) out.perm.push_back(r + k);
    } else {
      const auto p = d.perm[i];
      out.perm.push_back(p < r ? p : p + grow);
    }
  }
  return out;
}

std::vector<std::size_t> reducible_carets(const TreeDiagram& d) {
  const auto range_starts = caret_starts(d.range);
  const std::set<std::size_t> range_set(range_starts.begin(), range_starts.end());
  std::vector<std::size_t> out;
  const auto n = static_cast<std::size_t>(d.n);
  for (auto l : caret_starts(d.domain)) {
    const auto r = d.perm[l];
    if (!range_set.contains(r)) continue;
    bool aligned = true;
    for (std::size_t k = 1; k < n && aligned; ++k) aligned = d.perm[l + k] == r + k;
    if (aligned) out.push_back(l);
  }
  return out;
}

TreeDiagram collapse(const TreeDiagram& d, std::size_t l) {
  const auto red = reducible_carets(d);
  if (std::find(red.begin(), red.end(), l) == red.end()) {
    throw std::invalid_argument("no reducible caret pair at leaf " + std::to_string(l));
  }
  const std::size_t shrink = static_cast<std::size_t>(d.n - 1);
  const std::size_t r = d.perm[l];
  TreeDiagram out{d.n, collapse_tree(d.domain, l), collapse_tree(d.range, r), {}};
  for (std::size_t i = 0; i < d.perm.size(); ++i) {
    if (i > l && i <= l + shrink) continue;
    const auto p = d.perm[i];
    out.perm.push_back(p <= r ? p : p - shrink);
  }
  return out;
}

ReducedDiagram reduce(const TreeDiagram& d) {
  d.validate();
  TreeDiagram cur = d;
  while (true) {
    auto red = reducible_carets(cur);
    if (red.empty()) break;
    cur = collapse(cur, red.front());
  }
  return ReducedDiagram(std::move(cur));
}

ReducedDiagram identity_diagram(int n) { return reduce(TreeDiagram{n, NTree::leaf(), NTree::leaf(), {0}}); }

ReducedDiagram multiply(const ReducedDiagram& a, const ReducedDiagram& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("arity mismatch in multiply");
  TreeDiagram d1 = a.diagram();
  TreeDiagram d2 = b.diagram();
  const NTree common = minimal_common_expansion(d1.range, d2.domain);
  while (auto r = first_short_leaf(d1.range, common)) {
    const auto l = static_cast<std::size_t>(
        std::find(d1.perm.begin(), d1.perm.end(), *r) - d1.perm.begin());
    d1 = expand_diagram(d1, l);
  }
  while (auto l = first_short_leaf(d2.domain, common)) d2 = expand_diagram(d2, *l);
  TreeDiagram prod{d1.n, d1.domain, d2.range, std::vector<std::size_t>(d1.perm.size())};
  for (std::size_t i = 0; i < d1.perm.size(); ++i) prod.perm[i] = d2.perm[d1.perm[i]];
  return reduce(prod);
}

ReducedDiagram invert(const ReducedDiagram& a) {
  const auto& d = a.diagram();
  TreeDiagram inv{d.n, d.range, d.domain, std::vector<std::size_t>(d.perm.size())};
  for (std::size_t i = 0; i < d.perm.size(); ++i) inv.perm[d.perm[i]] = i;
  return reduce(inv);
}

bool is_order_preserving(const ReducedDiagram& a) {
  const auto& p = a.diagram().perm;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

ReducedDiagram theta(const Operator& op, int n) {
  if (op.is_empty()) throw std::invalid_argument("theta is undefined on the empty operator");
  if (!linear(op.source(), op.target())) throw std::invalid_argument("theta needs a linear seed");
  TreeDiagram d{n, tree_of_term(op.source()), tree_of_term(op.target()), {}};
  const auto us = underlying_list(op.source());
  const auto ut = underlying_list(op.target());
  std::map<std::string, std::size_t> where;
  for (std::size_t j = 0; j < ut.size(); ++j) where.emplace(ut[j].label(), j);
  for (const auto& v : us) d.perm.push_back(where.at(v.label()));
  return reduce(d);
}

// --- serialization -----------------------------------------------------------------

namespace {

nlohmann::json tree_json(const NTree& t) {
  if (t.is_leaf()) return 0;
  auto arr = nlohmann::json::array();
  for (const auto& c : t.children) arr.push_back(tree_json(c));
  return arr;
}

NTree tree_from_json(const nlohmann::json& j) {
  if (j.is_number_integer() && j.get<int>() == 0) return NTree::leaf();
  if (!j.is_array() || j.empty()) throw std::invalid_argument("malformed tree JSON");
  NTree t;
  for (const auto& c : j) t.children.push_back(tree_from_json(c));
  return t;
}

}  // namespace

nlohmann::json to_json(const TreeDiagram& d) {
  nlohmann::json j;
  j["n"] = d.n;
  j["domain"] = tree_json(d.domain);
  j["range"] = tree_json(d.range);
  auto perm = nlohmann::json::array();
  for (auto p : d.perm) perm.push_back(p + 1);
  j["perm"] = perm;
  return j;
}

nlohmann::json to_json(const ReducedDiagram& d) { return to_json(d.diagram()); }

TreeDiagram diagram_from_json(const nlohmann::json& j) {
  TreeDiagram d;
  d.n = j.at("n").get<int>();
  d.domain = tree_from_json(j.at("domain"));
  d.range = tree_from_json(j.at("range"));
  for (const auto& p : j.at("perm")) {
    const auto v = p.get<long>();
    if (v < 1) throw std::invalid_argument("perm entries are 1-based");
    d.perm.push_back(static_cast<std::size_t>(v - 1));
  }
  d.validate();
  return d;
}

std::string to_dot(const TreeDiagram& d) {
  std::ostringstream os;
  os << "digraph diagram {\n  node [shape=point];\n";
  auto emit = [&os](const NTree& t, const std::string& prefix) {
    std::size_t leaf = 0;
    std::function<void(const NTree&, const std::string&)> walk = [&](const NTree& u,
                                                                    const std::string& id) {
      if (u.is_leaf()) {
        os << "  " << id << " [shape=circle, width=0.25, label=\"" << ++leaf << "\"];\n";
        return;
      }
      os << "  " << id << ";\n";
      for (std::size_t i = 0; i < u.children.size(); ++i) {
        const auto child = id + "_" + std::to_string(i + 1);
        walk(u.children[i], child);
        os << "  " << id << " -> " << child << " [arrowhead=none];\n";
      }
    };
    os << "  subgraph cluster_" << prefix << " {\n  label=\"" << prefix << "\";\n";
    walk(t, prefix);
    os << "  }\n";
  };
  emit(d.domain, "domain");
  emit(d.range, "range");
  const auto dl = leaves(d.domain);
  const auto rl = leaves(d.range);
  auto node_id = [](const std::string& prefix, const Address& a) {
    std::string id = prefix;
    for (const auto& s : a.steps()) id += "_" + std::to_string(s.index);
    return id;
  };
  for (std::size_t i = 0; i < d.perm.size(); ++i) {
    os << "  " << node_id("domain", dl[i]) << " -> " << node_id("range", rl[d.perm[i]])
       << " [style=dashed, constraint=false, arrowhead=none];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace structmon
