#include "structmon/coherence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace structmon {

// --- positive paths --------------------------------------------------------------------

std::vector<Generator> positive_letters(const Term& t, int n) {
  std::vector<Generator> out;
  for (const auto& a : internal_addresses(t)) {
    const auto sub = *subterm(t, a);
    for (int i = 1; i <= n - 1; ++i) {
      if (!sub.children()[static_cast<std::size_t>(i)].is_variable()) out.push_back(assoc(i, a));
    }
  }
  return out;
}

namespace {

Term step_down(const Generator& g, const Term& t, const Theory& theory) {
  auto next = apply_letter(g, t, theory);
  if (!next) throw std::logic_error("positive letter " + to_string(g) + " does not apply");
  if (rank(*next) >= rank(t)) {
    throw std::logic_error("positive letter " + to_string(g) + " does not decrease rank at " +
                           to_string(t));
  }
  return *next;
}

}  // namespace

std::vector<GeneratorWord> positive_paths(const Term& t, int n, std::size_t limit) {
  const Theory theory = catalan_theory(n);
  std::vector<GeneratorWord> out;
  GeneratorWord path;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    const auto letters = positive_letters(u, n);
    if (letters.empty()) {
      if (out.size() >= limit) throw std::length_error("too many positive paths");
      out.push_back(path);
      return;
    }
    for (const auto& g : letters) {
      path.push_back(g);
      walk(step_down(g, u, theory));
      path.pop_back();
    }
  };
  walk(t);
  return out;
}

PositiveSummary positive_summary(const Term& t, int n) {
  const Theory theory = catalan_theory(n);
  std::map<Term, PositiveSummary> memo;
  std::map<Generator, ReducedDiagram> letter_image;
  auto image_of = [&](const Generator& g) {
    auto it = letter_image.find(g);
    if (it == letter_image.end()) {
      it = letter_image
               .emplace(g, theta(translated_seed(translated(g, theory), theory.signature), n))
               .first;
    }
    return it->second;
  };
  std::function<const PositiveSummary&(const Term&)> visit =
      [&](const Term& u) -> const PositiveSummary& {
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    PositiveSummary s;
    const auto letters = positive_letters(u, n);
    if (letters.empty()) {
      s.endpoints.insert(u);
      s.images.insert(identity_diagram(n));
      s.path_count = 1;
    }
    for (const auto& g : letters) {
      const auto& below = visit(step_down(g, u, theory));
      s.endpoints.insert(below.endpoints.begin(), below.endpoints.end());
      const auto head = image_of(g);
      for (const auto& img : below.images) s.images.insert(multiply(head, img));
      s.path_count += below.path_count;
    }
    return memo.emplace(u, std::move(s)).first->second;
  };
  return visit(t);
}

// --- square filling ----------------------------------------------------------------------

namespace {

Filler swapped(Filler f) {
  std::swap(f.w1, f.w2);
  return f;
}

Address drop_front(const Address& a, std::size_t k) {
  const auto s = a.steps();
  return Address(std::vector<AddressStep>(s.begin() + static_cast<std::ptrdiff_t>(k), s.end()));
}

}  // namespace

Filler fill_square(const Term& t, const Generator& m1, const Generator& m2, int n) {
  const Theory theory = catalan_theory(n);
  for (const auto& m : {m1, m2}) {
    if (m.kind != GeneratorKind::assoc || m.sign != 1) {
      throw std::invalid_argument("fill_square takes forward assoc letters, got " + to_string(m));
    }
    if (!apply_letter(m, t, theory)) {
      throw std::invalid_argument(to_string(m) + " does not apply at " + to_string(t));
    }
  }
  if (m1 == m2) throw std::invalid_argument("fill_square needs two distinct letters");

  const Address& p = m1.address;
  const Address& q = m2.address;
  if (orthogonal(p, q)) return {{m2}, {m1}, functoriality(n, m1, m2)};

  if (p == q) {
    if (m1.index > m2.index) return swapped(fill_square(t, m2, m1, n));
    const int i = m1.index;
    const int j = m2.index;
    if (j == i + 1) {
      return {{assoc(i + 1, p), assoc(i, p)}, {assoc(i, p), assoc(1, p.child(i))},
              adjacent_assoc(n, i, p)};
    }
    // Disjoint children of one node: the two letters commute.
    RelationInstance rel{{m1, m2}, {m2, m1}, RelationFamily::naturality, n, {i, j}, p};
    return {{m2}, {m1}, std::move(rel)};
  }

  if (q.is_prefix_of(p)) return swapped(fill_square(t, m2, m1, n));

  // m1 is the outer letter; m2 sits below child k of its node.
  const int j = m1.index;
  const Address suffix = p.suffix_in(q);
  const int k = suffix[0].index;
  const Address rest = drop_front(suffix, 1);

  auto by_variable = [&](int variable, Address delta) {
    Generator inner = m2;
    inner.address = std::move(delta);
    auto rel = naturality(theory, m1, inner, variable);
    return Filler{{rel.lhs[1]}, {m1}, std::move(rel)};
  };

  if (k < j) return by_variable(k, rest);
  if (k > j + 1) return by_variable(k + n - 1, rest);
  if (k == j) return by_variable(j, rest);
  if (!rest.is_root()) return by_variable(j + rest[0].index, drop_front(rest, 1));

  // m2 rotates the very node that m1 pulls up.
  const int l = m2.index;
  if (l == n - 1) {
    auto rel = pentagon(n, j, p);
    return {{m1}, GeneratorWord(rel.lhs.begin() + 1, rel.lhs.end()), std::move(rel)};
  }
  const Generator moved = assoc(l + 1, p.child(j));
  RelationInstance rel{{m1, moved}, {m2, m1}, RelationFamily::naturality, n, {j, l}, p};
  return {{moved}, {m1}, std::move(rel)};
}

SquareCheck check_square(const Term& t, const Generator& m1, const Generator& m2, int n) {
  SquareCheck c{t, m1, m2, std::nullopt, false, false, false, {}};
  try {
    c.filler = fill_square(t, m1, m2, n);
  } catch (const std::exception& e) {
    c.error = e.what();
    return c;
  }
  const Theory theory = catalan_theory(n);
  const auto left = concat({m1}, c.filler->w1);
  const auto right = concat({m2}, c.filler->w2);
  const auto end1 = apply_word(left, t, theory);
  const auto end2 = apply_word(right, t, theory);
  c.cofinal = end1 && end2 && *end1 == *end2;
  c.theta_equal = words_equal(left, right, theory);
  const auto& rel = c.filler->relation;
  const bool declared = rel.family == RelationFamily::functoriality ||
                        rel.family == RelationFamily::naturality ||
                        rel.family == RelationFamily::pentagon ||
                        rel.family == RelationFamily::adjacent_assoc;
  const bool matches = (rel.lhs == left && rel.rhs == right) || (rel.lhs == right && rel.rhs == left);
  c.family_ok = declared && matches;
  return c;
}

bool CoherenceReport::ok() const {
  return path_failures.empty() &&
         std::all_of(squares.begin(), squares.end(), [](const SquareCheck& s) { return s.ok(); });
}

CoherenceReport check_coherence(int n, int max_nodes) {
  CoherenceReport report;
  for (int k = 0; k <= max_nodes; ++k) {
    for (const auto& t : enumerate_terms(n, k)) {
      ++report.terms;
      const auto letters = positive_letters(t, n);
      for (std::size_t x = 0; x < letters.size(); ++x) {
        for (std::size_t y = x + 1; y < letters.size(); ++y) {
          report.squares.push_back(check_square(t, letters[x], letters[y], n));
        }
      }
      const auto summary = positive_summary(t, n);
      report.paths += summary.path_count;
      if (summary.endpoints != std::set<Term>{lmb(t, n)} || summary.images.size() != 1) {
        report.path_failures.push_back(t);
      }
    }
  }
  return report;
}

// --- Moore relations ---------------------------------------------------------------------

MooreReport moore_check(int n, int max_closure_n) {
  const Theory theory = symmetric_catalan_theory(n);
  const auto id = identity_diagram(n);
  std::vector<ReducedDiagram> T;
  for (int i = 1; i <= n - 1; ++i) T.push_back(eval_theta({twist(i)}, theory));
  auto power = [&](const ReducedDiagram& d, int e) {
    auto acc = id;
    for (int k = 0; k < e; ++k) acc = multiply(acc, d);
    return acc;
  };
  MooreReport r;
  r.n = n;
  r.involution = std::all_of(T.begin(), T.end(), [&](const auto& d) { return power(d, 2) == id; });
  r.braid = true;
  r.commute = true;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (i + 1 < T.size()) r.braid = r.braid && power(multiply(T[i], T[i + 1]), 3) == id;
    for (std::size_t k = i + 2; k < T.size(); ++k) {
      r.commute = r.commute && power(multiply(T[i], T[k]), 2) == id;
    }
  }
  if (n <= max_closure_n) {
    r.expected_order = 1;
    for (int k = 2; k <= n; ++k) r.expected_order *= static_cast<std::size_t>(k);
    std::set<ReducedDiagram> seen{id};
    std::deque<ReducedDiagram> queue{id};
    while (!queue.empty()) {
      const auto d = queue.front();
      queue.pop_front();
      for (const auto& g : T) {
        auto next = multiply(d, g);
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
    r.order = seen.size();
  }
  return r;
}

// --- relation reports ----------------------------------------------------------------------

RelationCheck check_relation(const RelationInstance& rel, const Theory& theory) {
  const auto l = eval_theta(rel.lhs, theory);
  const auto r = eval_theta(rel.rhs, theory);
  return {rel, l == r, to_json(l), to_json(r)};
}

std::string format_record(const RelationCheck& c) {
  std::string indices;
  for (int i : c.relation.indices) {
    if (!indices.empty()) indices += ',';
    indices += std::to_string(i);
  }
  if (indices.empty()) indices = "-";
  std::string line = std::string(family_name(c.relation.family)) + '\t' +
                     std::to_string(c.relation.n) + '\t' + indices + '\t' +
                     to_string(c.relation.base) + '\t' + (c.pass ? "PASS" : "FAIL") + '\t' +
                     to_string(c.relation.lhs) + '\t' + to_string(c.relation.rhs);
  if (!c.pass) line += '\t' + c.lhs.dump() + '\t' + c.rhs.dump();
  return line;
}

}  // namespace structmon
