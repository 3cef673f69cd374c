#include "structmon/unify.hpp"

#include <deque>

namespace structmon {

namespace {

bool occurs(const std::string& var, const Term& t) {
  if (t.is_variable()) return t.label() == var;
  for (const auto& c : t.children()) {
    if (occurs(var, c)) return true;
  }
  return false;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  // Transformation rules over a worklist of equations: delete, decompose,
  // clash, orient, occurs check, eliminate. `solved` is kept fully applied.
  std::deque<std::pair<Term, Term>> work{{a, b}};
  Substitution solved;
  while (!work.empty()) {
    auto [l, r] = std::move(work.front());
    work.pop_front();
    l = apply_subst(l, solved);
    r = apply_subst(r, solved);
    if (l == r) continue;
    if (!l.is_variable() && !r.is_variable()) {
      if (l.label() != r.label() || l.arity() != r.arity()) return std::nullopt;
      for (std::size_t i = 0; i < l.arity(); ++i) work.emplace_back(l.children()[i], r.children()[i]);
      continue;
    }
    if (!l.is_variable()) std::swap(l, r);
    if (occurs(l.label(), r)) return std::nullopt;
    const Substitution single{{l.label(), r}};
    for (auto& [v, t] : solved) t = apply_subst(t, single);
    solved.emplace(l.label(), r);
  }
  return solved;
}

std::optional<UnifierPair> mgu(const Term& t1, const Term& s2) {
  Substitution left_rename, right_rename;
  int next = 1;
  for (const auto& v : variables_in_order(t1)) {
    left_rename.emplace(v, Term::variable("_" + std::to_string(next++)));
  }
  for (const auto& v : variables_in_order(s2)) {
    right_rename.emplace(v, Term::variable("_" + std::to_string(next++)));
  }
  auto sigma = unify(apply_subst(t1, left_rename), apply_subst(s2, right_rename));
  if (!sigma) return std::nullopt;
  UnifierPair out;
  for (const auto& [v, fresh] : left_rename) out.left.emplace(v, apply_subst(fresh, *sigma));
  for (const auto& [v, fresh] : right_rename) out.right.emplace(v, apply_subst(fresh, *sigma));
  return out;
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& phi) {
  if (pattern.is_variable()) {
    auto [it, inserted] = phi.emplace(pattern.label(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_variable() || pattern.label() != subject.label() ||
      pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.children()[i], subject.children()[i], phi)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution phi;
  if (!match_into(pattern, subject, phi)) return std::nullopt;
  return phi;
}

bool is_composable(std::span<const std::pair<Term, Term>> equations) {
  std::vector<Term> sides;
  for (const auto& [s, t] : equations) {
    sides.push_back(s);
    sides.push_back(t);
  }
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (std::size_t j = i; j < sides.size(); ++j) {
      if (!mgu(sides[i], sides[j])) return false;
    }
  }
  return true;
}

}  // namespace structmon
