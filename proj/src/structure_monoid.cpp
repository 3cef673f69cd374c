#include "structmon/structure_monoid.hpp"

#include <algorithm>
#include <set>

#include "structmon/unify.hpp"

namespace structmon {

// --- theories ------------------------------------------------------------------

const Rule& Theory::rule(std::string_view name) const {
  for (const auto& r : rules) {
    if (r.name == name) return r;
  }
  throw std::invalid_argument("theory has no rule '" + std::string(name) + "'");
}

int Theory::arity() const {
  return kind == TheoryKind::general ? 0 : signature.catalan_arity();
}

bool Theory::composable() const {
  std::vector<std::pair<Term, Term>> eqs;
  for (const auto& r : rules) eqs.emplace_back(r.source, r.target);
  return is_composable(eqs);
}

namespace {

std::vector<Term> vars(int from, int to) {
  std::vector<Term> out;
  for (int i = from; i <= to; ++i) out.push_back(Term::variable("x" + std::to_string(i)));
  return out;
}

std::vector<Term> cat(std::vector<Term> a, const std::vector<Term>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

Theory catalan_theory(int n) {
  Theory th{TheoryKind::catalan, Signature::catalan(n), {}};
  for (int i = 1; i < n; ++i) {
    auto src = cat(cat(vars(1, i), {Term::tensor(vars(i + 1, i + n))}), vars(i + n + 1, 2 * n - 1));
    auto dst = cat(cat(vars(1, i - 1), {Term::tensor(vars(i, i + n - 1))}), vars(i + n, 2 * n - 1));
    th.rules.push_back(Rule{"a" + std::to_string(i), Term::tensor(src), Term::tensor(dst)});
  }
  return th;
}

Theory symmetric_catalan_theory(int n) {
  Theory th = catalan_theory(n);
  th.kind = TheoryKind::symmetric_catalan;
  for (int i = 1; i < n; ++i) {
    auto src = vars(1, n);
    auto dst = src;
    std::swap(dst[i - 1], dst[i]);
    th.rules.push_back(Rule{"s" + std::to_string(i), Term::tensor(src), Term::tensor(dst)});
  }
  return th;
}

Theory general_theory(Signature sig, std::vector<Rule> rules) {
  for (const auto& r : rules) {
    if (!balanced(r.source, r.target)) {
      throw std::invalid_argument("rule '" + r.name + "' is not balanced");
    }
  }
  return Theory{TheoryKind::general, std::move(sig), std::move(rules)};
}

// --- operators -----------------------------------------------------------------

Operator Operator::empty() { return Operator(); }

Operator Operator::seed(const Term& source, const Term& target) {
  Substitution ren = canonical_renaming(source);
  int next = static_cast<int>(ren.size()) + 1;
  for (const auto& v : variables_in_order(target)) {
    if (!ren.contains(v)) ren.emplace(v, Term::variable("x" + std::to_string(next++)));
  }
  Operator op;
  op.seed_.emplace(apply_subst(source, ren), apply_subst(target, ren));
  return op;
}

Operator Operator::identity() {
  const auto x = Term::variable("x1");
  return seed(x, x);
}

std::string to_string(const Operator& op) {
  if (op.is_empty()) return "empty";
  return to_string(op.source()) + " -> " + to_string(op.target());
}

Operator translated_seed(const TranslatedRule& tr, const Signature& sig) {
  Term s = tr.direction == Direction::forward ? tr.rule.source : tr.rule.target;
  Term t = tr.direction == Direction::forward ? tr.rule.target : tr.rule.source;
  int fresh = 0;
  const auto steps = tr.address.steps();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    std::string symbol = it->symbol;
    if (symbol.empty()) {
      if (sig.symbols().size() != 1) {
        throw std::invalid_argument("address step needs a symbol in a multi-symbol signature");
      }
      symbol = sig.symbols()[0].name;
    }
    auto ar = sig.arity(symbol);
    if (!ar || it->index > *ar) {
      throw std::invalid_argument("address step " + symbol + ":" + std::to_string(it->index) +
                                  " does not fit the signature");
    }
    std::vector<Term> ks, kt;
    for (int c = 1; c <= *ar; ++c) {
      if (c == it->index) {
        ks.push_back(s);
        kt.push_back(t);
      } else {
        auto v = Term::variable("_c" + std::to_string(++fresh));
        ks.push_back(v);
        kt.push_back(v);
      }
    }
    s = Term::apply(symbol, std::move(ks));
    t = Term::apply(symbol, std::move(kt));
  }
  return Operator::seed(s, t);
}

std::optional<Term> apply(const Operator& op, const Term& u) {
  if (op.is_empty()) return std::nullopt;
  auto phi = match(op.source(), u);
  if (!phi) return std::nullopt;
  return apply_subst(op.target(), *phi);
}

std::optional<Term> apply(const TranslatedRule& tr, const Term& u) {
  auto sub = subterm(u, tr.address);
  if (!sub) return std::nullopt;
  const Term& s = tr.direction == Direction::forward ? tr.rule.source : tr.rule.target;
  const Term& t = tr.direction == Direction::forward ? tr.rule.target : tr.rule.source;
  auto phi = match(s, *sub);
  if (!phi) return std::nullopt;
  return replace(u, tr.address, apply_subst(t, *phi));
}

Operator compose(const Operator& op1, const Operator& op2) {
  if (op1.is_empty() || op2.is_empty()) return Operator::empty();
  auto u = mgu(op1.target(), op2.source());
  if (!u) return Operator::empty();
  return Operator::seed(apply_subst(op1.source(), u->left), apply_subst(op2.target(), u->right));
}

Operator invert(const Operator& op) {
  if (op.is_empty()) return op;
  return Operator::seed(op.target(), op.source());
}

Operator eval_word(std::span<const TranslatedRule> gens, const Signature& sig) {
  Operator acc = Operator::identity();
  for (const auto& g : gens) acc = compose(acc, translated_seed(g, sig));
  return acc;
}

// --- congruence ----------------------------------------------------------------

namespace {

std::vector<Address> all_addresses(const Term& t) {
  std::vector<Address> out;
  std::vector<Address> stack{Address()};
  while (!stack.empty()) {
    Address a = std::move(stack.back());
    stack.pop_back();
    auto sub = *subterm(t, a);
    for (std::size_t i = sub.arity(); i > 0; --i) {
      stack.push_back(a.concat(Address({AddressStep{sub.label(), static_cast<int>(i)}})));
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Term> neighbours(const Theory& theory, const Term& t) {
  std::vector<Term> out;
  for (const auto& a : all_addresses(t)) {
    for (const auto& r : theory.rules) {
      for (auto dir : {Direction::forward, Direction::backward}) {
        if (auto next = apply(TranslatedRule{r, a, dir}, t)) out.push_back(std::move(*next));
      }
    }
  }
  return out;
}

}  // namespace

Congruence congruent(const Theory& theory, const Term& t, const Term& t2, std::size_t node_budget) {
  if (theory.kind == TheoryKind::catalan) {
    return underlying_list(t) == underlying_list(t2) ? Congruence::congruent
                                                     : Congruence::not_congruent;
  }
  if (theory.kind == TheoryKind::symmetric_catalan) {
    auto a = underlying_list(t), b = underlying_list(t2);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b ? Congruence::congruent : Congruence::not_congruent;
  }
  if (t == t2) return Congruence::congruent;
  std::set<Term> seen[2] = {{t}, {t2}};
  std::vector<Term> frontier[2] = {{t}, {t2}};
  while (!frontier[0].empty() && !frontier[1].empty()) {
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<Term> next;
    for (const auto& u : frontier[side]) {
      for (auto& v : neighbours(theory, u)) {
        if (seen[1 - side].contains(v)) return Congruence::congruent;
        if (seen[side].insert(v).second) next.push_back(std::move(v));
        if (seen[0].size() + seen[1].size() > node_budget) return Congruence::bound_exceeded;
      }
    }
    frontier[side] = std::move(next);
  }
  return Congruence::not_congruent;
}

}  // namespace structmon
