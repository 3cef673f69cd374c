#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "structmon/presentation.hpp"
#include "structmon/structure_monoid.hpp"

using namespace structmon;

namespace {

Term v(const std::string& name) { return Term::variable(name); }
Term T(std::vector<Term> kids) { return Term::tensor(std::move(kids)); }

std::vector<Generator> assoc_letters(int n, int max_addr) {
  std::vector<Generator> out;
  for (const auto& a : addresses_up_to(n, max_addr)) {
    for (int i = 1; i < n; ++i) {
      for (int sign : {1, -1}) out.push_back(assoc(i, a, sign));
    }
  }
  return out;
}

std::vector<Generator> all_letters(int n, int max_addr) {
  auto out = assoc_letters(n, max_addr);
  for (const auto& a : addresses_up_to(n, max_addr)) {
    for (int i = 1; i < n; ++i) {
      for (int sign : {1, -1}) out.push_back(twist(i, a, sign));
    }
  }
  return out;
}

Operator seed_of(const Generator& g, const Theory& th) {
  return translated_seed(translated(g, th), th.signature);
}

Operator eval(const GeneratorWord& w, const Theory& th) {
  std::vector<TranslatedRule> rules;
  for (const auto& g : w) rules.push_back(translated(g, th));
  return eval_word(rules, th.signature);
}

std::vector<Term> ground_terms(int n, int max_leaves) {
  std::vector<Term> out;
  for (int k = 0;; ++k) {
    const int leaves = n + (k - 1) * (n - 1);
    if (k > 0 && leaves > max_leaves) break;
    std::vector<std::string> labels;
    for (int i = 1; i <= (k == 0 ? 1 : leaves); ++i) labels.push_back("c" + std::to_string(i));
    for (const auto& t : enumerate_terms(n, k, labels)) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_SUITE("structure-monoid") {

TEST_CASE("theories") {
  const auto c2 = catalan_theory(2);
  REQUIRE(c2.rules.size() == 1);
  CHECK(c2.rules[0].source == T({v("x1"), T({v("x2"), v("x3")})}));
  CHECK(c2.rules[0].target == T({T({v("x1"), v("x2")}), v("x3")}));
  const auto c3 = catalan_theory(3);
  // a_2: (x1 x2 (x3 x4 x5)) -> (x1 (x2 x3 x4) x5)
  CHECK(c3.rule("a2").source == T({v("x1"), v("x2"), T({v("x3"), v("x4"), v("x5")})}));
  CHECK(c3.rule("a2").target == T({v("x1"), T({v("x2"), v("x3"), v("x4")}), v("x5")}));
  const auto sc3 = symmetric_catalan_theory(3);
  CHECK(sc3.rule("s2").target == T({v("x1"), v("x3"), v("x2")}));
  CHECK_THROWS_AS(c3.rule("s1"), std::invalid_argument);
  CHECK_THROWS_AS(general_theory(Signature({{"F", 2}}), {{"bad", Term::apply("F", {v("x"), v("y")}), v("x")}}),
                  std::invalid_argument);
  for (const auto& r : sc3.rules) CHECK(linear(r.source, r.target));
}

TEST_CASE("translated_seed examples") {
  const auto c2 = catalan_theory(2);
  const auto root = translated_seed({c2.rules[0], Address(), Direction::forward}, c2.signature);
  CHECK(root == Operator::seed(T({v("x1"), T({v("x2"), v("x3")})}), T({T({v("x1"), v("x2")}), v("x3")})));
  const auto at2 = translated_seed({c2.rules[0], Address::of({2}), Direction::forward}, c2.signature);
  CHECK(at2.source() == T({v("x1"), T({v("x2"), T({v("x3"), v("x4")})})}));
  CHECK(at2.target() == T({v("x1"), T({T({v("x2"), v("x3")}), v("x4")})}));
  const auto sc2 = symmetric_catalan_theory(2);
  const auto tw = translated_seed({sc2.rule("s1"), Address(), Direction::forward}, sc2.signature);
  CHECK(tw.source() == T({v("x1"), v("x2")}));
  CHECK(tw.target() == T({v("x2"), v("x1")}));
}

TEST_CASE("operator canonical form") {
  const auto op = Operator::seed(T({v("b"), v("a")}), T({v("a"), v("b")}));
  CHECK(op.source() == T({v("x1"), v("x2")}));
  CHECK(op.target() == T({v("x2"), v("x1")}));
  CHECK(Operator::identity().is_idempotent());
  CHECK(to_string(Operator::empty()) == "empty");
  CHECK(to_string(op) == "(x1 x2) -> (x2 x1)");
}

TEST_CASE("apply") {
  const auto alpha = Operator::seed(T({v("x1"), T({v("x2"), v("x3")})}), T({T({v("x1"), v("x2")}), v("x3")}));
  CHECK(apply(alpha, T({v("a"), T({v("b"), v("c")})})) == T({T({v("a"), v("b")}), v("c")}));
  const auto idem = compose(alpha, invert(alpha));
  const auto u = T({v("a"), T({T({v("p"), v("q")}), v("c")})});
  CHECK(apply(idem, u) == u);
  CHECK_FALSE(apply(alpha, v("a")));
  CHECK_FALSE(apply(Operator::empty(), u));
}

TEST_CASE("compose, invert, eval_word examples") {
  const auto c2 = catalan_theory(2);
  const auto alpha = seed_of(assoc(1), c2);
  const auto aa = compose(alpha, alpha);
  CHECK(aa.source() == T({v("x1"), T({v("x2"), T({v("x3"), v("x4")})})}));
  CHECK(aa.target() == T({T({T({v("x1"), v("x2")}), v("x3")}), v("x4")}));

  const auto idem = compose(alpha, invert(alpha));
  CHECK(idem.is_idempotent());
  CHECK(idem.source() == alpha.source());

  CHECK(invert(alpha).source() == T({T({v("x1"), v("x2")}), v("x3")}));
  CHECK(invert(alpha).target() == T({v("x1"), T({v("x2"), v("x3")})}));
  CHECK(invert(invert(alpha)) == alpha);
  CHECK(invert(idem) == idem);
  CHECK(invert(Operator::empty()).is_empty());

  CHECK(eval(GeneratorWord{}, c2) == Operator::identity());
  CHECK(eval(parse_word("a1[-] A1[-]"), c2) == idem);
  CHECK(eval(parse_word("a1[-] a1[-]"), c2) == aa);

  CHECK(compose(Operator::empty(), alpha).is_empty());
  CHECK(compose(alpha, Operator::empty()).is_empty());
  const auto clash1 = Operator::seed(Term::apply("F", {v("x"), v("y")}), Term::apply("F", {v("y"), v("x")}));
  const auto clash2 = Operator::seed(Term::apply("G", {v("x"), v("y")}), Term::apply("G", {v("y"), v("x")}));
  CHECK(compose(clash1, clash2).is_empty());
}

TEST_CASE("inverse-monoid laws on C_2 words of length <= 4") {
  const auto c2 = catalan_theory(2);
  const auto letters = assoc_letters(2, 2);
  std::vector<Operator> ops{Operator::identity()};
  std::vector<Operator> frontier = ops;
  for (int len = 1; len <= 4; ++len) {
    std::vector<Operator> next;
    for (const auto& op : frontier) {
      for (const auto& g : letters) next.push_back(compose(op, seed_of(g, c2)));
    }
    ops.insert(ops.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  CHECK(ops.size() == 1 + 14 + 196 + 2744 + 38416);
  std::set<std::pair<Term, Term>> seen;
  for (const auto& op : ops) {
    REQUIRE_FALSE(op.is_empty());
    if (!seen.insert({op.source(), op.target()}).second) continue;
    CHECK(compose(op, compose(invert(op), op)) == op);
    const auto inv = invert(op);
    CHECK(compose(inv, compose(op, inv)) == inv);
    CHECK(linear(op.source(), op.target()));
  }
}

TEST_CASE("inverse-monoid laws on random C_3 words of length <= 4") {
  const auto c3 = catalan_theory(3);
  const auto letters = assoc_letters(3, 2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    GeneratorWord w;
    const int len = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < len; ++k) w.push_back(letters[rng() % letters.size()]);
    const auto op = eval(w, c3);
    REQUIRE_FALSE(op.is_empty());
    CHECK(compose(op, compose(invert(op), op)) == op);
    CHECK(compose(invert(op), compose(op, invert(op))) == invert(op));
  }
}

TEST_CASE("compose is associative on random triples") {
  std::mt19937_64 rng(5);
  for (int n : {2, 3}) {
    const auto th = symmetric_catalan_theory(n);
    const auto letters = all_letters(n, 2);
    auto random_op = [&] {
      GeneratorWord w;
      for (int k = 0; k < 3; ++k) w.push_back(letters[rng() % letters.size()]);
      return eval(w, th);
    };
    for (int trial = 0; trial < 500; ++trial) {
      const auto a = random_op(), b = random_op(), c = random_op();
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
  }
}

TEST_CASE("ground semantics of C_2 words of length <= 3") {
  const auto c2 = catalan_theory(2);
  const auto letters = assoc_letters(2, 2);
  const auto grounds = ground_terms(2, 5);
  std::vector<GeneratorWord> words{{}};
  for (std::size_t start = 0, len = 1; len <= 3; ++len) {
    const std::size_t end = words.size();
    for (std::size_t k = start; k < end; ++k) {
      for (const auto& g : letters) words.push_back(concat(words[k], {g}));
    }
    start = end;
  }
  std::size_t mismatches = 0;
  for (const auto& w : words) {
    const auto op = eval(w, c2);
    for (const auto& u : grounds) {
      if (apply(op, u) != apply_word(w, u, c2)) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("generator pairs of composable theories never compose to empty") {
  for (int n : {2, 3}) {
    for (auto kind : {TheoryKind::catalan, TheoryKind::symmetric_catalan}) {
      const auto th = make_theory(n, kind);
      const auto letters = kind == TheoryKind::catalan ? assoc_letters(n, 2) : all_letters(n, 2);
      for (const auto& g : letters) {
        for (const auto& h : letters) {
          const auto c = compose(seed_of(g, th), seed_of(h, th));
          REQUIRE_FALSE(c.is_empty());
          CHECK(linear(c.source(), c.target()));
        }
      }
    }
  }
}

TEST_CASE("congruence oracles") {
  const auto c2 = catalan_theory(2);
  const auto sc2 = symmetric_catalan_theory(2);
  CHECK(congruent(c2, T({v("a"), T({v("b"), v("c")})}), T({T({v("a"), v("b")}), v("c")})) == Congruence::congruent);
  CHECK(congruent(c2, T({v("a"), v("b")}), T({v("b"), v("a")})) == Congruence::not_congruent);
  CHECK(congruent(sc2, T({v("a"), v("b")}), T({v("b"), v("a")})) == Congruence::congruent);
  CHECK(congruent(sc2, T({v("a"), v("b")}), T({v("a"), v("a")})) == Congruence::not_congruent);
}

TEST_CASE("bounded search agrees with the Catalan oracle") {
  // C_2 presented as a general theory over one binary symbol.
  const auto c2 = catalan_theory(2);
  const auto general = general_theory(c2.signature, c2.rules);
  const auto terms = enumerate_terms(2, 3);
  for (const auto& a : terms) {
    for (const auto& b : terms) {
      CHECK(congruent(general, a, b) == congruent(c2, a, b));
    }
  }
  const auto other = T({v("x2"), T({v("x1"), T({v("x3"), v("x4")})})});
  CHECK(congruent(general, terms[0], other) == Congruence::not_congruent);
  CHECK(congruent(general, terms[0], terms[1], 1) == Congruence::bound_exceeded);
}

TEST_CASE("naturality for a nonlinear balanced theory") {
  // r: F(x) -> G(x, x) duplicates its variable; q: H(y) -> K(y).
  const Signature sig({{"F", 1}, {"G", 2}, {"H", 1}, {"K", 1}});
  const Rule r{"r", Term::apply("F", {v("x")}), Term::apply("G", {v("x"), v("x")})};
  const Rule q{"q", Term::apply("H", {v("y")}), Term::apply("K", {v("y")})};
  const auto th = general_theory(sig, {r, q});
  auto at = [](std::initializer_list<std::pair<const char*, int>> steps) {
    std::vector<AddressStep> out;
    for (auto [s, i] : steps) out.push_back({s, i});
    return Address(out);
  };
  // r^a . q^{a.(G,1)} . q^{a.(G,2)} = q^{a.(F,1)} . r^a with a = lambda
  const std::vector<TranslatedRule> lhs{{r, Address(), Direction::forward},
                                        {q, at({{"G", 1}}), Direction::forward},
                                        {q, at({{"G", 2}}), Direction::forward}};
  const std::vector<TranslatedRule> rhs{{q, at({{"F", 1}}), Direction::forward},
                                        {r, Address(), Direction::forward}};
  const auto left = eval_word(lhs, th.signature);
  const auto right = eval_word(rhs, th.signature);
  CHECK_FALSE(left.is_empty());
  CHECK(left == right);
  const auto u = Term::apply("F", {Term::apply("H", {v("c")})});
  CHECK(apply(left, u) == Term::apply("G", {Term::apply("K", {v("c")}), Term::apply("K", {v("c")})}));
  // Rewriting only one copy gives a different operator.
  const std::vector<TranslatedRule> half{{r, Address(), Direction::forward},
                                         {q, at({{"G", 1}}), Direction::forward}};
  CHECK_FALSE(eval_word(half, th.signature) == right);
}

}  // TEST_SUITE
