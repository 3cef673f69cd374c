#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "structmon/presentation.hpp"
#include "structmon/tree_diagram.hpp"

using namespace structmon;

namespace {

Term v(const std::string& name) { return Term::variable(name); }
Term T(std::vector<Term> kids) { return Term::tensor(std::move(kids)); }

NTree node(std::vector<NTree> kids) { return NTree{std::move(kids)}; }
const NTree L = NTree::leaf();

NTree right_comb(int leaves) {
  NTree t = L;
  for (int k = 1; k < leaves; ++k) t = node({L, t});
  return t;
}

NTree left_comb(int leaves) {
  NTree t = L;
  for (int k = 1; k < leaves; ++k) t = node({t, L});
  return t;
}

std::vector<std::size_t> iota(std::size_t m) {
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  return p;
}

TreeDiagram swap2() { return {2, NTree::caret(2), NTree::caret(2), {1, 0}}; }

std::vector<ReducedDiagram> random_reduced(int n, int count, std::mt19937_64& rng) {
  std::vector<ReducedDiagram> out;
  while (static_cast<int>(out.size()) < count) {
    const int carets = static_cast<int>(rng() % 5);
    out.push_back(reduce(oracle::random_diagram(n, carets, rng)));
  }
  return out;
}

}  // namespace

TEST_SUITE("thompson-trees") {

TEST_CASE("leaves") {
  CHECK(leaves(L) == std::vector<Address>{Address()});
  CHECK(leaves(NTree::caret(2)) == std::vector<Address>{Address::of({1}), Address::of({2})});
  CHECK(leaves(node({NTree::caret(2), L})) ==
        std::vector<Address>{Address::of({1, 1}), Address::of({1, 2}), Address::of({2})});
}

TEST_CASE("expand") {
  CHECK(expand(L, 0, 2) == NTree::caret(2));
  CHECK(leaves(expand(NTree::caret(2), 1, 2)) ==
        std::vector<Address>{Address::of({1}), Address::of({2, 1}), Address::of({2, 2})});
  NTree t = NTree::caret(3);
  for (int i = 2; i >= 0; --i) t = expand(t, static_cast<std::size_t>(i), 3);
  CHECK(t.leaf_count() == 9);
  CHECK_THROWS_AS(expand(NTree::caret(2), 2, 2), std::out_of_range);
}

TEST_CASE("minimal common expansion") {
  const NTree a = node({NTree::caret(2), L});
  const NTree b = node({L, NTree::caret(2)});
  CHECK(minimal_common_expansion(a, a) == a);
  CHECK(minimal_common_expansion(L, b) == b);
  const NTree m = minimal_common_expansion(a, b);
  CHECK(leaves(m) == std::vector<Address>{Address::of({1, 1}), Address::of({1, 2}), Address::of({2, 1}),
                                          Address::of({2, 2})});
  CHECK(m.caret_count() == 3);
}

TEST_CASE("expand_diagram") {
  const TreeDiagram id{2, NTree::caret(2), NTree::caret(2), {0, 1}};
  for (std::size_t l = 0; l < 2; ++l) {
    const auto e = expand_diagram(id, l);
    CHECK(e.domain == e.range);
    CHECK(e.perm == iota(3));
  }
  const auto e = expand_diagram(swap2(), 0);
  CHECK(leaves(e.domain) == std::vector<Address>{Address::of({1, 1}), Address::of({1, 2}), Address::of({2})});
  CHECK(leaves(e.range) == std::vector<Address>{Address::of({1}), Address::of({2, 1}), Address::of({2, 2})});
  CHECK(e.perm == std::vector<std::size_t>{1, 2, 0});
  CHECK(e.perm.size() == swap2().perm.size() + 1);
  CHECK(expand_diagram(TreeDiagram{3, L, L, {0}}, 0).perm.size() == 3);
}

TEST_CASE("reduce") {
  const TreeDiagram id{2, right_comb(4), right_comb(4), iota(4)};
  const auto r = reduce(id);
  CHECK(r.diagram() == TreeDiagram{2, L, L, {0}});
  CHECK(r == identity_diagram(2));
  const auto s = reduce(swap2());
  CHECK(s.diagram() == swap2());
  CHECK(reduce(s.diagram()) == s);
  CHECK_THROWS_AS(reduce(TreeDiagram{2, NTree::caret(2), L, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(reduce(TreeDiagram{2, NTree::caret(2), NTree::caret(2), {0, 0}}), std::invalid_argument);
}

TEST_CASE("reducible carets need consecutive leaves in child order") {
  // Domain caret maps onto a range caret, but in swapped order: not reducible.
  const TreeDiagram d{2, node({NTree::caret(2), L}), node({NTree::caret(2), L}), {1, 0, 2}};
  CHECK(reducible_carets(d).empty());
  CHECK(reduce(d).diagram() == d);
  CHECK_THROWS_AS(collapse(d, 0), std::invalid_argument);
}

TEST_CASE("multiply examples") {
  const auto x0 = reduce(TreeDiagram{2, right_comb(3), left_comb(3), iota(3)});
  const auto sq = multiply(x0, x0);
  CHECK(sq.diagram() == TreeDiagram{2, right_comb(4), left_comb(4), iota(4)});
  CHECK(multiply(x0, invert(x0)) == identity_diagram(2));
  CHECK(multiply(identity_diagram(2), reduce(swap2())) == reduce(swap2()));
  CHECK_THROWS_AS(multiply(identity_diagram(2), identity_diagram(3)), std::invalid_argument);
  CHECK(is_order_preserving(identity_diagram(2)));
  CHECK_FALSE(is_order_preserving(reduce(swap2())));
  CHECK(is_order_preserving(x0));
}

TEST_CASE("group laws and agreement with the interval-map oracle") {
  std::mt19937_64 rng(2024);
  for (int n : {2, 3, 4}) {
    const auto elems = random_reduced(n, 300, rng);
    const auto id = identity_diagram(n);
    for (std::size_t k = 0; k + 2 < elems.size(); ++k) {
      const auto& a = elems[k];
      const auto& b = elems[k + 1];
      const auto& c = elems[k + 2];
      CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
      CHECK(multiply(id, a) == a);
      CHECK(multiply(a, id) == a);
      CHECK(multiply(a, invert(a)) == id);
      CHECK(multiply(invert(a), a) == id);
      CHECK(oracle::is_product(a.diagram(), b.diagram(), multiply(a, b).diagram()));
    }
  }
}

TEST_CASE("expansion does not change the element") {
  std::mt19937_64 rng(99);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto d = oracle::random_diagram(n, static_cast<int>(rng() % 4), rng);
      const auto r = reduce(d);
      CHECK(oracle::same_map(d, r.diagram()));
      for (std::size_t l = 0; l < d.perm.size(); ++l) {
        CHECK(reduce(expand_diagram(d, l)) == r);
      }
    }
  }
}

TEST_CASE("reduction order does not matter on small diagrams") {
  for (int carets = 0; carets <= 3; ++carets) {
    std::vector<NTree> trees;
    for (const auto& t : enumerate_terms(2, carets)) trees.push_back(tree_of_term(t));
    for (const auto& dom : trees) {
      for (const auto& ran : trees) {
        auto perm = iota(dom.leaf_count());
        do {
          const TreeDiagram d{2, dom, ran, perm};
          const auto ends = oracle::all_reduction_endpoints(d);
          REQUIRE(ends.size() == 1);
          CHECK(*ends.begin() == reduce(d).diagram());
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
}

TEST_CASE("tree_of_term") {
  CHECK(tree_of_term(v("x")) == L);
  CHECK(tree_of_term(T({v("x"), T({v("y"), v("z")})})) == node({L, NTree::caret(2)}));
  for (const auto& t : enumerate_terms(3, 3)) CHECK(static_cast<long>(tree_of_term(t).leaf_count()) == length(t));
}

TEST_CASE("theta examples") {
  const auto alpha = Operator::seed(T({v("x1"), T({v("x2"), v("x3")})}), T({T({v("x1"), v("x2")}), v("x3")}));
  const auto x0 = theta(alpha, 2);
  CHECK(x0.diagram() == TreeDiagram{2, right_comb(3), left_comb(3), iota(3)});
  CHECK(is_order_preserving(x0));
  CHECK(theta(Operator::seed(T({v("x1"), v("x2")}), T({v("x2"), v("x1")})), 2).diagram() == swap2());
  CHECK(theta(Operator::identity(), 2) == identity_diagram(2));
  CHECK(theta(compose(alpha, alpha), 2) == multiply(x0, x0));
  CHECK_THROWS_AS(theta(Operator::empty(), 2), std::invalid_argument);
  CHECK_THROWS_AS(theta(Operator::seed(T({v("x1"), v("x1")}), v("x1")), 2), std::invalid_argument);
  CHECK_THROWS_AS(theta(alpha, 3), std::invalid_argument);
}

TEST_CASE("theta is a homomorphism on generator pairs and lands in F for C_n") {
  for (int n : {2, 3}) {
    const auto th = symmetric_catalan_theory(n);
    std::vector<Operator> seeds;
    std::vector<bool> is_assoc;
    for (const auto& a : addresses_up_to(n, 1)) {
      for (int i = 1; i < n; ++i) {
        for (int sign : {1, -1}) {
          seeds.push_back(translated_seed(translated(assoc(i, a, sign), th), th.signature));
          is_assoc.push_back(true);
          seeds.push_back(translated_seed(translated(twist(i, a, sign), th), th.signature));
          is_assoc.push_back(false);
        }
      }
    }
    for (std::size_t x = 0; x < seeds.size(); ++x) {
      for (std::size_t y = 0; y < seeds.size(); ++y) {
        const auto c = compose(seeds[x], seeds[y]);
        CHECK(theta(c, n) == multiply(theta(seeds[x], n), theta(seeds[y], n)));
        if (is_assoc[x] && is_assoc[y]) CHECK(is_order_preserving(theta(c, n)));
      }
    }
  }
}

TEST_CASE("json round trip and dot output") {
  const auto x0 = reduce(TreeDiagram{2, right_comb(3), left_comb(3), iota(3)});
  const auto j = to_json(x0);
  CHECK(j.dump() == R"({"domain":[0,[0,0]],"n":2,"perm":[1,2,3],"range":[[0,0],0]})");
  CHECK(diagram_from_json(j) == x0.diagram());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = oracle::random_diagram(3, 3, rng);
    CHECK(diagram_from_json(to_json(d)) == d);
  }
  CHECK_THROWS(diagram_from_json(nlohmann::json::parse(R"({"n":2,"domain":0,"range":0,"perm":[0]})")));
  const auto dot = to_dot(swap2());
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("domain_1 -> range_2 [style=dashed") != std::string::npos);
  CHECK(dot.find("domain_2 -> range_1 [style=dashed") != std::string::npos);
}


TEST_CASE("theta separates seeds that differ modulo idempotents") {
  for (auto kind : {TheoryKind::catalan, TheoryKind::symmetric_catalan}) {
    const auto th = make_theory(2, kind);
    std::vector<Operator> letters;
    for (const auto& a : addresses_up_to(2, 1)) {
      for (int sign : {1, -1}) {
        letters.push_back(translated_seed(translated(assoc(1, a, sign), th), th.signature));
        if (kind == TheoryKind::symmetric_catalan)
          letters.push_back(translated_seed(translated(twist(1, a, sign), th), th.signature));
      }
    }
    std::vector<Operator> ops{Operator::identity()};
    std::vector<Operator> frontier = ops;
    for (int len = 1; len <= 3; ++len) {
      std::vector<Operator> next;
      for (const auto& w : frontier)
        for (const auto& g : letters) {
          auto c = compose(w, g);
          if (!c.is_empty()) next.push_back(std::move(c));
        }
      ops.insert(ops.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    std::map<std::string, ReducedDiagram> by_class;
    std::map<ReducedDiagram, std::string> by_image;
    for (const auto& op : ops) {
      const auto key = to_string(oracle::collapsed_seed(op));
      const auto img = theta(op, 2);
      auto [it, fresh] = by_class.emplace(key, img);
      CHECK(it->second == img);
      auto [jt, fresh2] = by_image.emplace(img, key);
      CHECK(jt->second == key);
    }
    CHECK(by_class.size() == by_image.size());
  }
}

TEST_CASE("F relations hold in diagrammatic order") {
  const auto th = make_theory(2, TheoryKind::catalan);
  // x0 = a1 at the root, x1 = a1 at address 2, products read left to right.
  CHECK(words_equal(parse_word("a1[-] a1[2] A1[-]"), parse_word("a1[2.2]"), th));
  const auto a = parse_word("A1[2] a1[-]");
  const auto b1 = parse_word("a1[-] a1[2] A1[-]");
  const auto b2 = parse_word("a1[-] a1[-] a1[2] A1[-] A1[-]");
  for (const auto& b : {b1, b2}) {
    const auto comm = concat(concat(concat(inverse(a), inverse(b)), a), b);
    CHECK(words_equal(comm, {}, th));
  }
}

}  // TEST_SUITE
