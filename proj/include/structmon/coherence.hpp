#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "structmon/presentation.hpp"

namespace structmon {

/// Every sequence of forward assoc letters leading from t to lmb(U(t)).
/// Throws std::length_error once more than `limit` paths have been found.
std::vector<GeneratorWord> positive_paths(const Term& t, int n, std::size_t limit = 100000);

/// Forward assoc letters applicable at t, in preorder of address then index.
std::vector<Generator> positive_letters(const Term& t, int n);

struct PositiveSummary {
  std::set<Term> endpoints;
  std::set<ReducedDiagram> images;
  std::size_t path_count = 0;
};

/// Endpoints and theta-images of all positive paths from t, computed by
/// memoized recursion rather than by listing the paths.
PositiveSummary positive_summary(const Term& t, int n);

/// Closing words for two distinct positive letters applicable at a common
/// term: m1 w1 and m2 w2 lead to the same term, and `relation` has sides
/// {m1 w1, m2 w2}.
struct Filler {
  GeneratorWord w1;
  GeneratorWord w2;
  RelationInstance relation;
};

/// Throws std::invalid_argument if m1 == m2 or either letter does not apply.
Filler fill_square(const Term& t, const Generator& m1, const Generator& m2, int n);

/// Outcome of one filled square, with enough context to report it.
struct SquareCheck {
  Term term;
  Generator m1, m2;
  std::optional<Filler> filler;
  bool cofinal = false;
  bool theta_equal = false;
  bool family_ok = false;
  std::string error;

  bool ok() const { return filler && cofinal && theta_equal && family_ok; }
};

SquareCheck check_square(const Term& t, const Generator& m1, const Generator& m2, int n);

struct CoherenceReport {
  std::vector<SquareCheck> squares;
  /// Terms whose positive paths disagree on endpoint or theta-image.
  std::vector<Term> path_failures;
  std::size_t terms = 0;
  std::size_t paths = 0;

  bool ok() const;
};

/// All terms with at most max_nodes internal nodes.
CoherenceReport check_coherence(int n, int max_nodes);

struct MooreReport {
  int n = 2;
  bool involution = false;
  bool braid = false;
  bool commute = false;
  std::size_t order = 0;
  std::size_t expected_order = 0;

  bool ok() const { return involution && braid && commute && order == expected_order; }
};

/// T_i = theta(s_i at the root) in SC_n. The closure is enumerated when n <= max_closure_n.
MooreReport moore_check(int n, int max_closure_n = 5);

/// Result of checking one relation instance under theta.
struct RelationCheck {
  RelationInstance relation;
  bool pass = false;
  nlohmann::json lhs;
  nlohmann::json rhs;
};

RelationCheck check_relation(const RelationInstance& rel, const Theory& theory);
/// "family n indices base PASS", with both diagrams appended on FAIL.
std::string format_record(const RelationCheck& c);

}  // namespace structmon
