#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "structmon/term.hpp"

namespace structmon {

/// An equation (source, target) of a theory, used left to right.
struct Rule {
  std::string name;
  Term source;
  Term target;
};

enum class TheoryKind { catalan, symmetric_catalan, general };

/// A balanced equational theory. Catalan theories name their associativity
/// rules a1..a{n-1} and their twists s1..s{n-1}.
struct Theory {
  TheoryKind kind = TheoryKind::general;
  Signature signature;
  std::vector<Rule> rules;

  /// Throws std::invalid_argument for an unknown name.
  const Rule& rule(std::string_view name) const;
  /// Arity of the tensor symbol, or 0 for general theories.
  int arity() const;
  bool composable() const;
};

/// C_n: a_i : (x1..xi (x{i+1}..x{i+n}) x{i+n+1}..x{2n-1}) -> (x1..x{i-1} (xi..x{i+n-1}) x{i+n}..x{2n-1}).
Theory catalan_theory(int n);
/// SC_n: C_n plus s_i swapping children i and i+1.
Theory symmetric_catalan_theory(int n);
/// Throws std::invalid_argument unless every rule is balanced.
Theory general_theory(Signature sig, std::vector<Rule> rules);

enum class Direction { forward, backward };

/// A rule applied at a subterm address, in a chosen direction.
struct TranslatedRule {
  Rule rule;
  Address address;
  Direction direction = Direction::forward;
};

/// A structure-monoid element: the empty operator or a seed (s, t) whose
/// substitution instances are exactly the operator's graph. Seeds are stored
/// with variables renamed x1, x2, ... by first occurrence in the source, so
/// equality of operators is syntactic equality.
class Operator {
 public:
  static Operator empty();
  static Operator seed(const Term& source, const Term& target);
  /// The everywhere-defined identity, Seed(x1, x1).
  static Operator identity();

  bool is_empty() const { return !seed_.has_value(); }
  /// Precondition: !is_empty().
  const Term& source() const { return seed_->first; }
  const Term& target() const { return seed_->second; }
  /// Identity on its domain (source == target).
  bool is_idempotent() const { return seed_ && seed_->first == seed_->second; }

  bool operator==(const Operator&) const = default;

 private:
  std::optional<std::pair<Term, Term>> seed_;
};

std::string to_string(const Operator& op);

/// Seed of rho^alpha: the rule wrapped in a most general context along the
/// address (fresh distinct variables at every sibling position).
Operator translated_seed(const TranslatedRule& tr, const Signature& sig);

std::optional<Term> apply(const Operator& op, const Term& u);
/// Applies a single translated rule directly: rewrites the subterm at the
/// address. Equivalent to apply(translated_seed(tr), u).
std::optional<Term> apply(const TranslatedRule& tr, const Term& u);

/// op1 followed by op2.
Operator compose(const Operator& op1, const Operator& op2);
Operator invert(const Operator& op);
/// Left-to-right fold of compose; the empty word gives identity().
Operator eval_word(std::span<const TranslatedRule> gens, const Signature& sig);

enum class Congruence { congruent, not_congruent, bound_exceeded };

/// Decides t =_T t'. Catalan theories use exact oracles (equal leaf words for
/// C_n, equal leaf multisets for SC_n); general theories run a bidirectional
/// search over single rule applications visiting at most `node_budget` terms.
Congruence congruent(const Theory& theory, const Term& t, const Term& t2,
                     std::size_t node_budget = 100000);

}  // namespace structmon
