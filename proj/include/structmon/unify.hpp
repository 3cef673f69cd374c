#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "structmon/term.hpp"

namespace structmon {

/// A unifier (phi, psi) of a pair (t1, s2): apply_subst(t1, phi) equals
/// apply_subst(s2, psi). The two sides have independent variable scopes.
struct UnifierPair {
  Substitution left;
  Substitution right;
};

/// Most general unifier of two terms sharing one variable scope, with occurs
/// check. The result is idempotent.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Most general unifier of t1 and s2 after renaming them apart. Fresh
/// variables are named _1, _2, ... (never produced by the term parser).
std::optional<UnifierPair> mgu(const Term& t1, const Term& s2);

/// phi with apply_subst(pattern, phi) == subject, binding only the pattern's
/// variables; the subject is treated as ground.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

/// Every pair drawn from the equation sides unifies (after rename-apart).
bool is_composable(std::span<const std::pair<Term, Term>> equations);

}  // namespace structmon
