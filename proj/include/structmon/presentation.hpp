#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "structmon/structure_monoid.hpp"
#include "structmon/term.hpp"
#include "structmon/tree_diagram.hpp"

namespace structmon {

enum class GeneratorKind { assoc, twist };

/// A signed, addressed generator: a<i>[addr] (assoc) or s<i>[addr] (twist),
/// capitalized when inverted.
struct Generator {
  GeneratorKind kind = GeneratorKind::assoc;
  int index = 1;
  int sign = 1;
  Address address;

  bool operator==(const Generator&) const = default;
  auto operator<=>(const Generator&) const = default;
};

using GeneratorWord = std::vector<Generator>;

Generator assoc(int i, Address at = {}, int sign = 1);
Generator twist(int i, Address at = {}, int sign = 1);
Generator inverse(const Generator& g);
GeneratorWord inverse(const GeneratorWord& w);
/// Cancels adjacent g g^-1 pairs until none remain.
GeneratorWord free_reduce(const GeneratorWord& w);
GeneratorWord concat(GeneratorWord a, const GeneratorWord& b);
/// Prefixes every letter's address with `base`.
GeneratorWord shifted(const GeneratorWord& w, const Address& base);

/// Whitespace-separated tokens such as `a1[-] a1[2] S1[2.1]`. Throws ParseError.
GeneratorWord parse_word(std::string_view text);
std::string to_string(const Generator& g);
std::string to_string(const GeneratorWord& w);

/// C_n or SC_n by kind; throws std::invalid_argument for general theories or n < 2.
Theory make_theory(int n, TheoryKind kind);
/// Throws std::invalid_argument if the letter does not exist in the theory.
TranslatedRule translated(const Generator& g, const Theory& theory);
std::optional<Term> apply_letter(const Generator& g, const Term& t, const Theory& theory);
/// Applies the letters left to right; absent as soon as one does not apply.
std::optional<Term> apply_word(const GeneratorWord& w, const Term& t, const Theory& theory);

/// Composes the letters' seeds in the structure monoid, then applies theta.
ReducedDiagram eval_theta(const GeneratorWord& w, const Theory& theory);
/// The same value computed as a product of per-letter diagrams.
ReducedDiagram eval_theta_fold(const GeneratorWord& w, const Theory& theory);
bool words_equal(const GeneratorWord& a, const GeneratorWord& b, const Theory& theory);

enum class RelationFamily {
  pentagon,
  adjacent_assoc,
  involution,
  compatibility,
  three_cycle,
  hexagon,
  dual_hexagon,
  functoriality,
  naturality,
  inverse,
};

std::string_view family_name(RelationFamily f);

struct RelationInstance {
  GeneratorWord lhs;
  GeneratorWord rhs;
  RelationFamily family = RelationFamily::pentagon;
  int n = 2;
  std::vector<int> indices;
  Address base;
};

// Axiom schemas. Index ranges are checked; violations throw std::out_of_range.

/// 1 <= i <= n-1.
RelationInstance pentagon(int n, int i, const Address& base = {});
/// 1 <= i <= n-2.
RelationInstance adjacent_assoc(int n, int i, const Address& base = {});
/// 1 <= i <= n-1: s_i s_i = 1.
RelationInstance involution(int n, int i, const Address& base = {});
/// 2 <= i <= n, 1 <= j <= n-2.
RelationInstance compatibility(int n, int i, int j, const Address& base = {});
/// 1 <= i <= n-2.
RelationInstance three_cycle(int n, int i, const Address& base = {});
/// 1 <= i <= n-1.
RelationInstance hexagon(int n, int i, const Address& base = {});
/// 1 <= i <= n-1.
RelationInstance dual_hexagon(int n, int i, const Address& base = {});
/// g h = h g for orthogonal addresses; throws std::invalid_argument otherwise.
RelationInstance functoriality(int n, const Generator& g, const Generator& h);
/// rule^a . inner^{a.gamma.delta} = inner^{a.beta.delta} . rule^a, where the
/// variable x<variable> sits at beta in the letter's source and gamma in its
/// target. `inner.address` is delta.
RelationInstance naturality(const Theory& theory, const Generator& rule, const Generator& inner,
                            int variable);
/// g g^-1 = 1.
RelationInstance inverse_relation(int n, const Generator& g);

/// Every address over {1..n} of length at most `max_len`, shortest first.
std::vector<Address> addresses_up_to(int n, int max_len);

/// All instances of the theory's axiom families at base addresses of length
/// <= max_addr, plus functoriality and naturality instances at that depth.
std::vector<RelationInstance> axiom_instances(const Theory& theory, int max_addr);

/// One step of a word derivation: `after` is `before` with a subword u
/// replaced by v, where u v^-1 is a cyclic conjugate of a relator of `used`
/// or of its inverse, up to free reduction.
struct DerivationStep {
  GeneratorWord after;
  RelationInstance used;
};

bool is_derivation_step(const GeneratorWord& before, const DerivationStep& step);
/// Checks each step and that the last word freely reduces to `goal`.
bool check_derivation(const GeneratorWord& start, const std::vector<DerivationStep>& steps,
                      const GeneratorWord& goal);
/// Derives the dual hexagon's rhs from its lhs using involution, hexagon and
/// compatibility instances.
std::vector<DerivationStep> dual_hexagon_derivation(int n, int i, const Address& base = {});

}  // namespace structmon
