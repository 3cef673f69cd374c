#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace structmon {

/// Thrown by the text parsers (terms, addresses, generator words).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Name of the single n-ary symbol of the Catalan signatures.
inline constexpr std::string_view kTensor = "tensor";

struct Symbol {
  std::string name;
  int arity = 0;

  bool operator==(const Symbol&) const = default;
};

/// A graded set of function symbols. Names are unique and arities >= 1.
class Signature {
 public:
  explicit Signature(std::vector<Symbol> symbols);

  /// The one-symbol signature {tensor} with tensor of arity n >= 2.
  static Signature catalan(int n);

  std::span<const Symbol> symbols() const { return symbols_; }
  std::optional<int> arity(std::string_view name) const;

  /// True for the one-symbol signature built by catalan().
  bool is_catalan() const;
  /// Arity of the tensor symbol; only meaningful when is_catalan().
  int catalan_arity() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/// An element of the absolutely free term algebra: either a variable or a
/// symbol applied to a list of children. Nodes are immutable and shared, so
/// copies are cheap and values may cross threads freely.
class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> children);
  /// tensor(children...) in a Catalan signature.
  static Term tensor(std::vector<Term> children);

  bool is_variable() const { return node_->is_var; }
  /// Variable name, or the head symbol of an application.
  const std::string& label() const { return node_->label; }
  std::span<const Term> children() const { return node_->children; }
  std::size_t arity() const { return node_->children.size(); }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var = false;
    std::string label;
    std::vector<Term> children;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// One step of an address. An empty symbol stands for "whatever the unique
/// symbol of the signature is"; Catalan addresses always leave it empty.
struct AddressStep {
  std::string symbol;
  int index = 0;  // 1-based

  bool operator==(const AddressStep&) const = default;
  auto operator<=>(const AddressStep&) const = default;
};

/// A path from the root of a term tree. The empty address is the root.
class Address {
 public:
  Address() = default;
  explicit Address(std::vector<AddressStep> steps);
  /// Single-symbol form: plain 1-based child indices.
  static Address of(std::initializer_list<int> indices);
  static Address of(std::span<const int> indices);

  bool is_root() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }
  std::span<const AddressStep> steps() const { return steps_; }
  const AddressStep& operator[](std::size_t i) const { return steps_[i]; }

  /// This address extended by child `index` (single-symbol form).
  Address child(int index) const;
  Address concat(const Address& suffix) const;
  bool is_prefix_of(const Address& other) const;
  /// The suffix of `other` after this address; requires is_prefix_of(other).
  Address suffix_in(const Address& other) const;

  bool operator==(const Address&) const = default;
  auto operator<=>(const Address&) const = default;

 private:
  std::vector<AddressStep> steps_;
};

using Substitution = std::map<std::string, Term>;
using VariableSet = std::set<std::string>;

// --- addresses and subterms -------------------------------------------------

std::optional<Term> subterm(const Term& t, const Address& a);
/// Throws std::out_of_range if `a` is not a path of `t`.
Term replace(const Term& t, const Address& a, const Term& s);
bool orthogonal(const Address& a, const Address& b);
/// Addresses of every application node of t, in preorder.
std::vector<Address> internal_addresses(const Term& t);

// --- variables and substitutions ------------------------------------------

VariableSet support(const Term& t);
/// Variables in order of first occurrence, left to right.
std::vector<std::string> variables_in_order(const Term& t);
bool balanced(const Term& s, const Term& t);
bool linear(const Term& s, const Term& t);
Term apply_subst(const Term& t, const Substitution& phi);
/// The substitution x -> apply_subst(apply_subst(x, first), second).
Substitution compose_subst(const Substitution& first, const Substitution& second);
/// Renames variables to x1, x2, ... by first occurrence in `t`.
Substitution canonical_renaming(const Term& t, std::string_view prefix = "x");

// --- Catalan combinatorics --------------------------------------------------

/// In-order leaf word.
std::vector<Term> underlying_list(const Term& t);
/// Left-most bracketing of a leaf word. Throws std::invalid_argument unless
/// the word length is n + k(n-1) for some k >= 0, or 1.
Term lmb(std::span<const Term> word, int n);
Term lmb(const Term& t, int n);
/// Number of leaves.
long length(const Term& t);
long rank(const Term& t);

/// One application of a Catalan rule a_i at a given address.
struct RewriteStep {
  Address address;
  int index = 0;   // i in a_i
  long rank_before = 0;
  long rank_after = 0;
  long leaf_sum = 0;      // L(u_1) + ... + L(u_{n-1}) of the rotated child
  long moved_length = 0;  // L(u_n); the rank drop is (n-1) * moved_length
};

struct Normalization {
  Term term;
  std::vector<RewriteStep> steps;
};

/// Rewrites t to lmb(U(t)) following the greatest-non-variable-child rule.
Normalization normalize_to_lmb(const Term& t, int n);

/// All n-ary shapes with k internal nodes, leaves labelled in order by
/// `labels` (which must have n + k(n-1) entries, or be empty for x1, x2, ...).
/// Depth-lexicographic order: shapes with more weight on the left come first.
std::vector<Term> enumerate_terms(int n, int k, std::span<const std::string> labels = {});

/// 1/((n-1)k+1) * C(nk, k).
unsigned long long generalized_catalan(int n, int k);

// --- text ------------------------------------------------------------------

/// Identifiers `[A-Za-z][A-Za-z0-9_]*`, Catalan tuples `(t1 ... tn)`, or
/// `name(t1,...,tk)` for general signatures.
Term parse_term(std::string_view text, const Signature& sig);
std::string to_string(const Term& t);
/// Dot-separated indices, `-` for the root; general steps print as `F:2`.
Address parse_address(std::string_view text);
std::string to_string(const Address& a);

}  // namespace structmon
