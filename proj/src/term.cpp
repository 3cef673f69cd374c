#include "structmon/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace structmon {

// --- Signature ---------------------------------------------------------------

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.arity < 1) {
      throw std::invalid_argument("symbol '" + s.name + "' must have arity >= 1");
    }
    if (!seen.insert(s.name).second) {
      throw std::invalid_argument("duplicate symbol '" + s.name + "'");
    }
  }
}

Signature Signature::catalan(int n) {
  if (n < 2) {
    throw std::invalid_argument("Catalan arity must be >= 2");
  }
  return Signature({Symbol{std::string(kTensor), n}});
}

std::optional<int> Signature::arity(std::string_view name) const {
  for (const auto& s : symbols_) {
    if (s.name == name) return s.arity;
  }
  return std::nullopt;
}

bool Signature::is_catalan() const {
  return symbols_.size() == 1 && symbols_[0].name == kTensor && symbols_[0].arity >= 2;
}

int Signature::catalan_arity() const { return symbols_.empty() ? 0 : symbols_[0].arity; }

// --- Term ----------------------------------------------------------------------

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{true, std::move(name), {}}));
}

Term Term::apply(std::string symbol, std::vector<Term> children) {
  if (children.empty()) {
    throw std::invalid_argument("function symbols of arity 0 are not supported");
  }
  return Term(std::make_shared<const Node>(Node{false, std::move(symbol), std::move(children)}));
}

Term Term::tensor(std::vector<Term> children) {
  return apply(std::string(kTensor), std::move(children));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->is_var != b.node_->is_var || a.node_->label != b.node_->label ||
      a.node_->children.size() != b.node_->children.size()) {
    return false;
  }
  return std::equal(a.node_->children.begin(), a.node_->children.end(),
                    b.node_->children.begin());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  // Variables sort before applications.
  if (a.node_->is_var != b.node_->is_var) {
    return a.node_->is_var ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.node_->label <=> b.node_->label; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.node_->children.begin(), a.node_->children.end(), b.node_->children.begin(),
      b.node_->children.end());
}

// --- Address -------------------------------------------------------------------

Address::Address(std::vector<AddressStep> steps) : steps_(std::move(steps)) {
  for (const auto& s : steps_) {
    if (s.index < 1) throw std::invalid_argument("address indices are 1-based");
  }
}

Address Address::of(std::initializer_list<int> indices) {
  return of(std::span<const int>(indices.begin(), indices.size()));
}

Address Address::of(std::span<const int> indices) {
  std::vector<AddressStep> steps;
  steps.reserve(indices.size());
  for (int i : indices) steps.push_back(AddressStep{{}, i});
  return Address(std::move(steps));
}

Address Address::child(int index) const {
  auto steps = steps_;
  steps.push_back(AddressStep{{}, index});
  return Address(std::move(steps));
}

Address Address::concat(const Address& suffix) const {
  auto steps = steps_;
  steps.insert(steps.end(), suffix.steps_.begin(), suffix.steps_.end());
  return Address(std::move(steps));
}

bool Address::is_prefix_of(const Address& other) const {
  return steps_.size() <= other.steps_.size() &&
         std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

Address Address::suffix_in(const Address& other) const {
  if (!is_prefix_of(other)) throw std::invalid_argument("address is not a prefix");
  return Address(std::vector<AddressStep>(other.steps_.begin() + steps_.size(),
                                          other.steps_.end()));
}

// --- subterms ------------------------------------------------------------------

namespace {

bool step_matches(const AddressStep& step, const Term& node) {
  return !node.is_variable() && (step.symbol.empty() || step.symbol == node.label()) &&
         step.index >= 1 && static_cast<std::size_t>(step.index) <= node.arity();
}

Term replace_from(const Term& t, std::span<const AddressStep> steps, const Term& s) {
  if (steps.empty()) return s;
  if (!step_matches(steps.front(), t)) {
    throw std::out_of_range("address not present in term");
  }
  std::vector<Term> children(t.children().begin(), t.children().end());
  auto& slot = children[steps.front().index - 1];
  slot = replace_from(slot, steps.subspan(1), s);
  return Term::apply(t.label(), std::move(children));
}

}  // namespace

std::optional<Term> subterm(const Term& t, const Address& a) {
  const Term* cur = &t;
  for (const auto& step : a.steps()) {
    if (!step_matches(step, *cur)) return std::nullopt;
    cur = &cur->children()[step.index - 1];
  }
  return *cur;
}

Term replace(const Term& t, const Address& a, const Term& s) {
  return replace_from(t, a.steps(), s);
}

bool orthogonal(const Address& a, const Address& b) {
  return !a.is_prefix_of(b) && !b.is_prefix_of(a);
}

std::vector<Address> internal_addresses(const Term& t) {
  std::vector<Address> out;
  std::vector<AddressStep> path;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_variable()) return;
    out.emplace_back(path);
    for (std::size_t i = 0; i < u.arity(); ++i) {
      path.push_back(AddressStep{{}, static_cast<int>(i + 1)});
      walk(u.children()[i]);
      path.pop_back();
    }
  };
  walk(t);
  return out;
}

// --- variables -------------------------------------------------------------------

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    out.push_back(t.label());
    return;
  }
  for (const auto& c : t.children()) collect_vars(c, out);
}

}  // namespace

VariableSet support(const Term& t) {
  std::vector<std::string> all;
  collect_vars(t, all);
  return VariableSet(all.begin(), all.end());
}

std::vector<std::string> variables_in_order(const Term& t) {
  std::vector<std::string> all;
  collect_vars(t, all);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto& v : all) {
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  return out;
}

bool balanced(const Term& s, const Term& t) { return support(s) == support(t); }

bool linear(const Term& s, const Term& t) {
  if (!balanced(s, t)) return false;
  std::vector<std::string> vs, vt;
  collect_vars(s, vs);
  collect_vars(t, vt);
  auto unique = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  return unique(vs) && unique(vt);
}

Term apply_subst(const Term& t, const Substitution& phi) {
  if (t.is_variable()) {
    auto it = phi.find(t.label());
    return it == phi.end() ? t : it->second;
  }
  std::vector<Term> children;
  children.reserve(t.arity());
  bool changed = false;
  for (const auto& c : t.children()) {
    children.push_back(apply_subst(c, phi));
    changed = changed || !(children.back() == c);
  }
  return changed ? Term::apply(t.label(), std::move(children)) : t;
}

Substitution compose_subst(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [v, t] : first) out.emplace(v, apply_subst(t, second));
  for (const auto& [v, t] : second) out.emplace(v, t);  // no-op where first binds v
  return out;
}

Substitution canonical_renaming(const Term& t, std::string_view prefix) {
  Substitution out;
  int next = 1;
  for (const auto& v : variables_in_order(t)) {
    out.emplace(v, Term::variable(std::string(prefix) + std::to_string(next++)));
  }
  return out;
}

// --- Catalan combinatorics ---------------------------------------------------------

std::vector<Term> underlying_list(const Term& t) {
  std::vector<Term> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_variable()) {
      out.push_back(u);
      return;
    }
    for (const auto& c : u.children()) walk(c);
  };
  walk(t);
  return out;
}

Term lmb(std::span<const Term> word, int n) {
  if (n < 2) throw std::invalid_argument("arity must be >= 2");
  const auto m = static_cast<long>(word.size());
  if (m == 0 || (m != 1 && (m < n || (m - n) % (n - 1) != 0))) {
    throw std::invalid_argument("word length " + std::to_string(m) +
                                " is not of the form n + k(n-1)");
  }
  if (m == 1) return word[0];
  Term acc = Term::tensor(std::vector<Term>(word.begin(), word.begin() + n));
  for (long pos = n; pos < m; pos += n - 1) {
    std::vector<Term> children{acc};
    children.insert(children.end(), word.begin() + pos, word.begin() + pos + (n - 1));
    acc = Term::tensor(std::move(children));
  }
  return acc;
}

Term lmb(const Term& t, int n) {
  auto word = underlying_list(t);
  return lmb(word, n);
}

long length(const Term& t) {
  if (t.is_variable()) return 1;
  long sum = 0;
  for (const auto& c : t.children()) sum += length(c);
  return sum;
}

long rank(const Term& t) {
  if (t.is_variable()) return 0;
  const long n = static_cast<long>(t.arity());
  long r = -n * (n - 1) / 2;
  for (long i = 1; i <= n; ++i) {
    const auto& c = t.children()[i - 1];
    r += rank(c) + (i - 1) * length(c);
  }
  return r;
}

namespace {

// Finds the next rewrite of the normalization strategy: at the first node
// (walking down through child 1) whose greatest non-variable child index is
// i > 1, apply a_{i-1}.
std::optional<RewriteStep> next_step(const Term& t) {
  Address at;
  const Term* cur = &t;
  while (!cur->is_variable()) {
    int greatest = 0;
    for (std::size_t i = 0; i < cur->arity(); ++i) {
      if (!cur->children()[i].is_variable()) greatest = static_cast<int>(i + 1);
    }
    if (greatest == 0) return std::nullopt;
    if (greatest > 1) {
      RewriteStep step;
      step.address = at;
      step.index = greatest - 1;
      return step;
    }
    at = at.child(1);
    cur = &cur->children()[0];
  }
  return std::nullopt;
}

// a_i at the root of `node`: moves the application at child i+1 one place left.
Term rotate_left(const Term& node, int i) {
  const auto kids = node.children();
  const int n = static_cast<int>(kids.size());
  const auto inner = kids[i].children();
  std::vector<Term> moved{kids[i - 1]};
  moved.insert(moved.end(), inner.begin(), inner.end() - 1);
  std::vector<Term> out(kids.begin(), kids.begin() + (i - 1));
  out.push_back(Term::tensor(std::move(moved)));
  out.push_back(inner.back());
  out.insert(out.end(), kids.begin() + (i + 1), kids.begin() + n);
  return Term::tensor(std::move(out));
}

}  // namespace

Normalization normalize_to_lmb(const Term& t, int n) {
  Normalization result{t, {}};
  long r = rank(t);
  while (auto step = next_step(result.term)) {
    const Term node = *subterm(result.term, step->address);
    if (static_cast<int>(node.arity()) != n) {
      throw std::invalid_argument("term is not over the arity-" + std::to_string(n) +
                                  " Catalan signature");
    }
    const auto inner = node.children()[step->index].children();
    step->leaf_sum = 0;
    for (std::size_t m = 0; m + 1 < inner.size(); ++m) step->leaf_sum += length(inner[m]);
    step->moved_length = length(inner.back());
    result.term = replace(result.term, step->address, rotate_left(node, step->index));
    step->rank_before = r;
    r = rank(result.term);
    step->rank_after = r;
    result.steps.push_back(*step);
  }
  return result;
}

namespace {

// All shapes with k internal nodes; leaves are placeholders filled later.
std::vector<Term> shapes(int n, int k, std::map<std::pair<int, int>, std::vector<Term>>& memo) {
  if (auto it = memo.find({n, k}); it != memo.end()) return it->second;
  std::vector<Term> out;
  if (k == 0) {
    out.push_back(Term::variable("_"));
  } else {
    // Distribute k-1 internal nodes over n children, left-heavy first.
    std::vector<int> split(n, 0);
    std::function<void(int, int)> place = [&](int child, int remaining) {
      if (child == n - 1) {
        split[child] = remaining;
        std::vector<std::vector<Term>> options;
        for (int c = 0; c < n; ++c) options.push_back(shapes(n, split[c], memo));
        std::vector<std::size_t> idx(n, 0);
        while (true) {
          std::vector<Term> kids;
          for (int c = 0; c < n; ++c) kids.push_back(options[c][idx[c]]);
          out.push_back(Term::tensor(std::move(kids)));
          int c = n - 1;
          while (c >= 0 && ++idx[c] == options[c].size()) idx[c--] = 0;
          if (c < 0) break;
        }
        return;
      }
      for (int take = remaining; take >= 0; --take) {
        split[child] = take;
        place(child + 1, remaining - take);
      }
    };
    place(0, k - 1);
  }
  memo[{n, k}] = out;
  return out;
}

Term label_leaves(const Term& shape, std::span<const std::string> labels, std::size_t& next) {
  if (shape.is_variable()) return Term::variable(labels[next++]);
  std::vector<Term> kids;
  for (const auto& c : shape.children()) kids.push_back(label_leaves(c, labels, next));
  return Term::tensor(std::move(kids));
}

}  // namespace

std::vector<Term> enumerate_terms(int n, int k, std::span<const std::string> labels) {
  if (n < 2) throw std::invalid_argument("arity must be >= 2");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const std::size_t leaves = static_cast<std::size_t>(1 + k * (n - 1));
  std::vector<std::string> names(labels.begin(), labels.end());
  if (names.empty()) {
    for (std::size_t i = 1; i <= leaves; ++i) names.push_back("x" + std::to_string(i));
  }
  if (names.size() != leaves) {
    throw std::invalid_argument("expected " + std::to_string(leaves) + " leaf labels");
  }
  std::map<std::pair<int, int>, std::vector<Term>> memo;
  std::vector<Term> out;
  for (const auto& s : shapes(n, k, memo)) {
    std::size_t next = 0;
    out.push_back(label_leaves(s, names, next));
  }
  return out;
}

unsigned long long generalized_catalan(int n, int k) {
  // C(nk, k) / ((n-1)k + 1), computed incrementally to stay exact.
  unsigned long long binom = 1;
  for (int j = 1; j <= k; ++j) {
    binom = binom * static_cast<unsigned long long>(n * k - k + j) / static_cast<unsigned long long>(j);
  }
  return binom / static_cast<unsigned long long>((n - 1) * k + 1);
}

// --- text ----------------------------------------------------------------------

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("term parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string identifier() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected identifier");
    }
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      if (!sig_.is_catalan()) fail("tuple syntax requires a Catalan signature");
      ++pos_;
      std::vector<Term> kids;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unterminated tuple");
        if (text_[pos_] == ')') break;
        kids.push_back(term());
      }
      ++pos_;
      if (static_cast<int>(kids.size()) != sig_.catalan_arity()) {
        fail("tuple has " + std::to_string(kids.size()) + " children, expected " +
             std::to_string(sig_.catalan_arity()));
      }
      return Term::tensor(std::move(kids));
    }
    std::string name = identifier();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(' && !sig_.is_catalan()) {
      auto ar = sig_.arity(name);
      if (!ar) fail("unknown function symbol '" + name + "'");
      ++pos_;
      std::vector<Term> kids;
      while (true) {
        kids.push_back(term());
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < text_.size() && text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      if (static_cast<int>(kids.size()) != *ar) {
        fail("symbol '" + name + "' expects " + std::to_string(*ar) + " arguments");
      }
      return Term::apply(std::move(name), std::move(kids));
    }
    return Term::variable(std::move(name));
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

void print(const Term& t, std::ostringstream& os) {
  if (t.is_variable()) {
    os << t.label();
    return;
  }
  const bool tuple = t.label() == kTensor;
  os << (tuple ? "(" : t.label() + "(");
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) os << (tuple ? " " : ",");
    print(t.children()[i], os);
  }
  os << ')';
}

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) { return TermParser(text, sig).parse(); }

std::string to_string(const Term& t) {
  std::ostringstream os;
  print(t, os);
  return os.str();
}

Address parse_address(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "-" || text.empty()) return Address();
  std::vector<AddressStep> steps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto dot = text.find('.', pos);
    auto part = trim(text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos));
    AddressStep step;
    if (auto colon = part.find(':'); colon != std::string_view::npos) {
      step.symbol = std::string(trim(part.substr(0, colon)));
      part = trim(part.substr(colon + 1));
    }
    if (part.empty() || !std::all_of(part.begin(), part.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError("malformed address '" + std::string(text) + "'");
    }
    step.index = std::stoi(std::string(part));
    if (step.index < 1) throw ParseError("address indices are 1-based");
    steps.push_back(std::move(step));
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return Address(std::move(steps));
}

std::string to_string(const Address& a) {
  if (a.is_root()) return "-";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += '.';
    if (!a[i].symbol.empty()) out += a[i].symbol + ":";
    out += std::to_string(a[i].index);
  }
  return out;
}

}  // namespace structmon
