#include "structmon/presentation.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace structmon {

// --- letters and words -------------------------------------------------------------

Generator assoc(int i, Address at, int sign) {
  return Generator{GeneratorKind::assoc, i, sign, std::move(at)};
}

Generator twist(int i, Address at, int sign) {
  return Generator{GeneratorKind::twist, i, sign, std::move(at)};
}

Generator inverse(const Generator& g) {
  Generator out = g;
  out.sign = -g.sign;
  return out;
}

GeneratorWord inverse(const GeneratorWord& w) {
  GeneratorWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

GeneratorWord free_reduce(const GeneratorWord& w) {
  GeneratorWord out;
  for (const auto& g : w) {
    if (!out.empty() && out.back() == inverse(g)) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

GeneratorWord concat(GeneratorWord a, const GeneratorWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

GeneratorWord shifted(const GeneratorWord& w, const Address& base) {
  GeneratorWord out = w;
  for (auto& g : out) g.address = base.concat(g.address);
  return out;
}

GeneratorWord parse_word(std::string_view text) {
  GeneratorWord out;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("generator word: " + what + " at offset " + std::to_string(pos));
  };
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    Generator g;
    switch (text[pos]) {
      case 'a': g.kind = GeneratorKind::assoc; g.sign = 1; break;
      case 'A': g.kind = GeneratorKind::assoc; g.sign = -1; break;
      case 's': g.kind = GeneratorKind::twist; g.sign = 1; break;
      case 'S': g.kind = GeneratorKind::twist; g.sign = -1; break;
      default: fail("expected one of a A s S");
    }
    ++pos;
    const auto* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), g.index);
    if (ec != std::errc() || ptr == first || g.index < 1) fail("expected a positive index");
    pos += static_cast<std::size_t>(ptr - first);
    if (pos >= text.size() || text[pos] != '[') fail("expected '['");
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos) fail("missing ']'");
    g.address = parse_address(text.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
      fail("expected whitespace between letters");
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::string to_string(const Generator& g) {
  char c = g.kind == GeneratorKind::assoc ? 'a' : 's';
  if (g.sign < 0) c = static_cast<char>(std::toupper(c));
  return std::string(1, c) + std::to_string(g.index) + "[" + to_string(g.address) + "]";
}

std::string to_string(const GeneratorWord& w) {
  std::string out;
  for (const auto& g : w) {
    if (!out.empty()) out += ' ';
    out += to_string(g);
  }
  return out;
}

// --- evaluation --------------------------------------------------------------------

Theory make_theory(int n, TheoryKind kind) {
  if (n < 2) throw std::invalid_argument("arity must be >= 2");
  switch (kind) {
    case TheoryKind::catalan: return catalan_theory(n);
    case TheoryKind::symmetric_catalan: return symmetric_catalan_theory(n);
    case TheoryKind::general: break;
  }
  throw std::invalid_argument("presentations exist only for C_n and SC_n");
}

TranslatedRule translated(const Generator& g, const Theory& theory) {
  const int n = theory.arity();
  if (g.kind == GeneratorKind::twist && theory.kind != TheoryKind::symmetric_catalan) {
    throw std::invalid_argument("twist letter " + to_string(g) + " needs a symmetric theory");
  }
  if (g.index < 1 || g.index > n - 1) {
    throw std::invalid_argument("letter " + to_string(g) + " out of range for n = " +
                                std::to_string(n));
  }
  for (const auto& s : g.address.steps()) {
    if (s.index < 1 || s.index > n) {
      throw std::invalid_argument("address of " + to_string(g) + " leaves the signature");
    }
  }
  const std::string name = (g.kind == GeneratorKind::assoc ? "a" : "s") + std::to_string(g.index);
  return TranslatedRule{theory.rule(name), g.address,
                        g.sign > 0 ? Direction::forward : Direction::backward};
}

std::optional<Term> apply_letter(const Generator& g, const Term& t, const Theory& theory) {
  return apply(translated(g, theory), t);
}

std::optional<Term> apply_word(const GeneratorWord& w, const Term& t, const Theory& theory) {
  std::optional<Term> cur = t;
  for (const auto& g : w) {
    cur = apply_letter(g, *cur, theory);
    if (!cur) return std::nullopt;
  }
  return cur;
}

ReducedDiagram eval_theta(const GeneratorWord& w, const Theory& theory) {
  std::vector<TranslatedRule> rules;
  rules.reserve(w.size());
  for (const auto& g : w) rules.push_back(translated(g, theory));
  return theta(eval_word(rules, theory.signature), theory.arity());
}

ReducedDiagram eval_theta_fold(const GeneratorWord& w, const Theory& theory) {
  auto acc = identity_diagram(theory.arity());
  for (const auto& g : w) {
    acc = multiply(acc, theta(translated_seed(translated(g, theory), theory.signature),
                              theory.arity()));
  }
  return acc;
}

bool words_equal(const GeneratorWord& a, const GeneratorWord& b, const Theory& theory) {
  return eval_theta(a, theory) == eval_theta(b, theory);
}

// --- relation schemas ----------------------------------------------------------------

std::string_view family_name(RelationFamily f) {
  switch (f) {
    case RelationFamily::pentagon: return "pentagon";
    case RelationFamily::adjacent_assoc: return "adjacent-assoc";
    case RelationFamily::involution: return "involution";
    case RelationFamily::compatibility: return "compatibility";
    case RelationFamily::three_cycle: return "three-cycle";
    case RelationFamily::hexagon: return "hexagon";
    case RelationFamily::dual_hexagon: return "dual-hexagon";
    case RelationFamily::functoriality: return "functoriality";
    case RelationFamily::naturality: return "naturality";
    case RelationFamily::inverse: return "inverse";
  }
  return "?";
}

namespace {

void require(bool ok, std::string_view family, int n) {
  if (!ok) {
    throw std::out_of_range(std::string(family) + ": index out of range for n = " +
                            std::to_string(n));
  }
}

Address at(const Address& base, int child) { return base.child(child); }

}  // namespace

RelationInstance pentagon(int n, int i, const Address& base) {
  require(n >= 2 && i >= 1 && i <= n - 1, "pentagon", n);
  GeneratorWord lhs{assoc(n - 1, at(base, i + 1)), assoc(i, base)};
  for (int k = n - 1; k >= 1; --k) lhs.push_back(assoc(k, at(base, i)));
  GeneratorWord rhs{assoc(i, base), assoc(i, base)};
  return {std::move(lhs), std::move(rhs), RelationFamily::pentagon, n, {i}, base};
}

RelationInstance adjacent_assoc(int n, int i, const Address& base) {
  require(i >= 1 && i <= n - 2, "adjacent-assoc", n);
  GeneratorWord lhs{assoc(i, base), assoc(i + 1, base), assoc(i, base)};
  GeneratorWord rhs{assoc(i + 1, base), assoc(i, base), assoc(1, at(base, i))};
  return {std::move(lhs), std::move(rhs), RelationFamily::adjacent_assoc, n, {i}, base};
}

RelationInstance involution(int n, int i, const Address& base) {
  require(i >= 1 && i <= n - 1, "involution", n);
  return {{twist(i, base), twist(i, base)}, {}, RelationFamily::involution, n, {i}, base};
}

RelationInstance compatibility(int n, int i, int j, const Address& base) {
  require(i >= 2 && i <= n && j >= 1 && j <= n - 2, "compatibility", n);
  GeneratorWord lhs{assoc(i - 1, base), twist(j + 1, at(base, i - 1))};
  GeneratorWord rhs{twist(j, at(base, i)), assoc(i - 1, base)};
  return {std::move(lhs), std::move(rhs), RelationFamily::compatibility, n, {i, j}, base};
}

RelationInstance three_cycle(int n, int i, const Address& base) {
  require(i >= 1 && i <= n - 2, "three-cycle", n);
  GeneratorWord lhs{twist(i, base), twist(i + 1, base), twist(i, base)};
  GeneratorWord rhs{twist(i + 1, base), twist(i, base), twist(i + 1, base)};
  return {std::move(lhs), std::move(rhs), RelationFamily::three_cycle, n, {i}, base};
}

RelationInstance hexagon(int n, int i, const Address& base) {
  require(i >= 1 && i <= n - 1, "hexagon", n);
  GeneratorWord lhs{twist(i, base), assoc(i, base), twist(1, at(base, i))};
  GeneratorWord rhs{assoc(i, base, -1)};
  for (int k = n - 1; k >= 1; --k) rhs.push_back(twist(k, at(base, i + 1)));
  rhs.push_back(assoc(i, base));
  return {std::move(lhs), std::move(rhs), RelationFamily::hexagon, n, {i}, base};
}

RelationInstance dual_hexagon(int n, int i, const Address& base) {
  require(i >= 1 && i <= n - 1, "dual-hexagon", n);
  GeneratorWord lhs{twist(i, base), assoc(i, base, -1), twist(n - 1, at(base, i + 1))};
  GeneratorWord rhs{assoc(i, base)};
  for (int k = 1; k <= n - 1; ++k) rhs.push_back(twist(k, at(base, i)));
  rhs.push_back(assoc(i, base, -1));
  return {std::move(lhs), std::move(rhs), RelationFamily::dual_hexagon, n, {i}, base};
}

RelationInstance functoriality(int n, const Generator& g, const Generator& h) {
  if (!orthogonal(g.address, h.address)) {
    throw std::invalid_argument("functoriality needs orthogonal addresses: " + to_string(g) +
                                ", " + to_string(h));
  }
  return {{g, h}, {h, g}, RelationFamily::functoriality, n, {}, {}};
}

namespace {

std::optional<Address> find_variable(const Term& t, const std::string& name) {
  if (t.is_variable()) {
    if (t.label() == name) return Address();
    return std::nullopt;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (auto a = find_variable(t.children()[i], name)) {
      return Address::of({static_cast<int>(i + 1)}).concat(*a);
    }
  }
  return std::nullopt;
}

}  // namespace

RelationInstance naturality(const Theory& theory, const Generator& rule, const Generator& inner,
                            int variable) {
  const auto tr = translated(rule, theory);
  const Term& src = tr.direction == Direction::forward ? tr.rule.source : tr.rule.target;
  const Term& dst = tr.direction == Direction::forward ? tr.rule.target : tr.rule.source;
  const std::string name = "x" + std::to_string(variable);
  auto beta = find_variable(src, name);
  auto gamma = find_variable(dst, name);
  if (!beta || !gamma) {
    throw std::out_of_range("naturality: " + name + " is not a variable of " + tr.rule.name);
  }
  Generator moved = inner, original = inner;
  moved.address = rule.address.concat(*gamma).concat(inner.address);
  original.address = rule.address.concat(*beta).concat(inner.address);
  return {{rule, moved}, {original, rule}, RelationFamily::naturality, theory.arity(),
          {variable}, rule.address};
}

RelationInstance inverse_relation(int n, const Generator& g) {
  return {{g, inverse(g)}, {}, RelationFamily::inverse, n, {g.index}, g.address};
}

std::vector<Address> addresses_up_to(int n, int max_len) {
  std::vector<Address> out{Address()};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (int c = 1; c <= n; ++c) out.push_back(out[k].child(c));
    }
    begin = end;
  }
  return out;
}

std::vector<RelationInstance> axiom_instances(const Theory& theory, int max_addr) {
  const int n = theory.arity();
  const bool sym = theory.kind == TheoryKind::symmetric_catalan;
  const auto bases = addresses_up_to(n, max_addr);
  std::vector<RelationInstance> out;
  for (const auto& b : bases) {
    for (int i = 1; i <= n - 1; ++i) out.push_back(pentagon(n, i, b));
    for (int i = 1; i <= n - 2; ++i) out.push_back(adjacent_assoc(n, i, b));
    if (!sym) continue;
    for (int i = 1; i <= n - 1; ++i) out.push_back(involution(n, i, b));
    for (int i = 2; i <= n; ++i) {
      for (int j = 1; j <= n - 2; ++j) out.push_back(compatibility(n, i, j, b));
    }
    for (int i = 1; i <= n - 2; ++i) out.push_back(three_cycle(n, i, b));
    for (int i = 1; i <= n - 1; ++i) out.push_back(hexagon(n, i, b));
    for (int i = 1; i <= n - 1; ++i) out.push_back(dual_hexagon(n, i, b));
  }

  // Letters used for the structural families.
  std::vector<Generator> kinds;
  for (int i = 1; i <= n - 1; ++i) {
    kinds.push_back(assoc(i));
    if (sym) kinds.push_back(twist(i));
  }
  for (const auto& a : bases) {
    for (const auto& g : kinds) {
      Generator ga = g;
      ga.address = a;
      out.push_back(inverse_relation(n, ga));
    }
  }
  for (std::size_t x = 0; x < bases.size(); ++x) {
    for (std::size_t y = x + 1; y < bases.size(); ++y) {
      if (!orthogonal(bases[x], bases[y])) continue;
      for (const auto& g : kinds) {
        for (const auto& h : kinds) {
          Generator ga = g, hb = h;
          ga.address = bases[x];
          hb.address = bases[y];
          out.push_back(functoriality(n, ga, hb));
        }
      }
    }
  }
  const auto deltas = addresses_up_to(n, 1);
  for (const auto& a : bases) {
    for (const auto& g : kinds) {
      for (int sign : {1, -1}) {
        Generator rule = g;
        rule.address = a;
        rule.sign = sign;
        const int vars = g.kind == GeneratorKind::assoc ? 2 * n - 1 : n;
        for (int v = 1; v <= vars; ++v) {
          for (const auto& h : kinds) {
            for (const auto& d : deltas) {
              Generator inner = h;
              inner.address = d;
              out.push_back(naturality(theory, rule, inner, v));
            }
          }
        }
      }
    }
  }
  return out;
}

// --- derivations ---------------------------------------------------------------------

bool is_derivation_step(const GeneratorWord& before, const DerivationStep& step) {
  const GeneratorWord relator = concat(step.used.lhs, inverse(step.used.rhs));
  const GeneratorWord target = free_reduce(step.after);
  for (const auto& rel : {relator, inverse(relator)}) {
    const std::size_t len = rel.size();
    for (std::size_t rot = 0; rot < std::max<std::size_t>(len, 1); ++rot) {
      GeneratorWord r(rel.begin() + static_cast<std::ptrdiff_t>(rot), rel.end());
      r.insert(r.end(), rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(rot));
      for (std::size_t ulen = 0; ulen <= len; ++ulen) {
        const GeneratorWord u(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(ulen));
        const GeneratorWord v =
            inverse(GeneratorWord(r.begin() + static_cast<std::ptrdiff_t>(ulen), r.end()));
        for (std::size_t p = 0; p + ulen <= before.size(); ++p) {
          if (!std::equal(u.begin(), u.end(), before.begin() + static_cast<std::ptrdiff_t>(p))) {
            continue;
          }
          GeneratorWord cand(before.begin(), before.begin() + static_cast<std::ptrdiff_t>(p));
          cand.insert(cand.end(), v.begin(), v.end());
          cand.insert(cand.end(), before.begin() + static_cast<std::ptrdiff_t>(p + ulen),
                      before.end());
          if (free_reduce(cand) == target) return true;
        }
      }
    }
  }
  return false;
}

bool check_derivation(const GeneratorWord& start, const std::vector<DerivationStep>& steps,
                      const GeneratorWord& goal) {
  GeneratorWord cur = start;
  for (const auto& s : steps) {
    if (!is_derivation_step(cur, s)) return false;
    cur = s.after;
  }
  return free_reduce(cur) == free_reduce(goal);
}

std::vector<DerivationStep> dual_hexagon_derivation(int n, int i, const Address& base) {
  const auto goal = dual_hexagon(n, i, base);
  std::vector<DerivationStep> steps;
  GeneratorWord cur = goal.lhs;

  // s_i -> S_i
  cur[0] = inverse(cur[0]);
  steps.push_back({cur, involution(n, i, base)});

  // S_i -> a_i s_1[i] A_i S_1[i+1] ... S_{n-1}[i+1] a_i, then cancel.
  GeneratorWord v{assoc(i, base), twist(1, at(base, i)), assoc(i, base, -1)};
  for (int k = 1; k <= n - 1; ++k) v.push_back(twist(k, at(base, i + 1), -1));
  v.push_back(assoc(i, base));
  cur = free_reduce(concat(v, GeneratorWord(cur.begin() + 1, cur.end())));
  steps.push_back({cur, hexagon(n, i, base)});

  // Remaining tail is S_1[i+1] ... S_{n-2}[i+1]; rewrite each S_j[i+1] into
  // a_i s_{j+1}[i] A_i.
  for (int j = 1; j <= n - 2; ++j) {
    const std::size_t pos = 3 + 3 * static_cast<std::size_t>(j - 1);
    cur[pos] = inverse(cur[pos]);
    steps.push_back({cur, involution(n, j, at(base, i + 1))});
    GeneratorWord next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pos));
    next.push_back(assoc(i, base));
    next.push_back(twist(j + 1, at(base, i)));
    next.push_back(assoc(i, base, -1));
    next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(pos + 1), cur.end());
    cur = next;
    steps.push_back({cur, compatibility(n, i + 1, j, base)});
  }
  steps.back().after = free_reduce(cur);
  return steps;
}

}  // namespace structmon
