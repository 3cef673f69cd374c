#include "structmon/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>

#include "structmon/coherence.hpp"
#include "structmon/presentation.hpp"
#include "structmon/structure_monoid.hpp"
#include "structmon/term.hpp"
#include "structmon/tree_diagram.hpp"

namespace structmon {

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Options {
  int n = 2;
  int k = 0;
  std::string theory = "c";
  std::string term;
  std::string word;
  std::vector<std::string> words;
  int max_addr = 2;
  int max_nodes = 4;
  bool quiet = false;
};

TheoryKind kind_of(const std::string& s) {
  return s == "sc" ? TheoryKind::symmetric_catalan : TheoryKind::catalan;
}

int term_normalize(const Options& o, std::ostream& out) {
  const auto t = parse_term(o.term, Signature::catalan(o.n));
  const auto norm = normalize_to_lmb(t, o.n);
  out << to_string(norm.term) << '\n';
  out << "steps " << norm.steps.size() << '\n';
  out << "rank " << rank(t);
  for (const auto& s : norm.steps) out << ' ' << s.rank_after;
  out << '\n';
  for (const auto& s : norm.steps) out << to_string(assoc(s.index, s.address)) << '\n';
  return kOk;
}

int trees_count(const Options& o, std::ostream& out) {
  const auto count = enumerate_terms(o.n, o.k).size();
  const auto formula = generalized_catalan(o.n, o.k);
  const bool ok = count == formula;
  out << count << ' ' << formula << ' ' << (ok ? "OK" : "MISMATCH") << '\n';
  return ok ? kOk : kFail;
}

int check_axioms(const Options& o, std::ostream& out) {
  const Theory theory = make_theory(o.n, kind_of(o.theory));
  std::size_t total = 0, failed = 0;
  for (const auto& rel : axiom_instances(theory, o.max_addr)) {
    const auto c = check_relation(rel, theory);
    ++total;
    if (!c.pass) ++failed;
    if (!o.quiet || !c.pass) out << format_record(c) << '\n';
  }
  out << "# instances " << total << " failures " << failed << '\n';
  return failed == 0 ? kOk : kFail;
}

int check_coherence_cmd(const Options& o, std::ostream& out) {
  const auto report = check_coherence(o.n, o.max_nodes);
  std::map<std::string_view, std::size_t> families;
  for (const auto& s : report.squares) {
    if (s.filler) ++families[family_name(s.filler->relation.family)];
    if (!s.ok()) {
      out << "FAIL square " << to_string(s.term) << ' ' << to_string(s.m1) << ' '
          << to_string(s.m2);
      if (!s.error.empty()) out << ' ' << s.error;
      out << '\n';
    }
  }
  for (const auto& t : report.path_failures) out << "FAIL paths " << to_string(t) << '\n';
  out << "terms " << report.terms << " squares " << report.squares.size() << " paths "
      << report.paths << '\n';
  for (const auto& [name, count] : families) out << name << ' ' << count << '\n';
  out << (report.ok() ? "PASS" : "FAIL") << '\n';
  return report.ok() ? kOk : kFail;
}

int check_moore(const Options& o, std::ostream& out) {
  const auto r = moore_check(o.n);
  auto verdict = [](bool b) { return b ? "PASS" : "FAIL"; };
  out << "involution " << verdict(r.involution) << '\n';
  out << "braid " << verdict(r.braid) << '\n';
  out << "commute " << verdict(r.commute) << '\n';
  out << "order " << r.order << ' ' << r.expected_order << ' '
      << verdict(r.order == r.expected_order) << '\n';
  return r.ok() ? kOk : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structure monoids, Thompson tree diagrams and coherence checks", "structmon"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto add_n = [&](CLI::App* cmd) {
    cmd->add_option("--n", o.n, "Arity of the tensor symbol")->required()->check(CLI::Range(2, 64));
  };
  auto add_theory = [&](CLI::App* cmd) {
    cmd->add_option("--theory", o.theory, "c (Catalan) or sc (symmetric Catalan)")
        ->check(CLI::IsMember({"c", "sc"}));
  };
  auto add_word = [&](CLI::App* cmd) {
    cmd->add_option("word", o.word, "Generator word, e.g. \"a1[-] a1[2]\"")->required();
  };

  auto* term = app.add_subcommand("term", "Terms over the Catalan signature");
  term->require_subcommand(1);
  auto* normalize = term->add_subcommand("normalize", "Rewrite to the left-most bracketing");
  add_n(normalize);
  normalize->add_option("term", o.term)->required();
  normalize->callback([&] { action = [&] { return term_normalize(o, out); }; });
  auto* rank_cmd = term->add_subcommand("rank", "Print the rank of a term");
  add_n(rank_cmd);
  rank_cmd->add_option("term", o.term)->required();
  rank_cmd->callback([&] {
    action = [&] {
      out << rank(parse_term(o.term, Signature::catalan(o.n))) << '\n';
      return kOk;
    };
  });

  auto* trees = app.add_subcommand("trees", "Tree enumeration");
  trees->require_subcommand(1);
  auto* count = trees->add_subcommand("count", "Count n-ary trees with k internal nodes");
  add_n(count);
  count->add_option("--k", o.k)->required()->check(CLI::Range(0, 12));
  count->callback([&] { action = [&] { return trees_count(o, out); }; });

  auto* op = app.add_subcommand("op", "Structure-monoid operators");
  op->require_subcommand(1);
  auto* compose_cmd = op->add_subcommand("compose", "Seed of the composite of a word");
  add_n(compose_cmd);
  add_theory(compose_cmd);
  add_word(compose_cmd);
  compose_cmd->callback([&] {
    action = [&] {
      const Theory theory = make_theory(o.n, kind_of(o.theory));
      std::vector<TranslatedRule> rules;
      for (const auto& g : parse_word(o.word)) rules.push_back(translated(g, theory));
      out << to_string(eval_word(rules, theory.signature)) << '\n';
      return kOk;
    };
  });

  auto* word = app.add_subcommand("word", "Generator words");
  word->require_subcommand(1);
  auto* eval = word->add_subcommand("eval", "Reduced diagram of a word as JSON");
  add_n(eval);
  add_theory(eval);
  add_word(eval);
  eval->callback([&] {
    action = [&] {
      const Theory theory = make_theory(o.n, kind_of(o.theory));
      out << to_json(eval_theta(parse_word(o.word), theory)).dump() << '\n';
      return kOk;
    };
  });
  auto* eq = word->add_subcommand("eq", "Decide equality of two words: w1 -- w2");
  add_n(eq);
  add_theory(eq);
  eq->add_option("words", o.words, "Two generator words")->required()->expected(2);
  eq->callback([&] {
    action = [&] {
      const Theory theory = make_theory(o.n, kind_of(o.theory));
      const bool equal = words_equal(parse_word(o.words[0]), parse_word(o.words[1]), theory);
      out << (equal ? "equal" : "unequal") << '\n';
      return equal ? kOk : kFail;
    };
  });

  auto* check = app.add_subcommand("check", "Verification suites");
  check->require_subcommand(1);
  auto* axioms = check->add_subcommand("axioms", "Theta-soundness of every relation instance");
  add_n(axioms);
  add_theory(axioms);
  axioms->add_option("--max-addr", o.max_addr, "Longest base address")->check(CLI::Range(0, 4));
  axioms->add_flag("--quiet", o.quiet, "Print only failing records and the summary");
  axioms->callback([&] { action = [&] { return check_axioms(o, out); }; });
  auto* coherence = check->add_subcommand("coherence", "Square filling and positive paths");
  add_n(coherence);
  coherence->add_option("--max-nodes", o.max_nodes, "Largest term size")->check(CLI::Range(0, 6));
  coherence->callback([&] { action = [&] { return check_coherence_cmd(o, out); }; });
  auto* moore = check->add_subcommand("moore", "Moore relations of the induced transpositions");
  add_n(moore);
  moore->callback([&] { action = [&] { return check_moore(o, out); }; });

  auto* exp = app.add_subcommand("export", "Export");
  exp->require_subcommand(1);
  auto* dot = exp->add_subcommand("dot", "Graphviz rendering of a word's reduced diagram");
  add_n(dot);
  add_theory(dot);
  add_word(dot);
  dot->callback([&] {
    action = [&] {
      const Theory theory = make_theory(o.n, kind_of(o.theory));
      out << to_dot(eval_theta(parse_word(o.word), theory).diagram());
      return kOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (!action) {
    err << app.help();
    return kUsage;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace structmon
