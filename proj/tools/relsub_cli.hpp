// Command-line front end. Exit codes: 0 success, 1 domain error (parse
// failures, premise violations), 2 usage error.
#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relsub/relsub.hpp"

namespace relsub::cli {

namespace detail {

inline Alphabet with_spec_symbols(Alphabet sigma, const std::string& spec, const std::string& declared) {
  if (!declared.empty()) sigma = Alphabet(from_utf8(declared));
  for (Symbol s : spec_symbols(spec)) sigma.add(s);
  return sigma;
}

// Alphabet of the given strings, in code point order.
inline Alphabet alphabet_of(const std::vector<Word>& words) {
  std::set<Symbol> seen;
  for (const Word& w : words) seen.insert(w.begin(), w.end());
  Alphabet sigma;
  for (Symbol s : seen) sigma.add(s);
  return sigma;
}

inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

inline std::vector<std::string> read_stream(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") return read_lines(stdin_stream);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open stream '" + path + "'");
  return read_lines(in);
}

inline void print_lines(std::ostream& out, const Language& lang, const Alphabet& sigma) {
  std::vector<Word> ws(lang.begin(), lang.end());
  std::sort(ws.begin(), ws.end(), LengthLexLess{&sigma});
  for (const Word& w : ws) out << to_utf8(w) << '\n';
}

inline std::string show(const Context& c) { return "(" + to_utf8(c.left) + ", " + to_utf8(c.right) + ")"; }

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn context-free grammars of relation-substitutable languages from positive data", "relsub"};
  app.require_subcommand(1);

  std::string grammar_path, relation_spec = "trivial", alphabet_decl, stream_path = "-", format = "kv";
  std::size_t max_len = 0, check_len = 12, max_n = 5;
  std::vector<std::string> words;

  auto add_grammar = [&](CLI::App* c) { c->add_option("--grammar", grammar_path, "Grammar file")->required(); };
  auto add_relation = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--relation", relation_spec, "trivial | kl:k,l | count:a,d | product:(r1;r2) | table:path");
    if (required) o->required();
    c->add_option("--alphabet", alphabet_decl, "Symbols in order (default: taken from the input)");
  };

  auto* relate = app.add_subcommand("relate", "Decide x ~ y");
  add_relation(relate, true);
  relate->add_option("words", words, "x y")->expected(2)->required();

  auto* member_cmd = app.add_subcommand("member", "Decide w in L(G)");
  add_grammar(member_cmd);
  member_cmd->add_option("word", words, "w")->expected(1)->required();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List L(G) up to a length, length-lex");
  add_grammar(enumerate_cmd);
  enumerate_cmd->add_option("--max-len", max_len, "Maximum length")->required();

  auto* cnf_cmd = app.add_subcommand("cnf", "Print an equivalent grammar in Chomsky normal form");
  add_grammar(cnf_cmd);

  auto* charset_cmd = app.add_subcommand("charset", "Characteristic set of the typed grammar");
  add_grammar(charset_cmd);
  add_relation(charset_cmd, false);

  auto* typed_cmd = app.add_subcommand("type-transform", "Type a grammar by the relation's monoid");
  add_grammar(typed_cmd);
  add_relation(typed_cmd, false);

  auto* learn_cmd = app.add_subcommand("learn", "Run the learner over one string per line");
  add_relation(learn_cmd, false);
  learn_cmd->add_option("--stream", stream_path, "Input file, or - for stdin");

  auto* experiment = app.add_subcommand("experiment", "Experiments");
  experiment->require_subcommand(1);
  auto* convergence = experiment->add_subcommand("convergence", "Learn from a length-lex presentation of a target");
  add_grammar(convergence);
  add_relation(convergence, false);
  convergence->add_option("--max-len", max_len, "Presentation length bound")->required();
  convergence->add_option("--check-len", check_len, "Equivalence check bound");
  convergence->add_option("--format", format, "kv or text")->check(CLI::IsMember({"kv", "text"}));

  auto* witness = app.add_subcommand("witness", "Witnesses");
  witness->require_subcommand(1);
  auto* nonsub = witness->add_subcommand("nonsubstitutable", "Pigeonhole witness that S -> aSS | b is not ~-substitutable");
  add_relation(nonsub, true);
  nonsub->add_option("--max-n", max_n, "Search bound");

  auto* check = app.add_subcommand("check", "Checks");
  check->require_subcommand(1);
  auto* substitutable = check->add_subcommand("substitutable", "Bounded ~-substitutability check");
  add_relation(substitutable, true);
  substitutable->add_option("--grammar", grammar_path, "Target grammar (enumerated up to --max-len)");
  substitutable->add_option("--max-len", max_len, "Bound");
  substitutable->add_option("--stream", stream_path, "Language sample, one string per line");

  try {
    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    auto relation_for = [&](const Alphabet& sigma) {
      return parse_relation_spec(relation_spec, detail::with_spec_symbols(sigma, relation_spec, alphabet_decl));
    };

    if (relate->parsed()) {
      Word x = from_utf8(words[0]), y = from_utf8(words[1]);
      auto r = relation_for(detail::alphabet_of({x, y}));
      out << (r.related(x, y) ? "related" : "unrelated") << '\n';
    } else if (member_cmd->parsed()) {
      Cfg g = read_grammar_file(grammar_path);
      out << (member(g, from_utf8(words[0])) ? "true" : "false") << '\n';
    } else if (enumerate_cmd->parsed()) {
      Cfg g = read_grammar_file(grammar_path);
      detail::print_lines(out, enumerate(g, max_len), g.alphabet());
    } else if (cnf_cmd->parsed()) {
      out << print_grammar(to_cnf(read_grammar_file(grammar_path)));
    } else if (charset_cmd->parsed() || typed_cmd->parsed()) {
      Cfg g = read_grammar_file(grammar_path);
      Cfg cnf = to_cnf(g);
      if (cnf.has_empty_rule(cnf.start())) throw PremiseViolation("the language contains the empty string");
      auto r = relation_for(g.alphabet());
      Cfg typed = type_transform(cnf, r.morphism());
      if (typed_cmd->parsed())
        out << print_grammar(typed);
      else
        detail::print_lines(out, char_set(typed), g.alphabet());
    } else if (learn_cmd->parsed()) {
      auto lines = detail::read_stream(stream_path, in);
      std::vector<Word> ws;
      for (const auto& l : lines) ws.push_back(from_utf8(l));
      Alphabet sigma = detail::alphabet_of(ws);
      if (sigma.empty() && alphabet_decl.empty()) sigma.add(U'a');
      auto state = LearnerState::initial(relation_for(sigma));
      bool emitted = false;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty())
          throw PremiseViolation("line " + std::to_string(i + 1) + ": the empty string cannot be a positive example");
        auto next = learn_step(state, ws[i]);
        if (next.rebuild_count != state.rebuild_count) {
          out << "=== hypothesis after n=" << i + 1 << " ===\n" << print_grammar(*next.hypothesis);
          emitted = true;
        }
        state = std::move(next);
      }
      if (!emitted) out << "=== hypothesis after n=" << lines.size() << " ===\n" << print_grammar(*state.hypothesis);
    } else if (convergence->parsed()) {
      Cfg g = read_grammar_file(grammar_path);
      auto rep = run_convergence(g, relation_for(g.alphabet()), max_len, check_len);
      out << (format == "kv" ? to_key_values(rep) : to_text(rep));
    } else if (nonsub->parsed()) {
      auto r = relation_for(Alphabet{U'a', U'b'});
      auto w = find_claim5_witness(r, max_n);
      if (!w) {
        out << "no related pair b^N a^N ~ b^(N+k) a^(N+k) with N, k <= " << max_n << '\n';
        return 1;
      }
      out << to_text(*w);
    } else if (substitutable->parsed()) {
      Language lang;
      Alphabet sigma;
      std::optional<std::size_t> bound;
      if (!grammar_path.empty()) {
        if (substitutable->count("--max-len") == 0) throw CLI::RequiredError("--max-len");
        Cfg g = read_grammar_file(grammar_path);
        lang = enumerate(g, max_len);
        sigma = g.alphabet();
        bound = max_len;
      } else {
        for (const auto& l : detail::read_stream(stream_path, in)) {
          if (l.empty()) continue;
          lang.insert(from_utf8(l));
        }
        sigma = detail::alphabet_of({lang.begin(), lang.end()});
        if (substitutable->count("--max-len")) bound = max_len;
      }
      auto verdict = check_substitutable(lang, relation_for(sigma), bound);
      if (verdict.violation) {
        const auto& v = *verdict.violation;
        out << "violation\n";
        out << "x: " << to_utf8(v.x) << '\n';
        out << "y: " << to_utf8(v.y) << '\n';
        out << "shared context: " << detail::show(v.shared) << '\n';
        out << "distinguishing context: " << detail::show(v.distinguishing) << '\n';
      } else {
        out << "no violation up to length " << verdict.bound << '\n';
      }
    }
  } catch (const CLI::RequiredError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace relsub::cli
