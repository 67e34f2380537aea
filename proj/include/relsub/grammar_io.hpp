// Grammar text format.
//
//   # comment
//   alphabet: 'a' 'b'          (optional; fixes symbol order)
//   start: S                   (optional; defaults to the first rule's lhs)
//   S -> 'a' S S | 'b'
//   A -> ()                    (the empty string)
//
// Terminals are single quoted scalar values. Nonterminals are bare names:
// any run of non-space characters other than '|', or a bracketed name
// "[...]" that ends at a ']' followed by a space or the end of the line.
#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "relsub/grammar.hpp"

namespace relsub {

namespace detail {

struct RawSym {
  bool terminal;
  std::string text;  // nonterminal name, or the UTF-8 terminal
};

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

class LineLexer {
public:
  LineLexer(std::string_view text, std::size_t line_no) : s_(text), line_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= s_.size();
  }
  char peek() const { return s_[pos_]; }
  void advance(std::size_t n = 1) { pos_ += n; }
  bool starts_with(std::string_view t) const { return s_.substr(pos_).substr(0, t.size()) == t; }

  std::string terminal() {
    ++pos_;  // opening quote
    if (pos_ >= s_.size()) fail("unterminated terminal");
    std::size_t begin = pos_;
    decode_utf8_at(s_, pos_);
    std::string sym(s_.substr(begin, pos_ - begin));
    if (pos_ >= s_.size() || s_[pos_] != '\'') fail("terminal must be a single symbol in quotes");
    ++pos_;
    return sym;
  }

  std::string name() {
    std::size_t begin = pos_;
    if (s_[pos_] == '[') {
      for (std::size_t i = pos_ + 1; i < s_.size(); ++i)
        if (s_[i] == ']' && (i + 1 == s_.size() || is_space(s_[i + 1]))) {
          pos_ = i + 1;
          return std::string(s_.substr(begin, pos_ - begin));
        }
      fail("unterminated bracketed name");
    }
    while (pos_ < s_.size() && !is_space(s_[pos_]) && s_[pos_] != '|') ++pos_;
    return std::string(s_.substr(begin, pos_ - begin));
  }

private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline bool is_plain_name(std::string_view n) {
  if (n.empty() || n.front() == '\'' || n.substr(0, 2) == "()" || n.substr(0, 2) == "->") return false;
  if (n.front() == '[') return true;
  return std::none_of(n.begin(), n.end(), [](char c) { return is_space(c) || c == '|'; });
}

}  // namespace detail

inline Cfg parse_grammar(std::string_view text) {
  struct RawRule {
    std::string lhs;
    std::vector<detail::RawSym> rhs;
  };
  std::vector<RawRule> rules;
  std::string start_name;
  Word declared_alphabet;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    // '#' starts a comment unless it is a quoted terminal.
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '\'' && i + 1 < raw.size()) {
        std::size_t j = i + 1;
        decode_utf8_at(raw, j);
        i = j;  // at the closing quote
        continue;
      }
      if (raw[i] == '#') {
        raw = raw.substr(0, i);
        break;
      }
    }
    std::string_view line = detail::trim_view(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (line.substr(0, 6) == "start:") {
      start_name = std::string(detail::trim_view(line.substr(6)));
      if (!detail::is_plain_name(start_name)) throw ParseError("line " + std::to_string(line_no) + ": bad start symbol");
      continue;
    }
    if (line.substr(0, 9) == "alphabet:") {
      detail::LineLexer lex(line.substr(9), line_no);
      while (!lex.done()) {
        if (lex.peek() != '\'') lex.fail("alphabet entries must be quoted symbols");
        declared_alphabet += from_utf8(lex.terminal());
      }
      continue;
    }

    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected '->'");
    std::string lhs(detail::trim_view(line.substr(0, arrow)));
    if (!detail::is_plain_name(lhs)) throw ParseError("line " + std::to_string(line_no) + ": bad left-hand side");

    detail::LineLexer lex(line.substr(arrow + 2), line_no);
    std::vector<detail::RawSym> alt;
    bool saw_symbol = false;
    bool saw_empty = false;
    auto flush = [&] {
      if (!saw_symbol && !saw_empty) lex.fail("empty alternative; write () for the empty string");
      if (saw_empty && !alt.empty()) lex.fail("() must stand alone in an alternative");
      rules.push_back({lhs, alt});
      alt.clear();
      saw_symbol = saw_empty = false;
    };
    while (!lex.done()) {
      char c = lex.peek();
      if (c == '|') {
        lex.advance();
        flush();
      } else if (c == '\'') {
        alt.push_back({true, lex.terminal()});
        saw_symbol = true;
      } else if (lex.starts_with("()")) {
        lex.advance(2);
        saw_empty = true;
      } else {
        alt.push_back({false, lex.name()});
        saw_symbol = true;
      }
    }
    flush();
  }

  if (start_name.empty()) {
    if (rules.empty()) throw ParseError("grammar has no start symbol and no rules");
    start_name = rules.front().lhs;
  }
  Cfg g(Alphabet(declared_alphabet), start_name);
  for (const auto& r : rules) {
    NtId lhs = g.add_nonterminal(r.lhs);
    std::vector<GSym> rhs;
    for (const auto& s : r.rhs) {
      if (s.terminal)
        rhs.push_back(GSym::term(from_utf8(s.text).front()));
      else
        rhs.push_back(GSym::nt(g.add_nonterminal(s.text)));
    }
    g.add_production(lhs, std::move(rhs));
  }
  return g;
}

inline Cfg read_grammar_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open grammar file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_grammar(buf.str());
}

/// Canonical text: alphabet, start, then one line per nonterminal with
/// rules, start first and the rest ordered by (name length, name).
/// Alternatives keep insertion order, so print(parse(print(g))) == print(g).
inline std::string print_grammar(const Cfg& g) {
  std::string out;
  if (!g.alphabet().empty()) {
    out += "alphabet:";
    for (Symbol s : g.alphabet().symbols()) out += " '" + to_utf8(Word(1, s)) + "'";
    out += '\n';
  }
  out += "start: " + g.name(g.start()) + '\n';

  std::vector<std::vector<const Production*>> by_lhs(g.nonterminal_count());
  for (const auto& p : g.productions()) by_lhs[p.lhs].push_back(&p);
  std::vector<NtId> order;
  for (NtId a = 0; a < g.nonterminal_count(); ++a)
    if (a != g.start() && !by_lhs[a].empty()) order.push_back(a);
  std::sort(order.begin(), order.end(), [&](NtId x, NtId y) {
    const auto &nx = g.name(x), &ny = g.name(y);
    return nx.size() != ny.size() ? nx.size() < ny.size() : nx < ny;
  });
  if (!by_lhs[g.start()].empty()) order.insert(order.begin(), g.start());

  for (NtId a : order) {
    out += g.name(a) + " ->";
    bool first = true;
    for (const Production* p : by_lhs[a]) {
      if (!first) out += " |";
      first = false;
      if (p->rhs.empty()) out += " ()";
      for (const GSym& s : p->rhs) out += ' ' + (s.terminal ? "'" + to_utf8(Word(1, s.symbol())) + "'" : g.name(s.id));
    }
    out += '\n';
  }
  return out;
}

}  // namespace relsub
