// Context-free grammars: representation, trimming, Chomsky normal form,
// CYK membership with unit-rule closure, and bounded enumeration.
#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "relsub/word.hpp"

namespace relsub {

using NtId = std::uint32_t;

/// A right-hand-side symbol: either a terminal (code point) or a nonterminal id.
struct GSym {
  bool terminal = false;
  std::uint32_t id = 0;

  static GSym nt(NtId n) { return {false, n}; }
  static GSym term(Symbol s) { return {true, static_cast<std::uint32_t>(s)}; }
  Symbol symbol() const { return static_cast<Symbol>(id); }

  friend auto operator<=>(const GSym&, const GSym&) = default;
};

struct Production {
  NtId lhs = 0;
  std::vector<GSym> rhs;

  friend auto operator<=>(const Production&, const Production&) = default;
};

/// Bounded language sample; ordered by code point. Use Alphabet::less for
/// presentation order.
using Language = std::set<Word>;

class Cfg {
public:
  Cfg() : Cfg(Alphabet{}) {}
  explicit Cfg(Alphabet alphabet, std::string start_name = "S") : alphabet_(std::move(alphabet)) {
    start_ = add_nonterminal(std::move(start_name));
  }

  /// Returns the id of `name`, creating it if needed.
  NtId add_nonterminal(std::string name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    auto id = static_cast<NtId>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    return id;
  }

  /// Creates a nonterminal whose name starts with `base` and is not yet taken.
  NtId fresh_nonterminal(const std::string& base) {
    if (!index_.count(base)) return add_nonterminal(base);
    for (std::size_t i = 1;; ++i) {
      auto name = base + std::to_string(i);
      if (!index_.count(name)) return add_nonterminal(name);
    }
  }

  std::optional<NtId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Adds a rule; duplicates are ignored. Terminals extend the alphabet.
  void add_production(NtId lhs, std::vector<GSym> rhs) {
    if (lhs >= names_.size()) throw InvalidArgument("production lhs is not a nonterminal");
    for (const GSym& s : rhs) {
      if (s.terminal)
        alphabet_.add(s.symbol());
      else if (s.id >= names_.size())
        throw InvalidArgument("production rhs refers to an unknown nonterminal");
    }
    Production p{lhs, std::move(rhs)};
    if (production_set_.insert(p).second) productions_.push_back(std::move(p));
  }

  bool has_production(const Production& p) const { return production_set_.count(p) != 0; }

  const std::vector<Production>& productions() const noexcept { return productions_; }
  std::size_t nonterminal_count() const noexcept { return names_.size(); }
  const std::string& name(NtId n) const { return names_[n]; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  NtId start() const noexcept { return start_; }
  void set_start(NtId s) { start_ = s; }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  void add_terminal(Symbol s) { alphabet_.add(s); }

  bool has_empty_rule(NtId n) const { return has_production({n, {}}); }

private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NtId> index_;
  std::vector<Production> productions_;
  std::set<Production> production_set_;
  NtId start_ = 0;
};

/// Name-based view of a grammar's rules, for comparisons independent of
/// nonterminal numbering.
inline std::set<std::pair<std::string, std::vector<std::string>>> named_rules(const Cfg& g) {
  std::set<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& p : g.productions()) {
    std::vector<std::string> rhs;
    for (const GSym& s : p.rhs) rhs.push_back(s.terminal ? "'" + to_utf8(Word(1, s.symbol())) : g.name(s.id));
    out.emplace(g.name(p.lhs), std::move(rhs));
  }
  return out;
}

inline bool same_rules(const Cfg& a, const Cfg& b) {
  return a.name(a.start()) == b.name(b.start()) && named_rules(a) == named_rules(b);
}

// ---------------------------------------------------------------- analysis

inline std::vector<char> productive_nonterminals(const Cfg& g) {
  std::vector<char> prod(g.nonterminal_count(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (prod[p.lhs]) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const GSym& s) { return s.terminal || prod[s.id]; });
      if (ok) prod[p.lhs] = changed = true;
    }
  }
  return prod;
}

/// Nonterminals reachable from the start symbol, optionally only through
/// rules whose symbols all satisfy `usable`.
inline std::vector<char> reachable_nonterminals(const Cfg& g, const std::vector<char>* usable = nullptr) {
  std::vector<std::vector<const Production*>> by_lhs(g.nonterminal_count());
  for (const auto& p : g.productions()) by_lhs[p.lhs].push_back(&p);
  std::vector<char> seen(g.nonterminal_count(), 0);
  std::vector<NtId> stack{g.start()};
  seen[g.start()] = 1;
  while (!stack.empty()) {
    NtId a = stack.back();
    stack.pop_back();
    for (const Production* p : by_lhs[a]) {
      if (usable) {
        bool ok = std::all_of(p->rhs.begin(), p->rhs.end(),
                              [&](const GSym& s) { return s.terminal || (*usable)[s.id]; });
        if (!ok) continue;
      }
      for (const GSym& s : p->rhs)
        if (!s.terminal && !seen[s.id]) {
          seen[s.id] = 1;
          stack.push_back(s.id);
        }
    }
  }
  return seen;
}

inline std::vector<char> nullable_nonterminals(const Cfg& g) {
  std::vector<char> nullable(g.nonterminal_count(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (nullable[p.lhs]) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const GSym& s) { return !s.terminal && nullable[s.id]; });
      if (ok) nullable[p.lhs] = changed = true;
    }
  }
  return nullable;
}

/// Drops nonterminals that derive no terminal string or cannot be reached
/// from the start symbol. The start symbol is always kept.
inline Cfg trim(const Cfg& g) {
  auto prod = productive_nonterminals(g);
  auto reach = reachable_nonterminals(g, &prod);
  std::vector<char> keep(g.nonterminal_count(), 0);
  for (NtId a = 0; a < g.nonterminal_count(); ++a) keep[a] = prod[a] && reach[a];
  keep[g.start()] = 1;

  Cfg out(g.alphabet(), g.name(g.start()));
  std::vector<NtId> remap(g.nonterminal_count(), 0);
  for (NtId a = 0; a < g.nonterminal_count(); ++a)
    if (keep[a]) remap[a] = out.add_nonterminal(g.name(a));
  for (const auto& p : g.productions()) {
    if (!keep[p.lhs] || !prod[p.lhs]) continue;
    bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](const GSym& s) { return s.terminal || keep[s.id]; });
    if (!ok) continue;
    std::vector<GSym> rhs = p.rhs;
    for (GSym& s : rhs)
      if (!s.terminal) s.id = remap[s.id];
    out.add_production(remap[p.lhs], std::move(rhs));
  }
  return out;
}

inline bool start_on_rhs(const Cfg& g) {
  for (const auto& p : g.productions())
    for (const GSym& s : p.rhs)
      if (!s.terminal && s.id == g.start()) return true;
  return false;
}

/// Every rule is S -> (), A -> B C, or A -> a, and S -> () only when the
/// start symbol occurs on no right-hand side.
inline bool is_cnf(const Cfg& g) {
  bool start_rhs = start_on_rhs(g);
  for (const auto& p : g.productions()) {
    switch (p.rhs.size()) {
      case 0:
        if (p.lhs != g.start() || start_rhs) return false;
        break;
      case 1:
        if (!p.rhs[0].terminal) return false;
        break;
      case 2:
        if (p.rhs[0].terminal || p.rhs[1].terminal) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

/// Shapes the CYK recognizer accepts directly: CNF plus unit rules A -> B.
inline bool is_cyk_ready(const Cfg& g) {
  bool start_rhs = start_on_rhs(g);
  for (const auto& p : g.productions()) {
    switch (p.rhs.size()) {
      case 0:
        if (p.lhs != g.start() || start_rhs) return false;
        break;
      case 1:
        break;
      case 2:
        if (p.rhs[0].terminal || p.rhs[1].terminal) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- CNF

namespace detail {

inline std::string terminal_tag(Symbol s) {
  if (s < 0x80 && std::isalnum(static_cast<int>(s))) return std::string(1, static_cast<char>(s));
  char buf[16];
  std::snprintf(buf, sizeof buf, "u%04X", static_cast<unsigned>(s));
  return buf;
}

}  // namespace detail

/// Converts to Chomsky normal form in the fixed order: fresh start (only
/// when the start symbol occurs on a right-hand side), terminal isolation,
/// binarization, nullable elimination, unit elimination, trimming.
inline Cfg to_cnf(const Cfg& input) {
  Cfg g = input;

  if (start_on_rhs(g)) {
    NtId old_start = g.start();
    NtId s0 = g.fresh_nonterminal(g.name(old_start) + "0");
    g.add_production(s0, {GSym::nt(old_start)});
    g.set_start(s0);
  }

  // Terminal isolation.
  {
    Cfg out(g.alphabet(), g.name(g.start()));
    for (const auto& n : g.names()) out.add_nonterminal(n);
    out.set_start(g.start());
    std::unordered_map<Symbol, NtId> term_nt;
    for (const auto& p : g.productions()) {
      if (p.rhs.size() < 2) {
        out.add_production(p.lhs, p.rhs);
        continue;
      }
      std::vector<GSym> rhs = p.rhs;
      for (GSym& s : rhs) {
        if (!s.terminal) continue;
        auto it = term_nt.find(s.symbol());
        if (it == term_nt.end()) {
          NtId t = out.fresh_nonterminal("T_" + detail::terminal_tag(s.symbol()));
          out.add_production(t, {s});
          it = term_nt.emplace(s.symbol(), t).first;
        }
        s = GSym::nt(it->second);
      }
      out.add_production(p.lhs, std::move(rhs));
    }
    g = std::move(out);
  }

  // Binarization.
  {
    Cfg out(g.alphabet(), g.name(g.start()));
    for (const auto& n : g.names()) out.add_nonterminal(n);
    out.set_start(g.start());
    for (const auto& p : g.productions()) {
      if (p.rhs.size() <= 2) {
        out.add_production(p.lhs, p.rhs);
        continue;
      }
      NtId lhs = p.lhs;
      for (std::size_t i = 0; i + 2 < p.rhs.size(); ++i) {
        NtId rest = out.fresh_nonterminal(g.name(p.lhs) + "_");
        out.add_production(lhs, {p.rhs[i], GSym::nt(rest)});
        lhs = rest;
      }
      out.add_production(lhs, {p.rhs[p.rhs.size() - 2], p.rhs.back()});
    }
    g = std::move(out);
  }

  // Nullable elimination.
  {
    auto nullable = nullable_nonterminals(g);
    Cfg out(g.alphabet(), g.name(g.start()));
    for (const auto& n : g.names()) out.add_nonterminal(n);
    out.set_start(g.start());
    for (const auto& p : g.productions()) {
      if (p.rhs.empty()) continue;
      const std::size_t m = p.rhs.size();
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<GSym> rhs;
        bool valid = true;
        for (std::size_t i = 0; i < m; ++i) {
          if (mask & (1u << i)) {
            if (p.rhs[i].terminal || !nullable[p.rhs[i].id]) valid = false;
          } else {
            rhs.push_back(p.rhs[i]);
          }
        }
        if (valid && !rhs.empty()) out.add_production(p.lhs, std::move(rhs));
      }
    }
    if (nullable[g.start()]) out.add_production(g.start(), {});
    g = std::move(out);
  }

  // Unit elimination.
  {
    const auto n = g.nonterminal_count();
    std::vector<std::vector<NtId>> unit_children(n);
    std::vector<std::vector<const Production*>> non_unit(n);
    for (const auto& p : g.productions()) {
      if (p.rhs.size() == 1 && !p.rhs[0].terminal)
        unit_children[p.lhs].push_back(p.rhs[0].id);
      else
        non_unit[p.lhs].push_back(&p);
    }
    Cfg out(g.alphabet(), g.name(g.start()));
    for (const auto& nm : g.names()) out.add_nonterminal(nm);
    out.set_start(g.start());
    for (NtId a = 0; a < n; ++a) {
      std::vector<char> seen(n, 0);
      std::vector<NtId> order{a};
      seen[a] = 1;
      for (std::size_t i = 0; i < order.size(); ++i)
        for (NtId b : unit_children[order[i]])
          if (!seen[b]) {
            seen[b] = 1;
            order.push_back(b);
          }
      for (NtId b : order)
        for (const Production* p : non_unit[b]) {
          if (p->rhs.empty() && a != g.start()) continue;
          out.add_production(a, p->rhs);
        }
    }
    g = std::move(out);
  }

  return trim(g);
}

// ---------------------------------------------------------------- membership

namespace detail {

/// CYK over grammars of shape A -> B C | A -> B | A -> a | S -> ().
inline bool cyk(const Cfg& g, WordView w) {
  if (w.empty()) return g.has_empty_rule(g.start());
  if (!g.alphabet().covers(w)) return false;

  const std::size_t n = w.size();
  const std::size_t v = g.nonterminal_count();
  std::vector<std::vector<NtId>> unit_parents(v);
  std::vector<std::vector<std::pair<NtId, NtId>>> by_left(v);  // B -> {(A, C)} for A -> B C
  std::unordered_map<Symbol, std::vector<NtId>> by_terminal;
  for (const auto& p : g.productions()) {
    if (p.rhs.size() == 1) {
      if (p.rhs[0].terminal)
        by_terminal[p.rhs[0].symbol()].push_back(p.lhs);
      else
        unit_parents[p.rhs[0].id].push_back(p.lhs);
    } else if (p.rhs.size() == 2) {
      by_left[p.rhs[0].id].emplace_back(p.lhs, p.rhs[1].id);
    }
  }

  // chart[(i, len)] marks which nonterminals derive w[i, i+len).
  auto idx = [n](std::size_t i, std::size_t len) { return (len - 1) * n + i; };
  std::vector<std::vector<char>> chart(n * n, std::vector<char>());
  std::vector<std::vector<NtId>> members(n * n);

  auto close = [&](std::vector<char>& cell, std::vector<NtId>& list) {
    for (std::size_t i = 0; i < list.size(); ++i)
      for (NtId a : unit_parents[list[i]])
        if (!cell[a]) {
          cell[a] = 1;
          list.push_back(a);
        }
  };

  for (std::size_t i = 0; i < n; ++i) {
    auto& cell = chart[idx(i, 1)];
    auto& list = members[idx(i, 1)];
    cell.assign(v, 0);
    if (auto it = by_terminal.find(w[i]); it != by_terminal.end())
      for (NtId a : it->second)
        if (!cell[a]) {
          cell[a] = 1;
          list.push_back(a);
        }
    close(cell, list);
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& cell = chart[idx(i, len)];
      auto& list = members[idx(i, len)];
      cell.assign(v, 0);
      for (std::size_t split = 1; split < len; ++split) {
        const auto& right = chart[idx(i + split, len - split)];
        for (NtId b : members[idx(i, split)])
          for (auto [a, c] : by_left[b])
            if (right[c] && !cell[a]) {
              cell[a] = 1;
              list.push_back(a);
            }
      }
      close(cell, list);
    }
  }
  return chart[idx(0, n)][g.start()] != 0;
}

}  // namespace detail

/// Decides w in L(g). Grammars outside the CYK shape (CNF plus unit rules)
/// are converted with to_cnf first. Symbols outside the alphabet give false.
inline bool member(const Cfg& g, WordView w) {
  if (is_cyk_ready(g)) return detail::cyk(g, w);
  return detail::cyk(to_cnf(g), w);
}

// ---------------------------------------------------------------- enumeration

/// For every nonterminal, the strings of length <= max_len it derives.
/// Computed level by level: strings of length n only combine shorter parts,
/// except through chains where all other symbols derive the empty string,
/// which are closed by propagation within the level.
inline std::vector<Language> enumerate_all(const Cfg& g, std::size_t max_len) {
  const std::size_t v = g.nonterminal_count();
  auto nullable = nullable_nonterminals(g);
  // by_len[A][n]: strings of exactly length n derived from A.
  std::vector<std::vector<std::unordered_set<Word>>> by_len(v, std::vector<std::unordered_set<Word>>(max_len + 1));
  for (NtId a = 0; a < v; ++a)
    if (nullable[a]) by_len[a][0].insert(Word{});

  // A gets all of B's strings at the same length whenever A -> x B y with x, y nullable.
  std::vector<std::vector<NtId>> pass_up(v);
  for (const auto& p : g.productions()) {
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      if (p.rhs[i].terminal) continue;
      bool others_nullable = true;
      for (std::size_t j = 0; j < p.rhs.size(); ++j)
        if (j != i && (p.rhs[j].terminal || !nullable[p.rhs[j].id])) others_nullable = false;
      if (others_nullable) pass_up[p.rhs[i].id].push_back(p.lhs);
    }
  }
  for (auto& ps : pass_up) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  }

  for (std::size_t len = 1; len <= max_len; ++len) {
    // Compositions in which every nonterminal part is strictly shorter than len.
    for (const auto& p : g.productions()) {
      auto& target = by_len[p.lhs][len];
      std::function<void(std::size_t, std::size_t, Word&)> go = [&](std::size_t pos, std::size_t remaining, Word& acc) {
        if (pos == p.rhs.size()) {
          if (remaining == 0) target.insert(acc);
          return;
        }
        const GSym& s = p.rhs[pos];
        if (s.terminal) {
          if (remaining == 0) return;
          acc.push_back(s.symbol());
          go(pos + 1, remaining - 1, acc);
          acc.pop_back();
          return;
        }
        for (std::size_t part = 0; part <= remaining && part < len; ++part) {
          for (const Word& piece : by_len[s.id][part]) {
            acc += piece;
            go(pos + 1, remaining - part, acc);
            acc.resize(acc.size() - piece.size());
          }
        }
      };
      Word acc;
      go(0, len, acc);
    }
    // Same-length propagation.
    std::vector<NtId> work;
    for (NtId a = 0; a < v; ++a)
      if (!by_len[a][len].empty()) work.push_back(a);
    while (!work.empty()) {
      NtId b = work.back();
      work.pop_back();
      for (NtId a : pass_up[b]) {
        if (a == b) continue;
        auto& dst = by_len[a][len];
        std::size_t before = dst.size();
        dst.insert(by_len[b][len].begin(), by_len[b][len].end());
        if (dst.size() != before) work.push_back(a);
      }
    }
  }

  std::vector<Language> out(v);
  for (NtId a = 0; a < v; ++a)
    for (const auto& level : by_len[a]) out[a].insert(level.begin(), level.end());
  return out;
}

/// Exactly the strings of L(g) with length <= max_len.
inline Language enumerate(const Cfg& g, std::size_t max_len) { return enumerate_all(g, max_len)[g.start()]; }

inline Language enumerate_from(const Cfg& g, NtId from, std::size_t max_len) { return enumerate_all(g, max_len)[from]; }

inline bool equivalent_up_to(const Cfg& g1, const Cfg& g2, std::size_t n) { return enumerate(g1, n) == enumerate(g2, n); }

/// Copy of g that starts from another nonterminal.
inline Cfg with_start(Cfg g, NtId start) {
  g.set_start(start);
  return g;
}

}  // namespace relsub
