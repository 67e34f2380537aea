// Characteristic sets and typing a grammar by a finite monoid.
//
// "Minimal" always means length-lexicographic under the grammar's alphabet
// order. Contexts are ordered by total flank length, then left flank, then
// right flank.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relsub/grammar.hpp"
#include "relsub/relation.hpp"

namespace relsub {

struct Context {
  Word left;
  Word right;

  Word wrap(WordView y) const {
    Word out = left;
    out += y;
    out += right;
    return out;
  }

  friend bool operator==(const Context&, const Context&) = default;
  friend auto operator<=>(const Context&, const Context&) = default;
};

inline bool context_less(const Alphabet& sigma, const Context& a, const Context& b) {
  std::size_t la = a.left.size() + a.right.size(), lb = b.left.size() + b.right.size();
  if (la != lb) return la < lb;
  if (a.left != b.left) return sigma.less(a.left, b.left);
  return sigma.less(a.right, b.right);
}

/// Minimal terminal yield of every nonterminal. Computed as a decreasing
/// fixpoint: a rule's candidate is the concatenation of its symbols' current
/// minima, and concatenation is monotone in the length-lex order.
class MinimalYields {
public:
  explicit MinimalYields(const Cfg& g) : g_(&g), best_(g.nonterminal_count()) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& p : g.productions()) {
        auto cand = concat(p.rhs);
        if (!cand) continue;
        auto& cur = best_[p.lhs];
        if (!cur || g.alphabet().less(*cand, *cur)) {
          cur = std::move(cand);
          changed = true;
        }
      }
    }
  }

  bool productive(NtId a) const { return best_[a].has_value(); }

  const Word& of(NtId a) const {
    if (!best_[a]) throw InvalidArgument("nonterminal '" + g_->name(a) + "' derives no terminal string");
    return *best_[a];
  }

  Word of(std::span<const GSym> alpha) const {
    Word out;
    for (const GSym& s : alpha) {
      if (s.terminal)
        out.push_back(s.symbol());
      else
        out += of(s.id);
    }
    return out;
  }

private:
  std::optional<Word> concat(const std::vector<GSym>& rhs) const {
    Word out;
    for (const GSym& s : rhs) {
      if (s.terminal) {
        out.push_back(s.symbol());
      } else {
        if (!best_[s.id]) return std::nullopt;
        out += *best_[s.id];
      }
    }
    return out;
  }

  const Cfg* g_;
  std::vector<std::optional<Word>> best_;
};

/// Minimal context (x, z) with S =>* x A z for every nonterminal A. The start
/// symbol gets the empty context; each rule B -> u A v offers
/// (left(B)·omega(u), omega(v)·right(B)) to A.
class MinimalContexts {
public:
  MinimalContexts(const Cfg& g, const MinimalYields& yields) : g_(&g), best_(g.nonterminal_count()) {
    best_[g.start()] = Context{};
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& p : g.productions()) {
        if (!best_[p.lhs]) continue;
        // Rules with an unproductive symbol never occur in a terminating derivation.
        bool usable = true;
        for (const GSym& s : p.rhs)
          if (!s.terminal && !yields.productive(s.id)) usable = false;
        if (!usable) continue;
        const Context outer = *best_[p.lhs];
        std::span<const GSym> rhs(p.rhs);
        for (std::size_t i = 0; i < rhs.size(); ++i) {
          if (rhs[i].terminal) continue;
          Context cand{outer.left + yields.of(rhs.first(i)), yields.of(rhs.subspan(i + 1)) + outer.right};
          auto& cur = best_[rhs[i].id];
          if (!cur || context_less(g.alphabet(), cand, *cur)) {
            cur = std::move(cand);
            changed = true;
          }
        }
      }
    }
  }

  bool reachable(NtId a) const { return best_[a].has_value(); }

  const Context& of(NtId a) const {
    if (!best_[a]) throw InvalidArgument("nonterminal '" + g_->name(a) + "' is not reachable from the start symbol");
    return *best_[a];
  }

private:
  const Cfg* g_;
  std::vector<std::optional<Context>> best_;
};

/// Minimal string derivable from the sentential form `alpha`.
inline Word omega(const Cfg& g, std::span<const GSym> alpha) { return MinimalYields(g).of(alpha); }

inline Word omega(const Cfg& g, NtId a) { return MinimalYields(g).of(a); }

/// Minimal context in which `a` occurs in a sentential form.
inline Context chi(const Cfg& g, NtId a) {
  MinimalYields yields(g);
  return MinimalContexts(g, yields).of(a);
}

inline bool is_trim(const Cfg& g) {
  auto prod = productive_nonterminals(g);
  auto reach = reachable_nonterminals(g, &prod);
  for (NtId a = 0; a < g.nonterminal_count(); ++a)
    if (!prod[a] || !reach[a]) return false;
  return true;
}

/// One string per rule A -> beta: omega(beta) wrapped in the minimal context
/// among all nonterminals that have beta as a right-hand side.
inline Language char_set(const Cfg& g) {
  if (!is_trim(g)) throw InvalidArgument("characteristic sets need a trim grammar");
  MinimalYields yields(g);
  MinimalContexts contexts(g, yields);

  std::map<std::vector<GSym>, Context> context_of_rhs;
  for (const auto& p : g.productions()) {
    const Context& c = contexts.of(p.lhs);
    auto [it, inserted] = context_of_rhs.emplace(p.rhs, c);
    if (!inserted && context_less(g.alphabet(), c, it->second)) it->second = c;
  }
  Language out;
  for (const auto& [rhs, ctx] : context_of_rhs) out.insert(ctx.wrap(yields.of(rhs)));
  return out;
}

/// Name of the typed copy of nonterminal `name` for monoid element `p`.
inline std::string typed_name(const std::string& name, Element p) { return name + "_" + std::to_string(p); }

/// Annotates every nonterminal of a CNF grammar with a monoid element:
/// A_pq -> B_p C_q for A -> B C, A_h(a) -> a for A -> a, and a fresh start
/// S' -> S_p for every element p. The result is trimmed. Every string derived
/// from A_p maps to p, and A_p derives exactly the strings of A that do.
inline Cfg type_transform(const Cfg& g, const MonoidMorphism& h) {
  if (!is_cnf(g)) throw InvalidArgument("type_transform expects a grammar in Chomsky normal form");
  if (g.has_empty_rule(g.start())) throw PremiseViolation("the target language contains the empty string");

  const auto elements = h.reachable();
  const auto& m = h.monoid();
  Cfg out(g.alphabet(), g.name(g.start()) + "'");
  auto typed = [&](NtId a, Element p) { return out.add_nonterminal(typed_name(g.name(a), p)); };

  for (NtId a = 0; a < g.nonterminal_count(); ++a)
    for (Element p : elements) typed(a, p);

  for (const auto& prod : g.productions()) {
    if (prod.rhs.size() == 1) {
      Symbol a = prod.rhs[0].symbol();
      out.add_production(typed(prod.lhs, h.image(a)), {prod.rhs[0]});
      continue;
    }
    for (Element p : elements)
      for (Element q : elements)
        out.add_production(typed(prod.lhs, m.op(p, q)),
                           {GSym::nt(typed(prod.rhs[0].id, p)), GSym::nt(typed(prod.rhs[1].id, q))});
  }
  for (Element p : elements) out.add_production(out.start(), {GSym::nt(typed(g.start(), p))});
  return trim(out);
}

}  // namespace relsub
