// Distributional learner for relation-substitutable languages.
//
// The hypothesis for a sample K has one nonterminal [x] per nonempty
// substring x of K plus a start symbol, and four rule families:
//
//   [xy] -> [x] [y]     for every split of a substring
//   [x]  -> [x']        when x ~ x' and x, x' share a context in K (x != x')
//   [a]  -> a           for single-symbol substrings
//   S    -> [w]         for every w in K
#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "relsub/charset.hpp"
#include "relsub/grammar.hpp"
#include "relsub/relation.hpp"

namespace relsub {

/// Finite positive sample. The empty string is rejected.
class Sample {
public:
  Sample() = default;
  template <typename Range>
  explicit Sample(const Range& words) {
    for (const auto& w : words) add(w);
  }
  Sample(std::initializer_list<Word> words) {
    for (const auto& w : words) add(w);
  }

  /// Returns false if `w` was already present.
  bool add(WordView w) {
    if (w.empty()) throw PremiseViolation("the empty string cannot be a positive example");
    auto [it, inserted] = strings_.emplace(w);
    if (inserted) {
      desk_ += w.size();
      max_len_ = std::max(max_len_, w.size());
    }
    return inserted;
  }

  const std::set<Word>& strings() const noexcept { return strings_; }
  bool contains(WordView w) const { return strings_.count(Word(w)) != 0; }
  std::size_t size() const noexcept { return strings_.size(); }
  bool empty() const noexcept { return strings_.empty(); }
  std::size_t desk() const noexcept { return desk_; }
  std::size_t max_len() const noexcept { return max_len_; }

private:
  std::set<Word> strings_;
  std::size_t desk_ = 0;
  std::size_t max_len_ = 0;
};

/// D_K(x): all (l, r) with l x r in K.
inline std::set<Context> contexts(const Sample& k, WordView x) {
  std::set<Context> out;
  if (x.empty()) throw InvalidArgument("contexts are taken of nonempty strings");
  for (const Word& w : k.strings())
    for (std::size_t at = w.find(x); at != Word::npos; at = w.find(x, at + 1))
      out.insert({w.substr(0, at), w.substr(at + x.size())});
  return out;
}

/// All nonempty contiguous substrings of members of K.
inline Language substrings(const Sample& k) {
  Language out;
  for (const Word& w : k.strings())
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j <= w.size(); ++j) out.insert(w.substr(i, j - i));
  return out;
}

inline std::string substring_name(WordView x) { return "[" + to_utf8(x) + "]"; }

/// Rule counts per family of a hypothesis grammar.
struct RuleFamilies {
  std::size_t binary = 0;
  std::size_t unary = 0;
  std::size_t terminal = 0;
  std::size_t start = 0;
  std::size_t total() const { return binary + unary + terminal + start; }
};

struct Hypothesis {
  Cfg grammar;
  RuleFamilies families;
};

inline Hypothesis build_hypothesis_detailed(const Sample& k, const RecognizableRelation& r) {
  const Alphabet& sigma = r.alphabet();
  Hypothesis h{Cfg(sigma, "S"), {}};
  Cfg& g = h.grammar;

  // Substrings in length-lex order fix nonterminal numbering.
  auto subs_set = substrings(k);
  std::vector<Word> subs(subs_set.begin(), subs_set.end());
  std::sort(subs.begin(), subs.end(), LengthLexLess{&sigma});
  std::map<Word, NtId> id_of;
  for (const Word& x : subs) id_of.emplace(x, g.add_nonterminal(substring_name(x)));

  std::vector<Word> ks(k.strings().begin(), k.strings().end());
  std::sort(ks.begin(), ks.end(), LengthLexLess{&sigma});
  for (const Word& w : ks) {
    g.add_production(g.start(), {GSym::nt(id_of.at(w))});
    ++h.families.start;
  }

  // Substrings grouped by shared context; any two in one group share it.
  std::map<Context, std::vector<NtId>> by_context;
  for (const Word& w : ks)
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j <= w.size(); ++j)
        by_context[{w.substr(0, i), w.substr(j)}].push_back(id_of.at(w.substr(i, j - i)));

  std::vector<Element> image(g.nonterminal_count(), 0);
  for (const Word& x : subs) image[id_of.at(x)] = r.morphism().eval(x);

  std::vector<std::set<NtId>> unary_targets(g.nonterminal_count());
  for (auto& [ctx, group] : by_context) {
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        NtId a = group[i], b = group[j];
        if (r.related_elements(image[a], image[b])) unary_targets[a].insert(b);
        if (r.related_elements(image[b], image[a])) unary_targets[b].insert(a);
      }
  }

  for (const Word& x : subs) {
    NtId a = id_of.at(x);
    if (x.size() == 1) {
      g.add_production(a, {GSym::term(x[0])});
      ++h.families.terminal;
    }
    for (std::size_t split = 1; split < x.size(); ++split) {
      g.add_production(a, {GSym::nt(id_of.at(x.substr(0, split))), GSym::nt(id_of.at(x.substr(split)))});
      ++h.families.binary;
    }
    for (NtId b : unary_targets[a]) {
      g.add_production(a, {GSym::nt(b)});
      ++h.families.unary;
    }
  }
  return h;
}

/// Hypothesis grammar for sample K under relation r.
inline Cfg build_hypothesis(const Sample& k, const RecognizableRelation& r) {
  return build_hypothesis_detailed(k, r).grammar;
}

/// Grammar with only a start symbol: the empty language.
inline Cfg empty_language_grammar(const Alphabet& sigma) { return Cfg(sigma, "S"); }

struct LearnerState {
  Sample sample;
  std::shared_ptr<const Cfg> hypothesis;
  std::shared_ptr<const RecognizableRelation> relation;
  std::size_t rebuild_count = 0;

  static LearnerState initial(RecognizableRelation r) {
    LearnerState s;
    s.hypothesis = std::make_shared<const Cfg>(empty_language_grammar(r.alphabet()));
    s.relation = std::make_shared<const RecognizableRelation>(std::move(r));
    return s;
  }
};

/// Adds `w` to the sample; rebuilds the hypothesis from the whole sample
/// only when the current one does not generate `w`.
inline LearnerState learn_step(const LearnerState& s, WordView w) {
  if (w.empty()) throw PremiseViolation("the empty string cannot be a positive example");
  LearnerState next = s;
  next.sample.add(w);
  if (!member(*s.hypothesis, w)) {
    next.hypothesis = std::make_shared<const Cfg>(build_hypothesis(next.sample, *s.relation));
    ++next.rebuild_count;
  }
  return next;
}

struct LearnTrace {
  std::vector<std::shared_ptr<const Cfg>> hypotheses;  // one per input
  LearnerState final_state;
};

inline LearnTrace learn_all(std::span<const Word> ws, const RecognizableRelation& r) {
  LearnTrace trace{{}, LearnerState::initial(r)};
  for (const Word& w : ws) {
    trace.final_state = learn_step(trace.final_state, w);
    trace.hypotheses.push_back(trace.final_state.hypothesis);
  }
  return trace;
}

}  // namespace relsub
