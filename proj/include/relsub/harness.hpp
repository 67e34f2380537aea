// Experiment harness: length-lex presentations, convergence runs,
// completeness and soundness checks against a known target, a bounded
// substitutability oracle, the pigeonhole non-substitutability witness, and
// build-cost measurement.
#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relsub/charset.hpp"
#include "relsub/grammar.hpp"
#include "relsub/grammar_io.hpp"
#include "relsub/learner.hpp"
#include "relsub/relation.hpp"

namespace relsub {

namespace detail {

inline std::vector<Word> sorted_lenlex(const Language& lang, const Alphabet& sigma) {
  std::vector<Word> out(lang.begin(), lang.end());
  std::sort(out.begin(), out.end(), LengthLexLess{&sigma});
  return out;
}

/// Length-lex smallest element of a \ b, if any.
inline std::optional<Word> first_missing(const Language& a, const Language& b, const Alphabet& sigma) {
  std::optional<Word> best;
  for (const Word& w : a)
    if (!b.count(w) && (!best || sigma.less(w, *best))) best = w;
  return best;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace detail

/// The language of S -> a S S | b.
inline Cfg lukasiewicz_grammar() {
  Cfg g(Alphabet{U'a', U'b'}, "S");
  g.add_production(g.start(), {GSym::term(U'a'), GSym::nt(g.start()), GSym::nt(g.start())});
  g.add_production(g.start(), {GSym::term(U'b')});
  return g;
}

/// L(g) up to max_len in length-lex order.
inline std::vector<Word> presentation_lenlex(const Cfg& g, std::size_t max_len) {
  auto lang = enumerate(g, max_len);
  if (lang.count(Word{})) throw PremiseViolation("the target language contains the empty string");
  return detail::sorted_lenlex(lang, g.alphabet());
}

// ---------------------------------------------------------------- convergence

struct StepSize {
  std::size_t desk = 0;
  std::size_t nonterminals = 0;
  std::size_t rules = 0;
};

struct ConvergenceReport {
  bool converged = false;
  std::optional<std::size_t> convergence_index;  // 1-based index of the last hypothesis change
  bool final_equivalent = false;
  std::size_t rebuilds = 0;
  std::size_t presentation_length = 0;
  std::size_t check_len = 0;
  std::vector<double> timings_ms;
  std::vector<StepSize> sizes;
  std::optional<Word> overgenerated;   // in the hypothesis, not in the target
  std::optional<Word> undergenerated;  // in the target, not in the hypothesis
  std::shared_ptr<const Cfg> final_hypothesis;

  std::size_t desk() const { return sizes.empty() ? 0 : sizes.back().desk; }
  std::size_t rules_total() const { return sizes.empty() ? 0 : sizes.back().rules; }
};

/// Feeds the length-lex presentation of `target` up to max_len to the
/// learner. Converged means the hypothesis stopped changing before the last
/// input; final_equivalent compares the last hypothesis with the target on
/// all strings up to check_len.
inline ConvergenceReport run_convergence(const Cfg& target, const RecognizableRelation& r, std::size_t max_len,
                                         std::size_t check_len) {
  ConvergenceReport rep;
  rep.check_len = check_len;
  auto presentation = presentation_lenlex(target, max_len);
  rep.presentation_length = presentation.size();

  auto state = LearnerState::initial(r);
  for (std::size_t i = 0; i < presentation.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    auto next = learn_step(state, presentation[i]);
    rep.timings_ms.push_back(detail::elapsed_ms(t0));
    if (next.hypothesis != state.hypothesis) rep.convergence_index = i + 1;
    state = std::move(next);
    rep.sizes.push_back({state.sample.desk(), state.hypothesis->nonterminal_count(), state.hypothesis->productions().size()});
  }
  rep.rebuilds = state.rebuild_count;
  rep.final_hypothesis = state.hypothesis;
  rep.converged = rep.convergence_index && *rep.convergence_index < rep.presentation_length;

  auto want = enumerate(target, check_len);
  auto got = enumerate(*state.hypothesis, check_len);
  const Alphabet& sigma = target.alphabet();
  rep.overgenerated = detail::first_missing(got, want, sigma);
  rep.undergenerated = detail::first_missing(want, got, sigma);
  rep.final_equivalent = !rep.overgenerated && !rep.undergenerated;
  return rep;
}

// ---------------------------------------------------------------- completeness / soundness

struct CompletenessReport {
  Sample sample;  // the characteristic set of the typed target
  bool holds = false;
  std::optional<Word> missing;  // a target string the hypothesis lacks
  std::shared_ptr<const Cfg> hypothesis;
};

/// Builds the hypothesis from the characteristic set of the target typed by
/// r's monoid and checks that it covers the target up to check_len.
inline CompletenessReport completeness_check(const Cfg& target, const RecognizableRelation& r, std::size_t check_len) {
  Cfg cnf = is_cnf(target) ? trim(target) : to_cnf(target);
  Cfg typed = type_transform(cnf, r.morphism());
  CompletenessReport rep;
  rep.sample = Sample(char_set(typed));
  rep.hypothesis = std::make_shared<const Cfg>(build_hypothesis(rep.sample, r));
  auto want = enumerate(target, check_len);
  auto got = enumerate(*rep.hypothesis, check_len);
  rep.missing = detail::first_missing(want, got, target.alphabet());
  rep.holds = !rep.missing;
  return rep;
}

struct SoundnessReport {
  bool holds = false;
  std::optional<Word> offending;  // generated by the hypothesis, not in the target
};

inline SoundnessReport soundness_check(const Cfg& target, const RecognizableRelation& r, const Sample& k,
                                       std::size_t check_len) {
  for (const Word& w : k.strings())
    if (!member(target, w)) throw InvalidArgument("sample string '" + to_utf8(w) + "' is not in the target language");
  auto got = enumerate(build_hypothesis(k, r), check_len);
  auto want = enumerate(target, check_len);
  SoundnessReport rep;
  rep.offending = detail::first_missing(got, want, target.alphabet());
  rep.holds = !rep.offending;
  return rep;
}

// ---------------------------------------------------------------- substitutability oracle

struct Violation {
  Word x;
  Word y;
  Context shared;          // in D(x) and D(y)
  Context distinguishing;  // in D(x), not in D(y)
};

struct SubstitutabilityVerdict {
  std::optional<Violation> violation;
  std::size_t bound = 0;
  /// Contexts are only compared where both wrapped strings fit in the bound,
  /// so a reported violation is exact; absence only speaks for the bound.
  bool conclusive() const { return violation.has_value(); }
};

namespace detail {

class DistributionIndex {
public:
  DistributionIndex(const Language& lang) : lang_(&lang) {
    for (const Word& w : lang)
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j <= w.size(); ++j) dist_[w.substr(i, j - i)].insert({w.substr(0, i), w.substr(j)});
  }

  const std::map<Word, std::set<Context>>& all() const { return dist_; }

  const std::set<Context>& of(const Word& x) const {
    static const std::set<Context> none;
    auto it = dist_.find(x);
    return it == dist_.end() ? none : it->second;
  }

  bool contains(const Word& w) const { return lang_->count(w) != 0; }

private:
  const Language* lang_;
  std::map<Word, std::set<Context>> dist_;
};

/// Checks one related pair: a shared context, and a context within the
/// bound that separates them. The returned violation is oriented so the
/// distinguishing context belongs to x.
inline std::optional<Violation> check_pair(const DistributionIndex& idx, const Word& x, const Word& y,
                                           std::size_t bound, const Alphabet& sigma) {
  const auto& dx = idx.of(x);
  const auto& dy = idx.of(y);
  std::optional<Context> shared;
  for (const Context& c : dx)
    if (dy.count(c) && (!shared || context_less(sigma, c, *shared))) shared = c;
  if (!shared) return std::nullopt;

  const std::size_t longest = std::max(x.size(), y.size());
  if (longest > bound) return std::nullopt;
  const std::size_t room = bound - longest;
  std::optional<Violation> best;
  auto consider = [&](const std::set<Context>& from, const std::set<Context>& other, const Word& a, const Word& b) {
    for (const Context& c : from) {
      if (c.left.size() + c.right.size() > room || other.count(c)) continue;
      if (!best || context_less(sigma, c, best->distinguishing)) best = Violation{a, b, *shared, c};
    }
  };
  consider(dx, dy, x, y);
  consider(dy, dx, y, x);
  return best;
}

}  // namespace detail

/// Bounded check of: D(x) and D(y) intersect and x ~ y imply D(x) = D(y),
/// over nonempty substrings of `lang`, which must be the target language
/// restricted to length <= bound. Pairs are tried by total length, then
/// length-lex; the first violation is reported.
inline SubstitutabilityVerdict check_substitutable(const Language& lang, const RecognizableRelation& r,
                                                   std::optional<std::size_t> bound = std::nullopt) {
  SubstitutabilityVerdict verdict;
  if (!bound) {
    std::size_t m = 0;
    for (const Word& w : lang) m = std::max(m, w.size());
    bound = m;
  }
  verdict.bound = *bound;
  const Alphabet& sigma = r.alphabet();
  detail::DistributionIndex idx(lang);

  // Candidate pairs share at least one context.
  std::map<Context, std::vector<Word>> by_context;
  for (const auto& [x, ds] : idx.all())
    for (const Context& c : ds) by_context[c].push_back(x);
  std::set<std::pair<Word, Word>> candidates;
  for (auto& [c, group] : by_context)
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        Word a = group[i], b = group[j];
        if (sigma.less(b, a)) std::swap(a, b);
        candidates.emplace(std::move(a), std::move(b));
      }
  std::vector<std::pair<Word, Word>> ordered(candidates.begin(), candidates.end());
  std::sort(ordered.begin(), ordered.end(), [&](const auto& p, const auto& q) {
    std::size_t sp = p.first.size() + p.second.size(), sq = q.first.size() + q.second.size();
    if (sp != sq) return sp < sq;
    if (p.first != q.first) return sigma.less(p.first, q.first);
    return sigma.less(p.second, q.second);
  });

  std::map<Word, Element> image;
  auto img = [&](const Word& w) {
    auto it = image.find(w);
    if (it == image.end()) it = image.emplace(w, r.morphism().eval(w)).first;
    return it->second;
  };
  for (const auto& [x, y] : ordered) {
    if (!r.related_elements(img(x), img(y))) continue;
    if (auto v = detail::check_pair(idx, x, y, *bound, sigma)) {
      verdict.violation = std::move(v);
      return verdict;
    }
  }
  return verdict;
}

/// Checks one specific pair (regardless of whether r relates them).
inline std::optional<Violation> check_pair_substitutable(const Language& lang, const Word& x, const Word& y,
                                                         std::size_t bound, const Alphabet& sigma) {
  detail::DistributionIndex idx(lang);
  return detail::check_pair(idx, x, y, bound, sigma);
}

// ---------------------------------------------------------------- pigeonhole witness

struct Claim5Witness {
  std::size_t n = 0;
  std::size_t k = 0;
  std::array<Word, 4> strings;
  std::array<bool, 4> member_verdicts{};

  /// s1, s2, s3 in the language and s4 outside it.
  bool valid() const { return member_verdicts[0] && member_verdicts[1] && member_verdicts[2] && !member_verdicts[3]; }
};

/// Looks for N, k in [1, n_max] with b^N a^N ~ b^(N+k) a^(N+k); a finite
/// monoid always has such a pair once n_max exceeds its size. The four
/// strings place the two factors in a shared context and in a context only
/// the shorter one fits, and are checked against S -> a S S | b.
inline std::optional<Claim5Witness> find_claim5_witness(const RecognizableRelation& r, std::size_t n_max) {
  const auto& sigma = r.alphabet();
  if (!sigma.contains(U'a') || !sigma.contains(U'b')) throw InvalidArgument("relation alphabet must contain 'a' and 'b'");
  auto factor = [](std::size_t m) { return repeat(U'b', m) + repeat(U'a', m); };
  const Cfg lang = lukasiewicz_grammar();

  for (std::size_t n = 1; n <= n_max; ++n)
    for (std::size_t k = 1; k <= n_max; ++k) {
      if (!r.related(factor(n), factor(n + k))) continue;
      Claim5Witness w;
      w.n = n;
      w.k = k;
      const std::size_t nk = n + k;
      w.strings[0] = repeat(U'a', nk) + factor(n) + repeat(U'b', nk + 1);
      w.strings[1] = repeat(U'a', nk) + factor(nk) + repeat(U'b', nk + 1);
      w.strings[2] = repeat(U'a', n) + factor(n) + repeat(U'b', n + 1);
      w.strings[3] = repeat(U'a', n) + factor(nk) + repeat(U'b', n + 1);
      for (std::size_t i = 0; i < 4; ++i) w.member_verdicts[i] = member(lang, w.strings[i]);
      return w;
    }
  return std::nullopt;
}

// ---------------------------------------------------------------- build cost

struct BuildMetrics {
  double build_ms = 0;
  std::size_t sample_size = 0;
  std::size_t desk = 0;
  std::size_t max_len = 0;
  std::size_t nonterminals = 0;
  RuleFamilies families;

  std::size_t substring_capacity = 0;  // sum over K of |w|(|w|+1)/2

  // Cost shapes for each rule family with unit constants: unary pairs
  // #K^2 (M(M-1))^2, start rules Desk(K), splits #K M(M-1)(M-1), where
  // M = MaxLen(K). The unary shape dominates the pair count once M >= 3.
  std::size_t unary_bound() const {
    std::size_t mm = max_len * (max_len == 0 ? 0 : max_len - 1);
    return sample_size * sample_size * mm * mm;
  }
  std::size_t start_bound() const { return desk; }
  std::size_t binary_bound() const { return sample_size * max_len * (max_len == 0 ? 0 : (max_len - 1) * (max_len - 1)); }
  std::size_t nonterminal_bound() const { return substring_capacity + 1; }

  bool within_bounds() const {
    return families.unary <= unary_bound() && families.start <= start_bound() && families.binary <= binary_bound() &&
           nonterminals <= nonterminal_bound();
  }
};

inline BuildMetrics measure_build(const Sample& k, const RecognizableRelation& r) {
  BuildMetrics m;
  auto t0 = std::chrono::steady_clock::now();
  auto h = build_hypothesis_detailed(k, r);
  m.build_ms = detail::elapsed_ms(t0);
  m.sample_size = k.size();
  m.desk = k.desk();
  m.max_len = k.max_len();
  for (const Word& w : k.strings()) m.substring_capacity += w.size() * (w.size() + 1) / 2;
  m.nonterminals = h.grammar.nonterminal_count();
  m.families = h.families;
  return m;
}

// ---------------------------------------------------------------- reports

inline std::string to_key_values(const ConvergenceReport& rep) {
  std::ostringstream out;
  out << "converged=" << (rep.converged ? "true" : "false") << '\n';
  out << "convergence_index=";
  if (rep.convergence_index) out << *rep.convergence_index;
  else out << "none";
  out << '\n';
  out << "final_equivalent=" << (rep.final_equivalent ? "true" : "false") << '\n';
  out << "rebuilds=" << rep.rebuilds << '\n';
  out << "desk=" << rep.desk() << '\n';
  out << "rules_total=" << rep.rules_total() << '\n';
  return out.str();
}

inline std::string to_text(const ConvergenceReport& rep) {
  std::ostringstream out;
  out << "presentation length: " << rep.presentation_length << '\n';
  out << "converged: " << (rep.converged ? "yes" : "no");
  if (rep.convergence_index) out << " (last change at n=" << *rep.convergence_index << ")";
  out << '\n';
  out << "rebuilds: " << rep.rebuilds << '\n';
  out << "final hypothesis equivalent up to length " << rep.check_len << ": " << (rep.final_equivalent ? "yes" : "no")
      << '\n';
  if (rep.overgenerated) out << "over-generated: " << to_utf8(*rep.overgenerated) << '\n';
  if (rep.undergenerated) out << "under-generated: " << to_utf8(*rep.undergenerated) << '\n';
  for (std::size_t i = 0; i < rep.sizes.size(); ++i)
    out << "step " << i + 1 << ": desk=" << rep.sizes[i].desk << " nonterminals=" << rep.sizes[i].nonterminals
        << " rules=" << rep.sizes[i].rules << '\n';
  return out.str();
}

inline std::string to_text(const Claim5Witness& w) {
  std::ostringstream out;
  out << "witness_n=" << w.n << '\n';
  out << "witness_k=" << w.k << '\n';
  for (std::size_t i = 0; i < 4; ++i) {
    out << 's' << i + 1 << ": " << to_utf8(w.strings[i]) << '\n';
    out << 's' << i + 1 << " member: " << (w.member_verdicts[i] ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace relsub
