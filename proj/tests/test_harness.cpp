#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace relsub;

namespace {

const Alphabet ab{U'a', U'b'};

Word w(const char* s) { return from_utf8(s); }

std::vector<Word> words(std::initializer_list<const char*> ws) {
  std::vector<Word> out;
  for (const char* s : ws) out.push_back(w(s));
  return out;
}

// Independent check of a reported violation against the bounded language.
void expect_genuine(const Language& lang, const RecognizableRelation& r, const Violation& v, std::size_t bound) {
  EXPECT_TRUE(r.related(v.x, v.y));
  EXPECT_TRUE(lang.count(v.shared.wrap(v.x)));
  EXPECT_TRUE(lang.count(v.shared.wrap(v.y)));
  EXPECT_TRUE(lang.count(v.distinguishing.wrap(v.x)));
  EXPECT_FALSE(lang.count(v.distinguishing.wrap(v.y)));
  EXPECT_LE(v.distinguishing.wrap(v.y).size(), bound);
}

// Brute force: is there any related pair of substrings with a shared context
// and a context, short enough for both, that tells them apart?
bool has_violation(const Language& lang, const RecognizableRelation& r, std::size_t bound) {
  Language subs;
  for (const Word& x : lang)
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j <= x.size(); ++j) subs.insert(x.substr(i, j - i));
  for (const Word& x : subs)
    for (const Word& y : subs) {
      if (x == y || !r.related(x, y)) continue;
      auto dx = oracle::distribution(lang, x), dy = oracle::distribution(lang, y);
      if (std::none_of(dx.begin(), dx.end(), [&](const Context& c) { return dy.count(c) != 0; })) continue;
      for (const Context& c : dx)
        if (!dy.count(c) && c.left.size() + c.right.size() + std::max(x.size(), y.size()) <= bound) return true;
    }
  return false;
}

}  // namespace

TEST(Presentation, SpecExamples) {
  EXPECT_EQ(presentation_lenlex(oracle::grammar("lukasiewicz"), 5), words({"b", "abb", "aabbb", "ababb"}));
  EXPECT_EQ(presentation_lenlex(oracle::grammar("anbn"), 6), words({"ab", "aabb", "aaabbb"}));
  EXPECT_TRUE(presentation_lenlex(Cfg(ab), 6).empty());
  EXPECT_THROW(presentation_lenlex(parse_grammar("S -> 'a' S | ()"), 3), PremiseViolation);
}

TEST(Convergence, OneAUnderCounting) {
  auto rep = run_convergence(oracle::grammar("one_a"), make_count(U'a', 1, ab), 6, 12);
  EXPECT_TRUE(rep.converged);
  EXPECT_TRUE(rep.final_equivalent);
  ASSERT_TRUE(rep.convergence_index);
  EXPECT_LE(*rep.convergence_index, rep.presentation_length);
  EXPECT_EQ(rep.sizes.size(), rep.presentation_length);
  EXPECT_EQ(rep.timings_ms.size(), rep.presentation_length);
}

TEST(Convergence, AncbnUnderEquality) {
  Cfg g = oracle::grammar("ancbn");
  auto rep = run_convergence(g, make_trivial(g.alphabet()), 7, 12);
  EXPECT_TRUE(rep.converged);
  EXPECT_TRUE(rep.final_equivalent);
}

TEST(Convergence, AnbnUnderEqualityOvergenerates) {
  auto rep = run_convergence(oracle::grammar("anbn"), make_trivial(ab), 8, 12);
  EXPECT_FALSE(rep.final_equivalent);
  ASSERT_TRUE(rep.overgenerated);
  EXPECT_EQ(*rep.overgenerated, w("aababb"));
  EXPECT_FALSE(rep.undergenerated);
}

TEST(Convergence, LukasiewiczIsIdentifiedFromLengthLexData) {
  // The first four strings already give a hypothesis whose unary rules only
  // link truly congruent factors, so nothing later forces a rebuild.
  auto rep = run_convergence(lukasiewicz_grammar(), make_kl(1, 1, ab), 9, 12);
  EXPECT_EQ(rep.convergence_index, 4u);
  EXPECT_TRUE(rep.final_equivalent);
}

TEST(Convergence, EmptyPresentation) {
  auto rep = run_convergence(Cfg(ab), make_trivial(ab), 5, 5);
  EXPECT_FALSE(rep.converged);
  EXPECT_FALSE(rep.convergence_index);
  EXPECT_TRUE(rep.final_equivalent);
}

TEST(Convergence, KeyValueFormat) {
  auto rep = run_convergence(oracle::grammar("one_a"), make_count(U'a', 1, ab), 6, 8);
  std::string kv = to_key_values(rep);
  for (const char* key : {"converged=true\n", "final_equivalent=true\n", "convergence_index=", "rebuilds=", "desk=",
                          "rules_total="})
    EXPECT_NE(kv.find(key), std::string::npos) << key;
  EXPECT_EQ(std::count(kv.begin(), kv.end(), '\n'), 6);
}

TEST(Completeness, SpecExamples) {
  auto anbn = completeness_check(oracle::grammar("anbn"), make_trivial(ab), 12);
  EXPECT_EQ(anbn.sample.strings(), (std::set<Word>{w("ab"), w("aabb")}));
  EXPECT_TRUE(anbn.holds);
  auto single = completeness_check(oracle::grammar("single"), make_trivial(Alphabet{U'a'}), 6);
  EXPECT_EQ(single.sample.strings(), (std::set<Word>{w("a")}));
  EXPECT_TRUE(single.holds);
  auto one_a = completeness_check(oracle::grammar("one_a"), make_count(U'a', 1, ab), 10);
  EXPECT_TRUE(one_a.holds);
}

TEST(Completeness, HoldsForEveryCorpusPair) {
  for (const char* name : {"anbn", "lukasiewicz", "one_a", "ancbn"}) {
    Cfg g = oracle::grammar(name);
    std::vector<RecognizableRelation> rs{make_trivial(g.alphabet()), make_kl(1, 1, g.alphabet()),
                                         make_count(U'a', 1, g.alphabet())};
    for (const auto& r : rs) EXPECT_TRUE(completeness_check(g, r, 9).holds) << name;
  }
}

TEST(Soundness, SpecExamples) {
  auto one_a = oracle::grammar("one_a");
  auto pres = presentation_lenlex(one_a, 6);
  for (std::size_t m = 1; m <= pres.size(); m += 3) {
    Sample k(std::vector<Word>(pres.begin(), pres.begin() + static_cast<std::ptrdiff_t>(m)));
    EXPECT_TRUE(soundness_check(one_a, make_count(U'a', 1, ab), k, 10).holds);
  }
  auto luk = soundness_check(lukasiewicz_grammar(), make_kl(1, 1, ab), Sample(presentation_lenlex(lukasiewicz_grammar(), 9)), 7);
  EXPECT_FALSE(luk.holds);
  EXPECT_EQ(luk.offending, w("abbab"));
}

TEST(Soundness, AnbnIsNotSubstitutable) {
  auto rep = soundness_check(oracle::grammar("anbn"), make_trivial(ab), Sample{w("ab"), w("aabb")}, 12);
  EXPECT_FALSE(rep.holds);
  EXPECT_EQ(rep.offending, w("aababb"));
  EXPECT_TRUE(soundness_check(oracle::grammar("anbn"), make_trivial(ab), Sample{w("ab")}, 12).holds);
}

TEST(Soundness, SampleMustBeInTheTarget) {
  EXPECT_THROW(soundness_check(oracle::grammar("anbn"), make_trivial(ab), Sample{w("ba")}, 6), InvalidArgument);
}

TEST(CheckSubstitutable, SpecExamples) {
  auto one_a = enumerate(oracle::grammar("one_a"), 8);
  EXPECT_FALSE(check_substitutable(one_a, make_count(U'a', 1, ab)).violation);

  auto kl = check_substitutable(one_a, make_kl(1, 1, ab));
  ASSERT_TRUE(kl.violation);
  expect_genuine(one_a, make_kl(1, 1, ab), *kl.violation, 8);

  auto luk = enumerate(lukasiewicz_grammar(), 13);
  auto v = check_substitutable(luk, make_kl(1, 1, ab));
  ASSERT_TRUE(v.violation);
  EXPECT_EQ(v.bound, 13u);
  expect_genuine(luk, make_kl(1, 1, ab), *v.violation, 13);
}

TEST(CheckSubstitutable, AnbnViolation) {
  auto anbn = enumerate(oracle::grammar("anbn"), 10);
  auto v = check_substitutable(anbn, make_trivial(ab));
  ASSERT_TRUE(v.violation);
  EXPECT_EQ(v.violation->x, w("a"));
  EXPECT_EQ(v.violation->y, w("aab"));
  EXPECT_EQ(v.violation->shared, (Context{w(""), w("b")}));
  EXPECT_EQ(v.violation->distinguishing, (Context{w(""), w("abb")}));
  auto ancbn = oracle::grammar("ancbn");
  EXPECT_FALSE(check_substitutable(enumerate(ancbn, 11), make_trivial(ancbn.alphabet())).violation);
}

TEST(CheckSubstitutable, PaperPairForOneA) {
  auto one_a = enumerate(oracle::grammar("one_a"), 8);
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::size_t l = 1; l <= 2; ++l) {
      Word x = repeat(U'b', k) + w("b") + repeat(U'b', l), y = repeat(U'b', k) + w("a") + repeat(U'b', l);
      ASSERT_TRUE(make_kl(k, l, ab).related(x, y));
      auto v = check_pair_substitutable(one_a, x, y, 8, ab);
      ASSERT_TRUE(v);
      EXPECT_EQ(v->x, x);
      const Context& c = v->distinguishing;
      EXPECT_EQ(count_occurrences(U'a', c.left), 0u);
      ASSERT_FALSE(c.right.empty());
      EXPECT_EQ(c.right[0], U'a');
      EXPECT_EQ(count_occurrences(U'a', c.right), 1u);
    }
}

TEST(CheckSubstitutable, AgreesWithBruteForce) {
  std::mt19937 rng(7);
  const auto pool = oracle::all_words(ab, 5);
  std::vector<RecognizableRelation> rs{make_trivial(ab), make_kl(1, 1, ab), make_count(U'a', 1, ab)};
  for (int round = 0; round < 60; ++round) {
    Language lang;
    std::uniform_int_distribution<std::size_t> pick(1, pool.size() - 1);
    for (int i = 0; i < 6; ++i) lang.insert(pool[pick(rng)]);
    for (const auto& r : rs) {
      auto v = check_substitutable(lang, r, 5);
      ASSERT_EQ(v.violation.has_value(), has_violation(lang, r, 5));
      if (v.violation) expect_genuine(lang, r, *v.violation, 5);
    }
  }
}

TEST(Witness, SpecExamples) {
  auto kl = find_claim5_witness(make_kl(1, 1, ab), 5);
  ASSERT_TRUE(kl);
  EXPECT_EQ(kl->n, 1u);
  EXPECT_EQ(kl->k, 1u);
  EXPECT_EQ(kl->strings[2], w("ababb"));
  EXPECT_EQ(kl->strings[3], w("abbaabb"));
  EXPECT_TRUE(kl->valid());

  auto count = find_claim5_witness(make_count(U'a', 1, ab), 5);
  ASSERT_TRUE(count);
  EXPECT_TRUE(count->valid());
  EXPECT_TRUE(make_count(U'a', 1, ab).related(repeat(U'b', count->n) + repeat(U'a', count->n),
                                             repeat(U'b', count->n + count->k) + repeat(U'a', count->n + count->k)));

  auto trivial = find_claim5_witness(make_trivial(ab), 1);
  ASSERT_TRUE(trivial);
  EXPECT_EQ(trivial->n, 1u);
  EXPECT_EQ(trivial->k, 1u);
}

TEST(Witness, StringsAreCheckedByMembership) {
  for (std::size_t d = 0; d <= 3; ++d) {
    auto wt = find_claim5_witness(make_count(U'a', d, ab), 6);
    ASSERT_TRUE(wt);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(wt->member_verdicts[i], oracle::derives(lukasiewicz_grammar(), wt->strings[i]));
    EXPECT_TRUE(wt->valid());
  }
}

TEST(Witness, NoneWhenTheMonoidOutgrowsTheBound) {
  EXPECT_FALSE(find_claim5_witness(make_count(U'a', 10, ab), 3));
  EXPECT_THROW(find_claim5_witness(make_trivial(Alphabet{U'a'}), 3), InvalidArgument);
}

TEST(Witness, TextFormat) {
  auto text = to_text(*find_claim5_witness(make_kl(1, 1, ab), 5));
  EXPECT_EQ(text.substr(0, 22), "witness_n=1\nwitness_k=");
  EXPECT_EQ(text.substr(text.size() - 17), "s4 member: false\n");
}

TEST(MeasureBuild, SpecExamples) {
  auto one = measure_build(Sample{w("ab")}, make_trivial(ab));
  EXPECT_EQ(one.families.total(), 4u);
  auto none = measure_build(Sample{}, make_trivial(ab));
  EXPECT_EQ(none.families.total(), 0u);
  EXPECT_EQ(none.nonterminals, 1u);
  EXPECT_TRUE(none.within_bounds());

  std::mt19937 rng(11);
  Sample k;
  while (k.desk() < 200) {
    std::uniform_int_distribution<std::size_t> len(5, 15);
    Word x;
    for (std::size_t i = len(rng); i > 0; --i) x.push_back(rng() % 2 ? U'a' : U'b');
    k.add(x);
  }
  auto m = measure_build(k, make_trivial(ab));
  EXPECT_GE(m.desk, 200u);
  EXPECT_TRUE(m.within_bounds());
  EXPECT_EQ(m.families.start, k.size());
}
