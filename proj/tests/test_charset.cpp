#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace relsub;

namespace {

Word w(const char* s) { return from_utf8(s); }

Language lang(std::initializer_list<const char*> ws) {
  Language out;
  for (const char* s : ws) out.insert(w(s));
  return out;
}

NtId nt(const Cfg& g, const char* name) { return *g.find(name); }

std::vector<Cfg> corpus_cnf() {
  std::vector<Cfg> out;
  for (const char* name : {"anbn", "lukasiewicz", "one_a", "single", "ancbn"}) out.push_back(to_cnf(oracle::grammar(name)));
  return out;
}

std::vector<RecognizableRelation> relations(const Alphabet& sigma) {
  std::vector<RecognizableRelation> out{make_trivial(sigma), make_kl(1, 1, sigma)};
  if (sigma.contains(U'a')) out.push_back(make_count(U'a', 1, sigma));
  return out;
}

}  // namespace

TEST(Omega, SpecExamples) {
  Cfg g = oracle::grammar("anbn");
  EXPECT_EQ(omega(g, std::vector<GSym>{GSym::term(U'a')}), w("a"));
  EXPECT_EQ(omega(g, nt(g, "S")), w("ab"));
  EXPECT_EQ(omega(g, nt(g, "X")), w("abb"));
  EXPECT_EQ(omega(g, std::vector<GSym>{GSym::nt(nt(g, "A")), GSym::nt(nt(g, "X"))}), w("aabb"));
  EXPECT_EQ(omega(g, std::vector<GSym>{}), w(""));
}

TEST(Omega, UnproductiveIsAnError) {
  Cfg g = parse_grammar("S -> 'a' | U\nU -> U 'b'");
  EXPECT_THROW(omega(g, nt(g, "U")), InvalidArgument);
}

TEST(Omega, IsLengthLexNotLex) {
  // Pure lexicographic order has no minimum in a*b; length-lex gives b.
  Cfg g = parse_grammar("S -> 'a' S | 'b'");
  EXPECT_EQ(omega(g, g.start()), w("b"));
}

TEST(Chi, SpecExamples) {
  Cfg g = oracle::grammar("anbn");
  EXPECT_EQ(chi(g, g.start()), (Context{}));
  EXPECT_EQ(chi(g, nt(g, "A")), (Context{w(""), w("b")}));
  EXPECT_EQ(chi(g, nt(g, "B")), (Context{w("a"), w("")}));
  EXPECT_EQ(chi(g, nt(g, "X")), (Context{w("a"), w("")}));
}

TEST(Chi, UnreachableIsAnError) {
  Cfg g = parse_grammar("S -> 'a'\nZ -> 'z'");
  EXPECT_THROW(chi(g, nt(g, "Z")), InvalidArgument);
}

TEST(Chi, TieBreaksOnTheLeftFlank) {
  // A occurs in contexts (b, λ) and (λ, a): equal length, shorter left wins.
  Cfg g = parse_grammar("S -> 'b' A | A 'a'\nA -> 'c'");
  EXPECT_EQ(chi(g, nt(g, "A")), (Context{w(""), w("a")}));
}

TEST(OmegaChi, MatchBruteForce) {
  for (const Cfg& g : corpus_cnf())
    for (NtId a = 0; a < g.nonterminal_count(); ++a) {
      auto y = oracle::min_yield(g, a, 8);
      ASSERT_TRUE(y);
      EXPECT_EQ(omega(g, a), *y) << g.name(a);
      auto c = oracle::min_context(g, a, 6);
      ASSERT_TRUE(c) << g.name(a);
      EXPECT_EQ(chi(g, a), *c) << g.name(a);
    }
}

TEST(CharSet, SpecExamples) {
  EXPECT_EQ(char_set(oracle::grammar("anbn")), lang({"ab", "aabb"}));
  EXPECT_EQ(char_set(oracle::grammar("single")), lang({"a"}));
}

TEST(CharSet, NeedsATrimGrammar) {
  EXPECT_THROW(char_set(parse_grammar("S -> 'a'\nZ -> 'z'")), InvalidArgument);
}

TEST(CharSet, SharedRightHandSideTakesTheSmallestContext) {
  // 'b' is the rhs of both B and C; C sits in the smaller context (λ, λ).
  Cfg g = parse_grammar("S -> 'a' B | C\nB -> 'b'\nC -> 'b'");
  EXPECT_EQ(char_set(g), lang({"ab", "b"}));
}

TEST(CharSet, IsPositiveData) {
  for (const Cfg& g : corpus_cnf())
    for (const auto& r : relations(g.alphabet())) {
      Cfg typed = type_transform(g, r.morphism());
      for (const Word& x : char_set(typed)) EXPECT_TRUE(member(g, x)) << to_utf8(x);
    }
}

TEST(CharSet, RemarkOneHolds) {
  for (const Cfg& g : corpus_cnf()) {
    std::vector<Cfg> grammars{g};
    for (const auto& r : relations(g.alphabet())) grammars.push_back(type_transform(g, r.morphism()));
    for (const Cfg& h : grammars) {
      auto cs = char_set(h);
      for (NtId a = 0; a < h.nonterminal_count(); ++a)
        EXPECT_TRUE(cs.count(chi(h, a).wrap(omega(h, a)))) << h.name(a);
    }
  }
}

TEST(TypeTransform, TrivialMonoidIsARenaming) {
  Cfg g = to_cnf(oracle::grammar("anbn"));
  Cfg t = type_transform(g, make_trivial(g.alphabet()).morphism());
  EXPECT_EQ(t.nonterminal_count(), g.nonterminal_count() + 1);
  for (NtId a = 0; a < g.nonterminal_count(); ++a) EXPECT_TRUE(t.find(typed_name(g.name(a), 0)));
  EXPECT_EQ(t.name(t.start()), "S'");
  EXPECT_TRUE(equivalent_up_to(g, t, 8));
}

TEST(TypeTransform, CountedCopyOfLukasiewicz) {
  Cfg g = to_cnf(oracle::grammar("lukasiewicz"));
  auto r = make_count(U'a', 1, g.alphabet());
  Cfg t = type_transform(g, r.morphism());
  Language expect;
  for (const Word& x : enumerate(g, 7))
    if (count_occurrences(U'a', x) >= 2) expect.insert(x);
  EXPECT_EQ(enumerate_from(t, nt(t, "S_2"), 7), expect);
}

TEST(TypeTransform, RequiresCnfWithoutLambda) {
  EXPECT_THROW(type_transform(oracle::grammar("lukasiewicz"), make_trivial(Alphabet{U'a', U'b'}).morphism()),
               InvalidArgument);
  Cfg lam = to_cnf(parse_grammar("S -> 'a' S | ()"));
  EXPECT_THROW(type_transform(lam, make_trivial(lam.alphabet()).morphism()), PremiseViolation);
}

TEST(TypeTransform, TypedYieldsAreSoundAndComplete) {
  for (const Cfg& g : corpus_cnf())
    for (const auto& r : relations(g.alphabet())) {
      const auto& h = r.morphism();
      Cfg t = type_transform(g, h);
      ASSERT_TRUE(equivalent_up_to(g, t, 8));
      auto typed_langs = enumerate_all(t, 7);
      auto plain_langs = enumerate_all(g, 7);
      for (NtId a = 0; a < g.nonterminal_count(); ++a)
        for (Element p : h.reachable()) {
          Language expect;
          for (const Word& x : plain_langs[a])
            if (h.eval(x) == p) expect.insert(x);
          auto id = t.find(typed_name(g.name(a), p));
          if (!id) {
            // Trimmed away only when no string of A maps to p.
            EXPECT_TRUE(expect.empty()) << typed_name(g.name(a), p);
            continue;
          }
          for (const Word& x : typed_langs[*id]) ASSERT_EQ(h.eval(x), p);
          EXPECT_EQ(typed_langs[*id], expect) << t.name(*id);
        }
    }
}
