// Recognizable equivalence relations on strings: a finite monoid, a
// homomorphism from the free monoid into it, and a set of related element
// pairs. Two strings are related iff their images form a related pair.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "relsub/word.hpp"

namespace relsub {

using Element = std::uint32_t;

/// Finite monoid given by a dense operation table over elements 0..size-1.
class FiniteMonoid {
public:
  FiniteMonoid(std::size_t size, Element identity, std::vector<Element> table)
      : size_(size), identity_(identity), table_(std::move(table)) {
    if (size_ == 0) throw InvalidArgument("monoid must have at least one element");
    if (identity_ >= size_) throw InvalidArgument("identity is not an element index");
    if (table_.size() != size_ * size_) throw InvalidArgument("operation table must be size x size");
    for (Element e : table_)
      if (e >= size_) throw InvalidArgument("operation table entry out of range");
  }

  std::size_t size() const noexcept { return size_; }
  Element identity() const noexcept { return identity_; }
  Element op(Element x, Element y) const { return table_[x * size_ + y]; }
  const std::vector<Element>& table() const noexcept { return table_; }

private:
  std::size_t size_;
  Element identity_;
  std::vector<Element> table_;
};

/// Homomorphism from strings over `alphabet` into a finite monoid, fixed by
/// the image of each symbol.
class MonoidMorphism {
public:
  MonoidMorphism(FiniteMonoid monoid, Alphabet alphabet, std::vector<Element> symbol_map)
      : monoid_(std::move(monoid)), alphabet_(std::move(alphabet)), symbol_map_(std::move(symbol_map)) {
    if (symbol_map_.size() != alphabet_.size()) throw InvalidArgument("one image per alphabet symbol required");
    for (Element e : symbol_map_)
      if (e >= monoid_.size()) throw InvalidArgument("symbol image is not an element index");
  }

  const FiniteMonoid& monoid() const noexcept { return monoid_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Element>& symbol_map() const noexcept { return symbol_map_; }

  Element image(Symbol s) const { return symbol_map_[alphabet_.rank(s)]; }

  Element eval(WordView w) const {
    Element acc = monoid_.identity();
    for (Symbol s : w) acc = monoid_.op(acc, image(s));
    return acc;
  }

  /// Elements reachable as images of strings, in discovery order.
  std::vector<Element> reachable() const {
    std::vector<char> seen(monoid_.size(), 0);
    std::vector<Element> order{monoid_.identity()};
    seen[monoid_.identity()] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Element g : symbol_map_) {
        Element next = monoid_.op(order[i], g);
        if (!seen[next]) {
          seen[next] = 1;
          order.push_back(next);
        }
      }
    }
    return order;
  }

private:
  FiniteMonoid monoid_;
  Alphabet alphabet_;
  std::vector<Element> symbol_map_;
};

class RecognizableRelation {
public:
  RecognizableRelation(MonoidMorphism morphism, const std::vector<std::pair<Element, Element>>& related_pairs)
      : morphism_(std::move(morphism)), related_(morphism_.monoid().size() * morphism_.monoid().size(), 0) {
    const auto n = morphism_.monoid().size();
    for (auto [p, q] : related_pairs) {
      if (p >= n || q >= n) throw InvalidArgument("related pair refers to a non-element");
      related_[p * n + q] = 1;
    }
  }

  const MonoidMorphism& morphism() const noexcept { return morphism_; }
  const Alphabet& alphabet() const noexcept { return morphism_.alphabet(); }

  bool related_elements(Element p, Element q) const { return related_[p * morphism_.monoid().size() + q] != 0; }

  bool related(WordView x, WordView y) const { return related_elements(morphism_.eval(x), morphism_.eval(y)); }

  std::vector<std::pair<Element, Element>> related_pairs() const {
    std::vector<std::pair<Element, Element>> out;
    const auto n = static_cast<Element>(morphism_.monoid().size());
    for (Element p = 0; p < n; ++p)
      for (Element q = 0; q < n; ++q)
        if (related_elements(p, q)) out.emplace_back(p, q);
    return out;
  }

private:
  MonoidMorphism morphism_;
  std::vector<char> related_;
};

namespace detail {

inline std::vector<std::pair<Element, Element>> diagonal(std::size_t n) {
  std::vector<std::pair<Element, Element>> d;
  for (Element i = 0; i < n; ++i) d.emplace_back(i, i);
  return d;
}

}  // namespace detail

/// All strings related: the one-element monoid.
inline RecognizableRelation make_trivial(const Alphabet& alphabet) {
  if (alphabet.empty()) throw InvalidArgument("alphabet must be nonempty");
  FiniteMonoid m(1, 0, {0});
  return RecognizableRelation(MonoidMorphism(m, alphabet, std::vector<Element>(alphabet.size(), 0)), {{0, 0}});
}

/// x ~ y iff x = y, or both have length >= k+l with the same k-prefix and
/// the same l-suffix.
///
/// Elements are the strings shorter than k+l (kept exactly) followed by one
/// element per (k-prefix, l-suffix) pair. Each element has a representative
/// string, and the product of two elements is the canonical form of the
/// concatenated representatives.
inline RecognizableRelation make_kl(std::size_t k, std::size_t l, const Alphabet& alphabet) {
  if (alphabet.empty()) throw InvalidArgument("alphabet must be nonempty");
  const std::size_t span = k + l;

  std::vector<Word> reps;
  std::map<Word, Element> short_index;
  // Strings of each length < span, generated level by level in length-lex order.
  std::vector<Word> level{Word{}};
  for (std::size_t len = 0; len < span; ++len) {
    std::vector<Word> next;
    for (const Word& w : level) {
      short_index.emplace(w, static_cast<Element>(reps.size()));
      reps.push_back(w);
      for (Symbol s : alphabet.symbols()) next.push_back(w + s);
    }
    level = std::move(next);
  }
  std::map<std::pair<Word, Word>, Element> sat_index;
  auto all_words = [&](std::size_t len) {
    std::vector<Word> ws{Word{}};
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Word> next;
      for (const Word& w : ws)
        for (Symbol s : alphabet.symbols()) next.push_back(w + s);
      ws = std::move(next);
    }
    return ws;
  };
  for (const Word& u : all_words(k))
    for (const Word& v : all_words(l)) {
      sat_index.emplace(std::pair{u, v}, static_cast<Element>(reps.size()));
      reps.push_back(u + v);
    }

  auto canonical = [&](const Word& w) -> Element {
    if (w.size() < span) return short_index.at(w);
    return sat_index.at({w.substr(0, k), w.substr(w.size() - l)});
  };

  const std::size_t n = reps.size();
  std::vector<Element> table(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) table[p * n + q] = canonical(reps[p] + reps[q]);

  std::vector<Element> images;
  for (Symbol s : alphabet.symbols()) images.push_back(canonical(Word(1, s)));
  FiniteMonoid m(n, canonical(Word{}), std::move(table));
  return RecognizableRelation(MonoidMorphism(std::move(m), alphabet, std::move(images)), detail::diagonal(n));
}

/// x ~ y iff both contain `a` the same number of times (at most d), or both
/// contain it more than d times. Elements are 0..d plus d+1 standing for
/// "more than d", composed by saturating addition.
inline RecognizableRelation make_count(Symbol a, std::size_t d, const Alphabet& alphabet) {
  if (!alphabet.contains(a)) throw SymbolNotInAlphabet(a);
  const std::size_t n = d + 2;
  std::vector<Element> table(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) table[p * n + q] = static_cast<Element>(std::min(p + q, d + 1));
  std::vector<Element> images;
  for (Symbol s : alphabet.symbols()) images.push_back(s == a ? 1 : 0);
  return RecognizableRelation(MonoidMorphism(FiniteMonoid(n, 0, std::move(table)), alphabet, std::move(images)),
                              detail::diagonal(n));
}

/// Conjunction of two relations over the direct-product monoid.
inline RecognizableRelation make_product(const RecognizableRelation& r1, const RecognizableRelation& r2) {
  if (!(r1.alphabet() == r2.alphabet())) throw InvalidArgument("product requires identical alphabets");
  const auto& m1 = r1.morphism().monoid();
  const auto& m2 = r2.morphism().monoid();
  const std::size_t n1 = m1.size(), n2 = m2.size(), n = n1 * n2;
  auto pack = [n2](std::size_t a, std::size_t b) { return static_cast<Element>(a * n2 + b); };

  std::vector<Element> table(n * n);
  for (std::size_t p1 = 0; p1 < n1; ++p1)
    for (std::size_t p2 = 0; p2 < n2; ++p2)
      for (std::size_t q1 = 0; q1 < n1; ++q1)
        for (std::size_t q2 = 0; q2 < n2; ++q2)
          table[pack(p1, p2) * n + pack(q1, q2)] =
              pack(m1.op(static_cast<Element>(p1), static_cast<Element>(q1)),
                   m2.op(static_cast<Element>(p2), static_cast<Element>(q2)));

  std::vector<Element> images;
  for (std::size_t i = 0; i < r1.alphabet().size(); ++i)
    images.push_back(pack(r1.morphism().symbol_map()[i], r2.morphism().symbol_map()[i]));

  std::vector<std::pair<Element, Element>> pairs;
  for (auto [p1, q1] : r1.related_pairs())
    for (auto [p2, q2] : r2.related_pairs()) pairs.emplace_back(pack(p1, p2), pack(q1, q2));

  FiniteMonoid m(n, pack(m1.identity(), m2.identity()), std::move(table));
  return RecognizableRelation(MonoidMorphism(std::move(m), r1.alphabet(), std::move(images)), pairs);
}

/// Checks the monoid laws on the whole table and the equivalence laws of
/// the related pairs on the submonoid reachable from the symbol images.
/// An empty result means the relation is a valid recognizable equivalence.
inline std::vector<std::string> validate_relation(const RecognizableRelation& r) {
  std::vector<std::string> diags;
  const auto& m = r.morphism().monoid();
  const auto n = static_cast<Element>(m.size());
  const Element e = m.identity();
  auto str = [](Element x) { return std::to_string(x); };

  for (Element x = 0; x < n; ++x) {
    if (m.op(e, x) != x) diags.push_back("identity law fails: op(identity, " + str(x) + ") != " + str(x));
    if (m.op(x, e) != x) diags.push_back("identity law fails: op(" + str(x) + ", identity) != " + str(x));
  }
  auto first_assoc_failure = [&]() -> std::string {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (Element z = 0; z < n; ++z)
          if (m.op(m.op(x, y), z) != m.op(x, m.op(y, z)))
            return "associativity fails at (" + str(x) + ", " + str(y) + ", " + str(z) + ")";
    return {};
  };
  if (auto msg = first_assoc_failure(); !msg.empty()) diags.push_back(msg);

  const auto reach = r.morphism().reachable();
  for (Element p : reach)
    if (!r.related_elements(p, p)) diags.push_back("reflexivity fails at " + str(p));
  for (Element p : reach)
    for (Element q : reach)
      if (r.related_elements(p, q) && !r.related_elements(q, p))
        diags.push_back("symmetry fails: (" + str(p) + ", " + str(q) + ") related but not the reverse");
  for (Element p : reach)
    for (Element q : reach) {
      if (!r.related_elements(p, q)) continue;
      for (Element s : reach)
        if (r.related_elements(q, s) && !r.related_elements(p, s))
          diags.push_back("transitivity fails: " + str(p) + " ~ " + str(q) + " ~ " + str(s));
    }
  return diags;
}

}  // namespace relsub
