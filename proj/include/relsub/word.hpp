// Strings over a finite alphabet of Unicode scalar values, UTF-8 I/O, and
// the length-lexicographic order used for every "minimal string" choice.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace relsub {

using Symbol = char32_t;
using Word = std::u32string;
using WordView = std::u32string_view;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SymbolNotInAlphabet : public Error {
public:
  explicit SymbolNotInAlphabet(Symbol s);
  Symbol symbol() const noexcept { return symbol_; }

private:
  Symbol symbol_;
};

/// Raised when an input violates the learning premise (e.g. the empty string
/// shows up as a positive example).
class PremiseViolation : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------- UTF-8

inline void append_utf8(std::string& out, Symbol c) {
  auto u = static_cast<std::uint32_t>(c);
  if (u < 0x80) {
    out.push_back(static_cast<char>(u));
  } else if (u < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (u >> 6)));
    out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
  } else if (u < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (u >> 12)));
    out.push_back(static_cast<char>(0x80 | ((u >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (u >> 18)));
    out.push_back(static_cast<char>(0x80 | ((u >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((u >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (u & 0x3F)));
  }
}

inline std::string to_utf8(WordView w) {
  std::string out;
  out.reserve(w.size());
  for (Symbol c : w) append_utf8(out, c);
  return out;
}

/// Decodes one scalar value starting at `pos`, advancing it. Throws
/// ParseError on malformed input.
inline Symbol decode_utf8_at(std::string_view s, std::size_t& pos) {
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char b0 = byte(pos);
  std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
  if (len == 0 || pos + len > s.size()) throw ParseError("malformed UTF-8 input");
  std::uint32_t u = len == 1 ? b0 : len == 2 ? (b0 & 0x1F) : len == 3 ? (b0 & 0x0F) : (b0 & 0x07);
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char b = byte(pos + i);
    if ((b >> 6) != 0x2) throw ParseError("malformed UTF-8 input");
    u = (u << 6) | (b & 0x3F);
  }
  pos += len;
  return static_cast<Symbol>(u);
}

inline Word from_utf8(std::string_view s) {
  Word w;
  w.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) w.push_back(decode_utf8_at(s, pos));
  return w;
}

inline SymbolNotInAlphabet::SymbolNotInAlphabet(Symbol s)
    : Error("symbol '" + to_utf8(Word(1, s)) + "' is not in the alphabet"), symbol_(s) {}

// ---------------------------------------------------------------- Alphabet

/// Ordered set of symbols. Declaration order is the symbol order used by
/// every length-lexicographic comparison downstream.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(WordView symbols) {
    for (Symbol s : symbols) add(s);
  }
  Alphabet(std::initializer_list<Symbol> symbols) {
    for (Symbol s : symbols) add(s);
  }

  /// Appends `s` unless already present. Returns its rank.
  std::size_t add(Symbol s) {
    auto [it, inserted] = rank_.emplace(s, symbols_.size());
    if (inserted) symbols_.push_back(s);
    return it->second;
  }

  bool contains(Symbol s) const { return rank_.count(s) != 0; }
  std::size_t rank(Symbol s) const {
    auto it = rank_.find(s);
    if (it == rank_.end()) throw SymbolNotInAlphabet(s);
    return it->second;
  }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const Word& symbols() const noexcept { return symbols_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  bool covers(WordView w) const {
    for (Symbol s : w)
      if (!contains(s)) return false;
    return true;
  }

  /// Length-lexicographic comparison under the declared order. Symbols
  /// outside the alphabet sort after all declared ones, by code point.
  bool less(WordView x, WordView y) const {
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == y[i]) continue;
      return order_key(x[i]) < order_key(y[i]);
    }
    return false;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

private:
  std::uint64_t order_key(Symbol s) const {
    auto it = rank_.find(s);
    return it != rank_.end() ? it->second : symbols_.size() + static_cast<std::uint64_t>(s);
  }

  Word symbols_;
  std::unordered_map<Symbol, std::size_t> rank_;
};

/// Comparator adaptor so containers can be sorted length-lex.
struct LengthLexLess {
  const Alphabet* alphabet;
  bool operator()(WordView x, WordView y) const { return alphabet->less(x, y); }
};

inline std::size_t count_occurrences(Symbol a, WordView w) {
  std::size_t n = 0;
  for (Symbol s : w) n += s == a;
  return n;
}

inline Word repeat(Symbol s, std::size_t n) { return Word(n, s); }

}  // namespace relsub
