#pragma once

// The free associative algebra Q<1,...,d> on words, with the shuffle and
// concatenation products, deconcatenation, the antipode and Lyndon words.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sigvol/exactq.hpp"

namespace sigvol::freealg {

using exactq::Rational;
using Letter = std::uint8_t;

// A finite sequence of letters 1..d. The empty word is the algebra unit e.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  // "e" or a digit string such as "1233".
  static Word parse(std::string_view text);

  std::size_t degree() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  Word slice(std::size_t begin, std::size_t end) const;
  Word reversed() const;
  Letter max_letter() const;

  std::string to_string() const;

  friend Word operator+(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Degree first, then lexicographic: the canonical term order.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.letters() < b.letters();
  }
};

// All words of length k over 1..d in lexicographic order; index i of the
// result is the base-d expansion of i.
std::vector<Word> words_of_degree(int d, std::size_t k);
std::size_t word_index(const Word& w, int d);

class TensorElement {
 public:
  using Terms = std::map<Word, Rational, DegLexLess>;

  explicit TensorElement(int d = 1);
  TensorElement(int d, const Word& w, const Rational& coeff = 1);

  static TensorElement unit(int d) { return TensorElement(d, Word{}); }

  // Whitespace-insensitive: "12 - 2/3*13323 + 2*e". Letters must be <= d.
  static TensorElement parse(std::string_view text, int d);

  int alphabet() const { return d_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Word& w) const;
  void add_term(const Word& w, const Rational& coeff);

  // Lowest and highest word length present; zero element reports (0, 0).
  std::pair<std::size_t, std::size_t> degree_range() const;
  bool is_homogeneous() const;
  TensorElement homogeneous_part(std::size_t k) const;

  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  TensorElement& operator*=(const Rational& c);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(TensorElement a, const Rational& c) { return a *= c; }
  friend TensorElement operator*(const Rational& c, TensorElement a) { return a *= c; }
  friend bool operator==(const TensorElement&, const TensorElement&) = default;

  // Canonical text: terms in degree-lex order, unit coefficients omitted,
  // "0" for the zero element. Requires d <= 9.
  std::string to_string() const;

 private:
  int d_;
  Terms terms_;
};

TensorElement shuffle(const TensorElement& x, const TensorElement& y);
TensorElement concat(const TensorElement& x, const TensorElement& y);
std::vector<std::pair<Word, Word>> deconcat_pairs(const Word& w);

// w -> (-1)^{|w|} reverse(w), extended linearly.
TensorElement antipode(const TensorElement& x);

// x + antipode(x); always a fixed point of the antipode.
TensorElement timerev_project(const TensorElement& x);

TensorElement shuffle_power(const TensorElement& x, std::size_t k);

// Signed volume sum_{sigma in S_m} sgn(sigma) l_{sigma(1)} ... l_{sigma(m)}
// over the given distinct letters, inside the alphabet 1..d.
TensorElement vol(int d, std::span<const Letter> letters);
TensorElement vol(int d);

std::vector<Word> lyndon_words(int d, std::size_t k);

// Word-level shuffle (all interleavings with multiplicity).
TensorElement shuffle_words(int d, const Word& a, const Word& b);

// Coordinates of the degree-k part of x in the basis words_of_degree(d, k).
exactq::Vector to_coordinates(const TensorElement& x, std::size_t k);
TensorElement from_coordinates(int d, std::size_t k, const exactq::Vector& coords);

// Named elements stored in text fixtures. A file is a sequence of blocks:
//
//   # comment
//   [name]
//   d = 3
//   kind = element
//   checks = invariant n=4; timerev
//   12333 + 13233 - 2/3*13323 ...
//
// Body lines are joined with spaces. Keys other than the body are kept verbatim.
struct FixtureBlock {
  std::string name;
  std::map<std::string, std::string> meta;
  std::string body;

  int alphabet() const;
  std::string get(const std::string& key, const std::string& fallback = "") const;
};

std::vector<FixtureBlock> parse_fixture_text(std::string_view text);

}  // namespace sigvol::freealg
