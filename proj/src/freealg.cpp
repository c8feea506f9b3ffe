#include "sigvol/freealg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "sigvol/error.hpp"

namespace sigvol::freealg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require_same_alphabet(const TensorElement& x, const TensorElement& y) {
  if (x.alphabet() != y.alphabet())
    fail(ErrorCode::DimensionMismatch, "alphabet mismatch: " + std::to_string(x.alphabet()) +
                                           " vs " + std::to_string(y.alphabet()));
}

void check_letters(const Word& w, int d) {
  for (Letter l : w.letters())
    if (l < 1 || l > d)
      fail(ErrorCode::OutOfRange,
           "letter " + std::to_string(l) + " outside alphabet 1.." + std::to_string(d));
}

// Interleavings of a[i..] and b[j..] appended to prefix, accumulated in out.
void shuffle_into(const std::vector<Letter>& a, const std::vector<Letter>& b, std::size_t i,
                  std::size_t j, std::vector<Letter>& prefix,
                  std::map<std::vector<Letter>, long>& out) {
  if (i == a.size() && j == b.size()) {
    ++out[prefix];
    return;
  }
  if (i < a.size()) {
    prefix.push_back(a[i]);
    shuffle_into(a, b, i + 1, j, prefix, out);
    prefix.pop_back();
  }
  if (j < b.size()) {
    prefix.push_back(b[j]);
    shuffle_into(a, b, i, j + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Word Word::parse(std::string_view text) {
  text = trim(text);
  if (text == "e") return {};
  if (text.empty()) fail(ErrorCode::Parse, "empty word");
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c < '1' || c > '9') fail(ErrorCode::Parse, "bad letter in word '" + std::string(text) + "'");
    letters.push_back(static_cast<Letter>(c - '0'));
  }
  return Word(std::move(letters));
}

Word Word::slice(std::size_t begin, std::size_t end) const {
  return Word(std::vector<Letter>(letters_.begin() + begin, letters_.begin() + end));
}

Word Word::reversed() const { return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend())); }

Letter Word::max_letter() const {
  return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
}

std::string Word::to_string() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (Letter l : letters_) {
    if (l > 9) fail(ErrorCode::Unsupported, "letters above 9 have no text form");
    s.push_back(static_cast<char>('0' + l));
  }
  return s;
}

Word operator+(const Word& a, const Word& b) {
  std::vector<Letter> v = a.letters_;
  v.insert(v.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(v));
}

std::vector<Word> words_of_degree(int d, std::size_t k) {
  std::vector<Word> out;
  std::vector<Letter> cur(k, 1);
  while (true) {
    out.emplace_back(cur);
    std::size_t pos = k;
    while (pos > 0 && cur[pos - 1] == d) cur[--pos] = 1;
    if (pos == 0) break;
    ++cur[pos - 1];
  }
  return out;
}

std::size_t word_index(const Word& w, int d) {
  std::size_t idx = 0;
  for (Letter l : w.letters()) idx = idx * static_cast<std::size_t>(d) + (l - 1);
  return idx;
}

TensorElement::TensorElement(int d) : d_(d) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "alphabet size must be at least 1");
}

TensorElement::TensorElement(int d, const Word& w, const Rational& coeff) : TensorElement(d) {
  check_letters(w, d);
  add_term(w, coeff);
}

Rational TensorElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TensorElement::add_term(const Word& w, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::pair<std::size_t, std::size_t> TensorElement::degree_range() const {
  if (terms_.empty()) return {0, 0};
  return {terms_.begin()->first.degree(), terms_.rbegin()->first.degree()};
}

bool TensorElement::is_homogeneous() const {
  auto [lo, hi] = degree_range();
  return lo == hi;
}

TensorElement TensorElement::homogeneous_part(std::size_t k) const {
  TensorElement out(d_);
  for (const auto& [w, c] : terms_)
    if (w.degree() == k) out.terms_.emplace_hint(out.terms_.end(), w, c);
  return out;
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  require_same_alphabet(*this, other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  require_same_alphabet(*this, other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

TensorElement& TensorElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

std::string TensorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << exactq::to_string(mag) << '*';
    os << w.to_string();
  }
  return os.str();
}

TensorElement TensorElement::parse(std::string_view text, int d) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  TensorElement out(d);
  if (s.empty()) fail(ErrorCode::Parse, "empty element");
  if (s == "0") return out;

  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail(ErrorCode::Parse, "expected '+' or '-' at offset " + std::to_string(pos));
    }
    std::size_t end = s.find_first_of("+-", pos);
    if (end == std::string::npos) end = s.size();
    std::string_view term(s.data() + pos, end - pos);
    if (term.empty()) fail(ErrorCode::Parse, "dangling sign");

    Rational coeff = 1;
    std::string_view word_text = term;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      coeff = exactq::parse_rational(term.substr(0, star));
      word_text = term.substr(star + 1);
    } else if (term.find('/') != std::string_view::npos) {
      fail(ErrorCode::Parse, "fraction without '*word' in term '" + std::string(term) + "'");
    }
    Word w = Word::parse(word_text);
    check_letters(w, d);
    out.add_term(w, sign * coeff);
    pos = end;
  }
  return out;
}

TensorElement shuffle_words(int d, const Word& a, const Word& b) {
  std::map<std::vector<Letter>, long> counts;
  std::vector<Letter> prefix;
  prefix.reserve(a.degree() + b.degree());
  shuffle_into(a.letters(), b.letters(), 0, 0, prefix, counts);
  TensorElement out(d);
  for (auto& [letters, mult] : counts) out.add_term(Word(letters), Rational(mult));
  return out;
}

TensorElement shuffle(const TensorElement& x, const TensorElement& y) {
  require_same_alphabet(x, y);
  TensorElement out(x.alphabet());
  for (const auto& [u, cu] : x.terms())
    for (const auto& [v, cv] : y.terms()) out += shuffle_words(x.alphabet(), u, v) * (cu * cv);
  return out;
}

TensorElement concat(const TensorElement& x, const TensorElement& y) {
  require_same_alphabet(x, y);
  TensorElement out(x.alphabet());
  for (const auto& [u, cu] : x.terms())
    for (const auto& [v, cv] : y.terms()) out.add_term(u + v, cu * cv);
  return out;
}

std::vector<std::pair<Word, Word>> deconcat_pairs(const Word& w) {
  std::vector<std::pair<Word, Word>> out;
  out.reserve(w.degree() + 1);
  for (std::size_t j = 0; j <= w.degree(); ++j)
    out.emplace_back(w.slice(0, j), w.slice(j, w.degree()));
  return out;
}

TensorElement antipode(const TensorElement& x) {
  TensorElement out(x.alphabet());
  for (const auto& [w, c] : x.terms()) out.add_term(w.reversed(), w.degree() % 2 ? -c : c);
  return out;
}

TensorElement timerev_project(const TensorElement& x) { return x + antipode(x); }

TensorElement shuffle_power(const TensorElement& x, std::size_t k) {
  TensorElement out = TensorElement::unit(x.alphabet());
  for (std::size_t i = 0; i < k; ++i) out = shuffle(out, x);
  return out;
}

TensorElement vol(int d, std::span<const Letter> letters) {
  std::vector<Letter> perm(letters.begin(), letters.end());
  for (Letter l : perm)
    if (l < 1 || l > d) fail(ErrorCode::OutOfRange, "volume letter outside alphabet");
  {
    std::vector<Letter> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorCode::InvalidArgument, "repeated letter in volume element");
  }
  // Enumerate positions as permutations of 0..m-1 so the sign is relative to
  // the given letter order, not to their numeric order.
  const std::size_t m = perm.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  TensorElement out(d);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) inversions += idx[i] > idx[j];
    std::vector<Letter> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = perm[idx[i]];
    out.add_term(Word(std::move(w)), inversions % 2 ? -1 : 1);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

TensorElement vol(int d) {
  std::vector<Letter> letters(static_cast<std::size_t>(d));
  std::iota(letters.begin(), letters.end(), Letter{1});
  return vol(d, letters);
}

// Duval's algorithm generates Lyndon words of length <= k in lex order.
std::vector<Word> lyndon_words(int d, std::size_t k) {
  std::vector<Word> out;
  if (k == 0 || d < 1) return out;
  std::vector<Letter> w{1};
  while (!w.empty()) {
    if (w.size() == k) out.emplace_back(w);
    const std::size_t m = w.size();
    while (w.size() < k) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == d) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

exactq::Vector to_coordinates(const TensorElement& x, std::size_t k) {
  const int d = x.alphabet();
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) size *= static_cast<std::size_t>(d);
  exactq::Vector v(size);
  for (const auto& [w, c] : x.terms())
    if (w.degree() == k) v[word_index(w, d)] = c;
  return v;
}

TensorElement from_coordinates(int d, std::size_t k, const exactq::Vector& coords) {
  TensorElement out(d);
  auto words = words_of_degree(d, k);
  if (coords.size() != words.size())
    fail(ErrorCode::DimensionMismatch, "coordinate vector has wrong length");
  for (std::size_t i = 0; i < words.size(); ++i)
    if (coords[i] != 0) out.add_term(words[i], coords[i]);
  return out;
}

int FixtureBlock::alphabet() const {
  auto it = meta.find("d");
  if (it == meta.end()) fail(ErrorCode::Parse, "fixture '" + name + "' has no d");
  return std::stoi(it->second);
}

std::string FixtureBlock::get(const std::string& key, const std::string& fallback) const {
  auto it = meta.find(key);
  return it == meta.end() ? fallback : it->second;
}

std::vector<FixtureBlock> parse_fixture_text(std::string_view text) {
  std::vector<FixtureBlock> blocks;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad header");
      blocks.push_back({std::string(trim(line.substr(1, line.size() - 2))), {}, {}});
      continue;
    }
    if (blocks.empty()) fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": text before first block");
    FixtureBlock& b = blocks.back();
    auto eq = line.find('=');
    if (eq != std::string_view::npos && b.body.empty()) {
      std::string_view key = trim(line.substr(0, eq));
      if (!key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
          })) {
        b.meta[std::string(key)] = std::string(trim(line.substr(eq + 1)));
        continue;
      }
    }
    if (!b.body.empty()) b.body += ' ';
    b.body += line;
  }
  return blocks;
}

}  // namespace sigvol::freealg
