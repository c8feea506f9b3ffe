#include "doctest.h"

#include <algorithm>
#include <vector>

#include "sigvol/error.hpp"
#include "sigvol/freealg.hpp"
#include "support.hpp"

using namespace sigvol::freealg;
using sigvol::exactq::Rational;

namespace {

// Every interleaving of a and b, found by choosing which result positions
// come from a.
TensorElement interleavings(int d, const Word& a, const Word& b) {
  const std::size_t n = a.degree() + b.degree();
  TensorElement out(d);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != a.degree()) continue;
    std::vector<Letter> ls;
    std::size_t i = 0, j = 0;
    for (std::size_t p = 0; p < n; ++p) ls.push_back((mask >> p) & 1u ? a[i++] : b[j++]);
    out.add_term(Word(ls), 1);
  }
  return out;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

// Necklace formula (1/k) sum_{j | k} mu(j) d^{k/j}.
long lyndon_count(int d, int k) {
  long sum = 0;
  for (int j = 1; j <= k; ++j) {
    if (k % j) continue;
    long p = 1;
    for (int e = 0; e < k / j; ++e) p *= d;
    sum += mobius(j) * p;
  }
  return sum / k;
}

bool is_lyndon_by_rotation(const Word& w) {
  // Strictly smaller than each proper rotation.
  const auto& ls = w.letters();
  for (std::size_t r = 1; r < ls.size(); ++r) {
    std::vector<Letter> rot(ls.begin() + r, ls.end());
    rot.insert(rot.end(), ls.begin(), ls.begin() + r);
    if (!(ls < rot)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("words") {
  const Word w = Word::parse("1233");
  CHECK(w.degree() == 4);
  CHECK(w.to_string() == "1233");
  CHECK(w.reversed().to_string() == "3321");
  CHECK(w.slice(1, 3).to_string() == "23");
  CHECK(w.max_letter() == 3);
  CHECK(Word::parse("e").empty());
  CHECK((Word{1} + Word{2, 3}) == Word{1, 2, 3});
  CHECK_THROWS_AS(Word::parse("10"), sigvol::Error);
  CHECK(DegLexLess{}(Word{3}, Word{1, 1}));
  CHECK(DegLexLess{}(Word{1, 2}, Word{2, 1}));
}

TEST_CASE("words of degree follow base-d indexing") {
  const auto ws = words_of_degree(3, 3);
  REQUIRE(ws.size() == 27);
  for (std::size_t i = 0; i < ws.size(); ++i) CHECK(word_index(ws[i], 3) == i);
  CHECK(ws[5].to_string() == "123");
  CHECK(words_of_degree(2, 0).size() == 1);
}

TEST_CASE("element text round trip") {
  const auto x = TensorElement::parse(" 12 - 2/3 * 13323 + 2*e + 12 ", 3);
  CHECK(x.to_string() == "2*e + 2*12 - 2/3*13323");
  CHECK(TensorElement::parse(x.to_string(), 3) == x);
  CHECK(TensorElement::parse("0", 2).is_zero());
  CHECK(TensorElement(2).to_string() == "0");
  CHECK(TensorElement::parse("-21 + 21", 2).is_zero());
  CHECK_THROWS_AS(TensorElement::parse("14", 3), sigvol::Error);
  CHECK_THROWS_AS(TensorElement::parse("1 +", 3), sigvol::Error);
  testing::Random rnd(1);
  for (int t = 0; t < 50; ++t) {
    const auto y = rnd.element(rnd.uniform(1, 4), 0, 5, 6);
    CHECK(TensorElement::parse(y.to_string(), y.alphabet()) == y);
  }
}

TEST_CASE("shuffle equals brute-force interleavings") {
  testing::Random rnd(2);
  for (int t = 0; t < 80; ++t) {
    const int d = rnd.uniform(1, 3);
    const Word a = rnd.word(d, rnd.uniform(0, 4)), b = rnd.word(d, rnd.uniform(0, 4));
    CHECK(shuffle_words(d, a, b) == interleavings(d, a, b));
    CHECK(shuffle(TensorElement(d, a), TensorElement(d, b)) == interleavings(d, a, b));
  }
  CHECK(shuffle_words(2, Word{1}, Word{1}).coefficient(Word{1, 1}) == 2);
}

TEST_CASE("shuffle is commutative and associative, concat associative") {
  testing::Random rnd(3);
  for (int t = 0; t < 30; ++t) {
    const int d = rnd.uniform(1, 3);
    const auto x = rnd.element(d, 0, 2), y = rnd.element(d, 0, 2), z = rnd.element(d, 0, 2);
    CHECK(shuffle(x, y) == shuffle(y, x));
    CHECK(shuffle(shuffle(x, y), z) == shuffle(x, shuffle(y, z)));
    CHECK(concat(concat(x, y), z) == concat(x, concat(y, z)));
    CHECK(shuffle(x, TensorElement::unit(d)) == x);
    CHECK(shuffle(x, y + z) == shuffle(x, y) + shuffle(x, z));
  }
}

TEST_CASE("deconcatenation") {
  const auto pairs = deconcat_pairs(Word{1, 2, 3});
  REQUIRE(pairs.size() == 4);
  CHECK(pairs.front().first.empty());
  CHECK(pairs.back().second.empty());
  for (const auto& [u, v] : pairs) CHECK((u + v) == Word({1, 2, 3}));
}

TEST_CASE("antipode") {
  CHECK(antipode(TensorElement::parse("12", 2)).to_string() == "21");
  CHECK(antipode(TensorElement::parse("123", 3)).to_string() == "-321");
  testing::Random rnd(4);
  for (int t = 0; t < 40; ++t) {
    const int d = rnd.uniform(1, 3);
    const auto x = rnd.element(d, 0, 4), y = rnd.element(d, 0, 3);
    CHECK(antipode(antipode(x)) == x);
    // A shuffle-algebra automorphism and a concatenation anti-automorphism.
    CHECK(antipode(shuffle(x, y)) == shuffle(antipode(x), antipode(y)));
    CHECK(antipode(concat(x, y)) == concat(antipode(y), antipode(x)));
    const auto p = timerev_project(x);
    CHECK(antipode(p) == p);
  }
}

TEST_CASE("signed volume elements") {
  CHECK(vol(2).to_string() == "12 - 21");
  CHECK(vol(3).to_string() == "123 - 132 - 213 + 231 + 312 - 321");
  const std::vector<Letter> ls{1, 3};
  CHECK(vol(3, ls).to_string() == "13 - 31");
  const std::vector<Letter> rep{1, 1};
  CHECK_THROWS_AS(vol(3, rep), sigvol::Error);
  CHECK(vol(4).size() == 24);
  // vol_d is antisymmetric under the antipode exactly when d(d+1)/2 is odd.
  for (int d = 1; d <= 5; ++d) {
    const bool fixed = (d * (d + 1) / 2) % 2 == 0;
    CHECK((antipode(vol(d)) == vol(d)) == fixed);
  }
}

TEST_CASE("shuffle powers") {
  const auto x = TensorElement::parse("1", 1);
  CHECK(shuffle_power(x, 3).to_string() == "6*111");
  CHECK(shuffle_power(x, 0) == TensorElement::unit(1));
}

TEST_CASE("Lyndon words match the necklace count") {
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 7; ++k) {
      const auto ws = lyndon_words(d, k);
      CHECK(static_cast<long>(ws.size()) == lyndon_count(d, k));
      CHECK(std::is_sorted(ws.begin(), ws.end(), DegLexLess{}));
      for (const auto& w : ws) CHECK(is_lyndon_by_rotation(w));
    }
}

TEST_CASE("coordinates") {
  const auto x = TensorElement::parse("12 - 2*21 + 3*1", 2);
  const auto c = to_coordinates(x, 2);
  CHECK(c == sigvol::exactq::Vector{0, 1, -2, 0});
  CHECK(from_coordinates(2, 2, c) == x.homogeneous_part(2));
  CHECK(x.degree_range() == std::pair<std::size_t, std::size_t>{1, 2});
  CHECK_FALSE(x.is_homogeneous());
}

TEST_CASE("fixture text") {
  const auto blocks = parse_fixture_text(R"(# leading comment
[first]
d = 2
checks = loop closure
12
 - 21   # trailing comment

[second]
kind = polynomial
d = 3
n = 4
2*a[1][1]
)");
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].name == "first");
  CHECK(blocks[0].alphabet() == 2);
  CHECK(blocks[0].get("checks") == "loop closure");
  CHECK(TensorElement::parse(blocks[0].body, 2).to_string() == "12 - 21");
  CHECK(blocks[1].get("kind") == "polynomial");
  CHECK(blocks[1].get("missing", "x") == "x");
  CHECK_THROWS_AS(parse_fixture_text("12\n"), sigvol::Error);
}
