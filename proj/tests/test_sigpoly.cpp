#include "doctest.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "sigvol/error.hpp"
#include "sigvol/sigpoly.hpp"
#include "support.hpp"

using namespace sigvol::sigpoly;
using sigvol::exactq::Rational;
using sigvol::exactq::Vector;
using sigvol::freealg::TensorElement;
using sigvol::freealg::Word;

namespace {

Rational factorial(std::size_t k) {
  Rational f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

// H_n(w) straight from the definition: every way of cutting w into n-1
// consecutive (possibly empty) blocks, block s read on segment s with weight
// 1/|block|!.
IncrementPolynomial split_enumeration(const Word& w, int n, int d) {
  IncrementPolynomial total(d, n);
  const int segs = n - 1;
  const std::size_t k = w.degree();
  if (segs == 0) return k == 0 ? IncrementPolynomial::constant(d, n, 1) : total;
  // cuts[s] = start of block s; nondecreasing, cuts[0] = 0.
  std::vector<std::size_t> cuts(segs + 1, 0);
  cuts[segs] = k;
  std::function<void(int)> rec = [&](int s) {
    if (s == segs) {
      IncrementPolynomial term = IncrementPolynomial::constant(d, n, 1);
      for (int b = 0; b < segs; ++b) {
        term *= 1 / factorial(cuts[b + 1] - cuts[b]);
        for (std::size_t i = cuts[b]; i < cuts[b + 1]; ++i)
          term = term * IncrementPolynomial::variable(d, n, b + 1, w[i]);
      }
      total += term;
      return;
    }
    for (std::size_t c = cuts[s - 1]; c <= k; ++c) {
      cuts[s] = c;
      rec(s + 1);
    }
  };
  rec(1);
  return total;
}

Rational shoelace(const std::vector<Vector>& pts) {
  Rational a = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return a / 2;
}

}  // namespace

TEST_CASE("paths") {
  const PLPath p(2, {{0, 0}, {1, 0}, {1, 2}});
  CHECK(p.increments() == std::vector<Vector>{{1, 0}, {0, 2}});
  CHECK(p.reversed().point(0) == Vector{1, 2});
  const std::vector<int> sigma{3, 1, 2};
  CHECK(p.permuted(sigma).point(0) == Vector{1, 2});
  const auto q = p.then(PLPath(2, {{5, 5}, {6, 5}}));
  CHECK(q.size() == 4);
  CHECK(q.point(3) == Vector{2, 2});
  CHECK(PLPath::from_increments({1, 1}, {{1, 0}}).point(1) == Vector{2, 1});
  CHECK_THROWS_AS(PLPath(2, {{0, 0}, {1}}), sigvol::Error);
}

TEST_CASE("segment signature is the tensor exponential") {
  const Vector a{2, -1, Rational(1, 2)};
  const auto s = segment_signature(a, 4);
  testing::Random rnd(7);
  for (int t = 0; t < 20; ++t) {
    const Word w = rnd.word(3, rnd.uniform(0, 4));
    Rational expected = 1 / factorial(w.degree());
    for (std::size_t i = 0; i < w.degree(); ++i) expected *= a[w[i] - 1];
    CHECK(s.coefficient(w) == expected);
  }
}

TEST_CASE("signed area matches the shoelace formula") {
  testing::Random rnd(8);
  const auto area = TensorElement::parse("1/2*12 - 1/2*21", 2);
  for (int t = 0; t < 30; ++t) {
    const auto p = rnd.path(2, rnd.uniform(1, 6));
    CHECK(pair(pl_signature(p, 2), area) == shoelace(p.points()));
  }
}

TEST_CASE("Chen identity") {
  testing::Random rnd(9);
  for (int t = 0; t < 20; ++t) {
    const int d = rnd.uniform(1, 3);
    const auto x = rnd.path(d, rnd.uniform(0, 3)), y = rnd.path(d, rnd.uniform(0, 3));
    CHECK(pl_signature(x.then(y), 4) == chen_product(pl_signature(x, 4), pl_signature(y, 4)));
  }
}

TEST_CASE("shuffle identity on signatures") {
  testing::Random rnd(10);
  for (int t = 0; t < 20; ++t) {
    const int d = rnd.uniform(1, 3);
    const auto s = pl_signature(rnd.path(d, rnd.uniform(1, 3)), 5);
    const auto x = rnd.element(d, 0, 2), y = rnd.element(d, 0, 3);
    CHECK(pair(s, sigvol::freealg::shuffle(x, y)) == pair(s, x) * pair(s, y));
  }
}

TEST_CASE("reversal pairs with the antipode") {
  testing::Random rnd(12);
  for (int t = 0; t < 20; ++t) {
    const int d = rnd.uniform(1, 3);
    const auto p = rnd.path(d, rnd.uniform(1, 3));
    const auto x = rnd.element(d, 0, 4);
    CHECK(pair(pl_signature(p.reversed(), 4), x) == pair(pl_signature(p, 4), sigvol::freealg::antipode(x)));
  }
}

TEST_CASE("pairing rejects terms above the truncation") {
  const auto s = pl_signature(PLPath(2, {{0, 0}, {1, 1}}), 2);
  CHECK_THROWS_AS(pair(s, TensorElement::parse("121", 2)), sigvol::Error);
}

TEST_CASE("H of 123 for three points") {
  const auto h = signature_polynomial(Word{1, 2, 3}, 3, 3);
  CHECK(h.to_string() ==
        "1/6*a[1][1]*a[1][2]*a[1][3] + 1/2*a[1][1]*a[1][2]*a[2][3] + 1/2*a[1][1]*a[2][2]*a[2][3] + "
        "1/6*a[2][1]*a[2][2]*a[2][3]");
}

TEST_CASE("Chen-route H equals split enumeration") {
  testing::Random rnd(13);
  for (int t = 0; t < 40; ++t) {
    const int d = rnd.uniform(1, 3), n = rnd.uniform(1, 5);
    const Word w = rnd.word(d, rnd.uniform(0, 5));
    CHECK(signature_polynomial(w, n, d) == split_enumeration(w, n, d));
  }
  SignatureMap h(2, 4);
  for (const auto& w : sigvol::freealg::words_of_degree(2, 4)) CHECK(h(w) == split_enumeration(w, 4, 2));
}

TEST_CASE("H evaluates to the path signature") {
  testing::Random rnd(14);
  for (int t = 0; t < 25; ++t) {
    const int d = rnd.uniform(1, 3), n = rnd.uniform(2, 5);
    const auto p = rnd.path(d, n - 1);
    const auto x = rnd.element(d, 0, 4, 4);
    CHECK(signature_polynomial(x, n).evaluate(p.increments()) == pair(pl_signature(p, 4), x));
  }
}

TEST_CASE("H is a ring homomorphism from the shuffle algebra") {
  testing::Random rnd(15);
  for (int t = 0; t < 15; ++t) {
    const int d = rnd.uniform(1, 3), n = rnd.uniform(2, 4);
    const auto x = rnd.element(d, 0, 2), y = rnd.element(d, 0, 2);
    SignatureMap h(d, n);
    CHECK(h(sigvol::freealg::shuffle(x, y)) == h(x) * h(y));
  }
}

TEST_CASE("relabelled control points") {
  testing::Random rnd(16);
  for (int t = 0; t < 15; ++t) {
    const int d = rnd.uniform(1, 3), n = rnd.uniform(2, 5);
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 1);
    std::shuffle(sigma.begin(), sigma.end(), std::mt19937(t));
    const auto x = rnd.element(d, 1, 3);
    const auto hx = signature_polynomial(x, n);
    const auto moved = permute_control_points(hx, sigma);
    const auto p = rnd.path(d, n - 1);
    CHECK(moved.evaluate(p.increments()) == hx.evaluate(p.permuted(sigma).increments()));
    SignatureMap direct(d, permutation_forms(d, sigma), n);
    CHECK(direct(x) == moved);
  }
}

TEST_CASE("collinear substitution") {
  testing::Random rnd(17);
  for (int t = 0; t < 15; ++t) {
    const int d = rnd.uniform(1, 3), n = rnd.uniform(3, 5), i = rnd.uniform(2, n - 1);
    const auto x = rnd.element(d, 1, 3);
    const Rational lambda = rnd.rational();
    const auto reduced = substitute_collinear(signature_polynomial(x, n), i, lambda);
    CHECK(reduced.points() == n - 1);
    // Evaluate on a path with the extra point inserted on its chord.
    const auto q = rnd.path(d, n - 2);
    auto pts = q.points();
    const auto& before = pts[i - 2];
    const auto& after = pts[i - 1];
    Vector mid(d);
    for (int c = 0; c < d; ++c) mid[c] = lambda * before[c] + (1 - lambda) * after[c];
    pts.insert(pts.begin() + (i - 1), mid);
    CHECK(reduced.evaluate(q.increments()) == pair(pl_signature(PLPath(d, pts), 3), x));
    // Signatures ignore collinear points: no dependence on lambda.
    CHECK(reduced == substitute_collinear(signature_polynomial(x, n), i, 0));
  }
  CHECK_THROWS_AS(substitute_collinear(IncrementPolynomial(2, 3), 1, 0), sigvol::Error);
}

TEST_CASE("polynomial text") {
  const auto p = IncrementPolynomial::parse("2*(a[1][1]^2*a[2][3] - 1/3*a[2][1] + 5/2)", 3, 3);
  CHECK(p.to_string() == "5 - 2/3*a[2][1] + 2*a[1][1]^2*a[2][3]");
  CHECK(IncrementPolynomial::parse(p.to_string(), 3, 3) == p);
  CHECK(IncrementPolynomial::parse("0", 2, 2).is_zero());
  CHECK_THROWS_AS(IncrementPolynomial::parse("a[3][1]", 2, 3), sigvol::Error);
  CHECK_THROWS_AS(IncrementPolynomial::parse("a[1][1", 2, 3), sigvol::Error);
  testing::Random rnd(18);
  for (int t = 0; t < 10; ++t) {
    const auto h = signature_polynomial(rnd.element(3, 1, 3), 4);
    CHECK(IncrementPolynomial::parse(h.to_string(), 3, 4) == h);
  }
}

TEST_CASE("polynomial arithmetic") {
  const auto a = IncrementPolynomial::variable(2, 3, 1, 1), b = IncrementPolynomial::variable(2, 3, 2, 2);
  const auto p = (a + b) * (a - b);
  CHECK(p.to_string() == "a[1][1]^2 - a[2][2]^2");
  CHECK(p.degree_range() == std::pair<unsigned, unsigned>{2, 2});
  const LinearForm f{{a.var(1, 1), 1}, {a.var(2, 2), 1}};
  CHECK(a.times_linear(f) == a * (a + b));
  CHECK(p.evaluate({{3, 0}, {0, 2}}) == 5);
  CHECK_THROWS_AS(IncrementPolynomial(9, 8), sigvol::Error);
}
