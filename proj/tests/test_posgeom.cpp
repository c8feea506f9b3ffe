#include "doctest.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "sigvol/error.hpp"
#include "sigvol/posgeom.hpp"
#include "support.hpp"

using namespace sigvol::posgeom;
using sigvol::exactq::Rational;
using sigvol::exactq::Vector;

namespace {

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(k);
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      out.push_back(s);
      return;
    }
    for (int i = from; i <= n; ++i) {
      s[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 1);
  return out;
}

// Every maximal minor of the lifted matrix [1; x_1 ... x_n] is positive.
bool positive_by_minors(const std::vector<Vector>& pts) {
  const int d = static_cast<int>(pts[0].size()), n = static_cast<int>(pts.size());
  for (const auto& cols : subsets(n, d + 1)) {
    std::vector<Vector> m(d + 1, Vector(d + 1));
    for (int j = 0; j <= d; ++j) {
      m[0][j] = 1;
      for (int i = 0; i < d; ++i) m[i + 1][j] = pts[cols[j] - 1][i];
    }
    if (sigvol::exactq::determinant(m) <= 0) return false;
  }
  return true;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Facet count of the cyclic d-polytope with n vertices.
long cyclic_facets(int d, int n) {
  const int m = d / 2;
  if (d % 2 == 0) return n * binom(n - m, m) / (n - m);
  return 2 * binom(n - m - 1, m);
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

std::vector<Rational> increasing(testing::Random& rnd, int n) {
  std::vector<Rational> ts{rnd.rational()};
  while (static_cast<int>(ts.size()) < n) {
    Rational step(rnd.uniform(1, 4), rnd.uniform(1, 3));
    step.canonicalize();
    ts.push_back(ts.back() + step);
  }
  return ts;
}

}  // namespace

TEST_CASE("permutations") {
  const Permutation a({2, 3, 1}), b = Permutation::transposition(3, 1, 2);
  CHECK((a * b)(1) == a(b(1)));
  CHECK((a * b).images() == std::vector<int>{3, 2, 1});
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.sign() == 1);
  CHECK(b.sign() == -1);
  CHECK(Permutation::rotation(4).images() == std::vector<int>{2, 3, 4, 1});
  CHECK(Permutation::reversal(4).images() == std::vector<int>{4, 3, 2, 1});
  CHECK(a.to_string() == "[2,3,1]");
  CHECK_THROWS_AS(Permutation({1, 1, 3}), sigvol::Error);
}

TEST_CASE("named groups") {
  CHECK(PermGroup::trivial(5).order() == 1);
  CHECK(PermGroup::cyclic(6).order() == 6);
  CHECK(PermGroup::dihedral(6).order() == 12);
  CHECK(PermGroup::symmetric(5).order() == 120);
  CHECK(PermGroup::alternating(5).order() == 60);
  const auto a5 = PermGroup::alternating(5);
  for (const auto& p : a5.elements()) CHECK(p.sign() == 1);
  CHECK(a5.contains(Permutation({2, 3, 1, 4, 5})));
  CHECK_FALSE(a5.contains(Permutation::transposition(5, 1, 2)));
  CHECK_THROWS_AS(PermGroup(8, PermGroup::symmetric(8).generators(), "S_8", 100), sigvol::Error);
}

TEST_CASE("stabilizer equals the positivity-preserving permutations") {
  // Relabel the columns of a moment-curve matrix and test all minors.
  for (auto [d, n] : {std::pair{1, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {2, 6}, {4, 6}}) {
    std::vector<Rational> ts;
    for (int i = 1; i <= n; ++i) ts.emplace_back(i);
    const auto inst = moment_curve_instance(d, ts);
    const auto group = stabilizer_bruteforce(d, n);
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 1);
    std::size_t count = 0;
    do {
      const bool keeps = positive_by_minors(inst.path.permuted(sigma).points());
      CHECK(keeps == group.contains(Permutation(sigma)));
      count += keeps;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    CHECK(count == group.order());
  }
}

TEST_CASE("generated stabilizers match brute force") {
  for (auto [d, n] : {std::pair{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {3, 4}, {3, 5},
                      {3, 6}, {3, 7}, {4, 5}, {4, 6}, {4, 7}, {4, 8}, {5, 6}, {5, 7}, {5, 8}, {6, 8}}) {
    CAPTURE(d);
    CAPTURE(n);
    const auto brute = stabilizer_bruteforce(d, n);
    const auto built = stabilizer_structural(d, n);
    CHECK(brute.elements() == built.elements());
    CHECK(built.tag() == stabilizer_name(d, n));
    CHECK(automorphism_group_order(d, n) % static_cast<unsigned long>(built.order()) == 0);
  }
}

TEST_CASE("stabilizer structure tags") {
  CHECK(stabilizer_structural(3, 4).tag() == "A_n");
  CHECK(stabilizer_structural(3, 4).order() == 12);
  CHECK(stabilizer_structural(2, 5).tag() == "Z/n");
  CHECK(stabilizer_structural(2, 5).order() == 5);
  CHECK(stabilizer_structural(4, 7).tag() == "D_n");
  CHECK(stabilizer_structural(3, 6).tag() == "Z/2");
  CHECK(stabilizer_structural(5, 8).tag() == "trivial");
  CHECK(stabilizer_structural(2, 4).tag() == "ker φ");
  CHECK(stabilizer_structural(3, 5).tag() == "A_n ∩ (S_2 × S_3)");
  // Large n is built from generators without enumerating S_n.
  CHECK(stabilizer_structural(4, 12).order() == 24);
  CHECK(stabilizer_structural(6, 11).order() == 11);
  CHECK_THROWS_AS(stabilizer_bruteforce(2, 10), sigvol::Error);
  CHECK_THROWS_AS(stabilizer_name(3, 3), sigvol::Error);
}

TEST_CASE("moment curve instances are positive") {
  testing::Random rnd(21);
  for (int t = 0; t < 10; ++t) {
    const int d = rnd.uniform(1, 3), n = rnd.uniform(d + 1, 7);
    const auto inst = moment_curve_instance(d, increasing(rnd, n));
    CHECK(is_positive_matrix(inst.path));
    CHECK(positive_by_minors(inst.path.points()));
    CHECK(is_positive_matrix(inst.path.reversed()) == positive_by_minors(inst.path.reversed().points()));
  }
  CHECK_THROWS_AS(moment_curve_instance(2, {0, 1}), sigvol::Error);
  CHECK_THROWS_AS(moment_curve_instance(2, {0, 2, 1}), sigvol::Error);
}

TEST_CASE("Gale facets agree with the hyperplane test") {
  testing::Random rnd(22);
  for (auto [d, n] : {std::pair{2, 5}, {2, 7}, {3, 5}, {3, 7}, {4, 7}, {4, 8}, {5, 8}}) {
    const auto facets = gale_facets(d, n);
    CHECK(static_cast<long>(facets.size()) == cyclic_facets(d, n));
    const auto inst = moment_curve_instance(d, increasing(rnd, n));
    std::set<std::vector<int>> by_det;
    for (const auto& s : subsets(n, d))
      if (facet_check_det(inst, s)) by_det.insert(s);
    CHECK(std::vector<std::vector<int>>(by_det.begin(), by_det.end()) == facets);
  }
}

TEST_CASE("pentagon volume") {
  const auto pentagon = moment_curve_instance(2, {0, 1, 2, 3, 4});
  CHECK(shoelace(pentagon.path.points()) == 10);
  CHECK(signed_volume(pentagon.path) == 10);
  CHECK(polytope_volume(pentagon) == 10);
}

TEST_CASE("signed volume equals polytope volume on the moment curve") {
  testing::Random rnd(23);
  for (int t = 0; t < 12; ++t) {
    const int d = rnd.uniform(2, 3), n = rnd.uniform(d + 1, 7);
    const auto inst = moment_curve_instance(d, increasing(rnd, n));
    const Rational v = polytope_volume(inst);
    CHECK(signed_volume(inst.path) == v);
    if (d == 2) CHECK(shoelace(inst.path.points()) == v);
  }
}

TEST_CASE("relabelling outside the stabilizer loses volume") {
  const auto inst = moment_curve_instance(2, {0, 1, 3, 4, 6});
  const auto group = stabilizer_bruteforce(2, 5);
  const Rational full = signed_volume(inst.path);
  std::vector<int> sigma{1, 2, 3, 4, 5};
  do {
    const Rational v = signed_volume(inst.path.permuted(sigma));
    if (group.contains(Permutation(sigma))) CHECK(v == full);
    else CHECK(v < full);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}
