#include "sigvol/posgeom.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "sigvol/error.hpp"
#include "sigvol/freealg.hpp"

namespace sigvol::posgeom {

namespace {

using exactq::Integer;

// All increasing k-subsets of 1..n, lexicographic.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 1);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<exactq::Vector> lifted_columns(const PLPath& path, const std::vector<int>& cols) {
  // Rows of the transposed matrix; the determinant is unchanged.
  std::vector<exactq::Vector> m;
  for (int c : cols) {
    exactq::Vector row{Rational(1)};
    const auto& x = path.point(static_cast<std::size_t>(c - 1));
    row.insert(row.end(), x.begin(), x.end());
    m.push_back(std::move(row));
  }
  return m;
}

Rational lifted_minor(const PLPath& path, const std::vector<int>& cols) {
  return exactq::determinant(lifted_columns(path, cols));
}

// Generators of the even-permutation subgroup of <gens>, assuming every
// generator is odd: products g_0 * g for the remaining g.
std::vector<Permutation> even_part(const std::vector<Permutation>& odd_gens) {
  std::vector<Permutation> out;
  for (std::size_t i = 1; i < odd_gens.size(); ++i) out.push_back(odd_gens[0] * odd_gens[i]);
  if (!odd_gens.empty()) out.push_back(odd_gens[0] * odd_gens[0]);
  return out;
}

// Adjacent transpositions inside the positions of one parity.
std::vector<Permutation> parity_block_transpositions(int n, int first) {
  std::vector<Permutation> out;
  for (int i = first; i + 2 <= n; i += 2) out.push_back(Permutation::transposition(n, i, i + 2));
  return out;
}

std::vector<Permutation> both_block_transpositions(int n) {
  auto gens = parity_block_transpositions(n, 1);
  auto evens = parity_block_transpositions(n, 2);
  gens.insert(gens.end(), evens.begin(), evens.end());
  return gens;
}

Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

// ---------------------------------------------------------- permutations

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > static_cast<int>(images_.size()) || seen[v])
      fail(ErrorCode::InvalidArgument, "not a permutation in one-line notation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::rotation(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = (i + 1) % n + 1;
  return Permutation(std::move(v));
}

Permutation Permutation::reversal(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto p = identity(n);
  std::swap(p.images_.at(a - 1), p.images_.at(b - 1));
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "composing permutations of different degree");
  std::vector<int> v(b.images_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.images_[b.images_[i] - 1];
  Permutation out;
  out.images_ = std::move(v);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> v(images_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[images_[i] - 1] = static_cast<int>(i) + 1;
  Permutation out;
  out.images_ = std::move(v);
  return out;
}

int Permutation::sign() const {
  int inv = 0;
  for (std::size_t i = 0; i < images_.size(); ++i)
    for (std::size_t j = i + 1; j < images_.size(); ++j) inv += images_[i] > images_[j];
  return inv % 2 ? -1 : 1;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) os << (i ? "," : "") << images_[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- groups

PermGroup::PermGroup(int n, std::vector<Permutation> generators, std::string tag, std::size_t limit)
    : n_(n), tag_(std::move(tag)) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "group degree must be at least 1");
  for (auto& g : generators) {
    if (g.size() != n) fail(ErrorCode::DimensionMismatch, "generator of wrong degree");
    if (!g.is_identity() && std::find(generators_.begin(), generators_.end(), g) == generators_.end())
      generators_.push_back(std::move(g));
  }
  std::set<Permutation> seen{Permutation::identity(n)};
  std::vector<Permutation> frontier{Permutation::identity(n)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier)
      for (const auto& g : generators_) {
        Permutation q = g * p;
        if (seen.insert(q).second) {
          if (seen.size() > limit) fail(ErrorCode::Unsupported, "group too large to enumerate");
          next.push_back(std::move(q));
        }
      }
    frontier = std::move(next);
  }
  elements_.assign(seen.begin(), seen.end());
}

PermGroup PermGroup::from_elements(int n, std::vector<Permutation> elements, std::string tag) {
  PermGroup g;
  g.n_ = n;
  g.tag_ = std::move(tag);
  std::sort(elements.begin(), elements.end());
  g.elements_ = std::move(elements);
  // A small generating set: add elements until the closure is everything.
  std::set<Permutation> span{Permutation::identity(n)};
  for (const auto& e : g.elements_) {
    if (span.count(e)) continue;
    g.generators_.push_back(e);
    PermGroup closure(n, g.generators_, "");
    span = std::set<Permutation>(closure.elements_.begin(), closure.elements_.end());
    if (span.size() == g.elements_.size()) break;
  }
  return g;
}

PermGroup PermGroup::trivial(int n) { return PermGroup(n, {}, "trivial"); }
PermGroup PermGroup::cyclic(int n) { return PermGroup(n, {Permutation::rotation(n)}, "Z/n"); }
PermGroup PermGroup::dihedral(int n) {
  return PermGroup(n, {Permutation::rotation(n), Permutation::reversal(n)}, "D_n");
}

PermGroup PermGroup::symmetric(int n) {
  std::vector<Permutation> gens;
  for (int i = 1; i < n; ++i) gens.push_back(Permutation::transposition(n, i, i + 1));
  return PermGroup(n, std::move(gens), "S_n");
}

PermGroup PermGroup::alternating(int n) {
  std::vector<Permutation> gens;
  for (int k = 3; k <= n; ++k) {
    // The 3-cycle 1 -> 2 -> k -> 1.
    auto p = Permutation::identity(n);
    std::vector<int> v = p.images();
    v[0] = 2;
    v[1] = k;
    v[k - 1] = 1;
    gens.emplace_back(std::move(v));
  }
  return PermGroup(n, std::move(gens), "A_n");
}

bool PermGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

// ------------------------------------------------------------- positivity

bool is_positive_matrix(const PLPath& path) {
  const int d = path.dim(), n = static_cast<int>(path.size());
  if (n < d + 1) fail(ErrorCode::InvalidArgument, "positivity needs at least d+1 points");
  for (const auto& cols : subsets(n, d + 1))
    if (lifted_minor(path, cols) <= 0) return false;
  return true;
}

CyclicInstance moment_curve_instance(int d, const std::vector<Rational>& params) {
  const int n = static_cast<int>(params.size());
  if (d < 1) fail(ErrorCode::InvalidArgument, "dimension must be at least 1");
  if (n < d + 1) fail(ErrorCode::InvalidArgument, "a cyclic polytope needs at least d+1 vertices");
  for (int i = 1; i < n; ++i)
    if (params[i] <= params[i - 1]) fail(ErrorCode::InvalidArgument, "moment curve parameters must increase strictly");
  std::vector<exactq::Vector> pts;
  for (const auto& t : params) {
    exactq::Vector x;
    Rational power = 1;
    for (int j = 0; j < d; ++j) {
      power *= t;
      x.push_back(power);
    }
    pts.push_back(std::move(x));
  }
  CyclicInstance inst{d, n, PLPath(d, std::move(pts))};
  if (!is_positive_matrix(inst.path)) fail(ErrorCode::Internal, "moment curve instance is not positive");
  return inst;
}

// --------------------------------------------------------------- stabilizers

std::string stabilizer_name(int d, int n) {
  if (d < 1 || n < d + 1) fail(ErrorCode::InvalidArgument, "stabilizer needs n >= d+1");
  if (n == d + 1) return "A_n";
  if (d % 2 == 1) {
    if (n == d + 2)
      return "A_n ∩ (S_" + std::to_string((n - 1) / 2) + " × S_" + std::to_string((n + 1) / 2) + ")";
    return ((d + 1) / 2) % 2 == 0 ? "Z/2" : "trivial";
  }
  if (n == d + 2)
    return (d / 2) % 2 == 0
               ? "(A_n ∩ (S_" + std::to_string(n / 2) + " × S_" + std::to_string(n / 2) + ")) ⋊ Z/2"
               : "ker φ";
  return (d / 2) % 2 == 0 ? "D_n" : "Z/n";
}

PermGroup stabilizer_bruteforce(int d, int n) {
  if (d < 1 || n < d + 1) fail(ErrorCode::InvalidArgument, "stabilizer needs n >= d+1");
  if (n > 9) fail(ErrorCode::Unsupported, "brute-force stabilizer is limited to n <= 9");
  const auto sets = subsets(n, d + 1);
  std::vector<Permutation> members;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    bool ok = true;
    for (const auto& s : sets) {
      int inversions = 0;
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) inversions += sigma[s[i] - 1] > sigma[s[j] - 1];
      if (inversions % 2) {
        ok = false;
        break;
      }
    }
    if (ok) members.emplace_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return PermGroup::from_elements(n, std::move(members), stabilizer_name(d, n));
}

PermGroup stabilizer_structural(int d, int n) {
  const std::string name = stabilizer_name(d, n);
  if (n == d + 1) {
    auto g = PermGroup::alternating(n);
    return PermGroup(n, g.generators(), name);
  }
  const Permutation s = Permutation::reversal(n);
  if (d % 2 == 1) {
    if (n == d + 2) {
      // Even permutations that keep odd and even positions apart.
      return PermGroup(n, even_part(both_block_transpositions(n)), name);
    }
    // Swapping the endpoints after reversing the inner vertices is the full
    // reversal; it preserves positivity exactly when (d+1)/2 is even.
    if (((d + 1) / 2) % 2 == 0) return PermGroup(n, {s}, name);
    return PermGroup(n, {}, name);
  }
  if (n == d + 2) {
    // n is even here, so the reversal swaps the two parity blocks.
    auto gens = even_part(both_block_transpositions(n));
    if ((d / 2) % 2 == 0) {
      gens.push_back(s);
    } else {
      // Kernel of (omega, pi, tau) -> sgn(omega) sgn(pi) gamma(tau): an odd
      // block permutation composed with the reversal.
      gens.push_back(Permutation::transposition(n, 1, 3) * s);
    }
    return PermGroup(n, std::move(gens), name);
  }
  const Permutation r = Permutation::rotation(n);
  if ((d / 2) % 2 == 0) return PermGroup(n, {r, s}, name);
  return PermGroup(n, {r}, name);
}

exactq::Integer automorphism_group_order(int d, int n) {
  if (d < 1 || n < d + 1) fail(ErrorCode::InvalidArgument, "needs n >= d+1");
  if (n == d + 1) return factorial(n);
  if (n == d + 2) {
    if (d % 2 == 0) return factorial(n / 2) * factorial(n / 2) * 2;
    return factorial((n + 1) / 2) * factorial(n / 2);
  }
  return d % 2 == 0 ? Integer(2 * n) : Integer(4);
}

// ------------------------------------------------------------- polytopes

std::vector<std::vector<int>> gale_facets(int d, int n) {
  if (d < 1 || n < d + 1) fail(ErrorCode::InvalidArgument, "cyclic polytope needs n >= d+1");
  std::vector<std::vector<int>> out;
  for (auto& set : subsets(n, d)) {
    int parity = -1;
    bool ok = true;
    for (int j = 1; j <= n && ok; ++j) {
      if (std::binary_search(set.begin(), set.end(), j)) continue;
      const int above = static_cast<int>(set.end() - std::upper_bound(set.begin(), set.end(), j));
      if (parity < 0) parity = above % 2;
      else if (above % 2 != parity) ok = false;
    }
    if (ok) out.push_back(std::move(set));
  }
  return out;
}

bool facet_check_det(const CyclicInstance& inst, const std::vector<int>& facet) {
  if (static_cast<int>(facet.size()) != inst.d) fail(ErrorCode::InvalidArgument, "a facet has exactly d vertices");
  for (int v : facet)
    if (v < 1 || v > inst.n) fail(ErrorCode::OutOfRange, "facet vertex out of range");
  int sign = 0;
  for (int y = 1; y <= inst.n; ++y) {
    if (std::find(facet.begin(), facet.end(), y) != facet.end()) continue;
    auto cols = facet;
    cols.push_back(y);
    const Rational det = lifted_minor(inst.path, cols);
    if (det == 0) fail(ErrorCode::Degenerate, "vertex " + std::to_string(y) + " lies on the facet hyperplane");
    const int s = det > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return true;
}

Rational polytope_volume(const CyclicInstance& inst) {
  if (!is_positive_matrix(inst.path)) fail(ErrorCode::InvalidArgument, "instance is not positive");
  Rational total = 0;
  for (const auto& facet : gale_facets(inst.d, inst.n)) {
    if (facet.front() == 1) continue;
    std::vector<int> cols{1};
    cols.insert(cols.end(), facet.begin(), facet.end());
    total += abs(lifted_minor(inst.path, cols));
  }
  return total / Rational(factorial(inst.d));
}

Rational signed_volume(const PLPath& path) {
  const int d = path.dim();
  const auto sig = sigpoly::pl_signature(path, static_cast<std::size_t>(d));
  return sigpoly::pair(sig, freealg::vol(d)) / Rational(factorial(d));
}

}  // namespace sigvol::posgeom
