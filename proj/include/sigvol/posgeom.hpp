#pragma once

// Positive matrices, cyclic polytopes on the moment curve, and the groups of
// column permutations that preserve positivity.

#include <cstddef>
#include <string>
#include <vector>

#include "sigvol/exactq.hpp"
#include "sigvol/sigpoly.hpp"

namespace sigvol::posgeom {

using exactq::Rational;
using sigpoly::PLPath;

// One-line notation over 1..n: images[i-1] = sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation rotation(int n);   // i -> i+1 mod n
  static Permutation reversal(int n);   // i -> n+1-i
  static Permutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  // (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation inverse() const;
  int sign() const;
  bool is_identity() const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

class PermGroup {
 public:
  // Closes the generators under composition. Throws Unsupported past
  // `limit` elements.
  PermGroup(int n, std::vector<Permutation> generators, std::string tag,
            std::size_t limit = 1'000'000);
  // Takes an already closed, duplicate-free element list.
  static PermGroup from_elements(int n, std::vector<Permutation> elements, std::string tag);

  static PermGroup trivial(int n);
  static PermGroup cyclic(int n);
  static PermGroup dihedral(int n);
  static PermGroup symmetric(int n);
  static PermGroup alternating(int n);

  int degree() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::string& tag() const { return tag_; }
  bool contains(const Permutation& p) const;

 private:
  PermGroup() = default;
  int n_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;  // sorted
  std::string tag_;
};

// The lifted (d+1) x n matrix with a row of ones above the points.
bool is_positive_matrix(const PLPath& path);

struct CyclicInstance {
  int d;
  int n;
  PLPath path;
};

// x_i = (t_i, t_i^2, ..., t_i^d). Parameters must increase strictly and
// n >= d + 1.
CyclicInstance moment_curve_instance(int d, const std::vector<Rational>& params);

// Name of the positivity-preserving group for (d, n), e.g. "A_n" or "Z/n".
std::string stabilizer_name(int d, int n);

// Every sigma in S_n sending each increasing (d+1)-subset to a sequence with
// an even number of inversions. Guarded at n <= 9.
PermGroup stabilizer_bruteforce(int d, int n);

// Built from explicit generators following the classification by the
// parities of d and n - d.
PermGroup stabilizer_structural(int d, int n);

// Order of the combinatorial automorphism group of the cyclic d-polytope
// with n vertices.
exactq::Integer automorphism_group_order(int d, int n);

// Facets as increasing 1-based index sets, lexicographically sorted.
std::vector<std::vector<int>> gale_facets(int d, int n);

// Whether the hyperplane through the points in `facet` leaves all other
// vertices strictly on one side. Throws Degenerate on a zero determinant.
bool facet_check_det(const CyclicInstance& instance, const std::vector<int>& facet);

// Volume by coning from vertex 1 over the facets that avoid it.
Rational polytope_volume(const CyclicInstance& instance);

// (1/d!) <S(X), vol_d>.
Rational signed_volume(const PLPath& path);

}  // namespace sigvol::posgeom
