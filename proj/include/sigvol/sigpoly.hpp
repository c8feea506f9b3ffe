#pragma once

// Signatures of piecewise linear paths and the signature-polynomial map
// sending a word to a polynomial in the segment increments a[s][i].

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sigvol/exactq.hpp"
#include "sigvol/freealg.hpp"

namespace sigvol::sigpoly {

using exactq::Rational;
using exactq::Vector;
using freealg::TensorElement;
using freealg::Word;

class PLPath {
 public:
  PLPath(int d, std::vector<Vector> points);

  static PLPath from_increments(const Vector& start, const std::vector<Vector>& increments);

  int dim() const { return d_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Vector>& points() const { return points_; }
  const Vector& point(std::size_t i) const { return points_.at(i); }

  std::vector<Vector> increments() const;
  PLPath reversed() const;
  // Points x_{sigma(1)}, ..., x_{sigma(n)}; sigma is one-line, 1-based.
  PLPath permuted(std::span<const int> sigma) const;
  // This path followed by `next` translated to start at our endpoint.
  PLPath then(const PLPath& next) const;

 private:
  int d_;
  std::vector<Vector> points_;
};

// Levels 0..maxdeg of the signature; level k is dense over words_of_degree(d, k).
class TruncatedSignature {
 public:
  TruncatedSignature(int d, std::size_t maxdeg);  // the trivial signature

  int dim() const { return d_; }
  std::size_t max_degree() const { return levels_.size() - 1; }
  const Vector& level(std::size_t k) const { return levels_.at(k); }
  Vector& level(std::size_t k) { return levels_.at(k); }

  Rational coefficient(const Word& w) const;
  TensorElement to_element() const;

  friend bool operator==(const TruncatedSignature&, const TruncatedSignature&) = default;

 private:
  int d_;
  std::vector<Vector> levels_;
};

TruncatedSignature segment_signature(const Vector& increment, std::size_t maxdeg);
TruncatedSignature chen_product(const TruncatedSignature& s, const TruncatedSignature& t);
TruncatedSignature pl_signature(const PLPath& path, std::size_t maxdeg);

// Throws OutOfRange when x has a term above the truncation degree.
Rational pair(const TruncatedSignature& s, const TensorElement& x);

// Exponent vector over variables a[s][i], flattened as (s-1)*d + (i-1).
inline constexpr std::size_t kMaxVariables = 48;

struct Monomial {
  std::uint16_t degree = 0;
  std::array<std::uint8_t, kMaxVariables> exps{};

  void bump(std::size_t var, unsigned by = 1);
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic: lower total degree first; within a degree, a larger
// exponent on an earlier variable comes first.
struct GrLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse (variable, coefficient) list.
using LinearForm = std::vector<std::pair<std::size_t, Rational>>;

class IncrementPolynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrLexLess>;

  // Polynomial ring for d coordinates and n control points (n-1 segments).
  IncrementPolynomial(int d, int n);

  static IncrementPolynomial constant(int d, int n, const Rational& c);
  static IncrementPolynomial variable(int d, int n, int segment, int coord);

  // "coef*a[s][i]^e*a[s][i] - ..." optionally wrapped as "c*( ... )".
  static IncrementPolynomial parse(std::string_view text, int d, int n);

  int dim() const { return d_; }
  int points() const { return n_; }
  int segments() const { return n_ - 1; }
  std::size_t variables() const { return static_cast<std::size_t>(d_) * (n_ - 1); }
  std::size_t var(int segment, int coord) const;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Rational& c);

  // Lowest and highest total degree; zero polynomial reports (0, 0).
  std::pair<unsigned, unsigned> degree_range() const;
  bool is_homogeneous() const;

  IncrementPolynomial& operator+=(const IncrementPolynomial& o);
  IncrementPolynomial& operator-=(const IncrementPolynomial& o);
  IncrementPolynomial& operator*=(const Rational& c);
  friend IncrementPolynomial operator+(IncrementPolynomial a, const IncrementPolynomial& b) { return a += b; }
  friend IncrementPolynomial operator-(IncrementPolynomial a, const IncrementPolynomial& b) { return a -= b; }
  friend IncrementPolynomial operator*(IncrementPolynomial a, const Rational& c) { return a *= c; }
  friend IncrementPolynomial operator*(const IncrementPolynomial& a, const IncrementPolynomial& b);
  friend bool operator==(const IncrementPolynomial&, const IncrementPolynomial&) = default;

  IncrementPolynomial times_linear(const LinearForm& form) const;

  // increments[s-1][i-1] is the value of a[s][i].
  Rational evaluate(const std::vector<Vector>& increments) const;

  // Replaces every variable v by images[v], a linear form in the ring (d, n).
  IncrementPolynomial substitute(const std::vector<LinearForm>& images, int d, int n) const;

  // Canonical text, "0" for the zero polynomial.
  std::string to_string() const;

 private:
  int d_;
  int n_;
  Terms terms_;
};

// Signature polynomial of the n-point generic path. Builds the
// Chen expansion segment by segment and memoises partial results by
// (segment, suffix), so repeated calls over many words share work.
//
// Segment increments may be replaced by arbitrary linear forms in a target
// ring, which evaluates H at a substituted path without forming H first.
class SignatureMap {
 public:
  SignatureMap(int d, int n);
  // forms[s][i] is the image of a[s+1][i+1]; the result lives in (d, target_n).
  SignatureMap(int d, std::vector<std::vector<LinearForm>> forms, int target_n);

  int dim() const { return d_; }
  int segments() const { return static_cast<int>(forms_.size()); }

  IncrementPolynomial operator()(const Word& w);
  IncrementPolynomial operator()(const TensorElement& x);

  void clear_cache() { cache_.clear(); }

 private:
  const IncrementPolynomial& suffix(std::size_t segment, const Word& w, std::size_t from);
  IncrementPolynomial compute_suffix(std::size_t segment, const Word& w, std::size_t from);

  int d_;
  int target_n_;
  std::vector<std::vector<LinearForm>> forms_;
  std::vector<std::map<std::vector<freealg::Letter>, IncrementPolynomial>> cache_;
};

IncrementPolynomial signature_polynomial(const Word& w, int n, int d);
IncrementPolynomial signature_polynomial(const TensorElement& x, int n);

// Increment forms of the relabelled path y_t = x_{sigma(t)} over the original
// increments: y_{t+1} - y_t = +-(a_lo + ... + a_{hi-1}).
std::vector<std::vector<LinearForm>> permutation_forms(int d, std::span<const int> sigma);

IncrementPolynomial permute_control_points(const IncrementPolynomial& p, std::span<const int> sigma);

// Places x_i on the segment from x_{i-1} to x_{i+1} (x_i = lambda*x_{i-1} +
// (1-lambda)*x_{i+1}) and rewrites p in the increments of the n-1 remaining
// points. Requires 1 < i < n.
IncrementPolynomial substitute_collinear(const IncrementPolynomial& p, int i, const Rational& lambda);

}  // namespace sigvol::sigpoly
