#pragma once

// Exact rational arithmetic and exact linear algebra over Q.
//
// Every result in this header is exact. Subspaces are always stored in
// reduced row echelon form, so two SubspaceQ values describing the same
// subspace compare equal and print identically.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigvol::exactq {

using Integer = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Rational>;

// Builds num/den in canonical form. Throws on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den = 1);

// Accepts "7", "-2/3", "+4/6" (canonicalised to 2/3).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

class SparseMatrixQ {
 public:
  using Entry = std::pair<std::size_t, Rational>;  // (row, value)

  SparseMatrixQ() = default;
  SparseMatrixQ(std::size_t nrows, std::size_t ncols);

  static SparseMatrixQ from_dense(const std::vector<Vector>& rows);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t nonzeros() const;

  // Writing zero removes the entry.
  void set(std::size_t r, std::size_t c, const Rational& value);
  Rational at(std::size_t r, std::size_t c) const;

  // Entries may arrive unsorted and with repeated rows; they are summed.
  // Rows beyond the current row count grow the matrix. Returns the index of
  // the new column.
  std::size_t append_column(std::vector<Entry> entries);

  void resize_rows(std::size_t nrows);

  const std::vector<Entry>& column(std::size_t c) const { return columns_.at(c); }

  // Row-major copy; row r lists (column, value) pairs in column order.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> row_lists() const;

 private:
  std::size_t nrows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

class SubspaceQ {
 public:
  explicit SubspaceQ(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}

  static SubspaceQ whole(std::size_t ambient_dim);
  // Canonical span of arbitrary (possibly dependent) vectors.
  static SubspaceQ span(std::size_t ambient_dim, std::vector<Vector> vectors);
  // Trusts that `rref_rows` is already reduced echelon with the given pivots.
  static SubspaceQ from_rref(std::size_t ambient_dim, std::vector<Vector> rref_rows,
                             std::vector<std::size_t> pivots);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }

  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const SubspaceQ& other) const;

  friend bool operator==(const SubspaceQ& a, const SubspaceQ& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

enum class Method {
  Automatic,
  // Bareiss-style integer elimination with sparsity-aware pivoting, then
  // back substitution over Q.
  FractionFree,
  // Elimination modulo word-size primes, rational reconstruction, and an
  // exact certificate over Q (see exactq.cpp).
  Multimodular,
};

SubspaceQ nullspace(const SparseMatrixQ& m, Method method = Method::Automatic);
std::size_t rank(const SparseMatrixQ& m, Method method = Method::Automatic);

// Throws DimensionMismatch when the ambient dimensions differ.
SubspaceQ intersect(const SubspaceQ& a, const SubspaceQ& b);

// Dense exact RREF. Zero rows are dropped; pivots (if non-null) receives the
// pivot column of every returned row.
std::vector<Vector> rref(std::vector<Vector> rows, std::size_t ncols,
                         std::vector<std::size_t>* pivots = nullptr);

Rational determinant(std::vector<Vector> square);

}  // namespace sigvol::exactq
