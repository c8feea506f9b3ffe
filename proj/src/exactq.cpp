#include "sigvol/exactq.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>

#include "sigvol/error.hpp"

namespace sigvol::exactq {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') s.push_back(c);
  if (s.empty()) fail(ErrorCode::Parse, "empty rational");
  if (s[0] == '+') s.erase(0, 1);
  auto digits = [](std::string_view t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && t[0] == '-') i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false))
    fail(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  return make_rational(Integer(num), Integer(den));
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// SparseMatrixQ

SparseMatrixQ::SparseMatrixQ(std::size_t nrows, std::size_t ncols)
    : nrows_(nrows), columns_(ncols) {}

SparseMatrixQ SparseMatrixQ::from_dense(const std::vector<Vector>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  SparseMatrixQ m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) fail(ErrorCode::DimensionMismatch, "ragged dense matrix");
    for (std::size_t c = 0; c < ncols; ++c)
      if (rows[r][c] != 0) m.columns_[c].emplace_back(r, rows[r][c]);
  }
  return m;
}

std::size_t SparseMatrixQ::nonzeros() const {
  std::size_t total = 0;
  for (const auto& col : columns_) total += col.size();
  return total;
}

void SparseMatrixQ::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= nrows_ || c >= columns_.size()) fail(ErrorCode::OutOfRange, "matrix index out of range");
  auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    if (value == 0)
      col.erase(it);
    else
      it->second = value;
  } else if (value != 0) {
    col.insert(it, Entry(r, value));
  }
}

Rational SparseMatrixQ::at(std::size_t r, std::size_t c) const {
  if (r >= nrows_ || c >= columns_.size()) fail(ErrorCode::OutOfRange, "matrix index out of range");
  const auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

std::size_t SparseMatrixQ::append_column(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  if (!merged.empty()) nrows_ = std::max(nrows_, merged.back().first + 1);
  columns_.push_back(std::move(merged));
  return columns_.size() - 1;
}

void SparseMatrixQ::resize_rows(std::size_t nrows) {
  for (auto& col : columns_)
    if (!col.empty() && col.back().first >= nrows)
      fail(ErrorCode::OutOfRange, "resize would drop nonzero entries");
  nrows_ = nrows;
}

std::vector<std::vector<std::pair<std::size_t, Rational>>> SparseMatrixQ::row_lists() const {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> out(nrows_);
  for (std::size_t c = 0; c < columns_.size(); ++c)
    for (const auto& [r, v] : columns_[c]) out[r].emplace_back(c, v);
  return out;
}

// ---------------------------------------------------------------------------
// Dense RREF and SubspaceQ

std::vector<Vector> rref(std::vector<Vector> rows, std::size_t ncols,
                         std::vector<std::size_t>* pivots) {
  for (const auto& row : rows)
    if (row.size() != ncols) fail(ErrorCode::DimensionMismatch, "rref: row length mismatch");
  std::vector<std::size_t> piv;
  std::size_t top = 0;
  for (std::size_t c = 0; c < ncols && top < rows.size(); ++c) {
    std::size_t sel = top;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[top], rows[sel]);
    const Rational inv = 1 / rows[top][c];
    for (std::size_t j = c; j < ncols; ++j)
      if (rows[top][j] != 0) rows[top][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == top || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (rows[top][j] != 0) rows[i][j] -= f * rows[top][j];
    }
    piv.push_back(c);
    ++top;
  }
  rows.resize(top);
  if (pivots) *pivots = std::move(piv);
  return rows;
}

SubspaceQ SubspaceQ::whole(std::size_t ambient_dim) {
  SubspaceQ s(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Vector v(ambient_dim);
    v[i] = 1;
    s.basis_.push_back(std::move(v));
    s.pivots_.push_back(i);
  }
  return s;
}

SubspaceQ SubspaceQ::span(std::size_t ambient_dim, std::vector<Vector> vectors) {
  SubspaceQ s(ambient_dim);
  s.basis_ = rref(std::move(vectors), ambient_dim, &s.pivots_);
  return s;
}

SubspaceQ SubspaceQ::from_rref(std::size_t ambient_dim, std::vector<Vector> rref_rows,
                               std::vector<std::size_t> pivots) {
  SubspaceQ s(ambient_dim);
  s.basis_ = std::move(rref_rows);
  s.pivots_ = std::move(pivots);
  return s;
}

bool SubspaceQ::contains(const Vector& v) const {
  if (v.size() != ambient_) fail(ErrorCode::DimensionMismatch, "vector/subspace dimension mismatch");
  Vector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational f = r[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (basis_[i][j] != 0) r[j] -= f * basis_[i][j];
  }
  return std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; });
}

bool SubspaceQ::contains(const SubspaceQ& other) const {
  if (other.ambient_ != ambient_) fail(ErrorCode::DimensionMismatch, "subspace dimension mismatch");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Vector& v) { return contains(v); });
}

// ---------------------------------------------------------------------------
// Shared helpers for both elimination routes

namespace {

using u64 = std::uint64_t;
using IntRow = std::vector<std::pair<std::size_t, Integer>>;

// Scales every row to coprime integers; all-zero rows are dropped.
std::vector<IntRow> integer_rows(const SparseMatrixQ& m) {
  std::vector<IntRow> out;
  for (auto& row : m.row_lists()) {
    if (row.empty()) continue;
    Integer den = 1;
    for (const auto& [c, v] : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    IntRow ir;
    ir.reserve(row.size());
    Integer g = 0;
    for (const auto& [c, v] : row) {
      Integer x = v.get_num() * (den / v.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      ir.emplace_back(c, std::move(x));
    }
    if (g != 1)
      for (auto& e : ir) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    out.push_back(std::move(ir));
  }
  return out;
}

Vector nullspace_from_rref_row_major(const std::vector<Vector>& r, const std::vector<std::size_t>& piv,
                                     std::size_t free_col, std::size_t ncols) {
  Vector v(ncols);
  v[free_col] = 1;
  for (std::size_t i = 0; i < r.size(); ++i) v[piv[i]] = -r[i][free_col];
  return v;
}

SubspaceQ nullspace_of_rref(const std::vector<Vector>& r, const std::vector<std::size_t>& piv,
                            std::size_t ncols) {
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < ncols; ++f)
    if (!is_pivot[f]) basis.push_back(nullspace_from_rref_row_major(r, piv, f, ncols));
  return SubspaceQ::span(ncols, std::move(basis));
}

// ---------------------------------------------------------------------------
// Fraction-free route

SubspaceQ nullspace_fraction_free(const SparseMatrixQ& m) {
  const std::size_t n = m.cols();
  std::vector<std::vector<Integer>> rows;
  for (const auto& ir : integer_rows(m)) {
    std::vector<Integer> dense(n);
    for (const auto& [c, v] : ir) dense[c] = v;
    rows.push_back(std::move(dense));
  }
  std::vector<std::size_t> remaining(rows.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> echelon;  // (row, pivot column)
  Integer prev = 1;
  for (std::size_t c = 0; c < n && !remaining.empty(); ++c) {
    // Sparsest eligible row, ties broken by position: a fixed rule keeps the
    // elimination deterministic.
    std::size_t best = remaining.size();
    std::size_t best_nnz = 0;
    for (std::size_t t = 0; t < remaining.size(); ++t) {
      const auto& row = rows[remaining[t]];
      if (row[c] == 0) continue;
      std::size_t nnz = 0;
      for (std::size_t j = c; j < n; ++j) nnz += row[j] != 0;
      if (best == remaining.size() || nnz < best_nnz) {
        best = t;
        best_nnz = nnz;
      }
    }
    if (best == remaining.size()) continue;
    const std::size_t pr = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    const Integer pivot = rows[pr][c];
    for (std::size_t i : remaining) {
      auto& row = rows[i];
      const Integer factor = row[c];
      for (std::size_t j = c + 1; j < n; ++j) {
        Integer x = pivot * row[j];
        if (factor != 0) x -= factor * rows[pr][j];
        mpz_divexact(row[j].get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = pivot;
    echelon.emplace_back(pr, c);
  }
  std::vector<Vector> ech;
  for (const auto& [r, c] : echelon) {
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = rows[r][j];
    ech.push_back(std::move(v));
  }
  std::vector<std::size_t> piv;
  auto reduced = rref(std::move(ech), n, &piv);
  return nullspace_of_rref(reduced, piv, n);
}

// ---------------------------------------------------------------------------
// Multimodular route
//
// 1. Eliminate rows (in a fixed shuffled order) modulo a 31-bit prime p until
//    the mod-p null space annihilates every row of the matrix. The rows that
//    produced pivots span the row space mod p.
// 2. Repeat the elimination of those pivot rows modulo further primes, CRT the
//    reduced echelon form of the null space and attempt rational
//    reconstruction.
// 3. Check every reconstructed vector exactly against all rows over Z.
//
// Step 3 is a certificate: rank mod p never exceeds the rank over Q, so the
// exact null space has dimension at most the mod-p nullity; the verified
// vectors are that many independent exact solutions in reduced echelon form,
// hence they are the canonical basis.

u64 mul_mod(u64 a, u64 b, u64 p) { return a * b % p; }

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

const std::vector<u64>& prime_list() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    for (u64 c = (u64{1} << 31) - 1; out.size() < 2048; c -= 2) {
      bool prime = true;
      for (u64 d = 3; d * d <= c; d += 2)
        if (c % d == 0) {
          prime = false;
          break;
        }
      if (prime) out.push_back(c);
    }
    return out;
  }();
  return primes;
}

u64 reduce(const Integer& x, u64 p) {
  return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p));
}

class ModEchelon {
 public:
  ModEchelon(u64 p, std::size_t ncols) : p_(p), n_(ncols), where_(ncols, -1) {}

  bool insert(std::vector<u64> row) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (row[c] == 0 || where_[c] < 0) continue;
      const auto& piv = rows_[static_cast<std::size_t>(where_[c])];
      const u64 f = p_ - row[c];
      for (std::size_t j = c; j < n_; ++j)
        if (piv[j]) row[j] = (row[j] + mul_mod(f, piv[j], p_)) % p_;
    }
    std::size_t lead = 0;
    while (lead < n_ && row[lead] == 0) ++lead;
    if (lead == n_) return false;
    const u64 inv = inv_mod(row[lead], p_);
    for (std::size_t j = lead; j < n_; ++j)
      if (row[j]) row[j] = mul_mod(row[j], inv, p_);
    where_[lead] = static_cast<std::ptrdiff_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

  // Fully reduced echelon rows sorted by pivot.
  void rref(std::vector<std::vector<u64>>& out, std::vector<std::size_t>& pivots) const {
    pivots.clear();
    for (std::size_t c = 0; c < n_; ++c)
      if (where_[c] >= 0) pivots.push_back(c);
    out.clear();
    for (auto c : pivots) out.push_back(rows_[static_cast<std::size_t>(where_[c])]);
    for (std::size_t i = out.size(); i-- > 0;) {
      const std::size_t pc = pivots[i];
      for (std::size_t k = 0; k < i; ++k) {
        const u64 v = out[k][pc];
        if (!v) continue;
        const u64 f = p_ - v;
        for (std::size_t j = pc; j < n_; ++j)
          if (out[i][j]) out[k][j] = (out[k][j] + mul_mod(f, out[i][j], p_)) % p_;
      }
    }
  }

  // Canonical (reduced echelon) basis of the null space of the inserted rows.
  void null_rref(std::vector<std::vector<u64>>& out, std::vector<std::size_t>& pivots) const {
    std::vector<std::vector<u64>> r;
    std::vector<std::size_t> piv;
    rref(r, piv);
    std::vector<bool> is_pivot(n_, false);
    for (auto c : piv) is_pivot[c] = true;
    ModEchelon null(p_, n_);
    for (std::size_t f = 0; f < n_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<u64> v(n_, 0);
      v[f] = 1;
      for (std::size_t i = 0; i < r.size(); ++i) v[piv[i]] = r[i][f] ? p_ - r[i][f] : 0;
      null.insert(std::move(v));
    }
    null.rref(out, pivots);
  }

 private:
  u64 p_;
  std::size_t n_;
  std::vector<std::vector<u64>> rows_;
  std::vector<std::ptrdiff_t> where_;
};

std::vector<u64> row_mod(const IntRow& row, std::size_t ncols, u64 p) {
  std::vector<u64> out(ncols, 0);
  for (const auto& [c, v] : row) out[c] = reduce(v, p);
  return out;
}

bool annihilates(const IntRow& row, const std::vector<std::vector<u64>>& null, u64 p) {
  for (const auto& v : null) {
    u64 acc = 0;
    for (const auto& [c, x] : row)
      if (v[c]) acc = (acc + mul_mod(reduce(x, p), v[c], p)) % p;
    if (acc) return false;
  }
  return true;
}

bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out) {
  Integer bound;
  Integer half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Integer s0 = 0, s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (abs(s1) > bound || s1 == 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return false;
  out = make_rational(r1, s1);
  return true;
}

bool verify_exact(const std::vector<IntRow>& rows, const std::vector<Vector>& candidates) {
  for (const auto& v : candidates) {
    Integer den = 1;
    for (const auto& q : v)
      if (q != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> z(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) z[j] = v[j].get_num() * (den / v[j].get_den());
    Integer acc;
    for (const auto& row : rows) {
      acc = 0;
      for (const auto& [c, x] : row)
        if (z[c] != 0) mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), z[c].get_mpz_t());
      if (acc != 0) return false;
    }
  }
  return true;
}

// Returns false (with `restart` set) when a later prime shows that the first
// prime lost rank.
bool multimodular_attempt(const std::vector<IntRow>& rows, std::size_t n,
                          const std::vector<std::size_t>& order, std::size_t& restart,
                          SubspaceQ& result) {
  const auto& primes = prime_list();
  const std::size_t first = restart;
  const u64 p1 = primes[first];
  ModEchelon ech(p1, n);
  std::vector<std::size_t> pivot_rows;
  std::vector<bool> consumed(rows.size(), false);
  std::size_t next = 0;
  const std::size_t patience = 8 + n / 16;

  std::vector<std::vector<u64>> null1;
  std::vector<std::size_t> null_piv;
  for (;;) {
    std::size_t stale = 0;
    while (next < order.size() && stale < patience) {
      const std::size_t r = order[next++];
      consumed[r] = true;
      if (ech.insert(row_mod(rows[r], n, p1))) {
        pivot_rows.push_back(r);
        stale = 0;
      } else {
        ++stale;
      }
    }
    ech.null_rref(null1, null_piv);
    bool clean = true;
    for (std::size_t t = next; t < order.size(); ++t) {
      const std::size_t r = order[t];
      if (consumed[r] || annihilates(rows[r], null1, p1)) continue;
      consumed[r] = true;
      clean = false;
      if (ech.insert(row_mod(rows[r], n, p1))) pivot_rows.push_back(r);
      ech.null_rref(null1, null_piv);
    }
    if (clean) break;
  }

  const std::size_t nullity = null1.size();
  if (nullity == 0) {
    result = SubspaceQ(n);
    return true;
  }
  const std::size_t rank = ech.rank();

  std::vector<std::vector<Integer>> residue(nullity, std::vector<Integer>(n));
  for (std::size_t i = 0; i < nullity; ++i)
    for (std::size_t j = 0; j < n; ++j) residue[i][j] = static_cast<unsigned long>(null1[i][j]);
  Integer modulus = static_cast<unsigned long>(p1);

  std::vector<std::vector<u64>> np;
  std::vector<std::size_t> np_piv;
  for (std::size_t pi = 1;; ++pi) {
    std::vector<Vector> candidate(nullity, Vector(n));
    bool ok = true;
    for (std::size_t i = 0; i < nullity && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (residue[i][j] == 0) continue;
        ok = rational_reconstruct(residue[i][j], modulus, candidate[i][j]);
      }
    if (ok && verify_exact(rows, candidate)) {
      result = SubspaceQ::from_rref(n, std::move(candidate), null_piv);
      return true;
    }

    if (first + pi >= primes.size()) fail(ErrorCode::Internal, "multimodular nullspace: out of primes");
    const u64 p = primes[first + pi];
    ModEchelon e(p, n);
    for (auto r : pivot_rows) e.insert(row_mod(rows[r], n, p));
    if (e.rank() > rank) {
      restart = first + pi;
      return false;
    }
    if (e.rank() != rank) continue;
    e.null_rref(np, np_piv);
    if (np_piv != null_piv) continue;

    const u64 minv = inv_mod(reduce(modulus, p), p);
    for (std::size_t i = 0; i < nullity; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const u64 cur = reduce(residue[i][j], p);
        const u64 delta = mul_mod((np[i][j] + p - cur) % p, minv, p);
        if (delta) residue[i][j] += modulus * static_cast<unsigned long>(delta);
      }
    modulus *= static_cast<unsigned long>(p);
  }
}

SubspaceQ nullspace_multimodular(const SparseMatrixQ& m) {
  const std::size_t n = m.cols();
  const auto rows = integer_rows(m);
  if (rows.empty()) return SubspaceQ::whole(n);

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(0x5167766f6cULL);
  std::shuffle(order.begin(), order.end(), rng);

  std::size_t start = 0;
  SubspaceQ result(n);
  while (!multimodular_attempt(rows, n, order, start, result)) {
  }
  return result;
}

}  // namespace

SubspaceQ nullspace(const SparseMatrixQ& m, Method method) {
  if (m.cols() == 0) return SubspaceQ(0);
  if (method == Method::Automatic)
    method = m.cols() <= 32 ? Method::FractionFree : Method::Multimodular;
  return method == Method::FractionFree ? nullspace_fraction_free(m) : nullspace_multimodular(m);
}

std::size_t rank(const SparseMatrixQ& m, Method method) {
  return m.cols() - nullspace(m, method).dim();
}

SubspaceQ intersect(const SubspaceQ& a, const SubspaceQ& b) {
  if (a.ambient_dim() != b.ambient_dim())
    fail(ErrorCode::DimensionMismatch, "intersect: ambient dimensions differ");
  const std::size_t n = a.ambient_dim();
  if (a.dim() == n) return b;
  if (b.dim() == n) return a;
  if (a.is_zero() || b.is_zero()) return SubspaceQ(n);
  // sum_i x_i a_i - sum_j y_j b_j = 0
  SparseMatrixQ m(n, 0);
  for (const auto& v : a.basis()) {
    std::vector<SparseMatrixQ::Entry> col;
    for (std::size_t r = 0; r < n; ++r)
      if (v[r] != 0) col.emplace_back(r, v[r]);
    m.append_column(std::move(col));
  }
  for (const auto& v : b.basis()) {
    std::vector<SparseMatrixQ::Entry> col;
    for (std::size_t r = 0; r < n; ++r)
      if (v[r] != 0) col.emplace_back(r, -v[r]);
    m.append_column(std::move(col));
  }
  m.resize_rows(n);
  const auto null = nullspace(m);
  std::vector<Vector> vecs;
  for (const auto& coeffs : null.basis()) {
    Vector v(n);
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (coeffs[i] != 0)
        for (std::size_t r = 0; r < n; ++r)
          if (a.basis()[i][r] != 0) v[r] += coeffs[i] * a.basis()[i][r];
    vecs.push_back(std::move(v));
  }
  return SubspaceQ::span(n, std::move(vecs));
}

Rational determinant(std::vector<Vector> m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace sigvol::exactq
