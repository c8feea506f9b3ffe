#include "sigvol/invariants.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include "sigvol/error.hpp"

namespace sigvol::invariants {

namespace {

using exactq::Rational;
using exactq::SparseMatrixQ;
using exactq::SubspaceQ;
using freealg::Word;
using sigpoly::IncrementPolynomial;
using sigpoly::LinearForm;
using sigpoly::Monomial;
using sigpoly::SignatureMap;

using Forms = std::vector<std::vector<LinearForm>>;

// Increment forms for a path of m segments extended by one closing segment,
// written in the ring of the m-segment path.
Forms closure_forms(int d, int m, bool append) {
  auto var = [d](int seg, int coord) { return static_cast<std::size_t>(seg - 1) * d + (coord - 1); };
  Forms forms;
  auto closing = [&] {
    std::vector<LinearForm> seg;
    for (int i = 1; i <= d; ++i) {
      LinearForm f;
      for (int t = 1; t <= m; ++t) f.emplace_back(var(t, i), -1);
      seg.push_back(std::move(f));
    }
    return seg;
  };
  if (!append) forms.push_back(closing());
  for (int t = 1; t <= m; ++t) {
    std::vector<LinearForm> seg;
    for (int i = 1; i <= d; ++i) seg.push_back({{var(t, i), Rational(1)}});
    forms.push_back(std::move(seg));
  }
  if (append) forms.push_back(closing());
  return forms;
}

// The map w -> lhs(w) - rhs(w) (or lhs(w) alone).
struct Difference {
  SignatureMap lhs;
  std::optional<SignatureMap> rhs;

  IncrementPolynomial operator()(const Word& w) {
    auto p = lhs(w);
    if (rhs) p -= (*rhs)(w);
    return p;
  }
};

// Linear conditions on the coefficients of a degree-k element, one column
// per word. Rows are labelled by (map, monomial) or by word coordinate.
class System {
 public:
  System(int d, std::size_t k) : d_(d), k_(k) {}

  void add(SignatureMap lhs, std::optional<SignatureMap> rhs = std::nullopt) {
    maps_.push_back({std::move(lhs), std::move(rhs)});
  }
  void add_timerev() { timerev_ = true; }

  SubspaceQ solve(const Options& opt, const char* label) const {
    const auto words = freealg::words_of_degree(d_, k_);
    std::vector<std::map<Monomial, std::size_t, sigpoly::GrLexLess>> poly_rows(maps_.size());
    std::map<std::size_t, std::size_t> coord_rows;
    std::size_t next_row = 0;
    SparseMatrixQ m(0, 0);

    const unsigned threads = std::max(1u, opt.threads);
    std::vector<std::vector<Difference>> workers(threads, maps_);
    const std::size_t batch = 128;
    for (std::size_t start = 0; start < words.size(); start += batch) {
      const std::size_t end = std::min(words.size(), start + batch);
      std::vector<std::vector<IncrementPolynomial>> polys(end - start);
      auto work = [&](unsigned t) {
        for (std::size_t i = start + t; i < end; i += threads) {
          auto& out = polys[i - start];
          for (auto& map : workers[t]) out.push_back(map(words[i]));
        }
      };
      if (threads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
      }
      for (std::size_t i = start; i < end; ++i) {
        std::vector<SparseMatrixQ::Entry> entries;
        const auto& ps = polys[i - start];
        for (std::size_t j = 0; j < ps.size(); ++j)
          for (const auto& [mono, c] : ps[j].terms()) {
            auto [it, fresh] = poly_rows[j].try_emplace(mono, next_row);
            if (fresh) ++next_row;
            entries.emplace_back(it->second, c);
          }
        if (timerev_) {
          const Word& w = words[i];
          auto row_of = [&](std::size_t coord) {
            auto [it, fresh] = coord_rows.try_emplace(coord, next_row);
            if (fresh) ++next_row;
            return it->second;
          };
          entries.emplace_back(row_of(i), Rational(-1));
          entries.emplace_back(row_of(freealg::word_index(w.reversed(), d_)),
                               Rational(w.degree() % 2 ? -1 : 1));
        }
        m.append_column(std::move(entries));
      }
      if (opt.progress)
        std::cerr << label << ": assembled " << end << "/" << words.size() << " columns\n";
    }
    m.resize_rows(std::max(m.rows(), next_row));
    if (opt.progress)
      std::cerr << label << ": eliminating " << m.rows() << " x " << m.cols() << " (" << m.nonzeros()
                << " nonzeros)\n";
    return exactq::nullspace(m, opt.method);
  }

 private:
  int d_;
  std::size_t k_;
  std::vector<Difference> maps_;
  bool timerev_ = false;
};

void add_group(System& sys, int d, int n, const PermGroup& group) {
  if (group.degree() != n) fail(ErrorCode::DimensionMismatch, "group degree differs from the point count");
  for (const auto& g : group.generators())
    sys.add(SignatureMap(d, sigpoly::permutation_forms(d, g.images()), n), SignatureMap(d, n));
}

void add_loopclosure(System& sys, int d, int m) {
  sys.add(SignatureMap(d, closure_forms(d, m, true), m + 1), SignatureMap(d, m + 1));
  sys.add(SignatureMap(d, closure_forms(d, m, false), m + 1), SignatureMap(d, m + 1));
}

void check_args(int d, int n) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "d must be at least 1");
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be at least 1");
}

GradedBasis make_basis(int d, std::size_t k, SubspaceQ space) {
  GradedBasis b;
  b.d = d;
  b.k = k;
  b.space = std::move(space);
  return b;
}

// Basis of the (+1 or -1) eigenspace of the antipode on degree-k words.
GradedBasis antipode_eigenspace(int d, std::size_t k, int eigen) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "d must be at least 1");
  const auto words = freealg::words_of_degree(d, k);
  const int sign = k % 2 ? -1 : 1;
  std::vector<exactq::Vector> rows;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::size_t j = freealg::word_index(words[i].reversed(), d);
    if (j < i) continue;
    if (j == i) {
      if (sign != eigen) continue;
      exactq::Vector v(words.size());
      v[i] = 1;
      rows.push_back(std::move(v));
    } else {
      // A(e_i) = sign e_j, so e_i + eigen*sign e_j is an eigenvector.
      exactq::Vector v(words.size());
      v[i] = 1;
      v[j] = eigen * sign;
      rows.push_back(std::move(v));
    }
    pivots.push_back(i);
  }
  return make_basis(d, k, SubspaceQ::from_rref(words.size(), std::move(rows), std::move(pivots)));
}

}  // namespace

std::vector<TensorElement> GradedBasis::elements() const {
  std::vector<TensorElement> out;
  for (const auto& v : space.basis()) out.push_back(freealg::from_coordinates(d, k, v));
  return out;
}

bool GradedBasis::contains(const TensorElement& x) const {
  if (x.alphabet() != d) fail(ErrorCode::DimensionMismatch, "alphabet differs from the basis");
  for (const auto& [w, c] : x.terms())
    if (w.degree() != k) return false;
  return space.contains(freealg::to_coordinates(x, k));
}

GradedBasis invariant_space(int d, int n, std::size_t k, const PermGroup& group, const Options& opt) {
  check_args(d, n);
  System sys(d, k);
  add_group(sys, d, n, group);
  return make_basis(d, k, sys.solve(opt, "invariant space"));
}

GradedBasis kernel_space(int d, int n, std::size_t k, const Options& opt) {
  check_args(d, n);
  System sys(d, k);
  sys.add(SignatureMap(d, n));
  return make_basis(d, k, sys.solve(opt, "kernel"));
}

GradedBasis timerev_space(int d, std::size_t k) { return antipode_eigenspace(d, k, 1); }
GradedBasis antisymmetric_space(int d, std::size_t k) { return antipode_eigenspace(d, k, -1); }

bool loopclosure_membership(const TensorElement& x, int segments) {
  const int d = x.alphabet();
  const int m = segments > 0 ? segments : std::max<int>(1, static_cast<int>(x.degree_range().second));
  SignatureMap plain(d, m + 1);
  const auto base = plain(x);
  for (bool append : {true, false}) {
    SignatureMap closed(d, closure_forms(d, m, append), m + 1);
    if (closed(x) != base) return false;
  }
  return true;
}

GradedBasis loopclosure_space(int d, std::size_t k, const Options& opt) {
  check_args(d, 1);
  const int m = opt.segments > 0 ? opt.segments : std::max<int>(1, static_cast<int>(k));
  System sys(d, k);
  add_loopclosure(sys, d, m);
  return make_basis(d, k, sys.solve(opt, "loop closure"));
}

InvDPlan inv_d_plan(int d) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "d must be at least 1");
  InvDPlan plan;
  if (d % 2 == 1) {
    plan.timerev = ((d + 1) / 2) % 2 == 0;
  } else {
    plan.loopclosure = true;
    plan.timerev = (d / 2) % 2 == 0;
  }
  plan.description = "Inv_{d+1} ∩ Inv_{d+2}";
  if (plan.loopclosure) plan.description += " ∩ LoopClosureInv";
  if (plan.timerev) plan.description += " ∩ TimeRevInv";
  return plan;
}

GradedBasis inv_d_space(int d, std::size_t k, const Options& opt) {
  const auto plan = inv_d_plan(d);
  System sys(d, k);
  add_group(sys, d, d + 1, posgeom::stabilizer_structural(d, d + 1));
  add_group(sys, d, d + 2, posgeom::stabilizer_structural(d, d + 2));
  if (plan.timerev) sys.add_timerev();
  if (plan.loopclosure) add_loopclosure(sys, d, opt.segments > 0 ? opt.segments : std::max<int>(1, static_cast<int>(k)));
  return make_basis(d, k, sys.solve(opt, "volume invariants"));
}

std::size_t dim_image(const std::vector<TensorElement>& xs, int n, const Options& opt) {
  if (xs.empty()) return 0;
  const int d = xs.front().alphabet();
  SignatureMap h(d, n);
  std::map<Word, IncrementPolynomial, freealg::DegLexLess> word_images;
  std::map<Monomial, std::size_t, sigpoly::GrLexLess> rows;
  SparseMatrixQ m(0, 0);
  for (const auto& x : xs) {
    if (x.alphabet() != d) fail(ErrorCode::DimensionMismatch, "elements over different alphabets");
    std::map<Monomial, Rational, sigpoly::GrLexLess> acc;
    for (const auto& [w, c] : x.terms()) {
      auto it = word_images.find(w);
      if (it == word_images.end()) it = word_images.emplace(w, h(w)).first;
      for (const auto& [mono, v] : it->second.terms()) acc[mono] += c * v;
    }
    std::vector<SparseMatrixQ::Entry> entries;
    for (const auto& [mono, v] : acc) {
      if (v == 0) continue;
      auto [it, fresh] = rows.try_emplace(mono, rows.size());
      entries.emplace_back(it->second, v);
    }
    m.append_column(std::move(entries));
  }
  m.resize_rows(std::max(m.rows(), rows.size()));
  return exactq::rank(m, opt.method);
}

std::size_t dim_image(const GradedBasis& b, int n, const Options& opt) {
  return dim_image(b.elements(), n, opt);
}

bool is_invariant(const TensorElement& x, int n, const PermGroup& group) {
  const int d = x.alphabet();
  if (group.degree() != n) fail(ErrorCode::DimensionMismatch, "group degree differs from the point count");
  SignatureMap h(d, n);
  const auto base = h(x);
  for (const auto& g : group.generators()) {
    SignatureMap moved(d, sigpoly::permutation_forms(d, g.images()), n);
    if (moved(x) != base) return false;
  }
  return true;
}

bool is_invariant(const TensorElement& x, int d, int n) {
  if (x.alphabet() != d) fail(ErrorCode::DimensionMismatch, "element alphabet differs from d");
  return is_invariant(x, n, posgeom::stabilizer_structural(d, n));
}

ConjectureReport conjecture_evidence(int d, std::size_t k, const Options& opt) {
  ConjectureReport r;
  r.d = d;
  r.k = k;
  r.n = d + 2;
  const auto space = invariant_space(d, r.n, k, posgeom::stabilizer_structural(d, r.n), opt);
  r.dim_raw = space.dim();
  r.dim_image = dim_image(space, r.n, opt);
  if (k % static_cast<std::size_t>(d) == 0)
    r.span_dim = dim_image({freealg::shuffle_power(freealg::vol(d), k / d)}, r.n, opt);
  r.consistent = r.dim_image == r.span_dim;
  return r;
}

}  // namespace sigvol::invariants
