#include "sigvol/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "sigvol/error.hpp"
#include "sigvol/fixtures.hpp"

namespace sigvol::reproduce {

namespace {

using exactq::Rational;
using exactq::Vector;
using freealg::TensorElement;
using freealg::Word;
using sigpoly::IncrementPolynomial;
using sigpoly::PLPath;
using sigpoly::SignatureMap;

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << "FAILED " << what;
      pass = false;
    }
  }
};

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int mag = 5, int den = 4) {
    Rational q(uniform(-mag, mag), uniform(1, den));
    q.canonicalize();
    return q;
  }

  Rational positive(int mag = 5, int den = 4) {
    Rational q(uniform(1, mag), uniform(1, den));
    q.canonicalize();
    return q;
  }

  Word word(int d, std::size_t k) {
    std::vector<freealg::Letter> v(k);
    for (auto& l : v) l = static_cast<freealg::Letter>(uniform(1, d));
    return Word(std::move(v));
  }

  // A few terms spread over degrees lo..hi.
  TensorElement element(int d, std::size_t lo, std::size_t hi, int terms = 3) {
    TensorElement x(d);
    for (int t = 0; t < terms; ++t)
      x.add_term(word(d, static_cast<std::size_t>(uniform(static_cast<int>(lo), static_cast<int>(hi)))), rational());
    return x;
  }

  PLPath path(int d, int segments) {
    Vector start(static_cast<std::size_t>(d));
    for (auto& c : start) c = rational();
    std::vector<Vector> inc(static_cast<std::size_t>(segments), Vector(static_cast<std::size_t>(d)));
    for (auto& a : inc)
      for (auto& c : a) c = rational();
    return PLPath::from_increments(start, inc);
  }

 private:
  std::mt19937_64 rng_;
};

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Set of c_H / c_printed over the common support, for diagnostics.
std::string ratio_summary(const IncrementPolynomial& computed, const IncrementPolynomial& printed) {
  std::set<Rational> ratios;
  std::size_t missing = 0;
  for (const auto& [m, c] : printed.terms()) {
    const Rational h = computed.coefficient(m);
    if (h == 0) ++missing;
    else ratios.insert(h / c);
  }
  std::size_t extra = 0;
  for (const auto& [m, c] : computed.terms())
    if (printed.coefficient(m) == 0) ++extra;
  std::ostringstream os;
  os << "ratios {";
  bool first = true;
  for (const auto& r : ratios) {
    os << (first ? "" : ",") << exactq::to_string(r);
    first = false;
  }
  os << "}, " << missing << " printed terms absent, " << extra << " extra terms";
  return os.str();
}

}  // namespace

struct Runner::Cache {
  std::optional<invariants::GradedBasis> inv_d_3_6;
  std::optional<std::size_t> level7_closure_rank;
};

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "image dimensions of A_4 invariants (d=3, n=4), degrees 1-6 = 0,0,1,0,6,11";
    case 2: return "w1, w2 are invariant and reproduce the printed polynomial images";
    case 3: return "H_3^3(123) four-term expansion";
    case 4: return "brute-force and structural stabilizers agree, with expected orders";
    case 5: return "vol_3 concat square: kernel of H_5^3, antipode-fixed, volume invariant";
    case 6: return "eight level-7 elements: kernel of H_6^4, no loop-closure combination";
    case 7: return "planar degree-6 loop-closure invariant independent of signed area";
    case 8: return "signed volume equals triangulation volume";
    case 9: return "stabilizer permutations keep the signed volume, others decrease it";
    case 10: return "randomised identity suites";
    case 11: return "Lyndon word counts d=2, k=1..6 = 2,1,2,3,6,9";
    case 12: return "finite-degree witnesses for infinitely many volume invariants";
    default: fail(ErrorCode::OutOfRange, "no criterion " + std::to_string(id));
  }
}

Runner::Runner(invariants::Options opt) : opt_(opt), cache_(std::make_unique<Cache>()) {}
Runner::~Runner() = default;

std::vector<CriterionResult> Runner::run_all(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run(id));
  return out;
}

CriterionResult Runner::run(int id) {
  CriterionResult result;
  result.id = id;
  result.title = criterion_title(id);
  const auto start = std::chrono::steady_clock::now();
  Check check;
  auto& c = check.detail;
  auto level7_rank = [&]() -> std::size_t {
    if (cache_->level7_closure_rank) return *cache_->level7_closure_rank;
    // Closure differences evaluated on concrete 7-segment paths. Full column
    // rank means no nonzero combination is a loop-closure invariant.
    std::vector<TensorElement> xs;
    for (const auto& b : fixtures::bundled())
      if (b.get("kind", "element") == "element" && b.alphabet() == 4) xs.push_back(fixtures::element(b));
    Random rnd(0x6c6f6f70);
    std::vector<Vector> rows;
    std::size_t rank = 0;
    for (int attempt = 0; attempt < 8 && rank < xs.size(); ++attempt) {
      const PLPath p = rnd.path(4, 7);
      const auto incs = p.increments();
      Vector back(4);
      for (const auto& a : incs)
        for (int i = 0; i < 4; ++i) back[i] -= a[i];
      const auto s = sigpoly::pl_signature(p, 7);
      const auto seg = sigpoly::segment_signature(back, 7);
      const auto right = sigpoly::chen_product(s, seg);
      const auto left = sigpoly::chen_product(seg, s);
      Vector r1, r2;
      for (const auto& x : xs) {
        const Rational base = sigpoly::pair(s, x);
        r1.push_back(sigpoly::pair(right, x) - base);
        r2.push_back(sigpoly::pair(left, x) - base);
      }
      rows.push_back(std::move(r1));
      rows.push_back(std::move(r2));
      rank = exactq::rank(exactq::SparseMatrixQ::from_dense(rows), exactq::Method::FractionFree);
    }
    cache_->level7_closure_rank = rank;
    return rank;
  };
  auto inv_d_3_6 = [&]() -> const invariants::GradedBasis& {
    if (!cache_->inv_d_3_6) cache_->inv_d_3_6 = invariants::inv_d_space(3, 6, opt_);
    return *cache_->inv_d_3_6;
  };

  switch (id) {
    case 1: {
      const auto group = posgeom::stabilizer_structural(3, 4);
      const std::vector<std::size_t> expected{0, 0, 1, 0, 6, 11};
      std::vector<std::size_t> image, raw;
      for (std::size_t k = 1; k <= 6; ++k) {
        const auto space = invariants::invariant_space(3, 4, k, group, opt_);
        raw.push_back(space.dim());
        image.push_back(invariants::dim_image(space, 4, opt_));
      }
      std::size_t total = 0;
      for (auto v : image) total += v;
      check.require(image == expected, "image dimensions");
      c << (check.pass ? "" : "; ") << "image " << join_sizes(image) << " (sum " << total << "), raw "
        << join_sizes(raw);
      break;
    }
    case 2: {
      SignatureMap h(3, 4);
      for (const std::string name : {"w1", "w2"}) {
        const auto x = fixtures::element(name);
        const auto printed = fixtures::polynomial(name + "_image");
        const auto computed = h(x);
        const bool inv = invariants::is_invariant(x, 3, 4);
        const bool same = computed == printed;
        check.require(inv, name + " invariant under A_4");
        check.require(same, "H_4^3(" + name + ") equals printed image");
        c << "; " << name << ": invariant=" << (inv ? "yes" : "no") << ", image "
          << (same ? "matches" : "differs (" + ratio_summary(computed, printed) + ")");
      }
      break;
    }
    case 3: {
      const auto expected = IncrementPolynomial::parse(
          "1/6*a[2][1]*a[2][2]*a[2][3] + 1/2*a[2][2]*a[2][3]*a[1][1] + a[2][3]*1/2*a[1][1]*a[1][2]"
          " + 1/6*a[1][1]*a[1][2]*a[1][3]",
          3, 3);
      const auto computed = sigpoly::signature_polynomial(Word{1, 2, 3}, 3, 3);
      check.require(computed == expected, "H_3^3(123)");
      c << (check.pass ? "" : "; ") << computed.to_string();
      break;
    }
    case 4: {
      const std::vector<std::tuple<int, int, std::size_t>> table{
          {2, 4, 4},  {2, 5, 5}, {2, 6, 6}, {3, 4, 12}, {3, 5, 6},  {3, 6, 2},
          {3, 7, 2}, {4, 6, 36}, {4, 7, 14}, {5, 7, 72}, {5, 8, 1}, {6, 9, 9}};
      for (const auto& [d, n, order] : table) {
        const auto brute = posgeom::stabilizer_bruteforce(d, n);
        const auto built = posgeom::stabilizer_structural(d, n);
        const std::string at = "(" + std::to_string(d) + "," + std::to_string(n) + ")";
        check.require(brute.elements() == built.elements(), at + " element sets");
        check.require(brute.order() == order, at + " order " + std::to_string(brute.order()));
        check.require(posgeom::automorphism_group_order(d, n) % static_cast<unsigned long>(order) == 0,
                      at + " divides automorphism order");
        c << (c.tellp() > 0 ? " " : "") << at << "=" << built.order() << ":" << built.tag();
      }
      break;
    }
    case 5: {
      const auto x = fixtures::element("vol3_concat_square");
      const auto v3 = freealg::vol(3);
      check.require(x == freealg::concat(v3, v3), "fixture equals vol_3 . vol_3");
      const auto kernel = invariants::kernel_space(3, 5, 6, opt_);
      check.require(kernel.contains(x), "membership in kernel slice");
      check.require(freealg::antipode(x) == x, "antipode-fixed");
      check.require(inv_d_3_6().contains(x), "membership in volume invariants");
      c << (check.pass ? "" : "; ") << "kernel dim " << kernel.dim() << ", volume invariants dim "
        << inv_d_3_6().dim();
      break;
    }
    case 6: {
      SignatureMap h(4, 6);
      int zeros = 0, count = 0;
      for (const auto& b : fixtures::bundled()) {
        if (b.get("kind", "element") != "element" || b.alphabet() != 4) continue;
        ++count;
        const auto x = fixtures::element(b);
        if (h(x).is_zero()) ++zeros;
        else check.require(false, b.name + " maps to zero");
      }
      check.require(count == 8, "eight level-7 fixtures");
      const std::size_t rank = level7_rank();
      check.require(rank == 8, "closure differences have full rank");
      c << (check.pass ? "" : "; ") << zeros << "/" << count << " in kernel of H_6^4, closure-difference rank "
        << rank << "/8";
      break;
    }
    case 7: {
      const auto x = fixtures::element("loop_closure_d2_deg6");
      const auto area = freealg::shuffle_power(freealg::vol(2), 3);
      check.require(invariants::loopclosure_membership(x), "loop-closure membership");
      const auto span = exactq::SubspaceQ::span(
          64, {freealg::to_coordinates(x, 6), freealg::to_coordinates(area, 6)});
      check.require(span.dim() == 2, "independent of vol_2^3 as elements");
      const std::size_t img = invariants::dim_image({x, area}, 7, opt_);
      check.require(img == 2, "independent of vol_2^3 on 6-segment paths");
      c << (check.pass ? "" : "; ") << "element span dim " << span.dim() << ", image dim on 7 points " << img;
      break;
    }
    case 8: {
      const auto pentagon = posgeom::moment_curve_instance(2, {0, 1, 2, 3, 4});
      const Rational sv = posgeom::signed_volume(pentagon.path), pv = posgeom::polytope_volume(pentagon);
      check.require(sv == 10 && pv == 10, "pentagon volume 10");
      Random rnd(0x766f6c);
      int agree = 0;
      for (int t = 0; t < 20; ++t) {
        const int d = rnd.uniform(2, 3);
        const int n = rnd.uniform(d + 1, 8);
        std::vector<Rational> params{rnd.rational()};
        while (static_cast<int>(params.size()) < n) params.push_back(params.back() + rnd.positive(3, 3));
        const auto inst = posgeom::moment_curve_instance(d, params);
        if (posgeom::signed_volume(inst.path) == posgeom::polytope_volume(inst)) ++agree;
      }
      check.require(agree == 20, "random instances");
      c << (check.pass ? "" : "; ") << "pentagon " << exactq::to_string(sv) << "/" << exactq::to_string(pv)
        << ", random " << agree << "/20";
      break;
    }
    case 9: {
      for (auto [d, n] : {std::pair{2, 5}, std::pair{3, 4}}) {
        std::vector<Rational> params;
        for (int i = 1; i <= n; ++i) params.emplace_back(i);
        const auto inst = posgeom::moment_curve_instance(d, params);
        const auto group = posgeom::stabilizer_bruteforce(d, n);
        const Rational vol = posgeom::signed_volume(inst.path);
        int kept = 0, dropped = 0, bad = 0;
        std::vector<int> sigma(static_cast<std::size_t>(n));
        std::iota(sigma.begin(), sigma.end(), 1);
        do {
          const Rational v = posgeom::signed_volume(inst.path.permuted(sigma));
          if (group.contains(posgeom::Permutation(sigma))) {
            v == vol ? ++kept : ++bad;
          } else {
            v < vol ? ++dropped : ++bad;
          }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        check.require(bad == 0, "(" + std::to_string(d) + "," + std::to_string(n) + ")");
        c << (c.tellp() > 0 ? " " : "") << "(" << d << "," << n << "): " << kept << " kept, " << dropped
          << " decreased, " << bad << " violations";
      }
      break;
    }
    case 10: {
      Random rnd(0x70726f70);
      int ree = 0, chen = 0, rev = 0, col = 0, grade = 0;
      for (int t = 0; t < 100; ++t) {
        const int d = rnd.uniform(2, 3);
        const int n = rnd.uniform(2, 4);
        const auto p = rnd.element(d, 1, 2), q = rnd.element(d, 1, 2);
        const auto pq = freealg::shuffle(p, q);
        SignatureMap h(d, n);
        const auto hp = h(p);
        const auto hq = h(q);
        const PLPath path = rnd.path(d, n - 1);
        const auto sig = sigpoly::pl_signature(path, 4);
        const auto incs = path.increments();
        if (h(pq) == hp * hq && sigpoly::pair(sig, pq) == sigpoly::pair(sig, p) * sigpoly::pair(sig, q) &&
            hp.evaluate(incs) == sigpoly::pair(sig, p))
          ++ree;
      }
      for (int t = 0; t < 100; ++t) {
        const int d = rnd.uniform(2, 3);
        const PLPath x = rnd.path(d, rnd.uniform(1, 3)), y = rnd.path(d, rnd.uniform(1, 3));
        if (sigpoly::pl_signature(x.then(y), 4) ==
            sigpoly::chen_product(sigpoly::pl_signature(x, 4), sigpoly::pl_signature(y, 4)))
          ++chen;
      }
      for (int t = 0; t < 100; ++t) {
        const int d = rnd.uniform(2, 3);
        const PLPath x = rnd.path(d, rnd.uniform(1, 4));
        const auto w = rnd.element(d, 0, 4);
        if (sigpoly::pair(sigpoly::pl_signature(x.reversed(), 4), w) ==
            sigpoly::pair(sigpoly::pl_signature(x, 4), freealg::antipode(w)))
          ++rev;
      }
      for (int t = 0; t < 100; ++t) {
        const int d = rnd.uniform(2, 3);
        const int n = rnd.uniform(3, 4);
        const int i = rnd.uniform(2, n - 1);
        const auto hw = sigpoly::signature_polynomial(rnd.word(d, static_cast<std::size_t>(rnd.uniform(1, 4))), n, d);
        const auto a = sigpoly::substitute_collinear(hw, i, 0);
        if (a == sigpoly::substitute_collinear(hw, i, Rational(1, 3)) && a == sigpoly::substitute_collinear(hw, i, 1))
          ++col;
      }
      for (int t = 0; t < 100; ++t) {
        const int d = rnd.uniform(2, 3);
        const std::size_t j = static_cast<std::size_t>(rnd.uniform(0, 3)), k = static_cast<std::size_t>(rnd.uniform(0, 3));
        const auto x = rnd.element(d, j, j), y = rnd.element(d, k, k);
        const auto s = freealg::shuffle(x, y);
        bool ok = s.is_zero() || (s.is_homogeneous() && s.degree_range().first == j + k);
        const Word w = rnd.word(d, j + k);
        const auto hw = sigpoly::signature_polynomial(w, rnd.uniform(1, 4), d);
        ok = ok && (hw.is_zero() || (hw.is_homogeneous() && hw.degree_range().first == j + k));
        if (ok) ++grade;
      }
      int robust = 0, robust_total = 0;
      for (int d = 1; d <= 3; ++d)
        for (std::size_t k = 0; k <= 4; ++k) {
          invariants::Options a = opt_, b = opt_;
          a.segments = static_cast<int>(std::max<std::size_t>(k, 1));
          b.segments = a.segments + 1;
          ++robust_total;
          if (invariants::loopclosure_space(d, k, a).space == invariants::loopclosure_space(d, k, b).space) ++robust;
        }
      check.require(ree == 100, "shuffle homomorphism");
      check.require(chen == 100, "Chen identity");
      check.require(rev == 100, "antipode and reversal");
      check.require(col == 100, "collinear substitution");
      check.require(grade == 100, "grading");
      check.require(robust == robust_total, "segment-count robustness");
      c << (check.pass ? "" : "; ") << "homomorphism " << ree << ", Chen " << chen << ", reversal " << rev
        << ", collinear " << col << ", grading " << grade << " (of 100); loop-closure robustness " << robust << "/"
        << robust_total;
      break;
    }
    case 11: {
      std::vector<std::size_t> counts;
      for (std::size_t k = 1; k <= 6; ++k) counts.push_back(freealg::lyndon_words(2, k).size());
      check.require(counts == std::vector<std::size_t>{2, 1, 2, 3, 6, 9}, "counts");
      c << (check.pass ? "" : "; ") << join_sizes(counts);
      break;
    }
    case 12: {
      const auto v3 = freealg::vol(3);
      const auto deg3 = invariants::inv_d_space(3, 3, opt_);
      check.require(deg3.contains(v3), "vol_3 in degree 3");
      check.require(inv_d_3_6().contains(freealg::concat(v3, v3)), "vol_3 concat square in degree 6");
      check.require(inv_d_3_6().contains(freealg::shuffle(v3, v3)), "vol_3 shuffle square in degree 6");
      const std::size_t rank = level7_rank();
      check.require(rank == 8, "level-7 independence certificate");
      c << (check.pass ? "" : "; ") << "degree 3 dim " << deg3.dim() << ", degree 6 dim " << inv_d_3_6().dim()
        << ", level-7 certificate rank " << rank << "/8";
      break;
    }
    default:
      fail(ErrorCode::OutOfRange, "no criterion " + std::to_string(id));
  }
  result.pass = check.pass;
  result.detail = check.detail.str();
  if (!result.detail.empty() && result.detail.rfind("; ", 0) == 0) result.detail.erase(0, 2);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title;
  if (!r.detail.empty()) os << "  [" << r.detail << "]";
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "  " << r.seconds << "s";
  return os.str();
}

}  // namespace sigvol::reproduce
