#include "sigvol/sigpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

#include "sigvol/error.hpp"

namespace sigvol::sigpoly {

namespace {

using exactq::Integer;

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

Rational inverse_factorial(std::size_t k) {
  Integer f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return Rational(Integer(1), f);
}

}  // namespace

// ---------------------------------------------------------------- paths

PLPath::PLPath(int d, std::vector<Vector> points) : d_(d), points_(std::move(points)) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "path dimension must be at least 1");
  if (points_.empty()) fail(ErrorCode::InvalidArgument, "a path needs at least one point");
  for (const auto& p : points_)
    if (p.size() != static_cast<std::size_t>(d))
      fail(ErrorCode::DimensionMismatch, "control point has wrong dimension");
}

PLPath PLPath::from_increments(const Vector& start, const std::vector<Vector>& increments) {
  std::vector<Vector> pts{start};
  for (const auto& a : increments) {
    if (a.size() != start.size()) fail(ErrorCode::DimensionMismatch, "increment has wrong dimension");
    Vector next = pts.back();
    for (std::size_t i = 0; i < a.size(); ++i) next[i] += a[i];
    pts.push_back(std::move(next));
  }
  return PLPath(static_cast<int>(start.size()), std::move(pts));
}

std::vector<Vector> PLPath::increments() const {
  std::vector<Vector> out;
  for (std::size_t t = 0; t + 1 < points_.size(); ++t) {
    Vector a(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) a[i] = points_[t + 1][i] - points_[t][i];
    out.push_back(std::move(a));
  }
  return out;
}

PLPath PLPath::reversed() const { return PLPath(d_, {points_.rbegin(), points_.rend()}); }

PLPath PLPath::permuted(std::span<const int> sigma) const {
  if (sigma.size() != points_.size()) fail(ErrorCode::DimensionMismatch, "permutation size differs from point count");
  std::vector<Vector> pts;
  for (int s : sigma) {
    if (s < 1 || s > static_cast<int>(points_.size())) fail(ErrorCode::OutOfRange, "permutation image out of range");
    pts.push_back(points_[s - 1]);
  }
  return PLPath(d_, std::move(pts));
}

PLPath PLPath::then(const PLPath& next) const {
  if (next.d_ != d_) fail(ErrorCode::DimensionMismatch, "paths of different dimension");
  return from_increments(points_.front(), [&] {
    auto inc = increments();
    auto more = next.increments();
    inc.insert(inc.end(), more.begin(), more.end());
    return inc;
  }());
}

// ----------------------------------------------------------- signatures

TruncatedSignature::TruncatedSignature(int d, std::size_t maxdeg) : d_(d) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "dimension must be at least 1");
  levels_.resize(maxdeg + 1);
  for (std::size_t k = 0; k <= maxdeg; ++k) levels_[k].assign(ipow(d, k), Rational(0));
  levels_[0][0] = 1;
}

Rational TruncatedSignature::coefficient(const Word& w) const {
  if (w.degree() > max_degree()) fail(ErrorCode::OutOfRange, "word longer than truncation degree");
  if (w.max_letter() > d_) fail(ErrorCode::OutOfRange, "letter outside alphabet");
  return levels_[w.degree()][freealg::word_index(w, d_)];
}

TensorElement TruncatedSignature::to_element() const {
  TensorElement out(d_);
  for (std::size_t k = 0; k < levels_.size(); ++k) out += freealg::from_coordinates(d_, k, levels_[k]);
  return out;
}

TruncatedSignature segment_signature(const Vector& a, std::size_t maxdeg) {
  const int d = static_cast<int>(a.size());
  TruncatedSignature s(d, maxdeg);
  for (std::size_t k = 1; k <= maxdeg; ++k) {
    const Vector& prev = s.level(k - 1);
    Vector& cur = s.level(k);
    for (std::size_t u = 0; u < prev.size(); ++u) {
      if (prev[u] == 0) continue;
      for (int i = 0; i < d; ++i) cur[u * d + i] = prev[u] * a[i] / static_cast<unsigned long>(k);
    }
  }
  return s;
}

TruncatedSignature chen_product(const TruncatedSignature& s, const TruncatedSignature& t) {
  if (s.dim() != t.dim()) fail(ErrorCode::DimensionMismatch, "signatures of different dimension");
  if (s.max_degree() != t.max_degree()) fail(ErrorCode::DimensionMismatch, "signatures truncated at different degrees");
  const int d = s.dim();
  TruncatedSignature out(d, s.max_degree());
  for (std::size_t k = 1; k <= s.max_degree(); ++k) {
    Vector& level = out.level(k);
    for (std::size_t j = 0; j <= k; ++j) {
      const Vector& left = s.level(j);
      const Vector& right = t.level(k - j);
      for (std::size_t u = 0; u < left.size(); ++u) {
        if (left[u] == 0) continue;
        const std::size_t base = u * right.size();
        for (std::size_t v = 0; v < right.size(); ++v)
          if (right[v] != 0) level[base + v] += left[u] * right[v];
      }
    }
  }
  return out;
}

TruncatedSignature pl_signature(const PLPath& path, std::size_t maxdeg) {
  TruncatedSignature sig(path.dim(), maxdeg);
  for (const auto& a : path.increments()) sig = chen_product(sig, segment_signature(a, maxdeg));
  return sig;
}

Rational pair(const TruncatedSignature& s, const TensorElement& x) {
  if (x.alphabet() > s.dim()) fail(ErrorCode::DimensionMismatch, "element alphabet exceeds path dimension");
  Rational total = 0;
  for (const auto& [w, c] : x.terms()) total += c * s.coefficient(w);
  return total;
}

// ---------------------------------------------------------- polynomials

void Monomial::bump(std::size_t var, unsigned by) {
  if (var >= kMaxVariables) fail(ErrorCode::Unsupported, "too many polynomial variables");
  if (exps[var] + by > 255) fail(ErrorCode::Unsupported, "exponent overflow");
  exps[var] = static_cast<std::uint8_t>(exps[var] + by);
  degree = static_cast<std::uint16_t>(degree + by);
}

bool GrLexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree != b.degree) return a.degree < b.degree;
  // Larger exponent on an earlier variable sorts first.
  const int c = std::memcmp(a.exps.data(), b.exps.data(), kMaxVariables);
  return c > 0;
}

IncrementPolynomial::IncrementPolynomial(int d, int n) : d_(d), n_(n) {
  if (d < 1 || n < 1) fail(ErrorCode::InvalidArgument, "polynomial ring needs d >= 1 and n >= 1");
  if (variables() > kMaxVariables)
    fail(ErrorCode::Unsupported, "at most " + std::to_string(kMaxVariables) + " increment variables");
}

IncrementPolynomial IncrementPolynomial::constant(int d, int n, const Rational& c) {
  IncrementPolynomial p(d, n);
  p.add_term(Monomial{}, c);
  return p;
}

IncrementPolynomial IncrementPolynomial::variable(int d, int n, int segment, int coord) {
  IncrementPolynomial p(d, n);
  Monomial m;
  m.bump(p.var(segment, coord));
  p.add_term(m, 1);
  return p;
}

std::size_t IncrementPolynomial::var(int segment, int coord) const {
  if (segment < 1 || segment > n_ - 1 || coord < 1 || coord > d_)
    fail(ErrorCode::OutOfRange, "variable a[" + std::to_string(segment) + "][" + std::to_string(coord) +
                                    "] outside the ring");
  return static_cast<std::size_t>(segment - 1) * d_ + (coord - 1);
}

Rational IncrementPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void IncrementPolynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::pair<unsigned, unsigned> IncrementPolynomial::degree_range() const {
  if (terms_.empty()) return {0, 0};
  return {terms_.begin()->first.degree, terms_.rbegin()->first.degree};
}

bool IncrementPolynomial::is_homogeneous() const {
  auto [lo, hi] = degree_range();
  return lo == hi;
}

static void require_same_ring(const IncrementPolynomial& a, const IncrementPolynomial& b) {
  if (a.dim() != b.dim() || a.points() != b.points())
    fail(ErrorCode::DimensionMismatch, "polynomials live in different rings");
}

IncrementPolynomial& IncrementPolynomial::operator+=(const IncrementPolynomial& o) {
  require_same_ring(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

IncrementPolynomial& IncrementPolynomial::operator-=(const IncrementPolynomial& o) {
  require_same_ring(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

IncrementPolynomial& IncrementPolynomial::operator*=(const Rational& c) {
  if (c == 0) terms_.clear();
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

IncrementPolynomial operator*(const IncrementPolynomial& a, const IncrementPolynomial& b) {
  require_same_ring(a, b);
  IncrementPolynomial out(a.d_, a.n_);
  const std::size_t nv = a.variables();
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (std::size_t v = 0; v < nv; ++v)
        if (mb.exps[v]) m.bump(v, mb.exps[v]);
      out.add_term(m, ca * cb);
    }
  return out;
}

IncrementPolynomial IncrementPolynomial::times_linear(const LinearForm& form) const {
  IncrementPolynomial out(d_, n_);
  for (const auto& [m, c] : terms_)
    for (const auto& [v, f] : form) {
      Monomial mm = m;
      mm.bump(v);
      out.add_term(mm, c * f);
    }
  return out;
}

Rational IncrementPolynomial::evaluate(const std::vector<Vector>& increments) const {
  if (increments.size() != static_cast<std::size_t>(segments()))
    fail(ErrorCode::DimensionMismatch, "wrong number of increments");
  std::vector<Rational> values(variables());
  for (int s = 0; s < segments(); ++s) {
    if (increments[s].size() != static_cast<std::size_t>(d_))
      fail(ErrorCode::DimensionMismatch, "increment has wrong dimension");
    for (int i = 0; i < d_; ++i) values[s * d_ + i] = increments[s][i];
  }
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < values.size(); ++v)
      for (unsigned e = 0; e < m.exps[v]; ++e) t *= values[v];
    total += t;
  }
  return total;
}

IncrementPolynomial IncrementPolynomial::substitute(const std::vector<LinearForm>& images, int d,
                                                    int n) const {
  if (images.size() != variables()) fail(ErrorCode::DimensionMismatch, "one image per variable required");
  IncrementPolynomial out(d, n);
  // Powers of each image are reused across monomials.
  std::vector<std::vector<IncrementPolynomial>> powers(variables());
  auto power = [&](std::size_t v, unsigned e) -> const IncrementPolynomial& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(constant(d, n, 1));
    while (list.size() <= e) list.push_back(list.back().times_linear(images[v]));
    return list[e];
  };
  for (const auto& [m, c] : terms_) {
    IncrementPolynomial t = constant(d, n, c);
    for (std::size_t v = 0; v < variables(); ++v)
      if (m.exps[v]) t = t * power(v, m.exps[v]);
    out += t;
  }
  return out;
}

std::string IncrementPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.degree == 0) {
      os << exactq::to_string(mag);
      wrote = true;
    }
    for (std::size_t v = 0; v < variables(); ++v) {
      if (!m.exps[v]) continue;
      if (wrote) os << '*';
      os << "a[" << v / d_ + 1 << "][" << v % d_ + 1 << ']';
      if (m.exps[v] > 1) os << '^' << static_cast<int>(m.exps[v]);
      wrote = true;
    }
  }
  return os.str();
}

IncrementPolynomial IncrementPolynomial::parse(std::string_view text, int d, int n) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::Parse, "empty polynomial");

  Rational outer = 1;
  if (s.back() == ')') {
    auto open = s.find('(');
    if (open == std::string::npos) fail(ErrorCode::Parse, "unbalanced parenthesis");
    std::string_view factor(s.data(), open);
    if (!factor.empty()) {
      if (factor.back() != '*') fail(ErrorCode::Parse, "expected 'c*(' before parenthesis");
      factor.remove_suffix(1);
      outer = exactq::parse_rational(factor);
    }
    s = s.substr(open + 1, s.size() - open - 2);
  }

  IncrementPolynomial out(d, n);
  if (s == "0") return out;
  std::size_t pos = 0;
  auto expect_number = [&](std::size_t& p) {
    std::size_t start = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == start) fail(ErrorCode::Parse, "expected a number at offset " + std::to_string(start));
    return std::stoi(s.substr(start, p - start));
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail(ErrorCode::Parse, "expected '+' or '-' at offset " + std::to_string(pos));
    }
    Rational coeff = 1;
    Monomial m;
    bool any = false;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      if (any) {
        if (s[pos] != '*') fail(ErrorCode::Parse, "expected '*' at offset " + std::to_string(pos));
        ++pos;
      }
      if (pos < s.size() && s[pos] == 'a') {
        ++pos;
        if (pos >= s.size() || s[pos] != '[') fail(ErrorCode::Parse, "expected '['");
        ++pos;
        int seg = expect_number(pos);
        if (pos + 1 >= s.size() || s[pos] != ']' || s[pos + 1] != '[') fail(ErrorCode::Parse, "expected ']['");
        pos += 2;
        int coord = expect_number(pos);
        if (pos >= s.size() || s[pos] != ']') fail(ErrorCode::Parse, "expected ']'");
        ++pos;
        unsigned e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = static_cast<unsigned>(expect_number(pos));
        }
        m.bump(out.var(seg, coord), e);
      } else {
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
        if (pos == start) fail(ErrorCode::Parse, "unexpected character at offset " + std::to_string(pos));
        coeff *= exactq::parse_rational(std::string_view(s).substr(start, pos - start));
      }
      any = true;
    }
    if (!any) fail(ErrorCode::Parse, "empty term");
    out.add_term(m, sign * coeff * outer);
  }
  return out;
}

// -------------------------------------------------------- signature map

SignatureMap::SignatureMap(int d, int n) : d_(d), target_n_(n) {
  if (d < 1 || n < 1) fail(ErrorCode::InvalidArgument, "signature map needs d >= 1 and n >= 1");
  IncrementPolynomial ring(d, n);  // validates the variable count
  forms_.resize(static_cast<std::size_t>(n - 1));
  for (int s = 1; s < n; ++s)
    for (int i = 1; i <= d; ++i) forms_[s - 1].push_back({{ring.var(s, i), Rational(1)}});
  cache_.resize(forms_.size());
}

SignatureMap::SignatureMap(int d, std::vector<std::vector<LinearForm>> forms, int target_n)
    : d_(d), target_n_(target_n), forms_(std::move(forms)) {
  IncrementPolynomial ring(d, target_n);
  for (const auto& seg : forms_) {
    if (seg.size() != static_cast<std::size_t>(d)) fail(ErrorCode::DimensionMismatch, "one form per coordinate required");
    for (const auto& form : seg)
      for (const auto& [v, c] : form)
        if (v >= ring.variables()) fail(ErrorCode::OutOfRange, "linear form refers to a missing variable");
  }
  cache_.resize(forms_.size());
}

IncrementPolynomial SignatureMap::operator()(const Word& w) {
  if (w.max_letter() > d_) fail(ErrorCode::OutOfRange, "letter outside alphabet");
  if (forms_.empty())
    return w.empty() ? IncrementPolynomial::constant(d_, target_n_, 1) : IncrementPolynomial(d_, target_n_);
  return compute_suffix(0, w, 0);
}

IncrementPolynomial SignatureMap::operator()(const TensorElement& x) {
  IncrementPolynomial out(d_, target_n_);
  for (const auto& [w, c] : x.terms()) out += (*this)(w) * c;
  return out;
}

const IncrementPolynomial& SignatureMap::suffix(std::size_t segment, const Word& w, std::size_t from) {
  std::vector<freealg::Letter> key(w.letters().begin() + from, w.letters().end());
  auto& memo = cache_[segment];
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  return memo.emplace(std::move(key), compute_suffix(segment, w, from)).first->second;
}

// Sum over the part of w[from..] spent on this segment: letters
// w[from..from+l) contribute (1/l!) times the product of their forms.
IncrementPolynomial SignatureMap::compute_suffix(std::size_t segment, const Word& w, std::size_t from) {
  const std::size_t len = w.degree() - from;
  IncrementPolynomial out(d_, target_n_);
  IncrementPolynomial head = IncrementPolynomial::constant(d_, target_n_, 1);
  const bool last = segment + 1 == forms_.size();
  for (std::size_t l = 0; l <= len; ++l) {
    if (l > 0) head = head.times_linear(forms_[segment][w[from + l - 1] - 1]);
    if (last) {
      if (l == len) out += head * inverse_factorial(l);
      continue;
    }
    const IncrementPolynomial& tail = suffix(segment + 1, w, from + l);
    if (tail.is_zero() || head.is_zero()) continue;
    out += (head * tail) * inverse_factorial(l);
  }
  return out;
}

IncrementPolynomial signature_polynomial(const Word& w, int n, int d) {
  SignatureMap h(d, n);
  return h(w);
}

IncrementPolynomial signature_polynomial(const TensorElement& x, int n) {
  SignatureMap h(x.alphabet(), n);
  return h(x);
}

std::vector<std::vector<LinearForm>> permutation_forms(int d, std::span<const int> sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<bool> seen(sigma.size() + 1, false);
  for (int s : sigma) {
    if (s < 1 || s > n || seen[s]) fail(ErrorCode::InvalidArgument, "not a permutation");
    seen[s] = true;
  }
  std::vector<std::vector<LinearForm>> forms(static_cast<std::size_t>(std::max(n - 1, 0)));
  for (int t = 0; t + 1 < n; ++t) {
    const int from = sigma[t], to = sigma[t + 1];
    const int lo = std::min(from, to), hi = std::max(from, to);
    const Rational sign = to > from ? 1 : -1;
    for (int i = 1; i <= d; ++i) {
      LinearForm form;
      for (int s = lo; s < hi; ++s) form.emplace_back(static_cast<std::size_t>(s - 1) * d + (i - 1), sign);
      forms[t].push_back(std::move(form));
    }
  }
  return forms;
}

IncrementPolynomial permute_control_points(const IncrementPolynomial& p, std::span<const int> sigma) {
  if (static_cast<int>(sigma.size()) != p.points())
    fail(ErrorCode::DimensionMismatch, "permutation size differs from control-point count");
  auto forms = permutation_forms(p.dim(), sigma);
  std::vector<LinearForm> images;
  for (auto& seg : forms)
    for (auto& f : seg) images.push_back(std::move(f));
  return p.substitute(images, p.dim(), p.points());
}

IncrementPolynomial substitute_collinear(const IncrementPolynomial& p, int i, const Rational& lambda) {
  const int n = p.points(), d = p.dim();
  if (i <= 1 || i >= n) fail(ErrorCode::OutOfRange, "collinear index must be interior");
  // Old segments t = 1..n-1; new segments 1..n-2 with segment i-1 the merged one.
  std::vector<LinearForm> images;
  for (int t = 1; t < n; ++t) {
    for (int c = 1; c <= d; ++c) {
      LinearForm f;
      auto var = [&](int seg) { return static_cast<std::size_t>(seg - 1) * d + (c - 1); };
      if (t < i - 1) {
        f.emplace_back(var(t), 1);
      } else if (t == i - 1) {
        if (lambda != 1) f.emplace_back(var(i - 1), 1 - lambda);
      } else if (t == i) {
        if (lambda != 0) f.emplace_back(var(i - 1), lambda);
      } else {
        f.emplace_back(var(t - 1), 1);
      }
      images.push_back(std::move(f));
    }
  }
  return p.substitute(images, d, n - 1);
}

}  // namespace sigvol::sigpoly
