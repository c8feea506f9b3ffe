#pragma once

// Seeded generators shared by the unit tests.

#include <cstdint>
#include <random>
#include <vector>

#include "sigvol/exactq.hpp"
#include "sigvol/freealg.hpp"
#include "sigvol/sigpoly.hpp"

namespace testing {

using sigvol::exactq::Rational;
using sigvol::exactq::Vector;

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int mag = 5, int den = 4) {
    Rational q(uniform(-mag, mag), uniform(1, den));
    q.canonicalize();
    return q;
  }

  Vector vector(int d) {
    Vector v;
    for (int i = 0; i < d; ++i) v.push_back(rational());
    return v;
  }

  sigvol::freealg::Word word(int d, std::size_t k) {
    std::vector<sigvol::freealg::Letter> ls;
    for (std::size_t i = 0; i < k; ++i) ls.push_back(static_cast<sigvol::freealg::Letter>(uniform(1, d)));
    return sigvol::freealg::Word(ls);
  }

  // A few random terms with degrees in [lo, hi].
  sigvol::freealg::TensorElement element(int d, std::size_t lo, std::size_t hi, int terms = 3) {
    sigvol::freealg::TensorElement x(d);
    for (int t = 0; t < terms; ++t)
      x.add_term(word(d, static_cast<std::size_t>(uniform(static_cast<int>(lo), static_cast<int>(hi)))), rational());
    return x;
  }

  sigvol::sigpoly::PLPath path(int d, int segments) {
    std::vector<Vector> pts{vector(d)};
    for (int s = 0; s < segments; ++s) pts.push_back(vector(d));
    return sigvol::sigpoly::PLPath(d, pts);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
