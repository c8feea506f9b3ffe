#pragma once

// Degree-by-degree computation of invariant subspaces of the shuffle algebra:
// permutation invariants for a fixed number of control points, kernel slices
// of the signature-polynomial map, time-reversal and loop-closure invariants.

#include <cstddef>
#include <string>
#include <vector>

#include "sigvol/exactq.hpp"
#include "sigvol/freealg.hpp"
#include "sigvol/posgeom.hpp"
#include "sigvol/sigpoly.hpp"

namespace sigvol::invariants {

using freealg::TensorElement;
using posgeom::PermGroup;

struct Options {
  exactq::Method method = exactq::Method::Automatic;
  unsigned threads = 1;
  // Segments used to certify loop closure; 0 means the element degree.
  int segments = 0;
  // Progress lines on standard error.
  bool progress = false;
};

struct GradedBasis {
  int d = 1;
  std::size_t k = 0;
  exactq::SubspaceQ space;  // over words_of_degree(d, k)

  std::size_t dim() const { return space.dim(); }
  std::vector<TensorElement> elements() const;
  // False when x has terms outside degree k.
  bool contains(const TensorElement& x) const;
};

GradedBasis invariant_space(int d, int n, std::size_t k, const PermGroup& group, const Options& opt = {});
GradedBasis kernel_space(int d, int n, std::size_t k, const Options& opt = {});

// Fixed points of the antipode, and the complementary -1 eigenspace.
GradedBasis timerev_space(int d, std::size_t k);
GradedBasis antisymmetric_space(int d, std::size_t k);

// Both closure identities hold exactly on paths with `segments` segments
// (0: the degree of each homogeneous part).
bool loopclosure_membership(const TensorElement& x, int segments = 0);
GradedBasis loopclosure_space(int d, std::size_t k, const Options& opt = {});

// Which constraint families make up the degree-k volume invariants for d.
struct InvDPlan {
  bool timerev = false;
  bool loopclosure = false;
  std::string description;
};
InvDPlan inv_d_plan(int d);

GradedBasis inv_d_space(int d, std::size_t k, const Options& opt = {});

// dim of the image of span(b) under the n-point signature map.
std::size_t dim_image(const GradedBasis& b, int n, const Options& opt = {});
std::size_t dim_image(const std::vector<TensorElement>& xs, int n, const Options& opt = {});

// H_n(x) is unchanged by every generator of the group (default: the
// positivity stabilizer for (d, n)).
bool is_invariant(const TensorElement& x, int d, int n);
bool is_invariant(const TensorElement& x, int n, const PermGroup& group);

struct ConjectureReport {
  int d = 0;
  std::size_t k = 0;
  int n = 0;
  std::size_t dim_raw = 0;
  std::size_t dim_image = 0;
  std::size_t span_dim = 0;
  bool consistent = false;
  std::string verdict() const { return consistent ? "consistent" : "inconsistent"; }
};
ConjectureReport conjecture_evidence(int d, std::size_t k, const Options& opt = {});

}  // namespace sigvol::invariants
