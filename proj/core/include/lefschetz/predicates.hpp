#pragma once

#include <optional>
#include <vector>

#include "lefschetz/polytope.hpp"

namespace lefschetz {

struct IdpResult {
  bool idp = true;
  std::int64_t certified_height = 0;
  std::optional<ConeElement> witness;  // least-height point that is not a sum of height-1 points
};

// Checks generation in degree one up to `certify_height` (default dim + 1).
IdpResult is_idp(const Polytope& P, std::int64_t certify_height = -1);

// Interior point p at height 1 with interior(k+1) = p + points(k), k <= dim+1.
std::optional<Point> is_reflexive(const Polytope& P);

// Largest height of a minimal generator of the interior cone points, over
// heights <= bound (default dim + 1).
std::int64_t interior_generation_height(const Polytope& P, std::int64_t bound = -1);

Polytope pyramid(const Polytope& P);
Polytope dilate(const Polytope& P, std::int64_t n);

struct SublatticeView {
  Polytope coarse;                 // P / N, so lattice points correspond to P ∩ N Z^d
  std::vector<Point> coarse_points;  // in fine coordinates
  std::vector<Point> fine_only;      // V: fine lattice points outside N Z^d
  std::int64_t index = 1;
};
SublatticeView sublattice_view(const Polytope& P, std::int64_t N);

}  // namespace lefschetz
