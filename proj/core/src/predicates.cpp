#include "lefschetz/predicates.hpp"

#include <algorithm>
#include <set>

namespace lefschetz {

IdpResult is_idp(const Polytope& P, std::int64_t certify_height) {
  if (certify_height < 0) certify_height = P.dim() + 1;
  IdpResult res;
  res.certified_height = certify_height;
  const auto base = P.points_at_height(1);
  std::set<Point> generated(base.begin(), base.end());
  for (std::int64_t h = 2; h <= certify_height; ++h) {
    std::set<Point> next;
    for (const auto& a : generated)
      for (const auto& b : base) next.insert(a + b);
    for (const auto& x : P.points_at_height(h)) {
      if (!next.count(x)) {
        res.idp = false;
        res.witness = ConeElement{x, h};
        return res;
      }
    }
    generated = std::move(next);
  }
  return res;
}

std::optional<Point> is_reflexive(const Polytope& P) {
  const auto inner = P.interior_points_at_height(1);
  if (inner.size() != 1) return std::nullopt;
  const Point& p = inner[0];
  for (std::int64_t k = 0; k <= P.dim() + 1; ++k) {
    std::vector<Point> shifted;
    for (const auto& x : P.points_at_height(k)) shifted.push_back(x + p);
    std::sort(shifted.begin(), shifted.end());
    if (shifted != P.interior_points_at_height(k + 1)) return std::nullopt;
  }
  return p;
}

std::int64_t interior_generation_height(const Polytope& P, std::int64_t bound) {
  if (bound < 0) bound = P.dim() + 1;
  std::vector<std::pair<Point, std::int64_t>> generators;
  std::int64_t j = 0;
  for (std::int64_t h = 1; h <= bound; ++h) {
    for (const auto& y : P.interior_points_at_height(h)) {
      bool reducible = false;
      for (const auto& [g, gh] : generators) {
        if (gh >= h) continue;
        if (P.contains(y - g, h - gh)) {
          reducible = true;
          break;
        }
      }
      if (!reducible) {
        generators.emplace_back(y, h);
        j = std::max(j, h);
      }
    }
  }
  return j;
}

Polytope pyramid(const Polytope& P) {
  std::vector<Point> pts;
  for (const auto& v : P.vertices()) {
    Point w = v;
    w.push_back(0);
    pts.push_back(std::move(w));
  }
  Point apex(P.ambient_dim() + 1, 0);
  apex.back() = 1;
  pts.push_back(std::move(apex));
  return Polytope::from_points(std::move(pts), P.name().empty() ? "" : "pyr(" + P.name() + ")");
}

Polytope dilate(const Polytope& P, std::int64_t n) {
  if (n < 1) throw GeometryError("dilate: factor must be positive");
  std::vector<Point> pts;
  for (const auto& v : P.vertices()) pts.push_back(scaled(v, n));
  return Polytope::from_points(std::move(pts), P.name().empty() ? "" : std::to_string(n) + P.name());
}

SublatticeView sublattice_view(const Polytope& P, std::int64_t N) {
  if (N < 1) throw GeometryError("sublattice_view: index must be positive");
  std::vector<Point> coarse_vertices;
  for (const auto& v : P.vertices()) {
    Point w(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] % N != 0) throw GeometryError("sublattice_view: vertex " + to_string(v) + " not in the coarse lattice");
      w[k] = v[k] / N;
    }
    coarse_vertices.push_back(std::move(w));
  }
  SublatticeView view;
  view.index = N;
  view.coarse = Polytope::from_points(std::move(coarse_vertices), P.name());
  for (const auto& x : P.lattice_points()) {
    bool coarse = std::all_of(x.begin(), x.end(), [N](std::int64_t c) { return c % N == 0; });
    (coarse ? view.coarse_points : view.fine_only).push_back(x);
  }
  return view;
}

}  // namespace lefschetz
