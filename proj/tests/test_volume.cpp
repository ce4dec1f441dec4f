#include "doctest.h"
#include "lefschetz/gf2.hpp"
#include "lefschetz/gfp.hpp"
#include "lefschetz/predicates.hpp"
#include "lefschetz/volume.hpp"

using namespace lefschetz;
using F = GF2_64;

namespace {

Polytope seg(std::int64_t a, std::int64_t b) { return Polytope::from_points({{a}, {b}}); }
Polytope square(std::int64_t lo, std::int64_t hi) {
  return Polytope::from_points({{lo, lo}, {hi, lo}, {lo, hi}, {hi, hi}});
}
Polytope dilated_triangle() { return Polytope::from_points({{0, 0}, {2, 0}, {0, 2}}); }

// [a,b]: 2x2 minor of theta on the columns of points a and b.
template <class S>
S bracket(const LatticeComplex& X, const Theta<S>& th, std::int64_t a, std::int64_t b) {
  return minor_at(X, th, {{a}, {b}});
}

Flag flag_at_vertex(const Polytope& P, const Point& v) {
  for (const auto& f : P.full_flags())
    if (P.face_vertices(f.faces[0]) == std::vector<Point>{v}) return f;
  throw std::logic_error("no flag at vertex");
}

}  // namespace

TEST_CASE("coherent sets") {
  const auto P = seg(0, 2);
  const auto fl = flag_at_vertex(P, {0});
  CHECK(coherent_sets(P, fl) == std::vector<std::vector<Point>>{{{0}, {1}}, {{0}, {2}}});
  const auto S = Polytope::from_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  for (const auto& f : S.full_flags()) CHECK(coherent_sets(S, f).size() == 1);
  const auto Q = square(0, 1);
  for (const auto& f : Q.full_flags()) {
    const auto cs = coherent_sets(Q, f);
    CHECK(cs.size() == 2);
    for (const auto& s : cs) CHECK(Q.face_contains(f.faces[1], s[1]));
  }
}

TEST_CASE("normalization row on [0,2]") {
  RandomStream rng(11);
  const auto P = seg(0, 2);
  const auto X = LatticeComplex::from_polytope(P);
  const auto th = generic_theta<F>(X, rng);
  const MonomialBasis top(X, Space::Module, 2);
  const auto u = km_row(X, th, CellFlag{0, flag_at_vertex(P, {0})}, top);
  CHECK(u[*top.position_of({1})] == bracket(X, th, 0, 1));
  CHECK(u[*top.position_of({2})] == bracket(X, th, 0, 2));
  CHECK(u[*top.position_of({3})].is_zero());
  // Column order does not matter in characteristic 2.
  CHECK(bracket(X, th, 0, 1) == bracket(X, th, 1, 0));
}

TEST_CASE("unimodular simplex volume") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomStream rng(seed);
    const auto P = Polytope::from_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto X = LatticeComplex::from_polytope(P);
    const auto th = generic_theta<F>(X, rng);
    const auto vf = solve_volume(X, th);
    REQUIRE(vf.basis.size() == 1);
    CHECK(vf.values[0] * minor_at(X, th, P.vertices()) == F::one());
  }
}

TEST_CASE("closed forms on [1,2] and [1,3]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    const auto P = LatticeComplex::from_polytope(seg(1, 3));
    const auto th = generic_theta<F>(P, rng);
    const auto vf = solve_volume(P, th);
    const F b12 = bracket(P, th, 1, 2), b13 = bracket(P, th, 1, 3), b23 = bracket(P, th, 2, 3);
    CHECK(vf.at({3}) == b23 * (b13 * b13 + b12 * b23).inv());
    const auto Q = LatticeComplex::from_polytope(seg(1, 2));
    const auto thq = restrict_theta(th, column_map(Q, P));
    CHECK(solve_volume(Q, thq).at({3}) == b12.inv());
  }
}

TEST_CASE("closed form in characteristic 3") {
  using G = GFp<3, 32>;
  RandomStream rng(3);
  const auto Q = LatticeComplex::from_polytope(seg(1, 2));
  const auto th = generic_theta<G>(Q, rng);
  // Flag {1} < Q orders the columns (1, 2).
  CHECK(solve_volume(Q, th).at({3}) * minor_at(Q, th, {{1}, {2}}) == G::one());
}

TEST_CASE("flag independence") {
  const std::vector<std::pair<Polytope, std::size_t>> cases{{seg(0, 2), 2}, {dilated_triangle(), 6}, {square(0, 1), 8}};
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    for (const auto& [P, nflags] : cases) {
      RandomStream rng(seed);
      const auto X = LatticeComplex::from_polytope(P);
      const auto r = check_flag_independence(X, generic_theta<F>(X, rng));
      CHECK(r.flags == nflags);
      CHECK(r.pass());
    }
  // Spheres: every flag of every facet.
  RandomStream rng(9);
  const auto S = LatticeComplex::boundary_of(pyramid(seg(0, 2)));
  const auto r = check_flag_independence(S, generic_theta<F>(S, rng));
  CHECK(r.flags == 6);
  CHECK(r.pass());
}

TEST_CASE("flag independence in odd characteristic") {
  using G = GFp<3, 32>;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    RandomStream rng(seed);
    const auto X = LatticeComplex::from_polytope(dilated_triangle());
    CHECK(check_flag_independence(X, generic_theta<G>(X, rng)).pass());
  }
}

TEST_CASE("balancing holds on all interior-anchored relations") {
  const std::vector<LatticeComplex> spaces{LatticeComplex::from_polytope(seg(0, 2)), LatticeComplex::from_polytope(square(0, 1)),
                                           LatticeComplex::from_polytope(square(-1, 1)),
                                           LatticeComplex::boundary_of(pyramid(seg(0, 2)))};
  for (const auto& X : spaces) {
    RandomStream rng(12);
    const auto th = generic_theta<F>(X, rng);
    const auto vf = solve_volume(X, th);
    std::size_t n = 0;
    CHECK(balancing_violations(X, th, vf, &n) == 0);
    CHECK(n > 0);
  }
}

TEST_CASE("locality") {
  RandomStream rng(13);
  {
    const auto X = LatticeComplex::boundary_of(pyramid(seg(0, 2)));
    std::size_t base = X.cells().size();
    for (std::size_t c = 0; c < X.cells().size(); ++c)
      if (X.cells()[c].lattice_points().size() == 3) base = c;
    REQUIRE(base < X.cells().size());
    const auto r = check_locality(X, {base}, generic_theta<F>(X, rng));
    CHECK(r.compared == 3);
    CHECK(r.pass());
  }
  {
    const auto X = LatticeComplex::boundary_of(pyramid(square(0, 1)));
    const auto th = generic_theta<F>(X, rng);
    for (auto c : X.maximal_cells()) CHECK(check_locality(X, {c}, th).pass());
  }
  {
    // A unimodular facet of the porcupine boundary: vol is 1/det.
    const auto S = boundary_sphere(porcupine(seg(0, 2), 2));
    const auto th = generic_theta<F>(S, rng);
    const auto vs = solve_volume(S, th);
    std::size_t tested = 0;
    for (auto c : S.maximal_cells()) {
      const Polytope& C = S.cells()[c];
      if (C.lattice_points().size() != C.vertices().size()) continue;
      CHECK(check_locality(S, {c}, th).pass());
      Point sum(S.ambient_dim(), 0);
      for (const auto& v : C.vertices()) sum = sum + v;
      CHECK(vs.at(sum) * minor_at(S, th, C.vertices()) == F::one());
      ++tested;
    }
    CHECK(tested > 0);
  }
}

TEST_CASE("deformation to a smaller polytope") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomStream rng(seed);
    const auto P = seg(1, 3);
    const auto X = LatticeComplex::from_polytope(P);
    const auto th = generic_theta<F>(X, rng);
    const auto fl = flag_at_vertex(P, {1});
    const auto d = deformed_volume(P, th, {false, false, true}, fl, {3});
    CHECK_FALSE(d.pole_at_zero);
    CHECK(d.at_zero == bracket(X, th, 1, 2).inv());
    // Away from zero it is the honest volume of P at the scaled system.
    const F t1 = F::random(rng);
    auto th1 = th;
    for (std::size_t i = 0; i < 2; ++i) th1(i, 2) = th1(i, 2) * t1;
    CHECK(d.value.eval(t1) == solve_volume(X, th1, CellFlag{0, fl}).at({3}));
    // V empty: constant in t.
    const auto c = deformed_volume(P, th, {false, false, false}, fl, {3});
    CHECK(c.value.numerator().degree() <= 0);
    CHECK(c.value.denominator().degree() == 0);
  }
}

TEST_CASE("deformation to a coarser lattice") {
  const auto P = dilated_triangle();
  const auto view = sublattice_view(P, 2);
  const auto X = LatticeComplex::from_polytope(P);
  const auto [fp, fq] = *common_flag(P, view.coarse, 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomStream rng(seed);
    const auto th = generic_theta<F>(X, rng);
    std::vector<bool> in_v(6, false);
    for (const auto& q : view.fine_only) in_v[*X.layer(1).find(q)] = true;
    // (1,1) at height 3 is not in the coarse lattice.
    const auto off = deformed_volume(P, th, in_v, fp, {1, 1});
    CHECK_FALSE(off.pole_at_zero);
    CHECK(off.at_zero.is_zero());
    // (2,2) is the coarse vertex sum; the limit is the coarse volume.
    const auto on = deformed_volume(P, th, in_v, fp, {2, 2});
    CHECK_FALSE(on.pole_at_zero);
    const auto C = LatticeComplex::from_polytope(view.coarse);
    Theta<F> thc(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      const auto src = *X.layer(1).find(scaled(C.layer(1).elements[j].point, 2));
      for (std::size_t i = 0; i < 3; ++i) thc(i, j) = th(i, src);
    }
    CHECK(on.at_zero == solve_volume(C, thc, CellFlag{0, fq}).at({1, 1}));
  }
}
