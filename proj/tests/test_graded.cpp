#include "doctest.h"
#include "lefschetz/ehrhart.hpp"
#include "lefschetz/gf2.hpp"
#include "lefschetz/graded.hpp"
#include "lefschetz/predicates.hpp"

using namespace lefschetz;
using F = GF2_64;

namespace {

Polytope segment02() { return Polytope::from_points({{0}, {2}}); }
Polytope square(std::int64_t lo, std::int64_t hi) {
  return Polytope::from_points({{lo, lo}, {hi, lo}, {lo, hi}, {hi, hi}});
}

}  // namespace

TEST_CASE("theta shapes and modes") {
  RandomStream rng(1);
  const auto X = LatticeComplex::from_polytope(segment02());
  const auto th = generic_theta<F>(X, rng);
  CHECK(th.rows() == 2);
  CHECK(th.cols() == 3);
  CHECK(th.mode() == ThetaMode::Generic);

  const auto Y = pyramid_complex(X, false);
  const auto pt = pyramid_theta(X, th, Y, rng);
  CHECK(pt.rows() == 3);
  CHECK(pt.cols() == 4);
  const auto apex = *Y.layer(1).find({0, 1});
  CHECK(pt(0, apex).is_zero());
  CHECK(pt(1, apex).is_zero());
  CHECK(pt(2, apex) == F::one());
  const auto b1 = *Y.layer(1).find({1, 0});
  CHECK(pt(0, b1) == th(0, 1));
  CHECK(pt(1, b1) == th(1, 1));

  const auto T = LatticeComplex::from_polytope(Polytope::from_points({{0, 0}, {0, 2}, {2, 0}}));
  const auto tt = generic_theta<F>(T, rng);
  const auto view = sublattice_view(T.cells()[0], 2);
  std::vector<bool> in_v(T.layer(1).size());
  for (const auto& q : view.fine_only) in_v[*T.layer(1).find(q)] = true;
  const auto ts = t_scaled_theta(tt, in_v);
  CHECK(ts.mode() == ThetaMode::TScaled);
  const F t0 = F::random(rng);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(ts(i, j).eval(t0) == (in_v[j] ? t0 * tt(i, j) : tt(i, j)));
}

TEST_CASE("graded pieces of [0,2]") {
  RandomStream rng(2);
  const auto X = LatticeComplex::from_polytope(segment02());
  const auto th = generic_theta<F>(X, rng);
  const GradedPiece<F> a1(X, Space::Ring, th, 1);
  CHECK(a1.size() == 3);
  CHECK(a1.relation_count() == 2);
  CHECK(a1.dim() == 1);
  const GradedPiece<F> m2(X, Space::Module, th, 2);
  CHECK(m2.size() == 3);
  CHECK(m2.relation_count() == 2);
  CHECK(m2.dim() == 1);
  const GradedPiece<F> a2(X, Space::Ring, th, 2);
  CHECK(a2.size() == 5);
  CHECK(a2.relation_count() == 6);
  CHECK(a2.rank() == 5);
  CHECK(a2.dim() == 0);
  CHECK(hilbert_dims(X, Space::Ring, th, 2) == std::vector<std::size_t>{1, 1, 0});

  // theta_1 * x_1 is a relation of A^2([0,2], boundary).
  const MonomialBasis m1(X, Space::Module, 1);
  const MonomialBasis ones(X, Space::Ring, 1);
  const auto rel = multiply(m1, std::vector<F>{F::one()}, ones, th.row(0), m2.basis());
  CHECK(m2.is_zero_class(rel));
  for (const auto& r : a1.echelon().rows()) CHECK(a1.is_zero_class(r));
  // A basis monomial reduces to a unit coordinate on itself.
  const auto q = m2.quotient_basis()[0];
  CHECK(m2.reduce(unit_vector<F>(3, q)) == std::vector<F>{F::one()});
}

TEST_CASE("reflexive square pair dims") {
  RandomStream rng(3);
  const auto X = LatticeComplex::from_polytope(square(-1, 1));
  const auto th = generic_theta<F>(X, rng);
  CHECK(hilbert_dims(X, Space::Module, th, 3) == std::vector<std::size_t>{0, 1, 6, 1});
  CHECK(hilbert_dims(X, Space::Ring, th, 3) == std::vector<std::size_t>{1, 6, 1, 0});
}

TEST_CASE("multiplication operators") {
  RandomStream rng(4);
  const auto X = LatticeComplex::from_polytope(segment02());
  const auto th = generic_theta<F>(X, rng);
  const GradedPiece<F> a0(X, Space::Ring, th, 0), a1(X, Space::Ring, th, 1), m1(X, Space::Module, th, 1),
      m2(X, Space::Module, th, 2);
  const MonomialBasis zero(X, Space::Ring, 0);
  const auto id = mult_operator(m2, zero, std::vector<F>{F::one()}, m2);
  CHECK(id.rows() == 1);
  CHECK(id(0, 0) == F::one());

  const auto l = random_form<F>(X, rng);
  const auto L = mult_operator(a0, MonomialBasis(X, Space::Ring, 1), l, a1);
  CHECK(L.rows() == 1);
  CHECK(L.cols() == 1);
  CHECK_FALSE(L(0, 0).is_zero());
  CHECK(form_power_operator(a0, l, 1, a1)(0, 0) == L(0, 0));

  // x_sigma for the interior point: A^0(P) -> A^1(P, boundary).
  const MonomialBasis b1(X, Space::Ring, 1);
  const auto xs = unit_vector<F>(3, *b1.position_of({1}));
  const auto S = mult_operator(a0, b1, xs, m1);
  CHECK(S.rows() == 1);
  CHECK(S(0, 0) == m1.reduce(std::vector<F>{F::one()})[0]);
  CHECK_THROWS(mult_operator(a0, b1, xs, m2));
}

TEST_CASE("operator of a product is the composite") {
  RandomStream rng(8);
  const auto X = LatticeComplex::from_polytope(Polytope::from_points({{0, 0}, {2, 0}, {0, 2}}));
  const auto th = generic_theta<F>(X, rng);
  const MonomialBasis b1(X, Space::Ring, 1), b2(X, Space::Ring, 2);
  const auto l1 = random_form<F>(X, rng), l2 = random_form<F>(X, rng);
  const auto prod = multiply(b1, l1, b1, l2, b2);
  for (auto space : {Space::Ring, Space::Module}) {
    const GradedPiece<F> p0(X, space, th, 1), p1(X, space, th, 2), p2(X, space, th, 3);
    const auto A = mult_operator(p0, b1, l1, p1);
    const auto B = mult_operator(p1, b1, l2, p2);
    const auto C = mult_operator(p0, b2, prod, p2);
    const auto BA = B * A;
    REQUIRE(BA.rows() == C.rows());
    REQUIRE(BA.cols() == C.cols());
    for (std::size_t i = 0; i < C.rows(); ++i)
      for (std::size_t j = 0; j < C.cols(); ++j) CHECK(BA(i, j) == C(i, j));
  }
}

TEST_CASE("natural maps") {
  RandomStream rng(5);
  const auto P = segment02();
  const auto X = LatticeComplex::from_polytope(P);
  const auto th = generic_theta<F>(X, rng);
  const GradedPiece<F> m2(X, Space::Module, th, 2), r2(X, Space::Ring, th, 2);
  const auto top = natural_map(m2, r2);
  CHECK(top.rows() == 0);
  const GradedPiece<F> m0(X, Space::Module, th, 0), r0(X, Space::Ring, th, 0);
  CHECK(natural_map(m0, r0).cols() == 0);
  const GradedPiece<F> m1(X, Space::Module, th, 1), r1(X, Space::Ring, th, 1);
  const auto nm = natural_map(m1, r1);
  REQUIRE(nm.rows() == 1);
  REQUIRE(nm.cols() == 1);
  CHECK_FALSE(nm(0, 0).is_zero());
}

TEST_CASE("cross validation against h*") {
  const std::vector<Polytope> corpus{segment02(),
                                     square(0, 1),
                                     square(-1, 1),
                                     Polytope::from_points({{0, 0}, {2, 0}, {0, 2}}),
                                     Polytope::from_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}}),
                                     Polytope::from_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})};
  for (std::uint64_t seed = 0; seed < 3; ++seed)
    for (const auto& P : corpus) {
      RandomStream rng(seed);
      const auto X = LatticeComplex::from_polytope(P);
      const auto r = cross_validate(P, generic_theta<F>(X, rng));
      CHECK(r.pass);
    }
}

TEST_CASE("products are commutative and associative") {
  RandomStream rng(6);
  const auto X = LatticeComplex::boundary_of(square(-1, 1));
  const MonomialBasis b1(X, Space::Ring, 1), b2(X, Space::Ring, 2), b3(X, Space::Ring, 3);
  auto rand_vec = [&](std::size_t n) {
    std::vector<F> v(n);
    for (auto& c : v) c = F::random(rng);
    return v;
  };
  const auto a = rand_vec(b1.size()), b = rand_vec(b1.size()), c = rand_vec(b1.size());
  CHECK(multiply(b1, a, b1, b, b2) == multiply(b1, b, b1, a, b2));
  CHECK(multiply(b2, multiply(b1, a, b1, b, b2), b1, c, b3) == multiply(b1, a, b2, multiply(b1, b, b1, c, b2), b3));
}

TEST_CASE("t-scaled pieces keep generic dimensions") {
  RandomStream rng(7);
  const auto P = Polytope::from_points({{0, 0}, {0, 2}, {2, 0}});
  const auto X = LatticeComplex::from_polytope(P);
  const auto th = generic_theta<F>(X, rng);
  std::vector<bool> in_v(6, false);
  in_v[1] = in_v[3] = in_v[4] = true;
  const auto ts = t_scaled_theta(th, in_v);
  CHECK(hilbert_dims(X, Space::Module, ts, 3) == hilbert_dims(X, Space::Module, th, 3));
}

TEST_CASE("ehrhart data") {
  CHECK(count_points(segment02(), 2) == 5);
  CHECK(count_points(square(-1, 1), 1) == 9);
  CHECK(trimmed(hstar(segment02())) == std::vector<std::int64_t>{1, 1});
  CHECK(hstar(square(0, 1)) == std::vector<std::int64_t>{1, 1, 0});
  CHECK(hstar(square(-1, 1)) == std::vector<std::int64_t>{1, 6, 1});
  CHECK(hstar(Polytope::from_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}})) == std::vector<std::int64_t>{1, 0, 1, 0});
  const auto e = ehrhart_polynomial(segment02());
  CHECK(e == std::vector<Rational>{1, 2});
  const auto c = ehrhart_polynomial(square(0, 1));
  CHECK(c == std::vector<Rational>{1, 2, 1});
  CHECK(ehrhart_polynomial(Polytope::from_points({{3, 4}})) == std::vector<Rational>{1});
}
