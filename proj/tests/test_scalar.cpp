#include <vector>

#include "doctest.h"
#include "lefschetz/gf2.hpp"
#include "lefschetz/gfp.hpp"
#include "lefschetz/jet.hpp"
#include "lefschetz/linear_algebra.hpp"
#include "lefschetz/uni_rational.hpp"
#include "support/gf_poly.hpp"

using namespace lefschetz;

using GF3_16 = GFp<3, 16>;
using GF3_32 = GFp<3, 32>;
using GF5_32 = GFp<5, 32>;
using GF5_64 = GFp<5, 64>;

TEST_CASE_TEMPLATE("GF(2^K) axioms on random samples", F, GF2_32, GF2_64, GF2_128) {
  RandomStream rs(7);
  for (int i = 0; i < 300; ++i) {
    const F a = F::random(rs), b = F::random(rs), c = F::random(rs);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a + b) * (a + b) == a * a + b * b);
    CHECK(F::mul(a.bits_value(), b.bits_value()) == F::mul_portable(a.bits_value(), b.bits_value()));
    if (!a.is_zero()) CHECK(a * a.inv() == F::one());
    CHECK(a.sqrt() * a.sqrt() == a);
  }
  CHECK_THROWS_AS(F::zero().inv(), NotInvertible);
}

TEST_CASE("GF(2^K) reduction constants") {
  CHECK((GF2_32::from_bits(1ULL << 31) * GF2_32::from_bits(2)).bits_value() == 0x8dULL);
  CHECK((GF2_64::from_bits(1ULL << 63) * GF2_64::from_bits(2)).bits_value() == 0x1bULL);
  CHECK((GF2_128::from_bits((u128)1 << 127) * GF2_128::from_bits(2)).bits_value() == (u128)0x87);
}

TEST_CASE("GF(2^K) moduli pass Rabin's test") {
  using testsupport::GF2Poly;
  CHECK(GF2Poly::rabin_irreducible({32, 7, 3, 2, 0}));
  CHECK(GF2Poly::rabin_irreducible({64, 4, 3, 1, 0}));
  CHECK(GF2Poly::rabin_irreducible({128, 7, 2, 1, 0}));
  CHECK_FALSE(GF2Poly::rabin_irreducible({64, 2, 0}));  // x^64 + x^2 + 1 = (x^32 + x + 1)^2
}

TEST_CASE("GF(p^k) moduli pass Rabin's test") {
  using testsupport::rabin_irreducible_mod_p;
  CHECK(rabin_irreducible_mod_p(3, 16, GFpModulus<3, 16>::i, GFpModulus<3, 16>::c1, GFpModulus<3, 16>::c0));
  CHECK(rabin_irreducible_mod_p(3, 32, GFpModulus<3, 32>::i, GFpModulus<3, 32>::c1, GFpModulus<3, 32>::c0));
  CHECK(rabin_irreducible_mod_p(3, 64, GFpModulus<3, 64>::i, GFpModulus<3, 64>::c1, GFpModulus<3, 64>::c0));
  CHECK(rabin_irreducible_mod_p(5, 16, GFpModulus<5, 16>::i, GFpModulus<5, 16>::c1, GFpModulus<5, 16>::c0));
  CHECK(rabin_irreducible_mod_p(5, 32, GFpModulus<5, 32>::i, GFpModulus<5, 32>::c1, GFpModulus<5, 32>::c0));
  CHECK(rabin_irreducible_mod_p(5, 64, GFpModulus<5, 64>::i, GFpModulus<5, 64>::c1, GFpModulus<5, 64>::c0));
  CHECK_FALSE(rabin_irreducible_mod_p(3, 16, 1, 1, 0));  // divisible by x
}

TEST_CASE_TEMPLATE("GF(p^k) axioms and Frobenius", F, GF3_16, GF3_32, GF5_32, GF5_64) {
  RandomStream rs(11);
  for (int i = 0; i < 100; ++i) {
    const F a = F::random(rs), b = F::random(rs), c = F::random(rs);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == F::zero());
    CHECK(power(a + b, F::characteristic) == power(a, F::characteristic) + power(b, F::characteristic));
    if (!a.is_zero()) CHECK(a * a.inv() == F::one());
  }
  // a^(p^k) = a via k Frobenius steps
  F a = F::random(rs), x = a;
  for (unsigned k = 0; k < F::degree; ++k) x = power(x, F::characteristic);
  CHECK(x == a);
  CHECK(F::from_int(-1) + F::one() == F::zero());
}

TEST_CASE("random stream determinism") {
  RandomStream a(0), b(0), c(1);
  std::vector<std::uint64_t> xa, xb, xc;
  for (int i = 0; i < 100; ++i) {
    xa.push_back(a.next_u64());
    xb.push_back(b.next_u64());
    xc.push_back(c.next_u64());
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
  RandomStream d(0);
  const auto first = GF2_64::random(d);
  RandomStream e(0);
  CHECK(GF2_64::random(e) == first);
  // 10^4 draws against a fixed constant
  RandomStream f(42);
  const auto fixed = GF2_64::from_bits(0x0123456789abcdefULL);
  int hits = 0;
  for (int i = 0; i < 10000; ++i) hits += GF2_64::random(f) == fixed;
  CHECK(hits == 0);
}

TEST_CASE("UniRational normalization, evaluation and poles") {
  using F = GF2_64;
  using R = UniRational<F>;
  const R t = R::t();
  const R one = R::one();
  // (t+1)/(t^2+1) = 1/(t+1) in characteristic 2
  const R q = (t + one) / (t * t + one);
  CHECK(q.numerator().degree() == 0);
  CHECK(q.denominator().degree() == 1);
  CHECK(q.denominator().lead() == F::one());
  CHECK(q == one / (t + one));
  CHECK_THROWS_AS(q.eval(F::one()), PoleError);
  RandomStream rs(3);
  for (int i = 0; i < 50; ++i) {
    const R a = R(F::random(rs)) * t + R(F::random(rs));
    const R b = R(F::random(rs)) * t * t + R(F::random(rs)) * t + R(F::random(rs));
    const F x = F::random(rs);
    if (b.has_pole_at(x) || b.eval(x).is_zero()) continue;
    CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    CHECK((a / b).eval(x) == a.eval(x) / b.eval(x));
  }
  CHECK_THROWS_AS(R().inv(), NotInvertible);
}

TEST_CASE("jet lifting, products and partials") {
  using F = GF2_64;
  using J = Jet<F>;
  auto ctx = JetContext::make({"a", "b"}, {1, 1});
  RandomStream rs(5);
  const F c = F::random(rs), e = F::random(rs);
  const J ja = J::lift(c, ctx, "a");
  const J jb = J::lift(e, ctx, "b");
  CHECK(ja.coeff({0, 0}) == c);
  CHECK(ja.coeff({1, 0}) == F::one());
  // char 2: (c + a)^2 = c^2
  CHECK(ja * ja == J(c * c));
  CHECK(jet_partial(ja * jb, {1, 1}) == F::one());
  CHECK(jet_partial(J(c), {1, 0}).is_zero());
  CHECK((ja * ja.inv()) == J::one());
  CHECK_THROWS_AS(J::lift(F{}, ctx, "a").inv(), NotInvertible);
  CHECK_THROWS_AS(J::lift(c, ctx, "z"), JetError);
  auto other = JetContext::make({"a"}, {1});
  CHECK_THROWS_AS(ja * J::lift(c, other, "a"), JetError);
}

TEST_CASE("jet partial in characteristic 3") {
  using F = GFp<3, 16>;
  using J = Jet<F>;
  auto ctx = JetContext::make({"a"}, {2});
  RandomStream rs(9);
  const J x = J::lift(F::random(rs), ctx, "a");
  CHECK(jet_partial(x * x, {2}) == F::from_int(2));
  auto ctx3 = JetContext::make({"a"}, {3});
  const J y = J::lift(F::random(rs), ctx3, "a");
  CHECK_THROWS_AS(jet_partial(y * y * y, {3}), JetError);
}

TEST_CASE("jet Leibniz rule against symbolic expansion") {
  // f = (a + x)(b + y)(a + x + y) with x, y caps 2 over GF(2^64); the
  // coefficient of x^i y^j of the product equals the expansion by hand.
  using F = GF2_64;
  using J = Jet<F>;
  auto ctx = JetContext::make({"x", "y"}, {2, 2});
  RandomStream rs(13);
  const F a = F::random(rs), b = F::random(rs);
  const J X = J::lift(a, ctx, "x");
  const J Y = J::lift(b, ctx, "y");
  const J Z = J::lift(a, ctx, "x") + J::lift(F{}, ctx, "y");
  const J f = X * Y * Z;
  // (a+x)(b+y)(a+x+y) = (a+x)^2 (b+y) + (a+x)(b+y) y
  //   = (a^2 + x^2)(b + y) + (a b + a y + b x + x y) y   (char 2)
  CHECK(f.coeff({0, 0}) == a * a * b);
  CHECK(f.coeff({0, 1}) == a * a + a * b);
  CHECK(f.coeff({1, 0}) == F{});
  CHECK(f.coeff({2, 0}) == b);
  CHECK(f.coeff({1, 1}) == b);
  CHECK(f.coeff({0, 2}) == a);
  CHECK(f.coeff({2, 1}) == F::one());
  CHECK(f.coeff({1, 2}) == F::one());
}

TEST_CASE("linear_solve over GF(2^64): random invertible systems up to 40x40") {
  using F = GF2_64;
  RandomStream rs(17);
  for (std::size_t n : {1, 2, 5, 17, 40}) {
    Matrix<F> a(n, n);
    std::vector<F> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = F::random(rs);
      for (std::size_t j = 0; j < n; ++j) a(i, j) = F::random(rs);
    }
    const auto res = solve(a, a.apply(x));
    CHECK(res.unique);
    CHECK(res.solution == x);
  }
  Matrix<F> id(3, 3);
  std::vector<F> b(3);
  for (std::size_t i = 0; i < 3; ++i) {
    id(i, i) = F::one();
    b[i] = F::random(rs);
  }
  CHECK(solve(id, b).solution == b);
}

TEST_CASE("linear_solve kernel of a generic 2x3 matrix is spanned by its minors") {
  using F = GF2_32;
  RandomStream rs(19);
  Matrix<F> a(2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = F::random(rs);
  const auto res = solve(a, std::vector<F>(2));
  REQUIRE(res.kernel.size() == 1);
  const auto& k = res.kernel[0];
  const F m0 = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  const F m1 = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  const F m2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  // proportional: k = s * (m0, m1, m2)
  const F s = k[2] / m2;
  CHECK(k[0] == s * m0);
  CHECK(k[1] == s * m1);
}

TEST_CASE("linear_solve rejects inconsistent systems") {
  using F = GF2_64;
  Matrix<F> a(2, 1);
  a(0, 0) = F::one();
  a(1, 0) = F::one();
  CHECK_THROWS_AS(solve(a, std::vector<F>{F::one(), F::zero()}), InconsistentSystem);
}

TEST_CASE("linear_solve over jets matches implicit differentiation") {
  // A(v) x = b with A(v) = A0 + v * A1: dx/dv = -A0^{-1} A1 x0.
  using F = GF2_64;
  using J = Jet<F>;
  RandomStream rs(23);
  Matrix<F> a0(2, 2), a1(2, 2);
  std::vector<F> b(2);
  for (std::size_t i = 0; i < 2; ++i) {
    b[i] = F::random(rs);
    for (std::size_t j = 0; j < 2; ++j) {
      a0(i, j) = F::random(rs);
      a1(i, j) = F::random(rs);
    }
  }
  auto ctx = JetContext::make({"v"}, {1});
  const J v = J::lift(F{}, ctx, "v");
  Matrix<J> aj(2, 2);
  std::vector<J> bj(2);
  for (std::size_t i = 0; i < 2; ++i) {
    bj[i] = J(b[i]);
    for (std::size_t j = 0; j < 2; ++j) aj(i, j) = J(a0(i, j)) + v * J(a1(i, j));
  }
  const auto xj = solve(aj, bj).solution;
  const auto x0 = solve(a0, b).solution;
  const auto rhs = a1.apply(x0);
  const auto dx = solve(a0, rhs).solution;
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(xj[i].coeff({0}) == x0[i]);
    CHECK(xj[i].coeff({1}) == -dx[i]);
  }
  // Forward difference in F[s]: x(s) solves (A0 + s A1) x = b over F(s); its
  // derivative at 0 via the rational solution.
  using R = UniRational<F>;
  Matrix<R> ar(2, 2);
  std::vector<R> br(2);
  for (std::size_t i = 0; i < 2; ++i) {
    br[i] = R(b[i]);
    for (std::size_t j = 0; j < 2; ++j) ar(i, j) = R(a0(i, j)) + R::t() * R(a1(i, j));
  }
  const auto xr = solve(ar, br).solution;
  for (std::size_t i = 0; i < 2; ++i) {
    // (x(t) - x(0)) / t evaluated at 0
    const R diff = (xr[i] - R(x0[i])) / R::t();
    CHECK(diff.eval(F{}) == xj[i].coeff({1}));
  }
}

TEST_CASE("determinant agrees with elimination") {
  using F = GF2_64;
  RandomStream rs(29);
  Matrix<F> a(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = F::random(rs);
  // det(A) * x = adj stuff; simpler: det(A B) = det A det B
  Matrix<F> b(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) b(i, j) = F::random(rs);
  CHECK(determinant(a * b) == determinant(a) * determinant(b));
  Matrix<F> s(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) s(i, j) = a(i, j);
  for (std::size_t j = 0; j < 4; ++j) s(3, j) = a(0, j) + a(1, j);
  CHECK(determinant(s).is_zero());
}

TEST_CASE("echelon quotient basis uses the last columns") {
  using F = GF2_64;
  Echelon<F> e(3);
  e.insert({F::one(), F::one(), F::zero()});
  e.insert({F::zero(), F::one(), F::one()});
  e.finalize();
  CHECK(e.rank() == 2);
  CHECK(e.free_columns() == std::vector<std::size_t>{2});
  std::vector<F> v{F::one(), F::zero(), F::zero()};
  e.reduce_in_place(v);
  CHECK(v[0].is_zero());
  CHECK(v[1].is_zero());
  CHECK(v[2] == F::one());
}
