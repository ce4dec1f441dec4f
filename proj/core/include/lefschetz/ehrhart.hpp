#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "lefschetz/graded.hpp"
#include "lefschetz/polytope.hpp"

namespace lefschetz {

using Rational = boost::multiprecision::cpp_rational;

class EhrhartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// E_P(i), the number of lattice points of iP.
std::int64_t count_points(const Polytope& P, std::int64_t i);

// Coefficients c_0..c_d with E_P(i) = sum c_k i^k, interpolated through
// i = 0..d and checked at i = d+1..d+3.
std::vector<Rational> ehrhart_polynomial(const Polytope& P);

// h*_0..h*_d from the counts E_P(0..d).
std::vector<std::int64_t> hstar(const Polytope& P);

// hstar with its trailing zeros removed.
std::vector<std::int64_t> trimmed(std::vector<std::int64_t> v);

// Dimensions of A^k(boundary of P), k = 0..d, at a generic specialization.
template <FiniteField F>
std::vector<std::size_t> a_polynomial(const Polytope& P, RandomStream& rng) {
  const auto S = LatticeComplex::boundary_of(P);
  const auto theta = generic_theta<F>(S, rng);
  return hilbert_dims(S, Space::Ring, theta, P.dim());
}

struct CrossValidation {
  bool pass = true;
  std::vector<std::int64_t> hstar;
  std::vector<std::size_t> ring_dims;    // k = 0..d+1
  std::vector<std::size_t> module_dims;  // k = 0..d+1
};

// dim A^k(P) = h*_k and dim A^k(P, boundary) = h*_{d+1-k}.
template <FiniteField F>
CrossValidation cross_validate(const Polytope& P, const Theta<F>& theta) {
  CrossValidation r;
  r.hstar = hstar(P);
  const auto X = LatticeComplex::from_polytope(P);
  const int d = P.dim();
  r.ring_dims = hilbert_dims(X, Space::Ring, theta, d + 1);
  r.module_dims = hilbert_dims(X, Space::Module, theta, d + 1);
  for (int k = 0; k <= d + 1; ++k) {
    const std::int64_t hk = k <= d ? r.hstar[k] : 0;
    const std::int64_t hdual = (d + 1 - k) <= d ? r.hstar[d + 1 - k] : 0;
    if ((std::int64_t)r.ring_dims[k] != hk || (std::int64_t)r.module_dims[k] != hdual) r.pass = false;
  }
  return r;
}

}  // namespace lefschetz
