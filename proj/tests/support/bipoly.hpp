#pragma once

// Dense-by-map polynomials in two variables a, b over a field, with exact
// partial derivatives. Used as a symbolic oracle independent of the jet code.

#include <map>
#include <utility>

namespace testsupport {

template <class F>
struct BiPoly {
  std::map<std::pair<unsigned, unsigned>, F> c;

  static BiPoly constant(const F& x) {
    BiPoly p;
    if (!x.is_zero()) p.c[{0, 0}] = x;
    return p;
  }
  static BiPoly var(const F& base, unsigned which) {
    auto p = constant(base);
    p.c[which == 0 ? std::pair<unsigned, unsigned>{1, 0} : std::pair<unsigned, unsigned>{0, 1}] = F::one();
    return p;
  }

  friend BiPoly operator+(BiPoly x, const BiPoly& y) {
    for (const auto& [e, v] : y.c) x.c[e] = x.c[e] + v;
    return x;
  }
  friend BiPoly operator-(BiPoly x, const BiPoly& y) {
    for (const auto& [e, v] : y.c) x.c[e] = x.c[e] - v;
    return x;
  }
  friend BiPoly operator*(const BiPoly& x, const BiPoly& y) {
    BiPoly r;
    for (const auto& [e, v] : x.c)
      for (const auto& [f, w] : y.c) {
        auto& t = r.c[{e.first + f.first, e.second + f.second}];
        t = t + v * w;
      }
    return r;
  }

  BiPoly d(unsigned which) const {
    BiPoly r;
    for (const auto& [e, v] : c) {
      const unsigned k = which == 0 ? e.first : e.second;
      if (k == 0) continue;
      F m{};
      for (unsigned i = 0; i < k; ++i) m = m + F::one();
      auto f = e;
      (which == 0 ? f.first : f.second) -= 1;
      r.c[f] = r.c[f] + v * m;
    }
    return r;
  }

  // Value at a = b = 0 (variables are offsets from the base point).
  F at_zero() const {
    auto it = c.find({0, 0});
    return it == c.end() ? F{} : it->second;
  }
};

// d^2/(da db) of N/D at the origin.
template <class F>
F mixed_partial_of_quotient(const BiPoly<F>& N, const BiPoly<F>& D) {
  const F n = N.at_zero(), na = N.d(0).at_zero(), nb = N.d(1).at_zero(), nab = N.d(0).d(1).at_zero();
  const F dd = D.at_zero(), da = D.d(0).at_zero(), db = D.d(1).at_zero(), dab = D.d(0).d(1).at_zero();
  const F two = F::one() + F::one();
  const F num = nab * dd * dd - na * db * dd - nb * da * dd - n * dab * dd + two * n * da * db;
  return num * (dd * dd * dd).inv();
}

}  // namespace testsupport
