#pragma once

// Plain polynomial arithmetic over GF(p) used to certify the field moduli.
// Deliberately independent from the field classes under test.

#include <cstdint>
#include <vector>

namespace testsupport {

using PolyP = std::vector<int>;  // low to high, coefficients in [0, p)

inline void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyP mod_poly(PolyP a, const PolyP& f, int p) {
  trim(a);
  const int lead = f.back();
  int lead_inv = 1;
  while ((lead * lead_inv) % p != 1) ++lead_inv;
  while (a.size() >= f.size()) {
    const int c = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - f.size();
    for (std::size_t k = 0; k < f.size(); ++k) a[shift + k] = ((a[shift + k] - c * f[k]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline PolyP mul_mod(const PolyP& a, const PolyP& b, const PolyP& f, int p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod_poly(r, f, p);
}

inline PolyP pow_p_mod(const PolyP& a, const PolyP& f, int p) {
  PolyP r{1};
  for (int k = 0; k < p; ++k) r = mul_mod(r, a, f, p);
  return r;
}

inline PolyP gcd_poly(PolyP a, PolyP b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = mod_poly(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

// Rabin's test for a modulus of degree n = 2^a: x^(p^n) = x mod f and
// gcd(x^(p^(n/2)) - x, f) = 1.
inline bool rabin(const PolyP& f, int p) {
  const std::size_t n = f.size() - 1;
  PolyP x{0, 1};
  PolyP y = x;
  PolyP half;
  for (std::size_t k = 1; k <= n; ++k) {
    y = pow_p_mod(y, f, p);
    if (k == n / 2) half = y;
  }
  PolyP diff = y;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] - 1 + p) % p;
  trim(diff);
  if (!diff.empty()) return false;
  PolyP h = half;
  h.resize(std::max<std::size_t>(h.size(), 2), 0);
  h[1] = (h[1] - 1 + p) % p;
  trim(h);
  if (h.empty()) return false;
  return gcd_poly(f, h, p).size() == 1;
}

inline bool rabin_irreducible_mod_p(int p, unsigned k, unsigned i, unsigned c1, unsigned c0) {
  PolyP f(k + 1, 0);
  f[k] = 1;
  f[i] = (f[i] + (int)c1) % p;
  f[0] = (f[0] + (int)c0) % p;
  return rabin(f, p);
}

struct GF2Poly {
  static bool rabin_irreducible(const std::vector<unsigned>& exponents) {
    unsigned n = 0;
    for (auto e : exponents) n = e > n ? e : n;
    PolyP f(n + 1, 0);
    for (auto e : exponents) f[e] ^= 1;
    return rabin(f, 2);
  }
};

}  // namespace testsupport
