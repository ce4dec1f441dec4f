#include "lefschetz/ehrhart.hpp"

namespace lefschetz {

std::int64_t count_points(const Polytope& P, std::int64_t i) { return (std::int64_t)P.points_at_height(i).size(); }

std::vector<Rational> ehrhart_polynomial(const Polytope& P) {
  const int d = P.dim();
  const std::size_t n = (std::size_t)d + 1;
  // Vandermonde system in exact rationals.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    Rational x = 1;
    for (std::size_t k = 0; k < n; ++k) {
      m[i][k] = x;
      x *= (int)i;
    }
    m[i][n] = count_points(P, (std::int64_t)i);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) coeffs[k] = m[k][n] / m[k][k];
  for (std::int64_t i = d + 1; i <= d + 3; ++i) {
    Rational v = 0, x = 1;
    for (const auto& c : coeffs) {
      v += c * x;
      x *= i;
    }
    if (v != count_points(P, i)) throw EhrhartError("ehrhart_polynomial: interpolation disagrees with the count at i=" + std::to_string(i));
  }
  return coeffs;
}

std::vector<std::int64_t> hstar(const Polytope& P) {
  const int d = P.dim();
  std::vector<std::int64_t> E(d + 1);
  for (int i = 0; i <= d; ++i) E[i] = count_points(P, i);
  // h*_k = sum_i (-1)^i C(d+1, i) E(k-i)
  std::vector<std::int64_t> h(d + 1, 0);
  for (int k = 0; k <= d; ++k) {
    std::int64_t binom = 1;
    for (int i = 0; i <= k; ++i) {
      h[k] += (i % 2 ? -1 : 1) * binom * E[k - i];
      binom = binom * (d + 1 - i) / (i + 1);
    }
    if (h[k] < 0) throw EhrhartError("hstar: negative coefficient");
  }
  return h;
}

std::vector<std::int64_t> trimmed(std::vector<std::int64_t> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace lefschetz
