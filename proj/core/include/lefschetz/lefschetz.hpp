#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lefschetz/ehrhart.hpp"
#include "lefschetz/graded.hpp"
#include "lefschetz/predicates.hpp"

namespace lefschetz {

struct RankReport {
  std::string map;
  std::int64_t k = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  std::size_t expected = 0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::size_t retries = 0;
};

// Runs `attempt` once more with fresh randomness when it fails, so bad luck
// is separated from a genuine failure.
template <class Fn>
RankReport with_reseed(Fn attempt) {
  RankReport r = attempt();
  if (r.pass) return r;
  RankReport again = attempt();
  again.retries = r.retries + 1;
  return again;
}

// Random vector over the quotient of a piece, resampled until nonzero.
template <FiniteField F>
std::vector<F> random_class(std::size_t dim, RandomStream& rng) {
  std::vector<F> v(dim);
  if (dim == 0) return v;
  while (true) {
    bool any = false;
    for (auto& c : v) {
      c = F::random(rng);
      any |= !c.is_zero();
    }
    if (any) return v;
  }
}

// A^k(X, boundary) --l^{d+1-2k}--> A^{d+1-k}(X, boundary) --> A^{d+1-k}(X).
template <FiniteField F>
RankReport check_relative_lefschetz(const LatticeComplex& X, std::int64_t k, std::optional<std::size_t> expected, RandomStream& rng,
                                    std::uint64_t seed = 0) {
  const std::int64_t d = X.dim();
  if (2 * k > d + 1) throw std::invalid_argument("relative lefschetz: k above (d+1)/2");
  return with_reseed([&] {
    const auto theta = generic_theta<F>(X, rng);
    const auto l = random_form<F>(X, rng);
    const GradedPiece<F> src(X, Space::Module, theta, k), mid(X, Space::Module, theta, d + 1 - k),
        dst(X, Space::Ring, theta, d + 1 - k);
    const auto C = natural_map(mid, dst) * form_power_operator(src, l, (unsigned)(d + 1 - 2 * k), mid);
    RankReport r;
    r.map = "A^" + std::to_string(k) + "(X,dX) -> A^" + std::to_string(d + 1 - k) + "(X) by l^" + std::to_string(d + 1 - 2 * k);
    r.k = k;
    r.source_dim = src.dim();
    r.target_dim = dst.dim();
    r.rank = rank_of(C);
    r.expected = expected.value_or(src.dim());
    r.seed = seed;
    r.pass = r.source_dim == r.expected && r.target_dim == r.expected && r.rank == r.expected;
    return r;
  });
}

// A^k(P) --l^{d+1-j-2k}--> A^{d+1-j-k}(P) is injective.
template <FiniteField F>
RankReport check_level_lefschetz(const LatticeComplex& X, std::int64_t j, std::int64_t k, std::optional<std::size_t> expected,
                                 RandomStream& rng, std::uint64_t seed = 0) {
  const std::int64_t d = X.dim();
  if (2 * k > d + 1 - j) throw std::invalid_argument("level lefschetz: k above (d+1-j)/2");
  return with_reseed([&] {
    const auto theta = generic_theta<F>(X, rng);
    const auto l = random_form<F>(X, rng);
    const GradedPiece<F> src(X, Space::Ring, theta, k), dst(X, Space::Ring, theta, d + 1 - j - k);
    RankReport r;
    r.map = "A^" + std::to_string(k) + "(P) -> A^" + std::to_string(d + 1 - j - k) + "(P) by l^" + std::to_string(d + 1 - j - 2 * k);
    r.k = k;
    r.source_dim = src.dim();
    r.target_dim = dst.dim();
    r.rank = rank_of(form_power_operator(src, l, (unsigned)(d + 1 - j - 2 * k), dst));
    r.expected = expected.value_or(src.dim());
    r.seed = seed;
    r.pass = r.source_dim == r.expected && r.rank == r.expected;
    return r;
  });
}

// Multiplication by l on the ring, A^m -> A^{m+1}, is surjective for m >= (d+1)/2.
template <FiniteField F>
RankReport check_surjection(const LatticeComplex& X, std::int64_t m, RandomStream& rng, std::uint64_t seed = 0) {
  return with_reseed([&] {
    const auto theta = generic_theta<F>(X, rng);
    const auto l = random_form<F>(X, rng);
    const GradedPiece<F> src(X, Space::Ring, theta, m), dst(X, Space::Ring, theta, m + 1);
    RankReport r;
    r.map = "A^" + std::to_string(m) + "(P) -> A^" + std::to_string(m + 1) + "(P) by l";
    r.k = m;
    r.source_dim = src.dim();
    r.target_dim = dst.dim();
    r.rank = rank_of(form_power_operator(src, l, 1, dst));
    r.expected = dst.dim();
    r.seed = seed;
    r.pass = r.rank == r.expected;
    return r;
  });
}

struct AnisotropyReport {
  std::int64_t k = 0;
  std::size_t trials = 0;
  std::size_t skipped = 0;  // m u = 0
  std::size_t failures = 0;
  bool pass() const { return failures == 0; }
};

// u random nonzero in A^k(X, boundary); checks (m) u^2 != 0. With a monomial
// m of height s, trials with m u = 0 are skipped.
template <FiniteField F>
AnisotropyReport check_anisotropy(const LatticeComplex& X, const Theta<F>& theta, std::int64_t k, std::size_t trials, RandomStream& rng,
                                  std::optional<ConeElement> m = std::nullopt) {
  const std::int64_t s = m ? m->height : 0;
  if (2 * k + s > X.dim() + 1) throw std::invalid_argument("anisotropy: 2k + deg m above d+1");
  const GradedPiece<F> src(X, Space::Module, theta, k), sq(X, Space::Module, theta, 2 * k + s);
  std::optional<GradedPiece<F>> mu_piece;
  MonomialBasis Bm;
  std::vector<F> mv;
  if (m) {
    mu_piece.emplace(X, Space::Module, theta, k + s);
    Bm = MonomialBasis(X, Space::Ring, s);
    const auto p = Bm.position_of(m->point);
    if (!p) throw std::invalid_argument("anisotropy: m is not a monomial of X");
    mv = unit_vector<F>(Bm.size(), *p);
  }
  AnisotropyReport r;
  r.k = k;
  if (src.dim() == 0) return r;
  for (std::size_t t = 0; t < trials; ++t) {
    ++r.trials;
    const auto u = src.lift(random_class<F>(src.dim(), rng));
    auto u2 = multiply(src.basis(), u, src.basis(), u, MonomialBasis(X, Space::Module, 2 * k));
    if (m) {
      if (mu_piece->is_zero_class(multiply(src.basis(), u, Bm, mv, mu_piece->basis()))) {
        ++r.skipped;
        continue;
      }
      u2 = multiply(MonomialBasis(X, Space::Module, 2 * k), u2, Bm, mv, sq.basis());
    }
    if (sq.is_zero_class(u2)) ++r.failures;
  }
  return r;
}

struct HallLamanResult {
  bool vacuous = false;  // m u = 0
  bool pass = false;
};

// m u != 0 implies m u^2 l^{d+1-s-2k} != 0, for u given in quotient coordinates.
template <FiniteField F>
HallLamanResult check_hall_laman_element(const LatticeComplex& X, const Theta<F>& theta, std::int64_t k, const ConeElement& m,
                                         const std::vector<F>& l, const std::vector<F>& u_coords) {
  const std::int64_t d = X.dim(), s = m.height, power = d + 1 - s - 2 * k;
  if (power < 0) throw std::invalid_argument("hall-laman: k above (d+1-s)/2");
  const GradedPiece<F> src(X, Space::Module, theta, k), mu(X, Space::Module, theta, k + s), top(X, Space::Module, theta, d + 1);
  const MonomialBasis Bm(X, Space::Ring, s);
  const auto p = Bm.position_of(m.point);
  if (!p) throw std::invalid_argument("hall-laman: m is not a monomial of X");
  const auto mv = unit_vector<F>(Bm.size(), *p);
  const auto u = src.lift(u_coords);
  if (mu.is_zero_class(multiply(src.basis(), u, Bm, mv, mu.basis()))) return {true, true};
  const MonomialBasis B2(X, Space::Module, 2 * k), B2s(X, Space::Module, 2 * k + s);
  const auto mu2 = multiply(B2, multiply(src.basis(), u, src.basis(), u, B2), Bm, mv, B2s);
  const auto v = multiply_by_form(B2s, mu2, l, (unsigned)power, top.basis());
  return {false, !top.is_zero_class(v)};
}

// Ordered j-tuples of lattice points of P not jointly contained in a facet.
inline std::vector<std::vector<Point>> interior_tuples(const Polytope& P, int j, std::size_t budget = 10'000'000) {
  const auto pts = P.lattice_points();
  double count = 1;
  for (int i = 0; i < j; ++i) count *= (double)pts.size();
  if (count > (double)budget) throw BudgetExceeded("interior_tuples: tuple count exceeds the budget");
  // facet membership bitmask per point
  std::vector<std::uint64_t> on(pts.size(), 0);
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (std::size_t f = 0; f < P.facets().size(); ++f) {
      std::int64_t dot = 0;
      for (std::size_t c = 0; c < pts[p].size(); ++c) dot += P.facets()[f].normal[c] * pts[p][c];
      if (dot == P.facets()[f].bound) on[p] |= 1ULL << f;
    }
  std::vector<std::vector<Point>> out;
  std::vector<std::size_t> idx((std::size_t)j, 0);
  if (j == 0 || pts.empty()) return out;
  while (true) {
    std::uint64_t common = ~0ULL;
    for (auto i : idx) common &= on[i];
    if (common == 0) {
      std::vector<Point> t;
      for (auto i : idx) t.push_back(pts[i]);
      out.push_back(std::move(t));
    }
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == pts.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

struct PartitionReport {
  std::size_t tuples = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  bool pass() const { return failures == 0; }
};

// For random nonzero u in A^t(P), some sigma in I_j(P) has u x_sigma != 0 in
// A^{t+j}(P, boundary).
template <FiniteField F>
PartitionReport check_partition_of_unity(const Polytope& P, const LatticeComplex& X, const Theta<F>& theta, int j, std::int64_t t,
                                         std::size_t trials, RandomStream& rng) {
  const auto tuples = interior_tuples(P, j);
  std::set<Point> sums;
  for (const auto& tp : tuples) {
    Point s(P.ambient_dim(), 0);
    for (const auto& x : tp) s = s + x;
    sums.insert(s);
  }
  const GradedPiece<F> src(X, Space::Ring, theta, t), dst(X, Space::Module, theta, t + j);
  const MonomialBasis Bj(X, Space::Ring, j);
  PartitionReport r;
  r.tuples = tuples.size();
  if (src.dim() == 0) return r;
  for (std::size_t tr = 0; tr < trials; ++tr) {
    ++r.trials;
    const auto u = src.lift(random_class<F>(src.dim(), rng));
    bool found = false;
    for (const auto& s : sums) {
      const auto p = Bj.position_of(s);
      if (!p) continue;
      if (!dst.is_zero_class(multiply(src.basis(), u, Bj, unit_vector<F>(Bj.size(), *p), dst.basis()))) {
        found = true;
        break;
      }
    }
    if (!found) ++r.failures;
  }
  return r;
}

struct PyramidReport {
  std::vector<std::size_t> base_dims;     // A^m(Psi)
  std::vector<std::size_t> pyr_dims;      // A^m(pyr Psi)
  std::vector<std::size_t> induced_rank;  // rank of A^m(Psi) -> A^m(pyr Psi)
  std::vector<std::size_t> shifted_dims;  // A^{m+1}(pyr X, X u pyr Y)
  bool bijection = true;                  // apex multiplication on monomial bases
  bool part1() const { return base_dims == pyr_dims && base_dims == induced_rank; }
  bool part2() const { return bijection; }
  bool shifted() const { return base_dims == shifted_dims; }
};

// Both parts of the pyramid lemma for Psi = (X, Y), heights 0..mmax, with a
// pyramid-special system on pyr X.
template <FiniteField F>
PyramidReport check_pyramid_lemma(const LatticeComplex& X, std::int64_t mmax, RandomStream& rng) {
  const auto Y1 = pyramid_complex(X, false);
  const auto Y2 = pyramid_complex(X, true);
  const auto base = generic_theta<F>(X, rng);
  const auto pt = pyramid_theta(X, base, Y1, rng);
  const int n = X.ambient_dim();
  auto lift = [&](Point p, std::int64_t apex) {
    p.push_back(apex);
    return p;
  };
  PyramidReport r;
  for (std::int64_t m = 0; m <= mmax; ++m) {
    const GradedPiece<F> a(X, Space::Module, base, m), b(Y1, Space::Module, pt, m), c(Y2, Space::Module, pt, m + 1);
    r.base_dims.push_back(a.dim());
    r.pyr_dims.push_back(b.dim());
    r.shifted_dims.push_back(c.dim());
    Matrix<F> inc(b.dim(), a.dim());
    for (std::size_t q = 0; q < a.dim(); ++q) {
      const auto pos = b.basis().position_of(lift(a.basis().element(a.quotient_basis()[q]).point, 0));
      if (!pos) continue;
      const auto img = b.reduce(unit_vector<F>(b.size(), *pos));
      for (std::size_t i = 0; i < b.dim(); ++i) inc(i, q) = img[i];
    }
    r.induced_rank.push_back(rank_of(inc));
    // x_a times the module monomials of pyr Psi at height m.
    std::set<std::size_t> hit;
    for (std::size_t p = 0; p < b.size(); ++p) {
      Point q = b.basis().element(p).point;
      q[n] += 1;
      const auto pos = c.basis().position_of(q);
      if (!pos || !hit.insert(*pos).second) r.bijection = false;
    }
    if (hit.size() != c.size()) r.bijection = false;
  }
  return r;
}

struct Inequality {
  std::string name;
  bool applicable = false;
  bool holds = false;
};

struct InequalityLadder {
  std::vector<std::int64_t> hstar;
  std::vector<Inequality> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (c.applicable && !c.holds) return false;
    return true;
  }
};

// Macaulay's bound a^<i> for the i-binomial expansion of a.
inline std::int64_t macaulay_bound(std::int64_t a, std::int64_t i) {
  if (a <= 0 || i <= 0) return 0;
  auto binom = [](std::int64_t n, std::int64_t r) -> std::int64_t {
    if (r < 0 || r > n) return 0;
    std::int64_t c = 1;
    for (std::int64_t t = 1; t <= r; ++t) c = c * (n - r + t) / t;
    return c;
  };
  std::int64_t out = 0;
  for (std::int64_t j = i; j >= 1 && a > 0; --j) {
    std::int64_t nj = j;
    while (binom(nj + 1, j) <= a) ++nj;
    a -= binom(nj, j);
    out += binom(nj + 1, j + 1);
  }
  return out;
}

// (1, g_1, g_2, ...) is the Hilbert function of a standard graded algebra.
inline bool is_m_vector(const std::vector<std::int64_t>& g) {
  if (g.empty() || g[0] != 1) return false;
  for (std::size_t i = 1; i + 1 < g.size(); ++i)
    if (g[i] < 0 || g[i + 1] > macaulay_bound(g[i], (std::int64_t)i)) return false;
  for (auto x : g)
    if (x < 0) return false;
  return true;
}

inline InequalityLadder hstar_inequality_report(const std::vector<std::int64_t>& h_in, bool idp, bool reflexive, std::int64_t j) {
  InequalityLadder L;
  L.hstar = h_in;
  const std::int64_t d = (std::int64_t)h_in.size() - 1;
  auto h = [&](std::int64_t i) -> std::int64_t { return i < 0 || i > d ? 0 : h_in[(std::size_t)i]; };
  std::int64_t s = d;
  while (s > 0 && h(s) == 0) --s;
  auto add = [&](std::string name, bool applicable, bool holds) { L.checks.push_back({std::move(name), applicable, applicable && holds}); };

  bool nonneg = true;
  for (auto x : h_in) nonneg &= x >= 0;
  add("h*_0 = 1", true, h(0) == 1);
  add("nonnegative", true, nonneg);
  bool partial = true;
  for (std::int64_t k = 0; k <= s; ++k) {
    std::int64_t lo = 0, hi = 0;
    for (std::int64_t i = 0; i <= k; ++i) {
      lo += h(i);
      hi += h(s - i);
    }
    partial &= lo <= hi;
  }
  add("h*_0+..+h*_k <= h*_s+..+h*_{s-k}", true, partial);

  bool dec = true;
  for (std::int64_t i = (d + 1) / 2; i < d + 1; ++i) dec &= h(i) >= h(i + 1);
  add("second half decreasing", idp, dec);
  bool dual = true;
  for (std::int64_t k = 0; 2 * k <= d + 1; ++k) dual &= h(k) >= h(d + 1 - k);
  add("h*_k >= h*_{d+1-k}", idp, dual);

  const bool level = idp && j >= 1 && j <= d + 1;
  bool inc = true;
  for (std::int64_t i = 0; i < (d + 1 - j + 1) / 2; ++i) inc &= h(i) <= h(i + 1);
  add("initial part increasing", level, inc);
  bool ldual = true;
  for (std::int64_t k = 0; 2 * k <= d + 1 - j; ++k) ldual &= h(k) <= h(d + 1 - j - k);
  add("h*_k <= h*_{d+1-j-k}", level, ldual);

  bool pal = true, uni = true;
  for (std::int64_t k = 0; k <= d; ++k) pal &= h(k) == h(d - k);
  for (std::int64_t i = 0; 2 * (i + 1) <= d; ++i) uni &= h(i) <= h(i + 1);
  for (std::int64_t i = (d + 1) / 2; i < d; ++i) uni &= h(i) >= h(i + 1);
  add("palindromic", reflexive, pal);
  add("unimodal", idp && reflexive, uni);
  std::vector<std::int64_t> g{1};
  for (std::int64_t i = 1; 2 * i <= d; ++i) g.push_back(h(i) - h(i - 1));
  add("differences form an M-vector", idp && reflexive, is_m_vector(g));
  return L;
}

// dim (A / l A)^i against max(h*_i - h*_{i-1}, 0) for i <= d/2.
template <FiniteField F>
bool check_m_vector_algebra(const LatticeComplex& X, const std::vector<std::int64_t>& h, RandomStream& rng) {
  const auto theta = generic_theta<F>(X, rng);
  const auto l = random_form<F>(X, rng);
  const std::int64_t d = X.dim();
  for (std::int64_t i = 0; 2 * i <= d; ++i) {
    const GradedPiece<F> cur(X, Space::Ring, theta, i);
    std::size_t image = 0;
    if (i > 0) image = rank_of(form_power_operator(GradedPiece<F>(X, Space::Ring, theta, i - 1), l, 1, cur));
    const std::int64_t expect = std::max<std::int64_t>(h[(std::size_t)i] - (i > 0 ? h[(std::size_t)i - 1] : 0), 0);
    if ((std::int64_t)(cur.dim() - image) != expect) return false;
  }
  return true;
}

}  // namespace lefschetz
