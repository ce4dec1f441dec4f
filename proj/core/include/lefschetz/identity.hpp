#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefschetz/volume.hpp"

namespace lefschetz {

class IdentityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IdentityReport {
  std::string identity;
  std::string instance;
  std::string left;
  std::string right;
  bool pass = false;
  std::size_t retries = 0;
};

inline constexpr std::size_t kTermBudget = 10'000'000;

// A monomial given by its point and height.
struct ConePoint {
  Point point;
  std::int64_t height = 0;
};

// vol of a ring vector of top height.
template <Scalar S>
S vol_of(const VolumeFunctional<S>& vf, const MonomialBasis& B, const std::vector<S>& v) {
  S s{};
  for (std::size_t p = 0; p < v.size(); ++p)
    if (!v[p].is_zero()) s = s + v[p] * vf.at(B.element(p).point);
  return s;
}

// Ring monomial x_sigma for a family of height-1 points; nullopt when the
// points share no cell.
inline std::optional<std::size_t> family_monomial(const LatticeComplex& X, const std::vector<Point>& sigma) {
  if (sigma.empty()) return std::size_t{0};
  std::vector<std::pair<std::int64_t, std::size_t>> args;
  for (const auto& s : sigma) {
    const auto j = X.layer(1).find(s);
    if (!j) throw IdentityError("family_monomial: " + to_string(s) + " is not a height-1 element");
    args.emplace_back(1, *j);
  }
  return X.sum(args);
}

inline Point family_sum(const std::vector<Point>& sigma, int n) {
  Point s(n, 0);
  for (const auto& x : sigma) s = s + x;
  return s;
}

// Every monomial x_sigma * x_a^2 with a in the support of u is interior.
template <Scalar S>
bool parseval_admissible(const LatticeComplex& X, const ConePoint& anchor, const MonomialBasis& Bk, const std::vector<S>& u) {
  const std::int64_t h = anchor.height + 2 * Bk.degree();
  for (std::size_t p = 0; p < u.size(); ++p) {
    if (u[p].is_zero()) continue;
    const auto li = X.layer(h).find(anchor.point + scaled(Bk.element(p).point, 2));
    if (!li || X.layer(h).elements[*li].in_subcomplex) return false;
  }
  return true;
}

// theta-weights of ordered tuples grouped by their sum: W(s) = sum over
// beta with |beta| = s of prod_i theta_{i, beta_i}.
template <Scalar S>
std::map<Point, S> tuple_weights(const LatticeComplex& X, const Theta<S>& theta) {
  const auto& L = X.layer(1);
  std::map<Point, S> w{{Point(X.ambient_dim(), 0), S::one()}};
  for (std::size_t i = 0; i < theta.rows(); ++i) {
    std::map<Point, S> next;
    for (const auto& [s, c] : w)
      for (std::size_t j = 0; j < L.size(); ++j) {
        if (theta(i, j).is_zero()) continue;
        auto& t = next[s + L.elements[j].point];
        t = t + c * theta(i, j);
      }
    w = std::move(next);
  }
  return w;
}

// vol(u * x_{(anchor + |beta|)/2}) for the half-point of the given sum, or
// nullopt when no half-point exists.
template <Scalar S>
class HalfPointPairing {
 public:
  HalfPointPairing(const LatticeComplex& X, const VolumeFunctional<S>& vf, const ConePoint& anchor, const MonomialBasis& Bk,
                   const std::vector<S>& u, std::int64_t divisor = 2)
      : X_(X), vf_(vf), anchor_(anchor), Bk_(Bk), u_(u), p_(divisor) {
    top_ = X.dim() + 1;
    total_ = anchor.height + (std::int64_t)(X.dim() + 1) * (p_ - 1);
    if (total_ % p_ != 0) throw IdentityError("HalfPointPairing: total height is not divisible");
    half_ = total_ / p_;
    if (half_ + Bk.degree() != top_) throw IdentityError("HalfPointPairing: heights do not reach the top degree");
    Bh_ = MonomialBasis(X, Space::Ring, half_);
    Btop_ = MonomialBasis(X, Space::Ring, top_);
  }

  std::optional<S> operator()(const Point& beta_sum) const {
    const auto li = X_.divide(anchor_.point + beta_sum, total_, p_);
    if (!li) return std::nullopt;
    auto it = memo_.find(*li);
    if (it != memo_.end()) return it->second;
    const auto pos = Bh_.position(*li);
    const S v = vol_of(vf_, Btop_, multiply(Bk_, u_, Bh_, unit_vector<S>(Bh_.size(), *pos), Btop_));
    memo_.emplace(*li, v);
    return v;
  }

 private:
  const LatticeComplex& X_;
  const VolumeFunctional<S>& vf_;
  ConePoint anchor_;
  const MonomialBasis& Bk_;
  const std::vector<S>& u_;
  std::int64_t p_;
  std::int64_t top_ = 0, total_ = 0, half_ = 0;
  MonomialBasis Bh_, Btop_;
  mutable std::map<std::size_t, S> memo_;
};

template <Scalar S>
struct ParsevalSums {
  S lhs;
  S grouped;
  S ungrouped;
  std::size_t tuples = 0;
};

// vol(x_anchor u^2) and both evaluations of sum_beta vol(u x_{(anchor+beta)/2})^2 theta^beta.
template <Scalar S>
ParsevalSums<S> parseval_sums(const LatticeComplex& X, const Theta<S>& theta, const VolumeFunctional<S>& vf, const ConePoint& anchor,
                              const MonomialBasis& Bk, const std::vector<S>& u, bool ungrouped = true) {
  const std::int64_t top = X.dim() + 1;
  if (anchor.height + 2 * Bk.degree() != top) throw IdentityError("parseval: anchor height and u degree do not sum to the top");
  const auto& L = X.layer(1);
  ParsevalSums<S> out;

  // Left side.
  const auto ali = X.layer(anchor.height).find(anchor.point);
  if (ali) {
    const MonomialBasis B2k(X, Space::Ring, 2 * Bk.degree()), Ba(X, Space::Ring, anchor.height), Btop(X, Space::Ring, top);
    const auto u2 = multiply(Bk, u, Bk, u, B2k);
    out.lhs = vol_of(vf, Btop, multiply(B2k, u2, Ba, unit_vector<S>(Ba.size(), *Ba.position(*ali)), Btop));
  }

  const HalfPointPairing<S> pair(X, vf, anchor, Bk, u);
  for (const auto& [s, w] : tuple_weights(X, theta)) {
    const auto v = pair(s);
    if (v) out.grouped = out.grouped + *v * *v * w;
  }

  if (!ungrouped) return out;
  const std::size_t n = L.size(), r = theta.rows();
  double count = 1;
  for (std::size_t i = 0; i < r; ++i) count *= (double)n;
  if (count > (double)kTermBudget) throw IdentityError("parseval: tuple count exceeds the term budget");
  std::vector<std::size_t> beta(r, 0);
  while (true) {
    S w = S::one();
    Point s(X.ambient_dim(), 0);
    for (std::size_t i = 0; i < r; ++i) {
      w = w * theta(i, beta[i]);
      s = s + L.elements[beta[i]].point;
    }
    ++out.tuples;
    if (!w.is_zero())
      if (const auto v = pair(s)) out.ungrouped = out.ungrouped + *v * *v * w;
    std::size_t i = 0;
    while (i < r && ++beta[i] == n) beta[i++] = 0;
    if (i == r) break;
  }
  return out;
}

template <FiniteField F>
IdentityReport check_parseval_char2(const LatticeComplex& X, const Theta<F>& theta, const VolumeFunctional<F>& vf,
                                    const Point& alpha) {
  static_assert(F::characteristic == 2, "the Parseval-Rayleigh identity needs characteristic 2");
  const std::int64_t top = X.dim() + 1;
  const auto li = X.layer(top).find(alpha);
  if (!li || X.layer(top).elements[*li].in_subcomplex) throw IdentityError("parseval: alpha is not an interior top-degree monomial");
  const MonomialBasis B0(X, Space::Ring, 0);
  const auto s = parseval_sums(X, theta, vf, ConePoint{alpha, top}, B0, std::vector<F>{F::one()});
  IdentityReport r{"parseval", X.name() + " alpha=" + to_string(alpha), s.lhs.to_hex(), s.grouped.to_hex(), false, 0};
  r.pass = s.lhs == s.grouped && s.grouped == s.ungrouped;
  return r;
}

// General form: x_sigma u^2 for a family sigma and u in the ring of degree k.
template <FiniteField F>
IdentityReport check_parseval_general(const LatticeComplex& X, const Theta<F>& theta, const VolumeFunctional<F>& vf,
                                      const std::vector<Point>& sigma, std::int64_t k, const std::vector<F>& u) {
  static_assert(F::characteristic == 2, "the Parseval-Rayleigh identity needs characteristic 2");
  if ((X.dim() + 1 + (std::int64_t)sigma.size()) % 2 != 0) throw IdentityError("parseval: d+1+#sigma must be even");
  if ((std::int64_t)sigma.size() + 2 * k != X.dim() + 1) throw IdentityError("parseval: degree of u does not match sigma");
  const MonomialBasis Bk(X, Space::Ring, k);
  if (u.size() != Bk.size()) throw IdentityError("parseval: u has the wrong length");
  const ConePoint anchor{family_sum(sigma, X.ambient_dim()), (std::int64_t)sigma.size()};
  if (!parseval_admissible(X, anchor, Bk, u)) throw IdentityError("parseval: x_sigma u^2 leaves the interior");
  std::string inst = X.name() + " sigma=(";
  for (std::size_t i = 0; i < sigma.size(); ++i) inst += (i ? "," : "") + to_string(sigma[i]);
  inst += ") k=" + std::to_string(k);
  // x_sigma is zero when sigma spans no cell; so is the whole identity.
  if (!family_monomial(X, sigma)) return IdentityReport{"parseval-general", inst, F{}.to_hex(), F{}.to_hex(), true, 0};
  const auto s = parseval_sums(X, theta, vf, anchor, Bk, u, false);
  return IdentityReport{"parseval-general", inst, s.lhs.to_hex(), s.grouped.to_hex(), s.lhs == s.grouped, 0};
}

// Exponent vectors of length n summing to m.
inline std::vector<std::vector<unsigned>> compositions(std::size_t n, unsigned m) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
  };
  if (n == 0) {
    if (m == 0) out.emplace_back();
    return out;
  }
  rec(0, m);
  return out;
}

// (-1)^{d+1} vol(x_alpha) = sum_beta vol(x_{(alpha+beta)/p})^p theta^beta / beta!,
// beta with rows summing to p-1. Each row contributes (p-1)! = -1 (Wilson), so
// the sign is invisible in characteristic 2 and for d+1 even.
template <FiniteField F>
IdentityReport check_parseval_char_p(const LatticeComplex& X, const Theta<F>& theta, const VolumeFunctional<F>& vf,
                                     const Point& alpha) {
  constexpr unsigned p = F::characteristic;
  const std::int64_t top = X.dim() + 1;
  const auto li = X.layer(top).find(alpha);
  if (!li || X.layer(top).elements[*li].in_subcomplex) throw IdentityError("parseval-p: alpha is not an interior top-degree monomial");
  const auto& L = X.layer(1);
  const auto rows = compositions(L.size(), p - 1);
  double count = 1;
  for (std::size_t i = 0; i < theta.rows(); ++i) count *= (double)rows.size();
  if (count > (double)kTermBudget) throw IdentityError("parseval-p: term count exceeds the term budget");

  std::map<Point, F> w{{Point(X.ambient_dim(), 0), F::one()}};
  for (std::size_t i = 0; i < theta.rows(); ++i) {
    std::map<Point, F> next;
    for (const auto& e : rows) {
      F c = F::one();
      Point s(X.ambient_dim(), 0);
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (!e[j]) continue;
        F fact = F::one();
        for (unsigned t = 2; t <= e[j]; ++t) fact = fact * F::from_int(t);
        c = c * power(theta(i, j), e[j]) * fact.inv();
        s = s + scaled(L.elements[j].point, e[j]);
      }
      if (c.is_zero()) continue;
      for (const auto& [s0, c0] : w) {
        auto& t = next[s0 + s];
        t = t + c0 * c;
      }
    }
    w = std::move(next);
  }
  const MonomialBasis B0(X, Space::Ring, 0);
  const std::vector<F> one{F::one()};
  const HalfPointPairing<F> pair(X, vf, ConePoint{alpha, top}, B0, one, p);
  F rhs{};
  for (const auto& [s, c] : w)
    if (const auto v = pair(s)) rhs = rhs + power(*v, p) * c;
  const F lhs = theta.rows() % 2 == 1 ? -vf.at(alpha) : vf.at(alpha);
  return IdentityReport{"parseval-p", X.name() + " p=" + std::to_string(p) + " alpha=" + to_string(alpha), lhs.to_hex(),
                        rhs.to_hex(), lhs == rhs, 0};
}

// d_F vol(x_sigma u^2) = vol(x_sigma u x_G)^2, F one entry per row of theta.
template <FiniteField F>
IdentityReport check_differential(const LatticeComplex& X, const Theta<F>& theta, const CellFlag& flag, const std::vector<Point>& Fseq,
                                  const std::vector<Point>& sigma, const std::vector<Point>& G, const std::vector<F>& u) {
  static_assert(F::characteristic == 2, "the differential identity needs characteristic 2");
  const int n = X.ambient_dim();
  const std::int64_t top = X.dim() + 1, j = (std::int64_t)sigma.size(), k = (std::int64_t)G.size();
  if ((std::int64_t)Fseq.size() != top) throw IdentityError("differential: F needs one entry per row");
  if (2 * k + j != top) throw IdentityError("differential: |F| - |sigma| must equal 2|G| in height");
  if (family_sum(Fseq, n) - family_sum(sigma, n) != scaled(family_sum(G, n), 2))
    throw IdentityError("differential: |F| - |sigma| != 2|G|");
  if (!family_monomial(X, G)) throw IdentityError("differential: G is not contained in a single cell");
  const MonomialBasis Bk(X, Space::Ring, k);
  const ConePoint anchor{family_sum(sigma, n), j};
  if (!parseval_admissible(X, anchor, Bk, u)) throw IdentityError("differential: x_sigma u^2 leaves the interior");

  std::vector<std::string> tags;
  std::vector<JetSeed> seeds;
  for (std::size_t i = 0; i < Fseq.size(); ++i) {
    const auto col = X.layer(1).find(Fseq[i]);
    if (!col) throw IdentityError("differential: F entry is not a height-1 element");
    tags.push_back("t" + std::to_string(i) + "_" + std::to_string(*col));
    seeds.push_back({i, *col, tags.back()});
  }
  const auto ctx = JetContext::make(tags, std::vector<unsigned>(tags.size(), 1));
  const auto jt = jet_theta(theta, ctx, seeds);
  const auto jvf = solve_volume(X, jt, flag);
  const MonomialBasis B2k(X, Space::Ring, 2 * k), Bj(X, Space::Ring, j), Btop(X, Space::Ring, top);

  std::string inst = X.name() + " F=(";
  for (std::size_t i = 0; i < Fseq.size(); ++i) inst += (i ? "," : "") + to_string(Fseq[i]);
  inst += ") sigma=(";
  for (std::size_t i = 0; i < sigma.size(); ++i) inst += (i ? "," : "") + to_string(sigma[i]);
  inst += ") G=(";
  for (std::size_t i = 0; i < G.size(); ++i) inst += (i ? "," : "") + to_string(G[i]);
  inst += ")";
  const auto xs = family_monomial(X, sigma);
  if (!xs) return IdentityReport{"differential", inst, F{}.to_hex(), F{}.to_hex(), true, 0};
  const auto es = unit_vector<F>(Bj.size(), *Bj.position(*xs));

  std::vector<Jet<F>> ju(u.size());
  for (std::size_t p = 0; p < u.size(); ++p) ju[p] = Jet<F>::constant(u[p], ctx);
  std::vector<Jet<F>> jes(es.size());
  for (std::size_t p = 0; p < es.size(); ++p) jes[p] = Jet<F>::constant(es[p], ctx);
  const auto ju2 = multiply(Bk, ju, Bk, ju, B2k);
  const auto jv = vol_of(jvf, Btop, multiply(B2k, ju2, Bj, jes, Btop));
  const F lhs = jet_partial(jv, std::vector<unsigned>(tags.size(), 1));

  const auto vf = solve_volume(X, theta, flag);
  const auto xg = *family_monomial(X, G);
  const auto uxg = multiply(Bk, u, Bk, unit_vector<F>(Bk.size(), *Bk.position(xg)), B2k);
  const F v = vol_of(vf, Btop, multiply(B2k, uxg, Bj, es, Btop));
  const F rhs = v * v;
  return IdentityReport{"differential", inst, lhs.to_hex(), rhs.to_hex(), lhs == rhs, 0};
}

// k height-1 points in a common cell summing to x, or nullopt.
inline std::optional<std::vector<Point>> decompose(const LatticeComplex& X, const Point& x, std::int64_t k) {
  if (k == 0) {
    if (std::all_of(x.begin(), x.end(), [](std::int64_t c) { return c == 0; })) return std::vector<Point>{};
    return std::nullopt;
  }
  for (const auto& e : X.layer(1).elements) {
    const Point rest = x - e.point;
    if (!X.layer(k - 1).find(rest)) continue;
    if (auto tail = decompose(X, rest, k - 1)) {
      tail->insert(tail->begin(), e.point);
      if (family_monomial(X, *tail)) return tail;
    }
  }
  return std::nullopt;
}

template <FiniteField F>
struct DifferentialInstance {
  std::vector<Point> Fseq, sigma, G;
  std::vector<F> u;
};

// Admissible (F, sigma, G, u) with #sigma = (d+1) mod 2: F ranges over ordered
// tuples, sigma over single points when needed, G is the first decomposition of
// (|F| - |sigma|) / 2, u is random on the admissible support.
template <FiniteField F>
std::vector<DifferentialInstance<F>> differential_instances(const LatticeComplex& X, std::size_t limit, RandomStream& rng) {
  const std::int64_t top = X.dim() + 1, j = top % 2, k = (top - j) / 2;
  const int n = X.ambient_dim();
  const auto& L = X.layer(1);
  const MonomialBasis Bk(X, Space::Ring, k);
  std::vector<std::optional<Point>> sigmas;
  if (j == 0)
    sigmas.emplace_back();
  else
    for (const auto& e : L.elements) sigmas.emplace_back(e.point);
  std::vector<DifferentialInstance<F>> out;
  std::vector<std::size_t> pick((std::size_t)top, 0);
  if (L.size() == 0) return out;
  while (out.size() < limit) {
    std::vector<Point> Fs;
    for (auto q : pick) Fs.push_back(L.elements[q].point);
    for (const auto& s : sigmas) {
      if (out.size() >= limit) break;
      std::vector<Point> sigma;
      if (s) sigma.push_back(*s);
      const Point twice = family_sum(Fs, n) - family_sum(sigma, n);
      if (std::any_of(twice.begin(), twice.end(), [](std::int64_t c) { return c % 2 != 0; })) continue;
      Point half = twice;
      for (auto& c : half) c /= 2;
      const auto G = decompose(X, half, k);
      if (!G) continue;
      const ConePoint anchor{family_sum(sigma, n), j};
      std::vector<F> u(Bk.size());
      bool any = false;
      for (std::size_t p = 0; p < u.size(); ++p) {
        std::vector<F> probe(Bk.size());
        probe[p] = F::one();
        if (!parseval_admissible(X, anchor, Bk, probe)) continue;
        while (u[p].is_zero()) u[p] = F::random(rng);
        any = true;
      }
      if (any) out.push_back({Fs, sigma, *G, std::move(u)});
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == L.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

// Euler homogeneity in Hasse form over every top-degree module monomial:
// (-1)^{(p-1) rows} vol = sum over z of per-row degree p-1 of z * coeff_z(vol).
template <FiniteField F>
std::vector<IdentityReport> check_euler_homogeneity(const LatticeComplex& X, const Theta<F>& theta, const CellFlag& flag) {
  constexpr unsigned p = F::characteristic;
  const std::size_t r = theta.rows(), n = theta.cols();
  const auto row_exps = compositions(n, p - 1);
  double count = 1;
  for (std::size_t i = 0; i < r; ++i) count *= (double)row_exps.size();
  if (count > (double)kTermBudget) throw IdentityError("euler: monomial count exceeds the term budget");

  const auto vf = solve_volume(X, theta, flag);
  std::vector<F> rhs(vf.values.size());
  std::vector<std::size_t> pick(r, 0);
  while (true) {
    // One jet context per z, carrying exactly the variables of z.
    std::vector<std::string> tags;
    std::vector<unsigned> caps;
    std::vector<JetSeed> seeds;
    F zval = F::one();
    for (std::size_t i = 0; i < r; ++i) {
      const auto& e = row_exps[pick[i]];
      for (std::size_t j = 0; j < n; ++j) {
        if (!e[j]) continue;
        tags.push_back("t" + std::to_string(i) + "_" + std::to_string(j));
        caps.push_back(e[j]);
        seeds.push_back({i, j, tags.back()});
        zval = zval * power(theta(i, j), e[j]);
      }
    }
    if (!zval.is_zero()) {
      const auto ctx = JetContext::make(tags, caps);
      const auto jvf = solve_volume(X, jet_theta(theta, ctx, seeds), flag);
      for (std::size_t q = 0; q < rhs.size(); ++q) rhs[q] = rhs[q] + zval * jvf.values[q].coeff(caps);
    }
    std::size_t i = 0;
    while (i < r && ++pick[i] == row_exps.size()) pick[i++] = 0;
    if (i == r) break;
  }
  const bool negate = ((p - 1) * r) % 2 == 1;
  std::vector<IdentityReport> out;
  for (std::size_t q = 0; q < rhs.size(); ++q) {
    const F lhs = negate ? -vf.values[q] : vf.values[q];
    out.push_back({"euler", X.name() + " p=" + std::to_string(p) + " x=" + to_string(vf.basis.element(q).point), lhs.to_hex(),
                   rhs[q].to_hex(), lhs == rhs[q], 0});
  }
  return out;
}

template <FiniteField F>
IdentityReport check_balancing(const LatticeComplex& X, const Theta<F>& theta, const VolumeFunctional<F>& vf) {
  std::size_t checked = 0;
  const auto bad = balancing_violations(X, theta, vf, &checked);
  return IdentityReport{"balancing", X.name() + " relations=" + std::to_string(checked), std::to_string(bad), "0", bad == 0, 0};
}

// Half-points x_{F/2} of height (d+1)/2, as ring layer indices.
inline std::vector<std::size_t> half_points(const LatticeComplex& X) {
  const std::int64_t top = X.dim() + 1;
  if (top % 2 != 0) throw IdentityError("half_points: needs odd dimension");
  const auto& L = X.layer(1);
  std::set<Point> sums{Point(X.ambient_dim(), 0)};
  for (std::int64_t i = 0; i < top; ++i) {
    std::set<Point> next;
    for (const auto& s : sums)
      for (const auto& e : L.elements) next.insert(s + e.point);
    sums = std::move(next);
  }
  std::set<std::size_t> out;
  for (const auto& s : sums)
    if (const auto h = X.divide(s, top, 2)) out.insert(*h);
  return {out.begin(), out.end()};
}

template <FiniteField F>
struct Dichotomy {
  std::size_t half_points = 0;
  std::size_t middle_dim = 0;                 // dim A^{(d+1)/2}(X, boundary)
  Matrix<F> pairing;                          // half-points x quotient basis
  std::vector<std::vector<F>> kernel;         // quotient coordinates
};

// Pairings of the middle module piece against every half-point.
template <FiniteField F>
Dichotomy<F> half_point_pairing(const LatticeComplex& X, const Theta<F>& theta, const VolumeFunctional<F>& vf) {
  const std::int64_t k = (X.dim() + 1) / 2;
  const GradedPiece<F> mid(X, Space::Module, theta, k);
  const MonomialBasis Bh(X, Space::Ring, k), Btop(X, Space::Ring, X.dim() + 1);
  const auto hp = half_points(X);
  Dichotomy<F> out;
  out.half_points = hp.size();
  out.middle_dim = mid.dim();
  out.pairing = Matrix<F>(hp.size(), mid.dim());
  for (std::size_t q = 0; q < mid.dim(); ++q) {
    const auto uq = unit_vector<F>(mid.size(), mid.quotient_basis()[q]);
    for (std::size_t h = 0; h < hp.size(); ++h)
      out.pairing(h, q) = vol_of(vf, Btop, multiply(mid.basis(), uq, Bh, unit_vector<F>(Bh.size(), *Bh.position(hp[h])), Btop));
  }
  out.kernel = solve(out.pairing, std::vector<F>(hp.size())).kernel;
  return out;
}

// Classify u (quotient coordinates in the middle module piece) and check
// that u^2 vanishes exactly when u pairs with no half-point.
template <FiniteField F>
IdentityReport isotropy_dichotomy(const LatticeComplex& X, const Theta<F>& theta, const VolumeFunctional<F>& vf,
                                  const Dichotomy<F>& D, const std::vector<F>& u_coords) {
  static_assert(F::characteristic == 2, "the dichotomy needs characteristic 2");
  const std::int64_t k = (X.dim() + 1) / 2;
  const GradedPiece<F> mid(X, Space::Module, theta, k);
  const auto pairs = D.pairing.apply(u_coords);
  bool paired = false;
  for (const auto& c : pairs) paired |= !c.is_zero();
  const auto u = mid.lift(u_coords);
  const MonomialBasis Btop(X, Space::Ring, X.dim() + 1);
  const F sq = vol_of(vf, Btop, multiply(mid.basis(), u, mid.basis(), u, Btop));
  // The top piece is one-dimensional, so u^2 = 0 iff vol(u^2) = 0.
  return IdentityReport{"dichotomy", X.name() + (paired ? " paired" : " unpaired"), paired ? "paired" : "unpaired",
                        sq.is_zero() ? "u^2=0" : "u^2!=0", paired != sq.is_zero(), 0};
}

}  // namespace lefschetz
