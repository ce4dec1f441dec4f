#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefschetz/ehrhart.hpp"
#include "lefschetz/graded.hpp"

namespace lefschetz {

class VolumeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A full flag of one cell of a complex.
struct CellFlag {
  std::size_t cell = 0;
  Flag flag;
};

// Sorted vertex lists of the flag faces, used to order flags.
inline std::vector<std::vector<Point>> flag_key(const Polytope& C, const Flag& f) {
  std::vector<std::vector<Point>> key;
  for (auto face : f.faces) {
    auto vs = C.face_vertices(face);
    std::sort(vs.begin(), vs.end());
    key.push_back(std::move(vs));
  }
  return key;
}

inline std::vector<Flag> sorted_flags(const Polytope& C) {
  auto flags = C.full_flags();
  std::sort(flags.begin(), flags.end(), [&](const Flag& a, const Flag& b) { return flag_key(C, a) < flag_key(C, b); });
  return flags;
}

// Lexicographically least full flag of the first top-dimensional maximal cell.
inline CellFlag default_flag(const LatticeComplex& X) {
  for (auto c : X.maximal_cells())
    if (X.cells()[c].dim() == X.dim()) return CellFlag{c, sorted_flags(X.cells()[c]).front()};
  throw VolumeError("default_flag: complex has no top-dimensional cell");
}

// Subsets of the cell's lattice points meeting tau_i in i+1 points, listed
// in flag order: s_0 in tau_0, s_i in tau_i minus tau_{i-1}.
inline std::vector<std::vector<Point>> coherent_sets(const Polytope& C, const Flag& flag) {
  const auto pts = C.lattice_points();
  const std::size_t n = flag.faces.size();
  // level[i]: points of tau_i not in tau_{i-1}
  std::vector<std::vector<Point>> level(n);
  for (const auto& x : pts)
    for (std::size_t i = 0; i < n; ++i)
      if (C.face_contains(flag.faces[i], x)) {
        level[i].push_back(x);
        break;
      }
  std::vector<std::vector<Point>> out;
  std::vector<Point> cur;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (const auto& x : level[i]) {
      cur.push_back(x);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// det of the columns of theta at the given height-1 points, in that order.
template <Scalar S>
S minor_at(const LatticeComplex& X, const Theta<S>& theta, const std::vector<Point>& cols) {
  if (cols.size() != theta.rows()) throw std::invalid_argument("minor_at: need one column per row");
  Matrix<S> m(theta.rows(), theta.rows());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto j = X.layer(1).find(cols[c]);
    if (!j) throw GeometryError("minor_at: point is not a height-1 element");
    for (std::size_t i = 0; i < theta.rows(); ++i) m(i, c) = theta(i, *j);
  }
  return determinant(m);
}

// Orientation of the simplex spanned by the points, relative to a fixed
// coordinate projection of their affine hull: +1 or -1. Only the sign
// matters in odd characteristic; in characteristic 2 it is invisible.
inline int orientation_sign(const std::vector<Point>& pts) {
  const std::size_t d = pts.size() - 1, n = pts[0].size();
  std::vector<std::vector<Rational>> dirs(d, std::vector<Rational>(n));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < n; ++k) dirs[i][k] = pts[i + 1][k] - pts[0][k];
  // Lexicographically first d coordinates on which the directions are independent.
  std::vector<std::size_t> coords;
  auto det_on = [&](const std::vector<std::size_t>& cs) {
    auto m = dirs;
    Rational det = 1;
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t p = c;
      while (p < d && m[p][cs[c]] == 0) ++p;
      if (p == d) return Rational(0);
      if (p != c) {
        std::swap(m[p], m[c]);
        det = -det;
      }
      det *= m[c][cs[c]];
      for (std::size_t r = c + 1; r < d; ++r) {
        const Rational f = m[r][cs[c]] / m[c][cs[c]];
        for (std::size_t k = 0; k < n; ++k) m[r][k] -= f * m[c][k];
      }
    }
    return det;
  };
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + (std::ptrdiff_t)d, true);
  do {
    std::vector<std::size_t> cs;
    for (std::size_t k = 0; k < n; ++k)
      if (pick[k]) cs.push_back(k);
    const Rational det = det_on(cs);
    if (det != 0) return det > 0 ? 1 : -1;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  throw GeometryError("orientation_sign: points are affinely dependent");
}

// Normalization vector u = sum over coherent sets of det(theta|sigma) x_sigma,
// over the top-degree module monomials. Each determinant is weighted by the
// orientation of sigma so that the term does not depend on column order.
template <Scalar S>
std::vector<S> km_row(const LatticeComplex& X, const Theta<S>& theta, const CellFlag& cf, const MonomialBasis& top) {
  const Polytope& C = X.cells()[cf.cell];
  std::vector<S> u(top.size());
  for (const auto& sigma : coherent_sets(C, cf.flag)) {
    Point sum(X.ambient_dim(), 0);
    for (const auto& x : sigma) sum = sum + x;
    const auto p = top.position_of(sum);
    if (!p) throw VolumeError("km_row: coherent sum " + to_string(sum) + " is not a top-degree module monomial");
    const S m = minor_at(X, theta, sigma);
    u[*p] = orientation_sign(sigma) > 0 ? u[*p] + m : u[*p] - m;
  }
  return u;
}

template <Scalar S>
struct VolumeFunctional {
  MonomialBasis basis;  // top-degree module monomials
  std::vector<S> values;
  CellFlag flag;
  std::size_t balancing_rank = 0;

  const S& operator[](std::size_t p) const { return values[p]; }
  // vol of the monomial at (point, height); zero off the module or cone.
  S at(const Point& x) const {
    const auto p = basis.position_of(x);
    return p ? values[*p] : S{};
  }
  // Linear extension to a vector over the basis.
  S of(const std::vector<S>& v) const {
    if (v.size() != values.size()) throw std::invalid_argument("VolumeFunctional: height mismatch");
    S s{};
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) s = s + v[i] * values[i];
    return s;
  }
};

// Solve balancing + normalization on the module of X (the whole complex when
// the subcomplex is empty). Throws SpecializationFailure on rank deficiency.
template <Scalar S>
VolumeFunctional<S> solve_volume(const LatticeComplex& X, const Theta<S>& theta, const CellFlag& cf) {
  const std::int64_t top = X.dim() + 1;
  const GradedPiece<S> piece(X, Space::Module, theta, top);
  if (piece.dim() != 1)
    throw SpecializationFailure("solve_volume: top module piece has dimension " + std::to_string(piece.dim()) + ", expected 1");
  const auto u = km_row(X, theta, cf, piece.basis());
  const S un = piece.reduce(u)[0];
  if (un.is_zero()) throw SpecializationFailure("solve_volume: normalization row lies in the relation span");
  if (!un.is_invertible()) throw VolumeError("solve_volume: normalization value is not a unit");
  const S scale = un.inv();
  VolumeFunctional<S> vf{piece.basis(), {}, cf, piece.rank()};
  vf.values.resize(piece.size());
  for (std::size_t p = 0; p < piece.size(); ++p) vf.values[p] = piece.reduce(unit_vector<S>(piece.size(), p))[0] * scale;
  return vf;
}

template <Scalar S>
VolumeFunctional<S> solve_volume(const LatticeComplex& X, const Theta<S>& theta) {
  return solve_volume(X, theta, default_flag(X));
}

// Normalization sum for another flag; equals 1 when vol is flag independent.
template <Scalar S>
S normalization_sum(const VolumeFunctional<S>& vf, const LatticeComplex& X, const Theta<S>& theta, const CellFlag& cf) {
  return vf.of(km_row(X, theta, cf, vf.basis));
}

struct FlagCheck {
  std::size_t flags = 0;
  std::size_t failures = 0;
  bool pass() const { return failures == 0; }
};

// Solve with the default flag, then test every full flag of every
// top-dimensional maximal cell.
template <Scalar S>
FlagCheck check_flag_independence(const LatticeComplex& X, const Theta<S>& theta) {
  const auto vf = solve_volume(X, theta);
  FlagCheck r;
  for (auto c : X.maximal_cells()) {
    if (X.cells()[c].dim() != X.dim()) continue;
    for (const auto& f : sorted_flags(X.cells()[c])) {
      ++r.flags;
      if (!(normalization_sum(vf, X, theta, CellFlag{c, f}) == S::one())) ++r.failures;
    }
  }
  return r;
}

// Columns of `sub` mapped to the columns of `X` with the same point.
inline std::vector<std::size_t> column_map(const LatticeComplex& sub, const LatticeComplex& X) {
  std::vector<std::size_t> m;
  for (const auto& e : sub.layer(1).elements) {
    const auto j = X.layer(1).find(e.point);
    if (!j) throw GeometryError("column_map: point of the subcomplex missing from the complex");
    m.push_back(*j);
  }
  return m;
}

template <Scalar S>
Theta<S> restrict_theta(const Theta<S>& theta, const std::vector<std::size_t>& cols) {
  Theta<S> t(theta.rows(), cols.size(), theta.mode());
  for (std::size_t i = 0; i < theta.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) t(i, j) = theta(i, cols[j]);
  return t;
}

struct LocalityCheck {
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  bool pass() const { return compared > 0 && mismatches == 0; }
};

// vol on the ball formed by `cells` of X (with its boundary) agrees with vol
// on X at the interior monomials of the ball. The flag is taken in the ball.
template <Scalar S>
LocalityCheck check_locality(const LatticeComplex& X, const std::vector<std::size_t>& cells, const Theta<S>& theta) {
  std::vector<Polytope> cs;
  for (auto c : cells) cs.push_back(X.cells()[c]);
  const auto ball = LatticeComplex(cs, {}, "ball").with_boundary_subcomplex();
  const auto th_ball = restrict_theta(theta, column_map(ball, X));
  const CellFlag local = default_flag(ball);
  // The same flag as a flag of the cell of X.
  std::size_t xc = X.cells().size();
  for (auto c : X.maximal_cells())
    if (X.cells()[c].vertices() == ball.cells()[local.cell].vertices()) xc = c;
  if (xc == X.cells().size()) throw GeometryError("check_locality: ball cell not found in the complex");
  const auto vb = solve_volume(ball, th_ball, local);
  const auto key = flag_key(ball.cells()[local.cell], local.flag);
  CellFlag global{xc, {}};
  for (const auto& f : X.cells()[xc].full_flags())
    if (flag_key(X.cells()[xc], f) == key) global.flag = f;
  const auto vx = solve_volume(X, theta, global);
  LocalityCheck r;
  for (std::size_t p = 0; p < vb.basis.size(); ++p) {
    ++r.compared;
    if (!(vb.values[p] == vx.at(vb.basis.element(p).point))) ++r.mismatches;
  }
  return r;
}

// Every relation theta_i * x_I, I a module monomial of height top-1, is
// annihilated by vol. Returns the number of violated (i, I).
template <Scalar S>
std::size_t balancing_violations(const LatticeComplex& X, const Theta<S>& theta, const VolumeFunctional<S>& vf,
                                 std::size_t* checked = nullptr) {
  const std::int64_t top = vf.basis.degree();
  const MonomialBasis prev(X, Space::Module, top - 1);
  std::size_t bad = 0, n = 0;
  for (std::size_t m = 0; m < prev.size(); ++m)
    for (std::size_t i = 0; i < theta.rows(); ++i) {
      S s{};
      for (std::size_t j = 0; j < X.layer(1).size(); ++j) {
        const auto q = X.sum2(top - 1, prev.layer_index(m), 1, j);
        if (!q) continue;
        if (const auto p = vf.basis.position(*q)) s = s + theta(i, j) * vf.values[*p];
      }
      ++n;
      if (!s.is_zero()) ++bad;
    }
  if (checked) *checked = n;
  return bad;
}

// Flag of Q (a polytope inside P's affine span, possibly after scaling Q by
// `scale`) whose faces span the same affine subspaces as the given flag of P.
inline std::optional<Flag> matching_flag(const Polytope& P, const Flag& fp, const Polytope& Q, std::int64_t scale = 1) {
  for (const auto& fq : sorted_flags(Q)) {
    bool ok = true;
    for (std::size_t i = 0; i < fq.faces.size() && ok; ++i)
      for (auto v : Q.face_vertices(fq.faces[i]))
        if (!P.face_contains(fp.faces[i], scaled(v, scale))) {
          ok = false;
          break;
        }
    if (ok) return fq;
  }
  return std::nullopt;
}

// Flags of P that restrict to flags of Q in the sense of matching_flag.
inline std::optional<std::pair<Flag, Flag>> common_flag(const Polytope& P, const Polytope& Q, std::int64_t scale = 1) {
  for (const auto& fp : sorted_flags(P))
    if (auto fq = matching_flag(P, fp, Q, scale)) return std::make_pair(fp, *fq);
  return std::nullopt;
}

template <FiniteField F>
struct Deformation {
  UniRational<F> value;
  bool pole_at_zero = false;
  F at_zero{};
};

// vol_P(x_m) with theta scaled by t on the columns in V, as a function of t.
template <FiniteField F>
Deformation<F> deformed_volume(const Polytope& P, const Theta<F>& theta, const std::vector<bool>& in_v, const Flag& flag,
                               const Point& m) {
  const auto X = LatticeComplex::from_polytope(P);
  const auto th = t_scaled_theta(theta, in_v);
  const auto vf = solve_volume(X, th, CellFlag{0, flag});
  Deformation<F> d;
  d.value = vf.at(m);
  d.pole_at_zero = d.value.has_pole_at(F{});
  if (!d.pole_at_zero) d.at_zero = d.value.eval(F{});
  return d;
}

}  // namespace lefschetz
