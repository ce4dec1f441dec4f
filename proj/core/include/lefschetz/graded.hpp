#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lefschetz/jet.hpp"
#include "lefschetz/lattice_complex.hpp"
#include "lefschetz/linear_algebra.hpp"
#include "lefschetz/random_stream.hpp"
#include "lefschetz/uni_rational.hpp"

namespace lefschetz {

enum class ThetaMode { Generic, PyramidSpecial, TScaled, JetLifted };

inline std::string to_string(ThetaMode m) {
  switch (m) {
    case ThetaMode::Generic: return "generic-random";
    case ThetaMode::PyramidSpecial: return "pyramid-special";
    case ThetaMode::TScaled: return "t-scaled";
    case ThetaMode::JetLifted: return "jet-lifted";
  }
  return "?";
}

// Thrown when a random specialization lands on a degenerate point.
class SpecializationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficient matrix of the linear system of parameters. Columns follow the
// order of the complex's height-1 layer.
template <Scalar S>
class Theta {
 public:
  Theta() = default;
  Theta(std::size_t rows, std::size_t cols, ThetaMode mode = ThetaMode::Generic)
      : rows_(rows), cols_(cols), mode_(mode), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ThetaMode mode() const { return mode_; }
  void set_mode(ThetaMode m) { mode_ = m; }
  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<S> row(std::size_t i) const {
    return std::vector<S>(data_.begin() + (std::ptrdiff_t)(i * cols_), data_.begin() + (std::ptrdiff_t)((i + 1) * cols_));
  }
  Theta first_rows(std::size_t n) const {
    Theta t(n, cols_, mode_);
    std::copy(data_.begin(), data_.begin() + (std::ptrdiff_t)(n * cols_), t.data_.begin());
    return t;
  }
  template <class Fn>
  auto transform(Fn fn, ThetaMode mode) const {
    using T = decltype(fn(std::size_t{}, std::size_t{}, data_[0]));
    Theta<T> t(rows_, cols_, mode);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(i, j) = fn(i, j, (*this)(i, j));
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ThetaMode mode_ = ThetaMode::Generic;
  std::vector<S> data_;
};

template <FiniteField F>
Theta<F> random_theta(std::size_t rows, std::size_t cols, RandomStream& rng) {
  Theta<F> t(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(i, j) = F::random(rng);
  return t;
}

// dim X + 1 random rows over the height-1 elements of X.
template <FiniteField F>
Theta<F> generic_theta(const LatticeComplex& X, RandomStream& rng) {
  return random_theta<F>((std::size_t)X.dim() + 1, X.layer(1).size(), rng);
}

// A random linear form, sampled like a row of Theta.
template <FiniteField F>
std::vector<F> random_form(const LatticeComplex& X, RandomStream& rng) {
  std::vector<F> l(X.layer(1).size());
  for (auto& c : l) c = F::random(rng);
  return l;
}

// Theta for pyr X extending `base` (the system used on X): the apex column is
// (0, ..., 0, 1), the first rows agree with `base` on the base points and the
// last row is random there.
template <FiniteField F>
Theta<F> pyramid_theta(const LatticeComplex& X, const Theta<F>& base, const LatticeComplex& pyr, RandomStream& rng) {
  const auto& L = pyr.layer(1);
  const auto& B = X.layer(1);
  const std::size_t r = base.rows();
  Theta<F> t(r + 1, L.size(), ThetaMode::PyramidSpecial);
  for (std::size_t j = 0; j < L.size(); ++j) {
    const Point& q = L.elements[j].point;
    if (q.back() == 1) {
      t(r, j) = F::one();
      continue;
    }
    const auto b = B.find(Point(q.begin(), q.end() - 1));
    if (!b) throw GeometryError("pyramid_theta: base point missing from the base complex");
    for (std::size_t i = 0; i < r; ++i) t(i, j) = base(i, *b);
    t(r, j) = F::random(rng);
  }
  return t;
}

// Entries on the columns flagged in `in_v` are multiplied by t.
template <FiniteField F>
Theta<UniRational<F>> t_scaled_theta(const Theta<F>& base, const std::vector<bool>& in_v) {
  if (in_v.size() != base.cols()) throw std::invalid_argument("t_scaled_theta: mask has wrong length");
  const auto t = UniRational<F>::t();
  return base.transform(
      [&](std::size_t, std::size_t j, const F& c) { return in_v[j] ? t * UniRational<F>(c) : UniRational<F>(c); },
      ThetaMode::TScaled);
}

struct JetSeed {
  std::size_t row = 0;
  std::size_t col = 0;
  std::string tag;
};

// Constant jets everywhere except the seeded entries, which become
// base + (variable tag).
template <FiniteField F>
Theta<Jet<F>> jet_theta(const Theta<F>& base, const std::shared_ptr<const JetContext>& ctx, const std::vector<JetSeed>& seeds) {
  auto t = base.transform([&](std::size_t, std::size_t, const F& c) { return Jet<F>::constant(c, ctx); }, ThetaMode::JetLifted);
  for (const auto& s : seeds) {
    if (s.row >= base.rows() || s.col >= base.cols()) throw std::invalid_argument("jet_theta: seed outside the matrix");
    t(s.row, s.col) = t(s.row, s.col) + Jet<F>::lift(F{}, ctx, s.tag);
  }
  return t;
}

enum class Space { Ring, Module };

inline std::string to_string(Space s) { return s == Space::Ring ? "ring" : "module"; }

// Monomials of one height: all elements for the ring, elements off the
// subcomplex for the module.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(const LatticeComplex& X, Space space, std::int64_t k) : X_(&X), space_(space), k_(k) {
    const auto& L = X.layer(k);
    pos_.assign(L.size(), npos);
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (space == Space::Module && L.elements[i].in_subcomplex) continue;
      pos_[i] = idx_.size();
      idx_.push_back(i);
    }
  }

  static constexpr std::size_t npos = (std::size_t)-1;

  const LatticeComplex& complex() const { return *X_; }
  Space space() const { return space_; }
  std::int64_t degree() const { return k_; }
  std::size_t size() const { return idx_.size(); }
  // Layer index of the monomial at position p.
  std::size_t layer_index(std::size_t p) const { return idx_[p]; }
  const Element& element(std::size_t p) const { return X_->layer(k_).elements[idx_[p]]; }
  std::optional<std::size_t> position(std::size_t layer_index) const {
    if (layer_index >= pos_.size() || pos_[layer_index] == npos) return std::nullopt;
    return pos_[layer_index];
  }
  std::optional<std::size_t> position_of(const Point& x) const {
    const auto li = X_->layer(k_).find(x);
    if (!li) return std::nullopt;
    return position(*li);
  }

 private:
  const LatticeComplex* X_ = nullptr;
  Space space_ = Space::Ring;
  std::int64_t k_ = 0;
  std::vector<std::size_t> idx_;
  std::vector<std::size_t> pos_;
};

// Product of a in basis A and b in basis B, as a vector over `target`.
// Terms whose monomials share no cell, or leave the target space, vanish.
template <Scalar S>
std::vector<S> multiply(const MonomialBasis& A, const std::vector<S>& a, const MonomialBasis& B, const std::vector<S>& b,
                        const MonomialBasis& target) {
  if (A.degree() + B.degree() != target.degree()) throw std::invalid_argument("multiply: degrees do not add up");
  const LatticeComplex& X = target.complex();
  std::vector<S> out(target.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      const auto s = X.sum2(A.degree(), A.layer_index(i), B.degree(), B.layer_index(j));
      if (!s) continue;
      const auto p = target.position(*s);
      if (!p) continue;
      out[*p] = out[*p] + a[i] * b[j];
    }
  }
  return out;
}

template <Scalar S>
std::vector<S> unit_vector(std::size_t n, std::size_t p) {
  std::vector<S> v(n);
  v[p] = S::one();
  return v;
}

// Graded piece A^k of the ring or the module: monomials modulo the relations
// theta_i * (monomials of height k-1 in the same space).
template <Scalar S>
class GradedPiece {
 public:
  GradedPiece(const LatticeComplex& X, Space space, const Theta<S>& theta, std::int64_t k)
      : basis_(X, space, k), echelon_(basis_.size()) {
    if (theta.cols() != X.layer(1).size()) throw std::invalid_argument("GradedPiece: theta has wrong column count");
    if (k >= 1) {
      const MonomialBasis prev(X, space, k - 1);
      const std::size_t n1 = X.layer(1).size();
      relations_ = prev.size() * theta.rows();
      std::vector<std::pair<std::size_t, std::size_t>> prod;  // (column j, position)
      for (std::size_t m = 0; m < prev.size() && !echelon_.full(); ++m) {
        prod.clear();
        for (std::size_t j = 0; j < n1; ++j) {
          const auto s = X.sum2(k - 1, prev.layer_index(m), 1, j);
          if (!s) continue;
          if (const auto p = basis_.position(*s)) prod.emplace_back(j, *p);
        }
        for (std::size_t i = 0; i < theta.rows() && !echelon_.full(); ++i) {
          std::vector<S> row(basis_.size());
          bool any = false;
          for (const auto& [j, p] : prod) {
            if (theta(i, j).is_zero()) continue;
            row[p] = row[p] + theta(i, j);
            any = true;
          }
          if (any) echelon_.insert(std::move(row));
        }
      }
    }
    echelon_.finalize();
    free_ = echelon_.free_columns();
  }

  const MonomialBasis& basis() const { return basis_; }
  const LatticeComplex& complex() const { return basis_.complex(); }
  Space space() const { return basis_.space(); }
  std::int64_t degree() const { return basis_.degree(); }
  std::size_t size() const { return basis_.size(); }
  // Number of relation generators theta_i * m.
  std::size_t relation_count() const { return relations_; }
  std::size_t rank() const { return echelon_.rank(); }
  std::size_t dim() const { return free_.size(); }
  // Positions of the monomials forming the quotient basis.
  const std::vector<std::size_t>& quotient_basis() const { return free_; }
  const Echelon<S>& echelon() const { return echelon_; }

  // Quotient coordinates of a vector over the monomials.
  std::vector<S> reduce(std::vector<S> v) const {
    if (v.size() != size()) throw std::invalid_argument("GradedPiece::reduce: index mismatch");
    echelon_.reduce_in_place(v);
    std::vector<S> c(free_.size());
    for (std::size_t q = 0; q < free_.size(); ++q) c[q] = v[free_[q]];
    return c;
  }
  bool is_zero_class(const std::vector<S>& v) const {
    for (const auto& c : reduce(v))
      if (!c.is_zero()) return false;
    return true;
  }
  // Monomial vector representing quotient coordinates.
  std::vector<S> lift(const std::vector<S>& coords) const {
    std::vector<S> v(size());
    for (std::size_t q = 0; q < free_.size(); ++q) v[free_[q]] = coords[q];
    return v;
  }

 private:
  MonomialBasis basis_;
  Echelon<S> echelon_;
  std::vector<std::size_t> free_;
  std::size_t relations_ = 0;
};

// Multiply a representative by the linear form l (a vector over the height-1
// layer) `power` times, landing in `target`.
template <Scalar S>
std::vector<S> multiply_by_form(const MonomialBasis& src, std::vector<S> v, const std::vector<S>& l, unsigned power,
                                const MonomialBasis& target) {
  const LatticeComplex& X = src.complex();
  if (src.degree() + (std::int64_t)power != target.degree()) throw std::invalid_argument("multiply_by_form: degree mismatch");
  const MonomialBasis ones(X, Space::Ring, 1);
  MonomialBasis cur = src;
  for (unsigned e = 0; e < power; ++e) {
    const MonomialBasis next = (e + 1 == power) ? target : MonomialBasis(X, src.space(), cur.degree() + 1);
    v = multiply(cur, v, ones, l, next);
    cur = next;
  }
  return v;
}

// Matrix (dst.dim x src.dim) of multiplication by a representative `m` living
// in basis M.
template <Scalar S>
Matrix<S> mult_operator(const GradedPiece<S>& src, const MonomialBasis& M, const std::vector<S>& m, const GradedPiece<S>& dst) {
  if (src.degree() + M.degree() != dst.degree()) throw std::invalid_argument("mult_operator: height mismatch");
  Matrix<S> out(dst.dim(), src.dim());
  for (std::size_t q = 0; q < src.dim(); ++q) {
    const auto img = dst.reduce(multiply(src.basis(), unit_vector<S>(src.size(), src.quotient_basis()[q]), M, m, dst.basis()));
    for (std::size_t r = 0; r < dst.dim(); ++r) out(r, q) = img[r];
  }
  return out;
}

// Matrix of multiplication by l^power from src to dst.
template <Scalar S>
Matrix<S> form_power_operator(const GradedPiece<S>& src, const std::vector<S>& l, unsigned power, const GradedPiece<S>& dst) {
  Matrix<S> out(dst.dim(), src.dim());
  for (std::size_t q = 0; q < src.dim(); ++q) {
    const auto v = multiply_by_form(src.basis(), unit_vector<S>(src.size(), src.quotient_basis()[q]), l, power, dst.basis());
    const auto img = dst.reduce(v);
    for (std::size_t r = 0; r < dst.dim(); ++r) out(r, q) = img[r];
  }
  return out;
}

// Inclusion of the module piece into the ring piece of the same height.
template <Scalar S>
Matrix<S> natural_map(const GradedPiece<S>& pair, const GradedPiece<S>& ring) {
  if (pair.degree() != ring.degree()) throw std::invalid_argument("natural_map: degree mismatch");
  Matrix<S> out(ring.dim(), pair.dim());
  for (std::size_t q = 0; q < pair.dim(); ++q) {
    const std::size_t li = pair.basis().layer_index(pair.quotient_basis()[q]);
    const auto p = ring.basis().position(li);
    if (!p) continue;
    const auto img = ring.reduce(unit_vector<S>(ring.size(), *p));
    for (std::size_t r = 0; r < ring.dim(); ++r) out(r, q) = img[r];
  }
  return out;
}

template <Scalar S>
std::vector<std::size_t> hilbert_dims(const LatticeComplex& X, Space space, const Theta<S>& theta, std::int64_t kmax) {
  std::vector<std::size_t> dims;
  for (std::int64_t k = 0; k <= kmax; ++k) dims.push_back(GradedPiece<S>(X, space, theta, k).dim());
  return dims;
}

// Rank of a matrix over a field.
template <Scalar S>
std::size_t rank_of(const Matrix<S>& m) {
  Echelon<S> e(m.cols());
  for (std::size_t r = 0; r < m.rows() && !e.full(); ++r) e.insert(m.row(r));
  return e.rank();
}

}  // namespace lefschetz
