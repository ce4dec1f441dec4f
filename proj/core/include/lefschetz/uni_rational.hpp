#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lefschetz/scalar.hpp"

namespace lefschetz {

// Dense univariate polynomial over a field, coefficients low to high, trimmed.
template <Scalar F>
class Poly {
 public:
  Poly() = default;
  explicit Poly(F c) {
    if (!c.is_zero()) c_.push_back(c);
  }
  explicit Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }
  static Poly monomial(F c, std::size_t deg) {
    std::vector<F> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
  }

  int degree() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F{}; }
  F lead() const { return c_.empty() ? F{} : c_.back(); }
  const std::vector<F>& coefficients() const { return c_; }

  F eval(const F& t) const {
    F acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(r));
  }
  Poly operator-() const { return Poly{} - *this; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  Poly scaled(const F& s) const {
    std::vector<F> r = c_;
    for (auto& x : r) x = x * s;
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // a = q*b + r with deg r < deg b
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw NotInvertible("Poly: division by zero polynomial");
    std::vector<F> rem = a.c_;
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<F> q(a.c_.size() - b.c_.size() + 1);
    const F inv_lead = b.lead().inv();
    for (std::size_t k = q.size(); k-- > 0;) {
      const F f = rem[k + b.c_.size() - 1] * inv_lead;
      q[k] = f;
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] = rem[k + j] - f * b.c_[j];
    }
    rem.resize(b.c_.size() - 1);
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inv());
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Element of F(t): reduced fraction with monic denominator.
template <Scalar F>
class UniRational {
 public:
  UniRational() : den_(F::one()) {}
  UniRational(F c) : num_(c), den_(F::one()) {}  // NOLINT: scalars lift implicitly
  UniRational(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static UniRational one() { return UniRational(F::one()); }
  static UniRational t() { return UniRational(Poly<F>::monomial(F::one(), 1), Poly<F>(F::one())); }

  const Poly<F>& numerator() const { return num_; }
  const Poly<F>& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_invertible() const { return !num_.is_zero(); }
  UniRational inv() const {
    if (is_zero()) throw NotInvertible("UniRational: inverse of zero");
    return UniRational(den_, num_);
  }

  // Evaluation homomorphism t -> x; fails at a pole.
  F eval(const F& x) const {
    const F d = den_.eval(x);
    if (d.is_zero()) throw PoleError("UniRational: evaluation at a pole");
    return num_.eval(x) / d;
  }
  bool has_pole_at(const F& x) const { return den_.eval(x).is_zero(); }

  friend UniRational operator+(const UniRational& a, const UniRational& b) {
    if (a.den_ == b.den_) return UniRational(a.num_ + b.num_, a.den_);
    return UniRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend UniRational operator-(const UniRational& a, const UniRational& b) {
    if (a.den_ == b.den_) return UniRational(a.num_ - b.num_, a.den_);
    return UniRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  UniRational operator-() const {
    UniRational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend UniRational operator*(const UniRational& a, const UniRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return UniRational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend UniRational operator/(const UniRational& a, const UniRational& b) { return a * b.inv(); }
  friend bool operator==(const UniRational& a, const UniRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw NotInvertible("UniRational: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<F>(F::one());
      return;
    }
    const Poly<F> g = Poly<F>::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Poly<F>::divmod(num_, g).first;
      den_ = Poly<F>::divmod(den_, g).first;
    }
    const F s = den_.lead().inv();
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
  }

  Poly<F> num_;
  Poly<F> den_;
};

}  // namespace lefschetz
