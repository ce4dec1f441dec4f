#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefschetz/scalar.hpp"

namespace lefschetz {

class JetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shared description of a truncated multivariate jet: ordered variable tags,
// per-variable truncation caps, and a precomputed product table for the box
// prod_v [0, cap_v].
class JetContext {
 public:
  JetContext(std::vector<std::string> tags, std::vector<unsigned> caps)
      : tags_(std::move(tags)), caps_(std::move(caps)) {
    if (tags_.size() != caps_.size()) throw JetError("JetContext: tags and caps differ in length");
    strides_.resize(tags_.size());
    size_ = 1;
    for (std::size_t v = 0; v < tags_.size(); ++v) {
      strides_[v] = size_;
      size_ *= caps_[v] + 1;
      if (size_ > (1U << 20)) throw JetError("JetContext: coefficient box too large");
    }
    for (std::size_t a = 0; a < size_; ++a) {
      for (std::size_t b = 0; b < size_; ++b) {
        std::size_t c = 0;
        bool ok = true;
        for (std::size_t v = 0; v < tags_.size() && ok; ++v) {
          const unsigned e = exponent(a, v) + exponent(b, v);
          if (e > caps_[v]) ok = false;
          c += e * strides_[v];
        }
        if (ok) table_.push_back({(std::uint32_t)a, (std::uint32_t)b, (std::uint32_t)c});
      }
    }
  }

  static std::shared_ptr<const JetContext> make(std::vector<std::string> tags, std::vector<unsigned> caps) {
    return std::make_shared<const JetContext>(std::move(tags), std::move(caps));
  }

  std::size_t variables() const { return tags_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<std::string>& tags() const { return tags_; }
  const std::vector<unsigned>& caps() const { return caps_; }

  std::size_t index_of(const std::string& tag) const {
    for (std::size_t v = 0; v < tags_.size(); ++v)
      if (tags_[v] == tag) return v;
    throw JetError("JetContext: unknown variable tag '" + tag + "'");
  }
  unsigned exponent(std::size_t idx, std::size_t v) const {
    return (unsigned)((idx / strides_[v]) % (caps_[v] + 1));
  }
  std::size_t compose(const std::vector<unsigned>& exps) const {
    if (exps.size() != tags_.size()) throw JetError("JetContext: exponent vector has wrong length");
    std::size_t idx = 0;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] > caps_[v]) throw JetError("JetContext: order beyond truncation cap");
      idx += exps[v] * strides_[v];
    }
    return idx;
  }
  const std::vector<std::array<std::uint32_t, 3>>& product_table() const { return table_; }

 private:
  std::vector<std::string> tags_;
  std::vector<unsigned> caps_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  std::vector<std::array<std::uint32_t, 3>> table_;
};

// Truncated Taylor jet over F. A jet without a context is a constant and
// broadcasts against any context; two jets with different contexts do not mix.
template <Scalar F>
class Jet {
 public:
  Jet() : c_(1) {}
  Jet(F c) : c_{c} {}  // NOLINT: scalars lift implicitly
  Jet(std::shared_ptr<const JetContext> ctx, std::vector<F> c) : ctx_(std::move(ctx)), c_(std::move(c)) {
    if (ctx_ && c_.size() != ctx_->size()) throw JetError("Jet: coefficient count does not match context");
  }

  static Jet one() { return Jet(F::one()); }

  // base + variable
  static Jet lift(const F& base, const std::shared_ptr<const JetContext>& ctx, const std::string& tag) {
    std::vector<F> c(ctx->size());
    c[0] = base;
    std::vector<unsigned> e(ctx->variables(), 0);
    const std::size_t v = ctx->index_of(tag);
    if (ctx->caps()[v] == 0) throw JetError("Jet: variable has truncation cap 0");
    e[v] = 1;
    c[ctx->compose(e)] = F::one();
    return Jet(ctx, std::move(c));
  }
  static Jet constant(const F& base, const std::shared_ptr<const JetContext>& ctx) {
    std::vector<F> c(ctx->size());
    c[0] = base;
    return Jet(ctx, std::move(c));
  }

  const std::shared_ptr<const JetContext>& context() const { return ctx_; }
  const F& constant_term() const { return c_[0]; }
  const std::vector<F>& coefficients() const { return c_; }

  F coeff(const std::vector<unsigned>& exps) const {
    if (!ctx_) {
      for (auto e : exps)
        if (e) return F{};
      return c_[0];
    }
    return c_[ctx_->compose(exps)];
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_invertible() const { return !c_[0].is_zero(); }

  friend Jet operator+(const Jet& a, const Jet& b) { return zip(a, b, [](const F& x, const F& y) { return x + y; }); }
  friend Jet operator-(const Jet& a, const Jet& b) { return zip(a, b, [](const F& x, const F& y) { return x - y; }); }
  Jet operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    if (!a.ctx_) return b.scaled(a.c_[0]);
    if (!b.ctx_) return a.scaled(b.c_[0]);
    check_same(a, b);
    std::vector<F> r(a.c_.size());
    for (const auto& t : a.ctx_->product_table()) {
      const F& x = a.c_[t[0]];
      if (x.is_zero()) continue;
      r[t[2]] = r[t[2]] + x * b.c_[t[1]];
    }
    return Jet(a.ctx_, std::move(r));
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inv(); }
  friend bool operator==(const Jet& a, const Jet& b) {
    if (a.ctx_ && b.ctx_) {
      if (a.ctx_ != b.ctx_) return false;
      return a.c_ == b.c_;
    }
    const Jet& w = a.ctx_ ? a : b;
    const Jet& k = a.ctx_ ? b : a;
    if (!(w.c_[0] == k.c_[0])) return false;
    for (std::size_t i = 1; i < w.c_.size(); ++i)
      if (!w.c_[i].is_zero()) return false;
    return true;
  }

  Jet scaled(const F& s) const {
    Jet r = *this;
    for (auto& x : r.c_) x = x * s;
    return r;
  }

  // 1/(c + n) = c^{-1} * sum_k (-n/c)^k, n nilpotent.
  Jet inv() const {
    if (!is_invertible()) throw NotInvertible("Jet: constant term is zero");
    const F c_inv = c_[0].inv();
    if (!ctx_) return Jet(c_inv);
    Jet q = *this;
    q.c_[0] = F{};
    q = -q.scaled(c_inv);
    unsigned order = 0;
    for (auto cap : ctx_->caps()) order += cap;
    Jet s = constant(F::one(), ctx_);
    for (unsigned k = 0; k < order; ++k) {
      s = q * s;
      s.c_[0] = s.c_[0] + F::one();
    }
    return s.scaled(c_inv);
  }

 private:
  static void check_same(const Jet& a, const Jet& b) {
    if (a.ctx_ != b.ctx_) throw JetError("Jet: operands carry different contexts");
  }
  template <class Op>
  static Jet zip(const Jet& a, const Jet& b, Op op) {
    if (!a.ctx_ && !b.ctx_) return Jet(op(a.c_[0], b.c_[0]));
    if (a.ctx_ && b.ctx_) check_same(a, b);
    const auto& ctx = a.ctx_ ? a.ctx_ : b.ctx_;
    std::vector<F> r(ctx->size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const F x = a.ctx_ ? a.c_[i] : (i == 0 ? a.c_[0] : F{});
      const F y = b.ctx_ ? b.c_[i] : (i == 0 ? b.c_[0] : F{});
      r[i] = op(x, y);
    }
    return Jet(ctx, std::move(r));
  }

  std::shared_ptr<const JetContext> ctx_;
  std::vector<F> c_;
};

// Plain mixed partial derivative at the base point: E! * coefficient.
// Orders reaching the characteristic are rejected since E! vanishes there.
template <FiniteField F>
F jet_partial(const Jet<F>& j, const std::vector<unsigned>& exps) {
  F fact = F::one();
  for (auto e : exps) {
    if (e >= F::characteristic) throw JetError("jet_partial: order not below the characteristic");
    for (unsigned k = 2; k <= e; ++k) fact = fact * F::from_int(k);
  }
  return fact * j.coeff(exps);
}

}  // namespace lefschetz
