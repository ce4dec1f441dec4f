#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lefschetz/random_stream.hpp"
#include "lefschetz/scalar.hpp"

namespace lefschetz {

// Irreducible trinomials x^K + c1*x^i + c0 over GF(P), found by search and
// re-checked by a Rabin test in the unit tests.
template <unsigned P, unsigned K>
struct GFpModulus;
template <> struct GFpModulus<3, 16> { static constexpr unsigned i = 4, c1 = 1, c0 = 2; };
template <> struct GFpModulus<3, 32> { static constexpr unsigned i = 5, c1 = 1, c0 = 2; };
template <> struct GFpModulus<3, 64> { static constexpr unsigned i = 3, c1 = 1, c0 = 2; };
template <> struct GFpModulus<5, 16> { static constexpr unsigned i = 3, c1 = 1, c0 = 4; };
template <> struct GFpModulus<5, 32> { static constexpr unsigned i = 16, c1 = 1, c0 = 2; };
template <> struct GFpModulus<5, 64> { static constexpr unsigned i = 1, c1 = 1, c0 = 4; };

// GF(P^K) as GF(P)[x] / (x^K + c1 x^i + c0), P in {3, 5}.
template <unsigned P, unsigned K>
class GFp {
  static_assert(P == 3 || P == 5, "GFp: P must be 3 or 5");
  using Mod = GFpModulus<P, K>;

 public:
  static constexpr unsigned characteristic = P;
  static constexpr unsigned degree = K;

  static std::string modulus() {
    const std::string c1 = Mod::c1 == 1 ? "" : std::to_string(Mod::c1);
    return "GF(" + std::to_string(P) + "^" + std::to_string(K) + ") x^" + std::to_string(K) + "+" + c1 + "x^" + std::to_string(Mod::i) +
           "+" + std::to_string(Mod::c0);
  }
  using coeffs = std::array<std::uint8_t, K>;

  GFp() { c_.fill(0); }
  static GFp from_int(long long n) {
    GFp x;
    long long r = n % (long long)P;
    if (r < 0) r += P;
    x.c_[0] = (std::uint8_t)r;
    return x;
  }
  static GFp from_coeffs(const coeffs& c) {
    GFp x;
    for (unsigned k = 0; k < K; ++k) x.c_[k] = (std::uint8_t)(c[k] % P);
    return x;
  }
  static GFp one() { return from_int(1); }
  static GFp zero() { return GFp{}; }
  static GFp random(RandomStream& rs) {
    GFp x;
    for (unsigned k = 0; k < K; ++k) x.c_[k] = (std::uint8_t)rs.below(P);
    return x;
  }

  const coeffs& coefficients() const { return c_; }

  bool is_zero() const {
    for (auto v : c_)
      if (v) return false;
    return true;
  }
  bool is_invertible() const { return !is_zero(); }

  friend GFp operator+(const GFp& a, const GFp& b) {
    GFp r;
    for (unsigned k = 0; k < K; ++k) {
      unsigned s = a.c_[k] + b.c_[k];
      r.c_[k] = (std::uint8_t)(s >= P ? s - P : s);
    }
    return r;
  }
  friend GFp operator-(const GFp& a, const GFp& b) {
    GFp r;
    for (unsigned k = 0; k < K; ++k) {
      unsigned s = a.c_[k] + P - b.c_[k];
      r.c_[k] = (std::uint8_t)(s >= P ? s - P : s);
    }
    return r;
  }
  GFp operator-() const { return GFp{} - *this; }
  GFp& operator+=(const GFp& b) { return *this = *this + b; }
  GFp& operator-=(const GFp& b) { return *this = *this - b; }
  GFp& operator*=(const GFp& b) { return *this = *this * b; }

  friend GFp operator*(const GFp& a, const GFp& b) {
    std::array<std::uint32_t, 2 * K - 1> prod{};
    for (unsigned i = 0; i < K; ++i) {
      if (!a.c_[i]) continue;
      for (unsigned j = 0; j < K; ++j) prod[i + j] += (std::uint32_t)a.c_[i] * b.c_[j];
    }
    for (auto& v : prod) v %= P;
    // x^K = -c1 x^i - c0
    for (unsigned deg = 2 * K - 2; deg >= K; --deg) {
      const std::uint32_t top = prod[deg];
      if (!top) continue;
      prod[deg] = 0;
      const unsigned base = deg - K;
      prod[base + Mod::i] = (prod[base + Mod::i] + (P - top) * Mod::c1) % P;
      prod[base] = (prod[base] + (P - top) * Mod::c0) % P;
    }
    GFp r;
    for (unsigned k = 0; k < K; ++k) r.c_[k] = (std::uint8_t)prod[k];
    return r;
  }
  friend GFp operator/(const GFp& a, const GFp& b) { return a * b.inv(); }
  friend bool operator==(const GFp& a, const GFp& b) { return a.c_ == b.c_; }
  friend bool operator<(const GFp& a, const GFp& b) { return a.c_ < b.c_; }

  // Extended Euclid in GF(P)[x].
  GFp inv() const {
    if (is_zero()) throw NotInvertible("GFp: inverse of zero");
    using poly = std::vector<int>;
    auto trim = [](poly& p) {
      while (!p.empty() && p.back() == 0) p.pop_back();
    };
    auto inv_mod_p = [](int a) {
      for (int x = 1; x < (int)P; ++x)
        if ((a * x) % (int)P == 1) return x;
      return 0;
    };
    poly r0(K + 1, 0), r1(c_.begin(), c_.end());
    r0[K] = 1;
    r0[Mod::i] = (int)Mod::c1;
    r0[0] = (int)Mod::c0;
    trim(r1);
    poly s0{0}, s1{1};
    while (!(r1.size() == 1)) {
      // r0 = q*r1 + r, s updates alongside
      poly r = r0;
      poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
      const int lead_inv = inv_mod_p(r1.back());
      while (r.size() >= r1.size() && !r.empty()) {
        const int f = (r.back() * lead_inv) % (int)P;
        const std::size_t shift = r.size() - r1.size();
        q[shift] = f;
        for (std::size_t t = 0; t < r1.size(); ++t)
          r[shift + t] = ((r[shift + t] - f * r1[t]) % (int)P + (int)P) % (int)P;
        trim(r);
      }
      poly s(std::max(s0.size(), q.size() + s1.size()), 0);
      for (std::size_t t = 0; t < s0.size(); ++t) s[t] = s0[t];
      for (std::size_t a = 0; a < q.size(); ++a)
        for (std::size_t b = 0; b < s1.size(); ++b)
          s[a + b] = ((s[a + b] - q[a] * s1[b]) % (int)P + (int)P) % (int)P;
      trim(s);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    const int scale = inv_mod_p(r1[0]);
    GFp out;
    for (std::size_t t = 0; t < s1.size() && t < K; ++t) out.c_[t] = (std::uint8_t)((s1[t] * scale) % (int)P);
    return out;
  }

  // One hex digit per coefficient, highest degree first.
  std::string to_hex() const {
    std::string s = "0x";
    for (unsigned k = K; k-- > 0;) s.push_back("0123456789abcdef"[c_[k]]);
    return s;
  }

 private:
  coeffs c_;
};

}  // namespace lefschetz
