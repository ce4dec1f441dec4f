#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include "lefschetz/random_stream.hpp"
#include "lefschetz/scalar.hpp"

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

namespace lefschetz {

using u128 = unsigned __int128;

namespace detail {

// Shift-and-xor carry-less product, 4-bit windows.
inline u128 clmul64_portable(std::uint64_t a, std::uint64_t b) {
  u128 table[16];
  table[0] = 0;
  for (int i = 1; i < 16; ++i) {
    table[i] = (i & 1) ? (u128)a : 0;
    if (i & 2) table[i] ^= (u128)a << 1;
    if (i & 4) table[i] ^= (u128)a << 2;
    if (i & 8) table[i] ^= (u128)a << 3;
  }
  u128 r = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    r = (r << 4) ^ table[(b >> shift) & 15U];
  }
  return r;
}

inline u128 clmul64(std::uint64_t a, std::uint64_t b) {
#if defined(__PCLMUL__)
  const __m128i r = _mm_clmulepi64_si128(_mm_cvtsi64_si128((long long)a),
                                         _mm_cvtsi64_si128((long long)b), 0);
  const auto lo = (std::uint64_t)_mm_cvtsi128_si64(r);
  const auto hi = (std::uint64_t)_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r));
  return ((u128)hi << 64) | lo;
#else
  return clmul64_portable(a, b);
#endif
}

inline bool hardware_clmul() {
#if defined(__PCLMUL__)
  return true;
#else
  return false;
#endif
}

}  // namespace detail

// GF(2^K) for K in {32, 64, 128} in polynomial basis.
// Moduli: x^32+x^7+x^3+x^2+1, x^64+x^4+x^3+x+1, x^128+x^7+x^2+x+1.
template <unsigned K>
class GF2 {
  static_assert(K == 32 || K == 64 || K == 128, "GF2<K>: K must be 32, 64 or 128");

 public:
  using word = std::conditional_t<K == 128, u128, std::uint64_t>;
  static constexpr unsigned characteristic = 2;
  static constexpr unsigned bits = K;

  // Identifies the field for reproducibility reports.
  static std::string modulus() {
    if constexpr (K == 32) return "GF(2^32) x^32+x^7+x^3+x^2+1";
    else if constexpr (K == 64) return "GF(2^64) x^64+x^4+x^3+x+1";
    else return "GF(2^128) x^128+x^7+x^2+x+1";
  }

  constexpr GF2() = default;
  static constexpr GF2 from_bits(word w) {
    GF2 x;
    if constexpr (K == 32) {
      x.v_ = w & 0xffffffffULL;
    } else {
      x.v_ = w;
    }
    return x;
  }
  // Image of an integer: its parity.
  static constexpr GF2 from_int(long long n) { return from_bits((n & 1) ? 1 : 0); }
  static constexpr GF2 one() { return from_bits(1); }
  static constexpr GF2 zero() { return GF2{}; }

  static GF2 random(RandomStream& rs) {
    if constexpr (K == 128) {
      const u128 hi = rs.next_u64();
      return from_bits((hi << 64) | rs.next_u64());
    } else {
      return from_bits(rs.next_u64());
    }
  }

  constexpr word bits_value() const { return v_; }

  constexpr bool is_zero() const { return v_ == 0; }
  constexpr bool is_invertible() const { return v_ != 0; }

  friend constexpr GF2 operator+(GF2 a, GF2 b) { return from_bits(a.v_ ^ b.v_); }
  friend constexpr GF2 operator-(GF2 a, GF2 b) { return from_bits(a.v_ ^ b.v_); }
  constexpr GF2 operator-() const { return *this; }
  GF2& operator+=(GF2 b) {
    v_ ^= b.v_;
    return *this;
  }
  GF2& operator-=(GF2 b) {
    v_ ^= b.v_;
    return *this;
  }
  friend GF2 operator*(GF2 a, GF2 b) { return from_bits(mul(a.v_, b.v_)); }
  GF2& operator*=(GF2 b) {
    v_ = mul(v_, b.v_);
    return *this;
  }
  friend GF2 operator/(GF2 a, GF2 b) { return a * b.inv(); }
  friend constexpr bool operator==(GF2 a, GF2 b) { return a.v_ == b.v_; }
  friend constexpr bool operator<(GF2 a, GF2 b) { return a.v_ < b.v_; }

  // a^(2^K - 2) = a^{-1}
  GF2 inv() const {
    if (is_zero()) throw NotInvertible("GF2: inverse of zero");
    GF2 x = *this;
    for (unsigned i = 1; i + 1 < K; ++i) x = x * x * *this;
    return x * x;
  }

  // Unique square root (Frobenius is bijective): a^(2^(K-1)).
  GF2 sqrt() const {
    GF2 x = *this;
    for (unsigned i = 1; i < K; ++i) x = x * x;
    return x;
  }

  std::string to_hex() const {
    char buf[40];
    if constexpr (K == 32) {
      std::snprintf(buf, sizeof buf, "0x%08llx", (unsigned long long)v_);
    } else if constexpr (K == 64) {
      std::snprintf(buf, sizeof buf, "0x%016llx", (unsigned long long)v_);
    } else {
      std::snprintf(buf, sizeof buf, "0x%016llx%016llx", (unsigned long long)(v_ >> 64),
                    (unsigned long long)v_);
    }
    return buf;
  }

  static word mul(word a, word b) {
    if constexpr (K == 32) {
      return reduce32((std::uint64_t)detail::clmul64(a, b));
    } else if constexpr (K == 64) {
      return reduce64(detail::clmul64(a, b));
    } else {
      const auto a0 = (std::uint64_t)a, a1 = (std::uint64_t)(a >> 64);
      const auto b0 = (std::uint64_t)b, b1 = (std::uint64_t)(b >> 64);
      const u128 lo = detail::clmul64(a0, b0);
      const u128 hi = detail::clmul64(a1, b1);
      const u128 mid = detail::clmul64(a0 ^ a1, b0 ^ b1) ^ lo ^ hi;
      return reduce128(lo ^ (mid << 64), hi ^ (mid >> 64));
    }
  }

  // Same products computed without the hardware instruction.
  static word mul_portable(word a, word b) {
    if constexpr (K == 32) {
      return reduce32((std::uint64_t)detail::clmul64_portable(a, b));
    } else if constexpr (K == 64) {
      return reduce64(detail::clmul64_portable(a, b));
    } else {
      const auto a0 = (std::uint64_t)a, a1 = (std::uint64_t)(a >> 64);
      const auto b0 = (std::uint64_t)b, b1 = (std::uint64_t)(b >> 64);
      const u128 lo = detail::clmul64_portable(a0, b0);
      const u128 hi = detail::clmul64_portable(a1, b1);
      const u128 mid = detail::clmul64_portable(a0 ^ a1, b0 ^ b1) ^ lo ^ hi;
      return reduce128(lo ^ (mid << 64), hi ^ (mid >> 64));
    }
  }

 private:
  static std::uint64_t reduce32(std::uint64_t p) {
    // x^32 = x^7 + x^3 + x^2 + 1
    auto fold = [](std::uint64_t h) { return h ^ (h << 2) ^ (h << 3) ^ (h << 7); };
    std::uint64_t t = fold(p >> 32);
    t = fold(t >> 32) ^ (t & 0xffffffffULL);
    return (p & 0xffffffffULL) ^ t;
  }

  static std::uint64_t reduce64(u128 p) {
    // x^64 = x^4 + x^3 + x + 1
    const auto lo = (std::uint64_t)p;
    const auto hi = (std::uint64_t)(p >> 64);
    const std::uint64_t spill = (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
    const std::uint64_t low = hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
    const std::uint64_t back = spill ^ (spill << 1) ^ (spill << 3) ^ (spill << 4);
    return lo ^ low ^ back;
  }

  static u128 reduce128(u128 lo, u128 hi) {
    // x^128 = x^7 + x^2 + x + 1
    const u128 spill = (hi >> 127) ^ (hi >> 126) ^ (hi >> 121);
    const u128 low = hi ^ (hi << 1) ^ (hi << 2) ^ (hi << 7);
    const u128 back = spill ^ (spill << 1) ^ (spill << 2) ^ (spill << 7);
    return lo ^ low ^ back;
  }

  word v_ = 0;
};

using GF2_32 = GF2<32>;
using GF2_64 = GF2<64>;
using GF2_128 = GF2<128>;

}  // namespace lefschetz
