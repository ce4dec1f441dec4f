#pragma once

#include <concepts>
#include <stdexcept>
#include <string>

namespace lefschetz {

// Minimal interface every coefficient domain provides. S{} is zero.
template <class S>
concept Scalar = std::copy_constructible<S> && std::default_initializable<S> &&
                 requires(const S a, const S b) {
                   { a + b } -> std::convertible_to<S>;
                   { a - b } -> std::convertible_to<S>;
                   { a * b } -> std::convertible_to<S>;
                   { -a } -> std::convertible_to<S>;
                   { a == b } -> std::convertible_to<bool>;
                   { a.is_zero() } -> std::convertible_to<bool>;
                   { a.is_invertible() } -> std::convertible_to<bool>;
                   { a.inv() } -> std::convertible_to<S>;
                   { S::one() } -> std::convertible_to<S>;
                 };

// Finite fields additionally expose their characteristic and a hex encoding.
template <class F>
concept FiniteField = Scalar<F> && requires(const F a) {
  { F::characteristic } -> std::convertible_to<unsigned>;
  { a.to_hex() } -> std::convertible_to<std::string>;
};

class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <Scalar S>
S power(S base, unsigned long long e) {
  S result = S::one();
  while (e) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

}  // namespace lefschetz
