#ifndef POLYA_SERIES_HPP
#define POLYA_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polya/rational.hpp"

namespace polya {

/// Power series truncated at a fixed inclusive order.
///
/// The coefficient field F is fixed at compile time (exact rationals,
/// doubles, or a quadratic extension); series over different fields cannot
/// be mixed. All operations are pure and return new values.
template <class F>
class Series {
 public:
  Series(std::size_t order, F zero) : c_(order + 1, std::move(zero)) {}

  static Series from_coeffs(std::vector<F> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("series needs at least the constant term");
    Series s(coeffs.size() - 1, coeffs.front());
    s.c_ = std::move(coeffs);
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const F& operator[](std::size_t n) const { return c_[n]; }
  F& operator[](std::size_t n) { return c_[n]; }
  const std::vector<F>& coeffs() const { return c_; }

  /// Witness value carrying field context (used to mint constants).
  const F& witness() const { return c_[0]; }

 private:
  std::vector<F> c_;
};

namespace detail {
template <class F>
void require_same_order(const Series<F>& a, const Series<F>& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series order mismatch: " + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()));
}
}  // namespace detail

template <class F>
Series<F> series_constant(std::size_t order, const F& value) {
  Series<F> s(order, field_zero(value));
  s[0] = value;
  return s;
}

/// The monomial c * x^k.
template <class F>
Series<F> series_monomial(std::size_t order, std::size_t k, const F& c) {
  Series<F> s(order, field_zero(c));
  if (k <= order) s[k] = c;
  return s;
}

template <class F>
Series<F> operator+(const Series<F>& a, const Series<F>& b) {
  detail::require_same_order(a, b);
  Series<F> out = a;
  for (std::size_t n = 0; n <= a.order(); ++n) out[n] = a[n] + b[n];
  return out;
}

template <class F>
Series<F> operator-(const Series<F>& a, const Series<F>& b) {
  detail::require_same_order(a, b);
  Series<F> out = a;
  for (std::size_t n = 0; n <= a.order(); ++n) out[n] = a[n] - b[n];
  return out;
}

/// Cauchy product truncated to the common order. Plain O(n^2) convolution.
template <class F>
Series<F> operator*(const Series<F>& a, const Series<F>& b) {
  detail::require_same_order(a, b);
  Series<F> out(a.order(), field_zero(a.witness()));
  for (std::size_t i = 0; i <= a.order(); ++i) {
    if (field_is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j <= a.order(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

/// Long division; requires an invertible (nonzero) constant term in b.
template <class F>
Series<F> operator/(const Series<F>& a, const Series<F>& b) {
  detail::require_same_order(a, b);
  if (field_is_zero(b[0])) throw std::domain_error("series division by zero constant term");
  Series<F> q(a.order(), field_zero(a.witness()));
  for (std::size_t n = 0; n <= a.order(); ++n) {
    F acc = a[n];
    for (std::size_t j = 1; j <= n; ++j) acc = acc - b[j] * q[n - j];
    q[n] = acc / b[0];
  }
  return q;
}

template <class F>
Series<F> operator*(const F& c, const Series<F>& a) {
  Series<F> out = a;
  for (std::size_t n = 0; n <= a.order(); ++n) out[n] = c * a[n];
  return out;
}

/// Coefficient n multiplied by c^n (substitutes x -> c x).
template <class F>
Series<F> series_rescale(const Series<F>& a, const F& c) {
  Series<F> out = a;
  F p = field_one(a.witness());
  for (std::size_t n = 1; n <= a.order(); ++n) {
    p = p * c;
    out[n] = a[n] * p;
  }
  return out;
}

/// Square root by Newton iteration with order doubling.
///
/// The constant term must be positive; in the exact field it must in
/// addition be a perfect rational square (e.g. 1), otherwise the result
/// would leave the field.
template <class F>
Series<F> series_sqrt(const Series<F>& a) {
  const F y0 = field_sqrt(a[0]);  // throws on nonpositive / non-square constant
  const F half = field_one(a.witness()) / field_from_int(a.witness(), 2);
  std::size_t k = 0;  // current truncation, doubled each pass
  Series<F> y = series_constant<F>(0, y0);
  while (k < a.order()) {
    k = std::min(2 * k + 1, a.order());
    Series<F> ak(k, field_zero(a.witness()));
    for (std::size_t n = 0; n <= k; ++n) ak[n] = a[n];
    Series<F> yk(k, field_zero(a.witness()));
    for (std::size_t n = 0; n <= y.order(); ++n) yk[n] = y[n];
    y = half * (yk + ak / yk);
  }
  return y;
}

template <class F>
Series<F> series_derivative(const Series<F>& a) {
  Series<F> out(a.order(), field_zero(a.witness()));
  for (std::size_t n = 1; n <= a.order(); ++n)
    out[n - 1] = field_from_int(a.witness(), static_cast<long long>(n)) * a[n];
  return out;
}

/// Antiderivative with zero constant term; drops the top derivative slot.
template <class F>
Series<F> series_antiderivative(const Series<F>& a) {
  Series<F> out(a.order(), field_zero(a.witness()));
  for (std::size_t n = 1; n <= a.order(); ++n)
    out[n] = a[n - 1] / field_from_int(a.witness(), static_cast<long long>(n));
  return out;
}

/// log(a) for a series with constant term exactly 1: integrate a'/a.
template <class F>
Series<F> series_log(const Series<F>& a) {
  if (!field_is_zero(a[0] - field_one(a.witness())))
    throw std::domain_error("series log requires constant term 1");
  return series_antiderivative(series_derivative(a) / a);
}

/// exp(a) for a series with zero constant term, via e' = a' e.
template <class F>
Series<F> series_exp(const Series<F>& a) {
  if (!field_is_zero(a[0])) throw std::domain_error("series exp requires zero constant term");
  Series<F> e(a.order(), field_zero(a.witness()));
  e[0] = field_one(a.witness());
  for (std::size_t n = 1; n <= a.order(); ++n) {
    F acc = field_zero(a.witness());
    for (std::size_t k = 1; k <= n; ++k)
      acc = acc + field_from_int(a.witness(), static_cast<long long>(k)) * a[k] * e[n - k];
    e[n] = acc / field_from_int(a.witness(), static_cast<long long>(n));
  }
  return e;
}

}  // namespace polya

#endif
