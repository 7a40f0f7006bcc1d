#ifndef POLYA_BIVARIATE_SERIES_HPP
#define POLYA_BIVARIATE_SERIES_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polya/rational.hpp"

namespace polya {

/// Double power series in the tilt variables, truncated at total order K:
/// coefficients c[i][j] of lambda^i mu^j with i + j <= K.
template <class F>
class BiSeries {
 public:
  BiSeries(std::size_t total_order, F zero)
      : k_(total_order), c_((total_order + 1) * (total_order + 1), std::move(zero)) {}

  std::size_t total_order() const { return k_; }
  const F& at(std::size_t i, std::size_t j) const { return c_[i * (k_ + 1) + j]; }
  F& at(std::size_t i, std::size_t j) { return c_[i * (k_ + 1) + j]; }
  const F& witness() const { return c_[0]; }

  static BiSeries constant(std::size_t total_order, const F& value) {
    BiSeries s(total_order, field_zero(value));
    s.at(0, 0) = value;
    return s;
  }

 private:
  std::size_t k_;
  std::vector<F> c_;
};

namespace detail {
template <class F>
void require_same_order(const BiSeries<F>& a, const BiSeries<F>& b) {
  if (a.total_order() != b.total_order())
    throw std::invalid_argument("bivariate series order mismatch");
}
}  // namespace detail

template <class F>
BiSeries<F> operator+(const BiSeries<F>& a, const BiSeries<F>& b) {
  detail::require_same_order(a, b);
  BiSeries<F> out = a;
  const std::size_t k = a.total_order();
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; i + j <= k; ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

template <class F>
BiSeries<F> operator-(const BiSeries<F>& a, const BiSeries<F>& b) {
  detail::require_same_order(a, b);
  BiSeries<F> out = a;
  const std::size_t k = a.total_order();
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; i + j <= k; ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
  return out;
}

template <class F>
BiSeries<F> operator*(const BiSeries<F>& a, const BiSeries<F>& b) {
  detail::require_same_order(a, b);
  const std::size_t k = a.total_order();
  BiSeries<F> out(k, field_zero(a.witness()));
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; i + j <= k; ++j) {
      const F& v = a.at(i, j);
      if (field_is_zero(v)) continue;
      for (std::size_t p = 0; i + j + p <= k; ++p)
        for (std::size_t q = 0; i + j + p + q <= k; ++q)
          out.at(i + p, j + q) = out.at(i + p, j + q) + v * b.at(p, q);
    }
  return out;
}

template <class F>
BiSeries<F> operator*(const F& c, const BiSeries<F>& a) {
  BiSeries<F> out = a;
  const std::size_t k = a.total_order();
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; i + j <= k; ++j) out.at(i, j) = c * a.at(i, j);
  return out;
}

/// Reciprocal by Newton iteration x <- x(2 - a x); needs invertible a(0,0).
template <class F>
BiSeries<F> bi_inverse(const BiSeries<F>& a) {
  if (field_is_zero(a.at(0, 0)))
    throw std::domain_error("bivariate reciprocal of a series with zero constant term");
  const std::size_t k = a.total_order();
  const F one = field_one(a.witness());
  auto two = BiSeries<F>::constant(k, one + one);
  auto x = BiSeries<F>::constant(k, one / a.at(0, 0));
  std::size_t correct = 1;
  while (correct <= k) {
    x = x * (two - a * x);
    correct *= 2;
  }
  return x;
}

template <class F>
BiSeries<F> operator/(const BiSeries<F>& a, const BiSeries<F>& b) {
  return a * bi_inverse(b);
}

/// Square root by Newton iteration; constant term must have a sqrt in F.
template <class F>
BiSeries<F> bi_sqrt(const BiSeries<F>& a) {
  const std::size_t k = a.total_order();
  const F one = field_one(a.witness());
  const F half = one / (one + one);
  auto y = BiSeries<F>::constant(k, field_sqrt(a.at(0, 0)));
  std::size_t correct = 1;
  while (correct <= k) {
    y = half * (y + a / y);
    correct *= 2;
  }
  return y;
}

/// log of a series with constant term exactly 1.
template <class F>
BiSeries<F> bi_log(const BiSeries<F>& a) {
  const std::size_t k = a.total_order();
  const F one = field_one(a.witness());
  if (!field_is_zero(a.at(0, 0) - one))
    throw std::domain_error("bivariate log requires constant term 1");
  auto h = a - BiSeries<F>::constant(k, one);
  auto out = BiSeries<F>(k, field_zero(a.witness()));
  auto term = BiSeries<F>::constant(k, one);
  for (std::size_t n = 1; n <= k; ++n) {
    term = term * h;
    const F coef = (n % 2 ? one : field_zero(one) - one) / field_from_int(one, static_cast<long long>(n));
    out = out + coef * term;
  }
  return out;
}

/// exp(lambda) or exp(mu) as a bivariate series.
template <class F>
BiSeries<F> bi_exp_var(std::size_t total_order, bool lambda_var, const F& like) {
  BiSeries<F> s(total_order, field_zero(like));
  F fact = field_one(like);
  for (std::size_t n = 0; n <= total_order; ++n) {
    if (n > 0) fact = fact * field_from_int(like, static_cast<long long>(n));
    const F coef = field_one(like) / fact;
    if (lambda_var)
      s.at(n, 0) = coef;
    else
      s.at(0, n) = coef;
  }
  return s;
}

}  // namespace polya

#endif
