#ifndef POLYA_CUMULANTS_LDF_HPP
#define POLYA_CUMULANTS_LDF_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "polya/bivariate_series.hpp"
#include "polya/quadratic_field.hpp"
#include "polya/reset_params.hpp"
#include "polya/spectral.hpp"

namespace polya {

/// Entropy expansion around the origin of tilts to total order K, over any
/// coefficient field. Solves the cubic's physical branch as a bivariate
/// series by Newton iteration on the unsquared denominator equation
/// G(w) = (1-bw)(1-z) + sqrt(1-bw^2)((1-bw)z - r y w), bw = (1-r)w,
/// whose root is simple at the expansion point (the cubic itself has a
/// double root there), then takes S = -log w.
template <class F>
BiSeries<F> entropy_series_core(const F& r, std::size_t total_order) {
  const std::size_t k = total_order;
  const F one = field_one(r), zero = field_zero(r);
  const F omr = one - r;

  const auto z = bi_exp_var(k, true, r);
  const auto y = bi_exp_var(k, false, r);
  const auto cone = BiSeries<F>::constant(k, one);

  auto G_of = [&](const BiSeries<F>& w) {
    auto bw = omr * w;
    auto Q = bi_sqrt(cone - bw * bw);
    return (cone - bw) * (cone - z) + Q * ((cone - bw) * z - r * (y * w));
  };
  auto Gw_of = [&](const BiSeries<F>& w) {
    auto bw = omr * w;
    auto H = cone - bw * bw;
    auto Q = bi_sqrt(H);
    auto Qp = ((zero - omr) * bw) / Q;  // dQ/dw
    return (zero - omr) * (cone - z) + Qp * ((cone - bw) * z - r * (y * w)) +
           Q * ((zero - omr) * z - r * y);
  };

  auto w = BiSeries<F>::constant(k, one);
  std::size_t correct = 1;
  while (correct <= k) {
    w = w - G_of(w) / Gw_of(w);
    correct *= 2;
  }
  return BiSeries<F>(k, zero) - bi_log(w);
}

/// Bivariate entropy expansion with double coefficients; runs in the exact
/// rational field (extended by A = sqrt(r/(2-r)) when needed) for exact r,
/// in floating point otherwise.
struct BivariateSeriesD {
  std::size_t total_order = 0;
  std::vector<std::vector<double>> coeffs;  // coeffs[i][j], i+j <= total_order
  double coeff(std::size_t i, std::size_t j) const { return coeffs[i][j]; }
};

BivariateSeriesD entropy_series(const ResetParams& params, std::size_t total_order);

/// Cumulant amplitudes: c[(k,l)] rate of the joint cumulant of (crosses,
/// dots); C[n] rate of the n-th cumulant of their sum.
struct CumulantTable {
  double r = 0;
  std::size_t order = 0;
  std::map<std::pair<int, int>, double> c;
  std::map<int, double> C;
};

/// Amplitudes extracted from entropy_series (c_{k,l} = k! l! coeff).
CumulantTable cumulant_table(const ResetParams& params, std::size_t total_order);

/// The printed closed forms, linear in A with rational-in-r coefficients
/// (orders <= 3).
CumulantTable closed_form_cumulants(const ResetParams& params);

/// Dot cumulant amplitudes c_{0,l}, l = 1..lmax, from the Stirling-number
/// formula sum_k (-1)^(k-1) (k-1)! S2(l,k) r^k.
std::vector<double> reset_cumulants(const ResetParams& params, std::size_t lmax);

/// Same amplitudes as exact polynomials in r (coefficient vectors, index =
/// power of r), generated by the derivative recursion
/// c_{0,l+1} = r(1-r) d/dr c_{0,l}.
std::vector<std::vector<Rational>> reset_cumulant_polynomials(std::size_t lmax);

/// Stirling-formula route as exact polynomials in r, for symbolic comparison.
std::vector<std::vector<Rational>> reset_cumulant_polynomials_stirling(std::size_t lmax);

/// Weak-resetting scaling function F(h, mu) of the entropy,
/// S(lambda, mu) ~ A^2 F(lambda/A, mu) as r -> 0.
double weak_reset_scaling(double h, double mu);

/// Amplitudes a_p of the odd-tilt expansion sqrt(1 + x/16) = sum a_p x^p/(2p+1)!.
std::vector<double> weak_reset_amplitudes(std::size_t pmax);

/// One point of a large-deviation function.
struct LdfPoint {
  double rate = 0;          // I >= 0, zero exactly at the mean densities
  double lambda = 0;        // conjugate tilt(s) at the optimum
  double mu = 0;
  bool boundary = false;    // value reported from a closed-form limit
};

/// Bivariate rate function I(xi, eta) at a point strictly inside the
/// triangle {xi >= 0, eta >= 0, 2 xi + eta <= 1}.
LdfPoint legendre_joint(const ResetParams& params, double xi, double eta);

enum class Marginal { dot, cross, sum };

/// Univariate rate functions: dot (closed binomial form), cross and sum
/// (bracketed monotone root finding on the entropy gradient).
LdfPoint legendre_univariate(const ResetParams& params, Marginal which, double arg);

/// Generic scalar Legendre solver applied to the dot direction; the closed
/// form exists, so this is a consistency route through the cubic.
LdfPoint legendre_dot_numeric(const ResetParams& params, double eta);

struct BoundaryValues {
  double I_A = 0;  // empty system: -ln(1-r)
  double I_B = 0;  // maximal cross density: -ln(1-r) + ln(2)/2
  double I_C = 0;  // a reset every step: -ln r
};

BoundaryValues boundary_values(const ResetParams& params);

}  // namespace polya

#endif
