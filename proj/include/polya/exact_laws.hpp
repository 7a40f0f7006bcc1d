#ifndef POLYA_EXACT_LAWS_HPP
#define POLYA_EXACT_LAWS_HPP

#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include "polya/reset_params.hpp"
#include "polya/series.hpp"

namespace polya {

// Generating functions used throughout: the first-return distribution of the
// symmetric lattice walk has rho(z) = 1 - sqrt(1-z^2), the survival
// probability has R(z) = (1-rho(z))/(1-z), and resetting multiplies the time
// variable by (1-r) inside these ("w-breve" substitution).

/// Binomial probabilities b_n = C(2n,n)/4^n, n = 0..nmax.
template <class F>
std::vector<F> binomial_probs(std::size_t nmax, const F& like) {
  std::vector<F> b(nmax + 1, field_one(like));
  for (std::size_t n = 1; n <= nmax; ++n)
    b[n] = b[n - 1] * field_from_int(like, 2 * static_cast<long long>(n) - 1) /
           field_from_int(like, 2 * static_cast<long long>(n));
  return b;
}

/// First-return generating function 1 - sqrt(1-w^2) as a truncated series.
template <class F>
Series<F> first_return_series(std::size_t order, const F& like) {
  const F one = field_one(like);
  Series<F> arg = series_constant(order, one);
  if (order >= 2) arg[2] = field_zero(like) - one;  // 1 - w^2
  return series_constant(order, one) - series_sqrt(arg);
}

/// Survival generating function (1-rho(w))/(1-w).
template <class F>
Series<F> survival_series(std::size_t order, const F& like) {
  const F one = field_one(like);
  Series<F> one_minus_w = series_constant(order, one);
  if (order >= 1) one_minus_w[1] = field_zero(like) - one;
  return (series_constant(order, one) - first_return_series(order, like)) / one_minus_w;
}

template <class F>
struct ReturnLaw {
  std::vector<F> pmf;       // rho(tau), tau = 0..tau_max
  std::vector<F> survival;  // R(tau)
};

/// Exact first-return law: rho(2n) = b_n/(2n-1), R(2n) = R(2n+1) = b_n.
template <class F>
ReturnLaw<F> return_law(std::size_t tau_max) {
  const F like = field_one(F{});
  ReturnLaw<F> law;
  law.pmf.assign(tau_max + 1, field_zero(like));
  law.survival.assign(tau_max + 1, field_zero(like));
  auto b = binomial_probs<F>(tau_max / 2 + 1, like);
  law.survival[0] = field_one(like);
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    std::size_t n = tau / 2;
    if (tau % 2 == 0)
      law.pmf[tau] = b[n] / field_from_int(like, 2 * static_cast<long long>(n) - 1);
    law.survival[tau] = b[n];
  }
  return law;
}

/// Distribution p_n(t) of the number of returns up to time t, n = 0..t/2.
/// Extracted from rho(w)^n R(w).
template <class F>
std::vector<F> count_distribution(std::size_t t) {
  const F like = field_one(F{});
  auto rho = first_return_series<F>(t, like);
  auto acc = survival_series<F>(t, like);
  std::vector<F> p;
  p.reserve(t / 2 + 1);
  p.push_back(acc[t]);
  for (std::size_t n = 1; n <= t / 2; ++n) {
    acc = acc * rho;
    p.push_back(acc[t]);
  }
  return p;
}

/// Mean number of returns <N_t> = (2n+1) b_n - 1 for t in {2n, 2n+1}.
template <class F>
std::vector<F> mean_returns(std::size_t tmax) {
  const F like = field_one(F{});
  auto b = binomial_probs<F>(tmax / 2 + 1, like);
  std::vector<F> m(tmax + 1, field_zero(like));
  for (std::size_t t = 0; t <= tmax; ++t) {
    std::size_t n = t / 2;
    m[t] = field_from_int(like, 2 * static_cast<long long>(n) + 1) * b[n] - field_one(like);
  }
  return m;
}

/// Probability matrix P[k][m] = P(returns = k, resets = m) at time t.
template <class F>
struct JointLaw {
  std::size_t t = 0;
  std::vector<std::vector<F>> probs;  // (t/2+1) x (t+1)
};

namespace detail {

// Dense polynomial in (z,y) with per-object degree bounds; the joint-law
// extraction keeps the w^n coefficient at degrees (n/2, n).
template <class F>
struct ZYPoly {
  std::size_t zdeg = 0, ydeg = 0;
  std::vector<F> c;

  ZYPoly(std::size_t zd, std::size_t yd, const F& zero)
      : zdeg(zd), ydeg(yd), c((zd + 1) * (yd + 1), zero) {}
  F& at(std::size_t k, std::size_t m) { return c[k * (ydeg + 1) + m]; }
  const F& at(std::size_t k, std::size_t m) const { return c[k * (ydeg + 1) + m]; }
};

}  // namespace detail

/// Joint law of spontaneous returns (crosses) and resets (dots), by
/// coefficient extraction in w of N / (D - r y w N) with
/// N = 1 - rho(w-breve), D = (1 - w-breve)(1 - z rho(w-breve)).
template <class F>
JointLaw<F> joint_law(const ResetParams& params, std::size_t t) {
  constexpr std::size_t budget = std::is_same_v<F, Rational> ? 64 : 256;
  if (t > budget) throw std::invalid_argument("joint_law horizon exceeds field budget");
  const F like = field_one(F{});
  const F r = params.as<F>();
  const F one = field_one(like), zero = field_zero(like);
  const F omr = one - r;

  auto rho_b = series_rescale(first_return_series<F>(t, like), omr);

  // N[j], and the z/y-linear divisor E[j] = e0[j] + e_z[j] z + e_y[j] y.
  std::vector<F> nn(t + 1, zero), e0(t + 1, zero), ez(t + 1, zero), ey(t + 1, zero);
  for (std::size_t j = 0; j <= t; ++j) nn[j] = (j == 0 ? one : zero) - rho_b[j];
  // D = (1 - (1-r) w)(1 - z rho_b(w))
  for (std::size_t j = 0; j <= t; ++j) {
    e0[j] = j == 0 ? one : (j == 1 ? zero - omr : zero);
    ez[j] = zero - rho_b[j];
    if (j >= 1) ez[j] = ez[j] + omr * rho_b[j - 1];
    if (j >= 1) ey[j] = zero - r * nn[j - 1];
  }

  // Quotient coefficients Q[n], z-degree <= n/2, y-degree <= n.
  std::vector<detail::ZYPoly<F>> q;
  q.reserve(t + 1);
  for (std::size_t n = 0; n <= t; ++n) {
    detail::ZYPoly<F> qn(n / 2, n, zero);
    qn.at(0, 0) = nn[n];
    for (std::size_t j = 1; j <= n; ++j) {
      const auto& prev = q[n - j];
      for (std::size_t k = 0; k <= prev.zdeg; ++k)
        for (std::size_t m = 0; m <= prev.ydeg; ++m) {
          const F& v = prev.at(k, m);
          if (field_is_zero(v)) continue;
          if (!field_is_zero(e0[j])) qn.at(k, m) = qn.at(k, m) - e0[j] * v;
          if (!field_is_zero(ez[j]) && k + 1 <= qn.zdeg)
            qn.at(k + 1, m) = qn.at(k + 1, m) - ez[j] * v;
          if (!field_is_zero(ey[j])) qn.at(k, m + 1) = qn.at(k, m + 1) - ey[j] * v;
        }
    }
    q.push_back(std::move(qn));  // divisor constant term is exactly 1
  }

  JointLaw<F> law;
  law.t = t;
  law.probs.assign(t / 2 + 1, std::vector<F>(t + 1, zero));
  const auto& top = q[t];
  for (std::size_t k = 0; k <= top.zdeg; ++k)
    for (std::size_t m = 0; m <= top.ydeg; ++m) law.probs[k][m] = top.at(k, m);
  return law;
}

/// Interarrival law of spontaneous returns in the presence of resetting.
template <class F>
struct DressedLaw {
  std::vector<F> pmf;       // rho^(r)(tau)
  std::vector<F> survival;  // R^(r)(tau)
  double mean_return = 0;   // 1/A_cross; +inf at r = 0
};

/// Dressed renewal distribution: pmf from
/// (1-w-breve) rho(w-breve) / (1 - w + r w rho(w-breve)), survival from the
/// companion identity R^(r)(w) = R(w-breve) / (1 - r w R(w-breve)).
template <class F>
DressedLaw<F> dressed_law(const ResetParams& params, std::size_t tau_max) {
  if (params.value() >= 1.0)
    throw std::invalid_argument("dressed law is defective at r = 1 (no spontaneous returns)");
  const F like = field_one(F{});
  const F r = params.as<F>();
  const F one = field_one(like), zero = field_zero(like);
  const F omr = one - r;
  const std::size_t n = tau_max;

  auto rho_b = series_rescale(first_return_series<F>(n, like), omr);
  Series<F> one_minus_wb = series_constant(n, one);
  if (n >= 1) one_minus_wb[1] = zero - omr;
  Series<F> den(n, zero);
  den[0] = one;
  if (n >= 1) den[1] = zero - one;
  for (std::size_t j = 1; j <= n; ++j) den[j] = den[j] + r * rho_b[j - 1];

  DressedLaw<F> law;
  law.pmf = ((one_minus_wb * rho_b) / den).coeffs();

  auto surv_b = series_rescale(survival_series<F>(n, like), omr);
  Series<F> sden(n, zero);
  sden[0] = one;
  for (std::size_t j = 1; j <= n; ++j) sden[j] = zero - r * surv_b[j - 1];
  law.survival = (surv_b / sden).coeffs();

  const double rv = params.value();
  const double across = std::sqrt(rv / (2.0 - rv)) - rv;
  law.mean_return = across > 0 ? 1.0 / across : std::numeric_limits<double>::infinity();
  return law;
}

/// Mean number of crosses <N^x_t>, t = 0..tmax, from
/// (1-w-breve) rho(w-breve) / ((1-w)^2 (1 - rho(w-breve))).
template <class F>
std::vector<F> mean_crosses(const ResetParams& params, std::size_t tmax) {
  const F like = field_one(F{});
  const F r = params.as<F>();
  const F one = field_one(like), zero = field_zero(like);
  const F omr = one - r;
  const std::size_t n = tmax;

  auto rho_b = series_rescale(first_return_series<F>(n, like), omr);
  Series<F> one_minus_wb = series_constant(n, one);
  if (n >= 1) one_minus_wb[1] = zero - omr;
  Series<F> one_minus_w = series_constant(n, one);
  if (n >= 1) one_minus_w[1] = zero - one;
  auto num = one_minus_wb * rho_b;
  auto den = one_minus_w * one_minus_w * (series_constant(n, one) - rho_b);
  return (num / den).coeffs();
}

template <class F>
struct Occupancy {
  std::vector<F> bare;   // U(t): probability of a return at time t, r = 0
  std::vector<F> reset;  // U^(r)(t)
};

/// Occupancy probabilities from the renewal identities U = 1/(1-rho),
/// U^(r) = 1/(1-rho^(r)).
template <class F>
Occupancy<F> occupancy(const ResetParams& params, std::size_t tmax) {
  const F like = field_one(F{});
  const F one = field_one(like);
  Occupancy<F> occ;
  auto rho = first_return_series<F>(tmax, like);
  occ.bare = (series_constant(tmax, one) / (series_constant(tmax, one) - rho)).coeffs();
  if (params.value() >= 1.0) {
    // every step resets: a single occupancy at t = 0, never a cross after
    occ.reset.assign(tmax + 1, field_zero(like));
    occ.reset[0] = one;
    return occ;
  }
  auto dressed = dressed_law<F>(params, tmax);
  auto rho_r = Series<F>::from_coeffs(dressed.pmf);
  occ.reset = (series_constant(tmax, one) / (series_constant(tmax, one) - rho_r)).coeffs();
  return occ;
}

}  // namespace polya

#endif
