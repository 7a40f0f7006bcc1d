#include "polya/crossover.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "polya/rational.hpp"

namespace polya {

namespace {

constexpr int kTalbotNodes = 48;
// Contour radius a/u. The textbook 2M/(5u) would put the roundoff floor
// e^{ru} eps near 2e-7; a = 10 keeps it below 1e-11 while the truncation
// error stays negligible (validated against the zeta = 0 anchor).
constexpr double kTalbotScale = 10.0;

// double-double helpers for the compensated moment recursion
struct DD {
  double hi = 0, lo = 0;
};

DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  DD t = two_sum(s.hi, s.lo);
  return {t.hi, t.lo};
}

DD dd_mul(DD a, double b) {
  double p = a.hi * b;
  double err = std::fma(a.hi, b, -p);
  err += a.lo * b;
  DD t = two_sum(p, err);
  return {t.hi, t.lo};
}

}  // namespace

double crossover_density(double zeta, double u) {
  if (!(u >= 1e-3 && u <= 50.0))
    throw std::invalid_argument("crossover density validated for u in [1e-3, 50]");
  if (!(zeta >= 0.0 && zeta <= 13.5))
    throw std::invalid_argument("crossover density validated for zeta in [0, 13.5]");

  using cplx = std::complex<double>;
  const double s2u = std::sqrt(2.0 * u);
  // Transform with the branch point shifted to the origin (s -> s - 1):
  //   H(s) = sqrt(2u) exp(-(s-1) sqrt(2u) zeta / sqrt(s)) / sqrt(s)
  auto H = [&](cplx s) {
    cplx root = std::sqrt(s);
    return s2u * std::exp(-(s - 1.0) * s2u * zeta / root) / root;
  };

  const double rad = kTalbotScale / u;
  double acc = 0.5 * std::real(H(cplx(rad, 0.0))) * std::exp(rad * u);
  for (int k = 1; k < kTalbotNodes; ++k) {
    const double th = k * std::numbers::pi / kTalbotNodes;
    const double cot = std::cos(th) / std::sin(th);
    const cplx s(rad * th * cot, rad * th);
    const double sig = th + (th * cot - 1.0) * cot;
    acc += std::real(std::exp(s * u) * H(s) * cplx(1.0, sig));
  }
  double f = std::exp(-u) * rad / kTalbotNodes * acc;
  if (f < 0.0) {
    if (f < -1e-8) throw std::runtime_error("crossover density inversion went negative");
    f = 0.0;
  }
  return f;
}

double density_small_u(double zeta, double u) {
  const double lead = std::sqrt(2.0 / std::numbers::pi) * std::exp(-zeta * zeta / 2);
  return lead + (2 * zeta * std::erfc(zeta / std::sqrt(2.0)) - lead) * u;
}

double density_large_u(double zeta, double u) {
  const double x = zeta - std::sqrt(u / 2);
  return std::exp(-x * x) / std::sqrt(std::numbers::pi) *
         (1.0 + x * (2 * x * x + 1) / (4 * std::sqrt(2 * u)));
}

std::vector<double> moments_even(double u, std::size_t nmax) {
  std::vector<double> out(nmax + 1);
  BigInt fact_n = 1;     // n!
  BigInt fact_2n = 1;    // (2n)!
  BigInt pow2 = 1;       // 2^n
  for (std::size_t n = 0; n <= nmax; ++n) {
    if (n > 0) {
      fact_n *= BigInt(n);
      fact_2n *= BigInt(2 * n - 1) * BigInt(2 * n);
      pow2 *= 2;
    }
    // sum_m u^m (2n)! n! / (2^n m! (n-m)! (n+m)!)
    double acc = 0, up = 1;
    BigInt fact_m = 1, fact_nm = fact_n, fact_npm = fact_n;
    for (std::size_t m = 0; m <= n; ++m) {
      if (m > 0) {
        fact_m *= BigInt(m);
        fact_nm /= BigInt(n - m + 1);
        fact_npm *= BigInt(n + m);
      }
      acc += up * to_double(Rational(fact_2n * fact_n, pow2 * fact_m * fact_nm * fact_npm));
      up *= u;
    }
    out[n] = acc;
  }
  return out;
}

std::vector<double> moments_odd(double u, std::size_t nmax) {
  if (!(u >= 0)) throw std::invalid_argument("moments need u >= 0");
  if (2 * nmax + 1 > 12)
    throw std::invalid_argument("odd-moment recursion capped at g index 12");
  std::vector<double> out(nmax + 1);
  if (u < 1e-8) {
    // closed u -> 0 limit sqrt(2/pi) 2^n n! (the recursion loses all digits here)
    double v = std::sqrt(2.0 / std::numbers::pi);
    for (std::size_t n = 0; n <= nmax; ++n) {
      if (n > 0) v *= 2.0 * static_cast<double>(n);
      out[n] = v;
    }
    return out;
  }

  const std::size_t gmax = 2 * nmax + 1;
  std::vector<DD> g(gmax + 1);
  const double er = std::erf(std::sqrt(u));
  g[0] = {er, 0.0};
  if (gmax >= 1)
    g[1] = dd_add(dd_mul({er, 0.0}, u - 0.5),
                  {std::sqrt(u / std::numbers::pi) * std::exp(-u), 0.0});
  for (std::size_t n = 2; n <= gmax; ++n)
    g[n] = dd_add(dd_mul(g[n - 1], u - static_cast<double>(n) + 0.5),
                  dd_mul(g[n - 2], (static_cast<double>(n) - 1) * u));

  BigInt fact_2n1 = 1;  // (2n+1)!
  BigInt fact_n1 = 1;   // (n+1)!
  for (std::size_t n = 0; n <= nmax; ++n) {
    if (n > 0) {
      fact_2n1 *= BigInt(2 * n) * BigInt(2 * n + 1);
      fact_n1 *= BigInt(n + 1);
    }
    // running factorials m!, (n+1-m)!, (n+m)!; the last starts at n!
    BigInt fact_m = 1, fact_n1m = fact_n1, fact_npm = fact_n1 / BigInt(n + 1);
    DD acc{0, 0};
    for (std::size_t m = 0; m <= n + 1; ++m) {
      if (m > 0) {
        fact_m *= BigInt(m);
        fact_n1m /= BigInt(n + 2 - m);
        fact_npm *= BigInt(n + m);
      }
      const double coef = to_double(Rational(fact_2n1 * fact_n1, fact_m * fact_n1m * fact_npm));
      acc = dd_add(acc, dd_mul(g[n + m], coef));
    }
    out[n] = (acc.hi + acc.lo) / std::pow(2 * u, static_cast<double>(n) + 0.5);
  }
  return out;
}

MomentSet cumulants_gamma(double u, std::size_t kmax) {
  if (!(u > 0)) throw std::invalid_argument("cumulants need u > 0");
  MomentSet set;
  set.u = u;
  set.mu.assign(kmax + 1, 0.0);
  set.gamma.assign(kmax + 1, 0.0);
  set.mu[0] = 1.0;
  auto even = moments_even(u, kmax / 2);
  auto odd = kmax >= 1 ? moments_odd(u, (kmax - 1) / 2) : std::vector<double>{};
  for (std::size_t k = 1; k <= kmax; ++k) set.mu[k] = k % 2 ? odd[k / 2] : even[k / 2];

  // moment-to-cumulant triangular relations
  for (std::size_t k = 1; k <= kmax; ++k) {
    double acc = set.mu[k];
    double binom = 1;  // C(k-1, j-1)
    for (std::size_t j = 1; j < k; ++j) {
      acc -= binom * set.gamma[j] * set.mu[k - j];
      binom = binom * static_cast<double>(k - 1 - (j - 1)) / static_cast<double>(j);
    }
    set.gamma[k] = acc;
  }
  return set;
}

double occupancy_scaling(double u) {
  if (!(u >= 0)) throw std::invalid_argument("occupancy scaling needs u >= 0");
  return std::sqrt(u) * std::erf(std::sqrt(u)) / std::sqrt(2.0) +
         std::exp(-u) / std::sqrt(2 * std::numbers::pi);
}

}  // namespace polya
