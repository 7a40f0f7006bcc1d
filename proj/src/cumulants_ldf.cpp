#include "polya/cumulants_ldf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace polya {

namespace {

std::vector<std::vector<double>> to_double_table(std::size_t k, const auto& series) {
  std::vector<std::vector<double>> out(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    out[i].resize(k + 1 - i, 0.0);
    for (std::size_t j = 0; i + j <= k; ++j) out[i][j] = to_double(series.at(i, j));
  }
  return out;
}

void require_interior_r(const ResetParams& params, const char* what) {
  if (!(params.value() > 0.0 && params.value() < 1.0))
    throw std::invalid_argument(std::string(what) + " requires 0 < r < 1");
}

}  // namespace

BivariateSeriesD entropy_series(const ResetParams& params, std::size_t total_order) {
  require_interior_r(params, "entropy_series");
  if (total_order > 12) throw std::invalid_argument("entropy expansion order capped at 12");
  BivariateSeriesD out;
  out.total_order = total_order;
  if (params.is_exact()) {
    const Rational r = params.exact();
    const Rational s = r / (2 - r);
    if (rational_sqrt(s)) {
      out.coeffs = to_double_table(total_order, entropy_series_core<Rational>(r, total_order));
    } else {
      QuadExt rq(r, Rational(0), s);
      out.coeffs = to_double_table(total_order, entropy_series_core<QuadExt>(rq, total_order));
    }
  } else {
    out.coeffs =
        to_double_table(total_order, entropy_series_core<double>(params.value(), total_order));
  }
  return out;
}

CumulantTable cumulant_table(const ResetParams& params, std::size_t total_order) {
  const auto series = entropy_series(params, total_order);
  CumulantTable tab;
  tab.r = params.value();
  tab.order = total_order;
  double fact_i = 1;
  for (std::size_t i = 0; i <= total_order; ++i) {
    if (i > 0) fact_i *= static_cast<double>(i);
    double fact_j = 1;
    for (std::size_t j = 0; i + j <= total_order; ++j) {
      if (j > 0) fact_j *= static_cast<double>(j);
      if (i + j == 0) continue;
      tab.c[{static_cast<int>(i), static_cast<int>(j)}] = fact_i * fact_j * series.coeff(i, j);
    }
  }
  for (std::size_t n = 1; n <= total_order; ++n) {
    double cn = 0, binom = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      cn += binom * tab.c[{static_cast<int>(k), static_cast<int>(n - k)}];
      binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    tab.C[static_cast<int>(n)] = cn;
  }
  return tab;
}

CumulantTable closed_form_cumulants(const ResetParams& params) {
  const double r = params.value();
  const double A = std::sqrt(r / (2 - r));
  const double d = 2 - r;
  CumulantTable tab;
  tab.r = r;
  tab.order = 3;
  tab.c[{1, 0}] = A - r;
  tab.c[{0, 1}] = r;
  tab.c[{2, 0}] = -(4 - 3 * r) / d * A +
                  (2 + 4 * r - 9 * r * r + 5 * r * r * r - r * r * r * r) / (d * d);
  tab.c[{1, 1}] = (1 - r) / d * A - r * (1 - r);
  tab.c[{0, 2}] = r * (1 - r);
  tab.c[{3, 0}] =
      (3 + 38 * r - 76 * r * r + 46 * std::pow(r, 3) - 8 * std::pow(r, 4)) / (r * d * d * d) * A -
      (12 + 14 * r - 66 * r * r + 73 * std::pow(r, 3) - 43 * std::pow(r, 4) +
       15 * std::pow(r, 5) - 2 * std::pow(r, 6)) /
          (d * d * d);
  tab.c[{2, 1}] = -(1 - r) * (4 - 5 * r) / (d * d) * A +
                  r * (1 - r) *
                      (12 - 32 * r + 30 * r * r - 13 * std::pow(r, 3) + 2 * std::pow(r, 4)) /
                      (d * d * d);
  tab.c[{1, 2}] = (1 - r) * (1 - 2 * r) / (d * d) * A - r * (1 - r) * (1 - 2 * r);
  tab.c[{0, 3}] = r * (1 - r) * (1 - 2 * r);
  tab.C[1] = A;
  tab.C[2] = -A + (2 - r * r) / (d * d);
  tab.C[3] = (3 + 20 * r - 31 * r * r + 10 * std::pow(r, 3) + std::pow(r, 4)) / (r * d * d * d) * A -
             3 * (2 - r * r) / (d * d);
  return tab;
}

namespace {

// Stirling numbers of the second kind S2(l,k), exact.
std::vector<std::vector<BigInt>> stirling2_table(std::size_t lmax) {
  std::vector<std::vector<BigInt>> s(lmax + 1, std::vector<BigInt>(lmax + 1, BigInt(0)));
  s[0][0] = 1;
  for (std::size_t l = 1; l <= lmax; ++l)
    for (std::size_t k = 1; k <= l; ++k) s[l][k] = BigInt(k) * s[l - 1][k] + s[l - 1][k - 1];
  return s;
}

}  // namespace

std::vector<std::vector<Rational>> reset_cumulant_polynomials_stirling(std::size_t lmax) {
  auto s2 = stirling2_table(lmax);
  std::vector<std::vector<Rational>> polys(lmax + 1);
  for (std::size_t l = 1; l <= lmax; ++l) {
    std::vector<Rational> poly(l + 1, Rational(0));
    BigInt fact = 1;  // (k-1)!
    for (std::size_t k = 1; k <= l; ++k) {
      if (k > 1) fact *= BigInt(k - 1);
      Rational term(fact * s2[l][k]);
      poly[k] = (k % 2 ? term : -term);
    }
    polys[l] = std::move(poly);
  }
  return polys;
}

std::vector<std::vector<Rational>> reset_cumulant_polynomials(std::size_t lmax) {
  std::vector<std::vector<Rational>> polys(lmax + 1);
  if (lmax >= 1) polys[1] = {Rational(0), Rational(1)};  // c_{0,1} = r
  for (std::size_t l = 1; l + 1 <= lmax; ++l) {
    const auto& p = polys[l];
    // derivative
    std::vector<Rational> dp(p.size() > 1 ? p.size() - 1 : 1, Rational(0));
    for (std::size_t n = 1; n < p.size(); ++n) dp[n - 1] = Rational(n) * p[n];
    // multiply by r(1-r) = r - r^2
    std::vector<Rational> next(dp.size() + 2, Rational(0));
    for (std::size_t n = 0; n < dp.size(); ++n) {
      next[n + 1] += dp[n];
      next[n + 2] -= dp[n];
    }
    next.resize(l + 2, Rational(0));
    polys[l + 1] = std::move(next);
  }
  return polys;
}

std::vector<double> reset_cumulants(const ResetParams& params, std::size_t lmax) {
  if (lmax < 1) throw std::invalid_argument("reset_cumulants needs lmax >= 1");
  auto polys = reset_cumulant_polynomials_stirling(lmax);
  std::vector<double> out(lmax + 1, 0.0);
  if (params.is_exact()) {
    const Rational r = params.exact();
    for (std::size_t l = 1; l <= lmax; ++l) {
      Rational acc(0), p(1);
      for (std::size_t n = 0; n < polys[l].size(); ++n) {
        acc += polys[l][n] * p;
        p *= r;
      }
      out[l] = to_double(acc);
    }
  } else {
    const double r = params.value();
    for (std::size_t l = 1; l <= lmax; ++l) {
      double acc = 0, p = 1;
      for (std::size_t n = 0; n < polys[l].size(); ++n) {
        acc += to_double(polys[l][n]) * p;
        p *= r;
      }
      out[l] = acc;
    }
  }
  return out;
}

double weak_reset_scaling(double h, double mu) {
  const double rad = std::exp(mu) + h * h / 16;
  if (rad < 0) throw std::domain_error("weak-resetting scaling: negative radicand");
  return 2 * (std::exp(mu) - 1) + h * h / 4 + h * std::sqrt(rad);
}

std::vector<double> weak_reset_amplitudes(std::size_t pmax) {
  // a_p = (-1)^(p-1) (2p+1)! / (16^p (2p-1)) * b_p, b_p = C(2p,p)/4^p
  std::vector<double> out(pmax + 1);
  Rational b(1), fact(1), pow16(1);
  for (std::size_t p = 0; p <= pmax; ++p) {
    if (p > 0) {
      b *= Rational(2 * static_cast<long long>(p) - 1, 2 * static_cast<long long>(p));
      pow16 *= 16;
      fact *= Rational((2 * static_cast<long long>(p)) * (2 * static_cast<long long>(p) + 1));
    }
    Rational ap = fact * b / (pow16 * Rational(2 * static_cast<long long>(p) - 1));
    out[p] = to_double(p % 2 ? ap : -ap);
  }
  return out;
}

namespace {

struct Grad2 {
  double xi, eta;
};

// Gradient of S along a one-parameter tilt family.
double directional_density(const ResetParams& params, Marginal which, double lam) {
  TiltPoint tilt;
  switch (which) {
    case Marginal::cross: tilt = {lam, 0.0}; break;
    case Marginal::sum: tilt = {lam, lam}; break;
    case Marginal::dot: tilt = {0.0, lam}; break;
  }
  auto g = entropy_grad(params, tilt);
  switch (which) {
    case Marginal::cross: return g.xi;
    case Marginal::sum: return g.xi + g.eta;
    default: return g.eta;
  }
}

double directional_entropy(const ResetParams& params, Marginal which, double lam) {
  switch (which) {
    case Marginal::cross: return entropy(params, {lam, 0.0});
    case Marginal::sum: return entropy(params, {lam, lam});
    default: return entropy(params, {0.0, lam});
  }
}

constexpr double kTiltBracket = 40.0;

// Scalar Legendre transform of S restricted to a tilt direction: solves
// d/dlam S = arg by bisection plus Newton polish (the density is strictly
// increasing in the tilt by convexity).
LdfPoint legendre_scalar(const ResetParams& params, Marginal which, double arg,
                         double boundary_low, double boundary_high) {
  LdfPoint pt;
  double lo = -kTiltBracket, hi = kTiltBracket;
  // Pull the bracket ends inward to the evaluable range: towards the ends
  // the singularity can sit within double-precision rounding of the branch
  // point, which is the same situation as exceeding the bracket, so both
  // collapse into the boundary-adjacent report below.
  double flo = 0, fhi = 0;
  for (;;) {
    try {
      flo = directional_density(params, which, lo) - arg;
      break;
    } catch (const std::domain_error&) {
      lo += 1.0;
      if (lo >= 0) throw;
    }
  }
  for (;;) {
    try {
      fhi = directional_density(params, which, hi) - arg;
      break;
    } catch (const std::domain_error&) {
      hi -= 1.0;
      if (hi <= 0) throw;
    }
  }
  if (flo >= 0.0) {
    pt.rate = boundary_low;
    pt.lambda = lo;
    pt.boundary = true;
    return pt;
  }
  if (fhi <= 0.0) {
    pt.rate = boundary_high;
    pt.lambda = hi;
    pt.boundary = true;
    return pt;
  }
  double mid = 0;
  for (int it = 0; it < 96; ++it) {
    mid = (lo + hi) / 2;
    double f;
    try {
      f = directional_density(params, which, mid) - arg;
    } catch (const std::domain_error&) {
      // inadmissible pockets only occur beyond the density limits; the
      // origin is always admissible, so the sign of the tilt tells the side
      f = mid < 0 ? -1.0 : 1.0;
    }
    if (f == 0.0) break;
    (f < 0 ? lo : hi) = mid;
  }
  // Newton polish with a finite-difference derivative of the density.
  double lam = (lo + hi) / 2;
  for (int it = 0; it < 4; ++it) {
    const double f = directional_density(params, which, lam) - arg;
    const double h = 1e-6 * std::max(1.0, std::abs(lam));
    const double df = (directional_density(params, which, lam + h) -
                       directional_density(params, which, lam - h)) /
                      (2 * h);
    if (!(std::abs(df) > 0)) break;
    const double step = f / df;
    if (std::abs(step) > 1.0) break;
    lam -= step;
    if (std::abs(f) <= 1e-12) break;
  }
  if (std::abs(directional_density(params, which, lam) - arg) > 1e-10)
    throw std::runtime_error("scalar Legendre solve did not reach residual 1e-10");

  pt.lambda = lam;
  if (which == Marginal::dot) {
    pt.mu = lam;
    pt.lambda = 0.0;
  } else if (which == Marginal::sum) {
    pt.mu = lam;
  }
  const double S = directional_entropy(params, which, lam);
  pt.rate = lam * arg - S;
  return pt;
}

}  // namespace

LdfPoint legendre_joint(const ResetParams& params, double xi, double eta) {
  require_interior_r(params, "legendre_joint");
  if (!(xi > 0 && eta > 0 && 2 * xi + eta < 1))
    throw std::invalid_argument("density point outside the open triangle");

  double lam = 0, mu = 0;
  auto grad_at = [&](double l, double m) { return entropy_grad(params, {l, m}); };
  double gx = 0, ge = 0;
  for (int it = 0; it < 200; ++it) {
    TiltGradient g;
    try {
      g = grad_at(lam, mu);
    } catch (const std::domain_error&) {
      throw std::runtime_error("joint Legendre solve left the admissible region at lambda=" +
                               std::to_string(lam) + " mu=" + std::to_string(mu));
    }
    gx = g.xi - xi;
    ge = g.eta - eta;
    if (std::max(std::abs(gx), std::abs(ge)) <= 1e-10) break;

    const double h = 1e-6;
    auto gpl = grad_at(lam + h, mu), gml = grad_at(lam - h, mu);
    auto gpm = grad_at(lam, mu + h), gmm = grad_at(lam, mu - h);
    const double j11 = (gpl.xi - gml.xi) / (2 * h), j12 = (gpm.xi - gmm.xi) / (2 * h);
    const double j21 = (gpl.eta - gml.eta) / (2 * h), j22 = (gpm.eta - gmm.eta) / (2 * h);
    const double det = j11 * j22 - j12 * j21;
    if (!(std::abs(det) > 1e-300))
      throw std::runtime_error("joint Legendre solve: singular Jacobian at lambda=" +
                               std::to_string(lam) + " mu=" + std::to_string(mu));
    double dl = (j22 * gx - j12 * ge) / det;
    double dm = (-j21 * gx + j11 * ge) / det;
    // Damped update, kept inside the tilt bracket and admissible region.
    double step = 1.0;
    for (; step > 1e-6; step /= 2) {
      const double nl = lam - step * dl, nm = mu - step * dm;
      if (std::abs(nl) > kTiltBracket || std::abs(nm) > kTiltBracket) continue;
      try {
        grad_at(nl, nm);
        lam = nl;
        mu = nm;
        break;
      } catch (const std::domain_error&) {
        continue;
      }
    }
    if (step <= 1e-6)
      throw std::runtime_error("joint Legendre solve stalled at lambda=" + std::to_string(lam) +
                               " mu=" + std::to_string(mu) + " mismatch=" +
                               std::to_string(std::max(std::abs(gx), std::abs(ge))));
  }
  if (std::max(std::abs(gx), std::abs(ge)) > 1e-10)
    throw std::runtime_error("joint Legendre solve did not converge: last lambda=" +
                             std::to_string(lam) + " mu=" + std::to_string(mu));

  LdfPoint pt;
  pt.lambda = lam;
  pt.mu = mu;
  pt.rate = lam * xi + mu * eta - entropy(params, {lam, mu});
  return pt;
}

LdfPoint legendre_univariate(const ResetParams& params, Marginal which, double arg) {
  require_interior_r(params, "legendre_univariate");
  const double r = params.value();
  const auto bounds = boundary_values(params);
  switch (which) {
    case Marginal::dot: {
      if (!(arg > 0 && arg < 1))
        throw std::invalid_argument("dot density must lie in (0,1)");
      LdfPoint pt;
      pt.mu = std::log(arg * (1 - r) / (r * (1 - arg)));
      pt.rate = arg * std::log(arg / r) + (1 - arg) * std::log((1 - arg) / (1 - r));
      return pt;
    }
    case Marginal::cross:
      if (!(arg > 0 && arg < 0.5))
        throw std::invalid_argument("cross density must lie in (0,1/2)");
      return legendre_scalar(params, which, arg, decay_rate(params), bounds.I_B);
    case Marginal::sum:
      if (!(arg > 0 && arg < 1))
        throw std::invalid_argument("total density must lie in (0,1)");
      return legendre_scalar(params, which, arg, bounds.I_A, bounds.I_C);
  }
  throw std::logic_error("unreachable");
}

LdfPoint legendre_dot_numeric(const ResetParams& params, double eta) {
  require_interior_r(params, "legendre_dot_numeric");
  if (!(eta > 0 && eta < 1)) throw std::invalid_argument("dot density must lie in (0,1)");
  const auto bounds = boundary_values(params);
  return legendre_scalar(params, Marginal::dot, eta, bounds.I_A, bounds.I_C);
}

BoundaryValues boundary_values(const ResetParams& params) {
  require_interior_r(params, "boundary_values");
  const double r = params.value();
  BoundaryValues b;
  b.I_A = -std::log(1 - r);
  b.I_B = b.I_A + 0.5 * std::log(2.0);
  b.I_C = -std::log(r);
  return b;
}

}  // namespace polya
