#include "polya/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace polya {

namespace {

constexpr double kDiscTol = 1e-14;   // relative discriminant tolerance
constexpr double kThetaSnap = 5e-13; // snap |cos 3theta| to 1 within this

void require_interior_r(const ResetParams& params, const char* what) {
  double r = params.value();
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument(std::string(what) + " requires 0 < r < 1");
}

}  // namespace

CubicCoefficients cubic_coeffs(const ResetParams& params, const TiltPoint& tilt) {
  require_interior_r(params, "cubic_coeffs");
  const double r = params.value();
  const double z = tilt.z(), y = tilt.y();
  CubicCoefficients c;
  const double base = (1 - r) * z + r * y;
  c.p3 = (1 - r) * base * base;
  c.p2 = r * r * y * y - (1 - r) * (1 - r) * z * z;
  c.p1 = (1 - r) * (1 - 2 * z) - 2 * r * y * z;
  c.p0 = 2 * z - 1;
  return c;
}

TrigCubicSolution solve_cubic_trig(const CubicCoefficients& c) {
  if (c.p3 == 0.0) throw std::invalid_argument("leading cubic coefficient vanishes");
  TrigCubicSolution s;
  s.shift = -c.p2 / (3 * c.p3);
  s.p_red = c.p1 / c.p3 - c.p2 * c.p2 / (3 * c.p3 * c.p3);
  s.q_red = c.p0 / c.p3 - c.p1 * c.p2 / (3 * c.p3 * c.p3) +
            2 * c.p2 * c.p2 * c.p2 / (27 * c.p3 * c.p3 * c.p3);

  const double disc = 4 * s.p_red * s.p_red * s.p_red + 27 * s.q_red * s.q_red;
  const double scale =
      std::max(std::abs(4 * s.p_red * s.p_red * s.p_red), 27 * s.q_red * s.q_red);
  s.near_boundary = std::abs(disc) <= kDiscTol * scale;
  if (disc > kDiscTol * scale)
    throw std::domain_error("cubic has a complex pair: tilt outside the three-real-root region");
  if (!(s.p_red < 0))
    throw std::domain_error("reduced cubic degenerate (p >= 0)");

  s.radius = -std::sqrt(-4 * s.p_red / 3);
  double c3 = -4 * s.q_red / (s.radius * s.radius * s.radius);
  if (c3 >= 1.0 - kThetaSnap)
    s.theta = 0.0;
  else if (c3 <= -1.0 + kThetaSnap)
    s.theta = std::numbers::pi / 3;
  else
    s.theta = std::acos(c3) / 3;

  const double two_thirds_pi = 2 * std::numbers::pi / 3;
  s.w1 = s.shift + s.radius * std::cos(s.theta - two_thirds_pi);
  s.w2 = s.shift + s.radius * std::cos(s.theta);
  s.w3 = s.shift + s.radius * std::cos(s.theta + two_thirds_pi);
  return s;
}

std::vector<double> cubic_real_roots(const CubicCoefficients& c) {
  if (c.p3 == 0.0) throw std::invalid_argument("leading cubic coefficient vanishes");
  const double B = -c.p2 / (3 * c.p3);
  const double p = c.p1 / c.p3 - c.p2 * c.p2 / (3 * c.p3 * c.p3);
  const double q = c.p0 / c.p3 - c.p1 * c.p2 / (3 * c.p3 * c.p3) +
                   2 * c.p2 * c.p2 * c.p2 / (27 * c.p3 * c.p3 * c.p3);
  const double disc = 4 * p * p * p + 27 * q * q;
  const double scale = std::max(std::abs(4 * p * p * p), 27 * q * q);

  if (disc <= kDiscTol * scale && p < 0) {
    TrigCubicSolution s = solve_cubic_trig(c);
    return {s.w2, s.w1, s.w3};  // ascending
  }
  // One real root: stable Cardano on x^3 + p x + q.
  const double D = std::sqrt(std::max(0.0, q * q / 4 + p * p * p / 27));
  const double u3 = q >= 0 ? -q / 2 - D : -q / 2 + D;
  double x;
  if (u3 == 0.0) {
    x = 0.0;
  } else {
    const double u = std::cbrt(u3);
    x = u - p / (3 * u);
  }
  double w = B + x;
  for (int i = 0; i < 2; ++i) {  // Newton polish: simple root, well conditioned
    const double f = ((c.p3 * w + c.p2) * w + c.p1) * w + c.p0;
    const double df = (3 * c.p3 * w + 2 * c.p2) * w + c.p1;
    if (df != 0.0) w -= f / df;
  }
  return {w};
}

namespace detail {

// The unsquared denominator equation in the variable d = (1-r)w in (0,1):
//   G(w) = (1-d)(1-z) + sqrt(1-d^2)((1-d)z - r y w),
// deflated by its trivial branch-point zero and rearranged so that no term
// cancels catastrophically at large tilts:
//   ghat(d) = sqrt(1-d)(1 + z T(d)) - sqrt(1+d) r y d/(1-r),
//   T(d) = sqrt(1-d^2) - 1 = -d^2/(1 + sqrt(1-d^2)).
// The physical singularity is ghat's smallest positive zero, simple
// everywhere (also where the cubic carries it as a double root).
namespace {

struct GhatParts {
  double value = 0, derivative = 0;
};

GhatParts ghat_eval(double r, double z, double y, double d) {
  const double c = std::sqrt(std::max(0.0, (1 - d) * (1 + d)));  // sqrt(1-d^2)
  const double T = -d * d / (1 + c);                             // c - 1, cancellation-free
  const double sm = std::sqrt(std::max(0.0, 1 - d));
  const double sp = std::sqrt(1 + d);
  const double ryf = r * y / (1 - r);
  GhatParts out;
  out.value = sm * (1 + z * T) - sp * ryf * d;
  const double dTdd = c > 0 ? -d / c : -1e30;  // dT/dd = dc/dd
  out.derivative = (sm > 0 ? -0.5 / sm * (1 + z * T) : -1e30) + sm * z * dTdd -
                   (0.5 / sp * ryf * d + sp * ryf);
  return out;
}

double ghat_scale(double r, double z, double y, double d) {
  const double c = std::sqrt(std::max(0.0, (1 - d) * (1 + d)));
  const double T = -d * d / (1 + c);
  return std::sqrt(std::max(0.0, 1 - d)) * (1 + std::abs(z * T)) +
         std::sqrt(1 + d) * r * y * d / (1 - r) + 1e-300;
}

}  // namespace

double denominator_equation(double r, double z, double y, double w) {
  const double d = (1 - r) * w;
  // original normalization: G = s * ghat with s = sqrt(1-d)
  return std::sqrt(std::max(0.0, 1 - d)) * ghat_eval(r, z, y, d).value;
}

double physical_root(const ResetParams& params, const TiltPoint& tilt) {
  const double r = params.value();
  const double z = tilt.z(), y = tilt.y();

  auto polish = [&](double d) {
    for (int it = 0; it < 60; ++it) {
      const auto g = ghat_eval(r, z, y, d);
      if (!(std::abs(g.derivative) > 0)) break;
      double step = g.value / g.derivative;
      const double limit = 0.25 * std::min(d, 1 - d) + 1e-18;
      if (std::abs(step) > limit) step = step > 0 ? limit : -limit;
      d -= step;
      if (!(d > 0 && d < 1)) return -1.0;
      if (std::abs(step) < 1e-17 * d) break;
    }
    return d;
  };
  auto residual_ok = [&](double d) {
    return d > 0 && d < 1 &&
           std::abs(ghat_eval(r, z, y, d).value) <= 1e-9 * ghat_scale(r, z, y, d);
  };

  // Seed from the cubic solution when it provides a sane candidate: the
  // smallest root of the cubic inside (0, 1/(1-r)) whose unsquared residual
  // is small (large residuals mark the conjugate-branch roots).
  double seed = -1.0;
  try {
    auto roots = cubic_real_roots(cubic_coeffs(params, tilt));
    double best_res = 1e300, loose = 1e300;
    for (double w : roots) {
      const double d = (1 - r) * w;
      if (!(d > 0 && d < 1)) continue;
      const double res = std::abs(ghat_eval(r, z, y, d).value) / ghat_scale(r, z, y, d);
      if (res < 1e-3) {
        if (seed < 0 || d < seed) seed = d;  // smallest genuine zero
      } else if (res < best_res) {
        best_res = res;
        loose = d;
      }
    }
    if (seed < 0 && best_res < 0.5) seed = loose;
  } catch (const std::exception&) {
    seed = -1.0;
  }

  double d = seed > 0 ? polish(seed) : -1.0;
  if (!residual_ok(d)) {
    // Robust fallback: increasing scan in d from the small-w side (geometric
    // up to 1/2, then geometrically refined towards 1); the first sign
    // change brackets the smallest zero, since ghat(0+) = 1 > 0.
    std::vector<double> grid;
    grid.reserve(700);
    for (int j = 0; j <= 560; ++j) grid.push_back(std::pow(10.0, -18.0 + 17.699 * j / 560.0));
    for (int j = 1; j <= 44; ++j) grid.push_back(1 - std::pow(10.0, -0.301 - 0.25 * j));
    double prev = grid[0], gprev = ghat_eval(r, z, y, prev).value;
    double found = -1.0;
    for (std::size_t j = 1; j < grid.size() && found < 0; ++j) {
      const double cur = grid[j];
      const double gcur = ghat_eval(r, z, y, cur).value;
      if (gprev > 0 && gcur <= 0) {
        double lo = prev, hi = cur;
        for (int it = 0; it < 200; ++it) {
          const double mid = (lo + hi) / 2;
          (ghat_eval(r, z, y, mid).value > 0 ? lo : hi) = mid;
        }
        found = polish((lo + hi) / 2);
        break;
      }
      prev = cur;
      gprev = gcur;
    }
    d = found;
  }
  if (!residual_ok(d))
    throw std::domain_error("tilt outside admissible region: no physical denominator zero");
  return d / (1 - r);
}

}  // namespace detail

double entropy(const ResetParams& params, const TiltPoint& tilt) {
  return -std::log(detail::physical_root(params, tilt));
}

TiltGradient entropy_grad(const ResetParams& params, const TiltPoint& tilt) {
  const double r = params.value();
  const double z = tilt.z(), y = tilt.y();
  const double w = detail::physical_root(params, tilt);
  const double d = (1 - r) * w;
  const double Q = std::sqrt(std::max(0.0, (1 - d) * (1 + d)));
  if (Q == 0.0) throw std::domain_error("tilt at the branch point: gradient undefined");

  // partials of G written so the large-z pieces combine before subtraction:
  //   Gz = -(1-d) d^2/(1+Q),   Gy = -Q r w,
  //   Gw = -(1-r) E - (1-r)(d/Q)((1-d)z - r y w) - Q r y,
  //   E  = (1-z) + Q z = 1 - z d^2/(1+Q).
  const double E = 1 - z * d * d / (1 + Q);
  const double gz = -(1 - d) * d * d / (1 + Q);
  const double gy = -Q * r * w;
  const double mid = (1 - r) * d / Q * ((1 - d) * z - r * y * w);
  const double gw = -(1 - r) * E - mid - Q * r * y;
  const double denom = w * gw;
  const double scale =
      (1 - r) * std::abs(E) + std::abs(mid) + Q * r * y + 1e-300;
  if (std::abs(gw) < 1e-12 * scale)
    throw std::domain_error("critical point: dP/dw vanishes at the root (region boundary)");
  return {z * gz / denom, y * gy / denom};
}

Amplitudes amplitudes(const ResetParams& params) {
  const double r = params.value();
  Amplitudes a;
  a.total = std::sqrt(r / (2 - r));
  a.cross = a.total - r;
  return a;
}

namespace detail {

Extremum golden_max(double lo, double hi, double tol, double (*f)(double)) {
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  const double x = (a + b) / 2;
  return {x, f(x)};
}

}  // namespace detail

Extremum amplitude_cross_max() {
  return detail::golden_max(1e-4, 1 - 1e-4, 1e-7, [](double r) {
    return amplitudes(ResetParams::from_double(r)).cross;
  });
}

double decay_rate(const ResetParams& params) {
  require_interior_r(params, "decay_rate");
  const double r = params.value();
  CubicCoefficients c{r * r * (1 - r), r * r, 1 - r, -1.0};
  double w0 = -1.0;
  for (double w : cubic_real_roots(c))
    if (w > 1.0 && (w0 < 0.0 || w < w0)) w0 = w;
  if (w0 < 0.0) throw std::logic_error("decay-rate cubic has no root above 1");
  return std::log(w0);
}

Extremum decay_rate_max() {
  return detail::golden_max(1e-4, 1 - 1e-4, 1e-7,
                            [](double r) { return decay_rate(ResetParams::from_double(r)); });
}

StationaryLaw stationary_law(const ResetParams& params) {
  require_interior_r(params, "stationary_law");
  const double r = params.value();
  StationaryLaw law;
  law.amplitude = std::sqrt(r / (2 - r));
  law.ratio = (1 + std::sqrt(r * (2 - r))) / (1 - r);
  return law;
}

}  // namespace polya
