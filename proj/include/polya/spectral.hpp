#ifndef POLYA_SPECTRAL_HPP
#define POLYA_SPECTRAL_HPP

#include <vector>

#include "polya/reset_params.hpp"

namespace polya {

/// Tilt variables conjugate to the cross count (lambda) and dot count (mu).
struct TiltPoint {
  double lambda = 0.0;
  double mu = 0.0;
  double z() const { return std::exp(lambda); }
  double y() const { return std::exp(mu); }
};

/// Coefficients of P3 w^3 + P2 w^2 + P1 w + P0, whose roots contain the
/// singularity governing the late-time joint statistics.
struct CubicCoefficients {
  double p3 = 0, p2 = 0, p1 = 0, p0 = 0;
};

/// Trigonometric solution of the cubic in the three-real-root regime.
///
/// radius is the (negative) prefactor -sqrt(-4p/3) of the cosine terms and
/// theta lies in [0, pi/3]; with this labeling the roots satisfy
/// w2 <= w1 <= w3 pointwise. near_boundary marks a discriminant within
/// rounding distance of zero (double root); theta is then snapped to the
/// exact end of its range, which keeps the coincident pair fully accurate.
struct TrigCubicSolution {
  double shift = 0;  // -P2/(3 P3)
  double p_red = 0, q_red = 0;
  double radius = 0;
  double theta = 0;
  double w1 = 0, w2 = 0, w3 = 0;
  bool near_boundary = false;
};

CubicCoefficients cubic_coeffs(const ResetParams& params, const TiltPoint& tilt);

TrigCubicSolution solve_cubic_trig(const CubicCoefficients& c);

/// All real roots (one or three), handling both discriminant signs.
std::vector<double> cubic_real_roots(const CubicCoefficients& c);

/// Entropy S(lambda, mu) = -ln w*, with w* the physical denominator zero.
double entropy(const ResetParams& params, const TiltPoint& tilt);

struct TiltGradient {
  double xi = 0;   // dS/dlambda: density of crosses
  double eta = 0;  // dS/dmu: density of dots
};

/// Analytic gradient of the entropy at the given tilt.
TiltGradient entropy_grad(const ResetParams& params, const TiltPoint& tilt);

struct Amplitudes {
  double total = 0;  // A = sqrt(r/(2-r)): growth rate of the total origin count
  double cross = 0;  // A_cross = A - r
};

Amplitudes amplitudes(const ResetParams& params);

struct Extremum {
  double location = 0;
  double value = 0;
};

/// argmax_r of A_cross(r), by golden-section search.
Extremum amplitude_cross_max();

/// Exponential tail rate sigma of the dressed return-time distribution.
double decay_rate(const ResetParams& params);

Extremum decay_rate_max();

struct StationaryLaw {
  double amplitude = 0;  // p(0) = sqrt(r/(2-r))
  double ratio = 0;      // geometric ratio > 1 of the exponential profile
};

/// Stationary position law p(x) = amplitude * ratio^{-|x|}.
StationaryLaw stationary_law(const ResetParams& params);

namespace detail {
/// Unsquared denominator equation whose zero is the physical singularity;
/// vanishes at w* while the squared cubic also carries a conjugate branch.
double denominator_equation(double r, double z, double y, double w);
/// Physical root selection among cubic roots: in (0, 1/(1-r)), minimal
/// relative residual of the unsquared equation.
double physical_root(const ResetParams& params, const TiltPoint& tilt);
/// Golden-section maximizer on [lo, hi] for a smooth unimodal function.
Extremum golden_max(double lo, double hi, double tol, double (*f)(double));
}  // namespace detail

}  // namespace polya

#endif
