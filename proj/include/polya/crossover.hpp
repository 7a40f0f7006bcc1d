#ifndef POLYA_CROSSOVER_HPP
#define POLYA_CROSSOVER_HPP

#include <cstddef>
#include <vector>

namespace polya {

/// Limiting density f(zeta, u) of the rescaled cross count N^x/sqrt(t) in
/// the weak-resetting regime, u = r t. Numerical inverse Laplace transform
/// (fixed Talbot contour, 48 nodes) in the variable conjugate to u, taken
/// after shifting the branch point to the origin so the overall e^{-u}
/// factor is exact. Validated box: u in [1e-3, 50], zeta in [0, 13.5]
/// (large enough for sqrt(u/2)+8 across the u box).
double crossover_density(double zeta, double u);

/// Two-term small-u expansion (error O(u^2)); intended for u <= 0.2.
double density_small_u(double zeta, double u);

/// Large-u form: Gaussian in x = zeta - sqrt(u/2) plus the 1/sqrt(u)
/// correction; intended for u >= 5.
double density_large_u(double zeta, double u);

/// Even moments mu_{2n}(u), n = 0..nmax (polynomials of degree n in u).
std::vector<double> moments_even(double u, std::size_t nmax);

/// Odd moments mu_{2n+1}(u), n = 0..nmax, via the three-term recursion for
/// g_n(u) run with compensated arithmetic; g index capped at 12.
/// For u below 1e-8 the closed u -> 0 limits are returned.
std::vector<double> moments_odd(double u, std::size_t nmax);

/// Moments mu_k and cumulants gamma_k of the rescaled cross count, k = 1..kmax.
struct MomentSet {
  double u = 0;
  std::vector<double> mu;     // mu[k], mu[0] = 1
  std::vector<double> gamma;  // gamma[k], gamma[0] = 0
};

MomentSet cumulants_gamma(double u, std::size_t kmax);

/// Occupancy scaling G(u) = sqrt(u) erf(sqrt u)/sqrt 2 + e^{-u}/sqrt(2 pi):
/// U^(r)(t) ~ G(rt)/sqrt(t) through the crossover regime.
double occupancy_scaling(double u);

}  // namespace polya

#endif
