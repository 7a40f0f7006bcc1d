#include <doctest.h>

#include "polya/exact_laws.hpp"
#include "polya/monte_carlo.hpp"
#include "polya/series.hpp"

using polya::Rational;
using polya::Series;

namespace {

Series<Rational> rs(std::initializer_list<Rational> cs) {
  return Series<Rational>::from_coeffs(std::vector<Rational>(cs));
}

Series<Rational> one_minus_x(std::size_t order) {
  auto s = polya::series_constant(order, Rational(1));
  s[1] = -1;
  return s;
}

// deterministic random rationals/doubles for property checks
struct Gen {
  polya::PathRng rng = polya::PathRng::for_path(20240601, 0);
  Rational rational() {
    auto num = static_cast<std::int64_t>(rng.next() % 41) - 20;
    auto den = static_cast<std::int64_t>(rng.next() % 9) + 1;
    return Rational(num, den);
  }
};

}  // namespace

TEST_CASE("arithmetic matches the textbook expansions") {
  const std::size_t n = 4;
  auto one = polya::series_constant(n, Rational(1));
  auto geo = one / one_minus_x(n);
  for (std::size_t k = 0; k <= n; ++k) CHECK(geo[k] == 1);

  auto prod = rs({1, -1, 0}) * rs({1, 1, 0});  // (1-z)(1+z) at order 2
  CHECK(prod[0] == 1);
  CHECK(prod[1] == 0);
  CHECK(prod[2] == -1);
}

TEST_CASE("geometric resetting interval generating function at r = 1/2") {
  // 1/(1 - (1-r) z), the survival generating function of reset intervals
  const Rational r(1, 2);
  auto den = polya::series_constant<Rational>(3, 1);
  den[1] = -(1 - r);
  auto phi = polya::series_constant<Rational>(3, 1) / den;
  CHECK(phi[0] == 1);
  CHECK(phi[1] == Rational(1, 2));
  CHECK(phi[2] == Rational(1, 4));
  CHECK(phi[3] == Rational(1, 8));
}

TEST_CASE("square roots: binomial series and the first-return function") {
  auto binv = polya::series_constant(3, Rational(1)) / polya::series_sqrt(one_minus_x(3));
  CHECK(binv[0] == 1);
  CHECK(binv[1] == Rational(1, 2));
  CHECK(binv[2] == Rational(3, 8));
  CHECK(binv[3] == Rational(5, 16));

  auto root_of_one = polya::series_sqrt(polya::series_constant(5, Rational(1)));
  CHECK(root_of_one[0] == 1);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(root_of_one[k] == 0);

  auto rho = polya::first_return_series<Rational>(8, Rational(1));
  CHECK(rho[0] == 0);
  CHECK(rho[1] == 0);
  CHECK(rho[2] == Rational(1, 2));
  CHECK(rho[3] == 0);
  CHECK(rho[4] == Rational(1, 8));
  CHECK(rho[5] == 0);
  CHECK(rho[6] == Rational(1, 16));
  CHECK(rho[7] == 0);
  CHECK(rho[8] == Rational(5, 128));
}

TEST_CASE("logarithms") {
  auto log_geo = polya::series_log(polya::series_constant(4, Rational(1)) / one_minus_x(4));
  CHECK(log_geo[0] == 0);
  CHECK(log_geo[1] == 1);
  CHECK(log_geo[2] == Rational(1, 2));
  CHECK(log_geo[3] == Rational(1, 3));
  CHECK(log_geo[4] == Rational(1, 4));

  auto log1p = polya::series_log(rs({1, 1, 0, 0}));
  CHECK(log1p[1] == 1);
  CHECK(log1p[2] == Rational(-1, 2));
  CHECK(log1p[3] == Rational(1, 3));

  auto x = polya::series_monomial(6, 1, Rational(1));
  auto back = polya::series_log(polya::series_exp(x));
  for (std::size_t k = 0; k <= 6; ++k) CHECK(back[k] == (k == 1 ? 1 : 0));
}

TEST_CASE("rescaling") {
  auto s = rs({1, 1, 1});
  auto half = polya::series_rescale(s, Rational(1, 2));
  CHECK(half[0] == 1);
  CHECK(half[1] == Rational(1, 2));
  CHECK(half[2] == Rational(1, 4));

  auto same = polya::series_rescale(s, Rational(1));
  for (std::size_t k = 0; k <= 2; ++k) CHECK(same[k] == s[k]);

  // rescaled first-return series equals the direct expansion of
  // 1 - sqrt(1 - (1-r)^2 w^2)
  const Rational r(3, 10);
  auto rescaled = polya::series_rescale(polya::first_return_series<Rational>(12, Rational(1)),
                                        1 - r);
  auto arg = polya::series_constant(12, Rational(1));
  arg[2] = -(1 - r) * (1 - r);
  auto direct = polya::series_constant(12, Rational(1)) - polya::series_sqrt(arg);
  for (std::size_t k = 0; k <= 12; ++k) CHECK(rescaled[k] == direct[k]);
}

TEST_CASE("division inverts multiplication") {
  Gen gen;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 12;
    Series<Rational> a(n, Rational(0)), b(n, Rational(0));
    for (std::size_t k = 0; k <= n; ++k) {
      a[k] = gen.rational();
      b[k] = gen.rational();
    }
    if (b[0] == 0) b[0] = 1;
    auto back = (a * b) / b;
    for (std::size_t k = 0; k <= n; ++k) CHECK(back[k] == a[k]);
  }

  // floating field: 1e-13 per coefficient
  polya::PathRng rng = polya::PathRng::for_path(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 24;
    Series<double> a(n, 0.0), b(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      a[k] = rng.uniform() * 2 - 1;
      b[k] = rng.uniform() * 2 - 1;
    }
    b[0] = 1 + rng.uniform();
    auto back = (a * b) / b;
    for (std::size_t k = 0; k <= n; ++k) CHECK(back[k] == doctest::Approx(a[k]).epsilon(1e-13));
  }
}

TEST_CASE("sqrt squares back to its argument") {
  Gen gen;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 16;
    Series<Rational> a(n, Rational(0));
    a[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) a[k] = gen.rational();
    auto y = polya::series_sqrt(a);
    auto sq = y * y;
    for (std::size_t k = 0; k <= n; ++k) CHECK(sq[k] == a[k]);
  }
}

TEST_CASE("log and exp are mutually inverse") {
  Gen gen;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 14;
    Series<Rational> a(n, Rational(0));
    a[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) a[k] = gen.rational();
    auto again = polya::series_exp(polya::series_log(a));
    for (std::size_t k = 0; k <= n; ++k) CHECK(again[k] == a[k]);
  }
}

TEST_CASE("exact and floating evaluations of the base generating functions agree") {
  const std::size_t n = 64;
  const Rational r(3, 10);
  const double rd = 0.3;

  auto check_close = [&](const Series<Rational>& exact, const Series<double>& fl) {
    for (std::size_t k = 0; k <= n; ++k) {
      const double e = polya::to_double(exact[k]);
      CHECK(fl[k] == doctest::Approx(e).epsilon(1e-12));
    }
  };

  check_close(polya::first_return_series<Rational>(n, Rational(1)),
              polya::first_return_series<double>(n, 1.0));
  check_close(polya::survival_series<Rational>(n, Rational(1)),
              polya::survival_series<double>(n, 1.0));

  // binomial, reset-interval and reset-survival generating functions
  auto bin_e = polya::series_constant(n, Rational(1)) / polya::series_sqrt(one_minus_x(n));
  auto one_f = polya::series_constant(n, 1.0);
  auto omx_f = one_f;
  omx_f[1] = -1;
  auto bin_f = one_f / polya::series_sqrt(omx_f);
  check_close(bin_e, bin_f);

  auto phi_den_e = polya::series_constant(n, Rational(1));
  phi_den_e[1] = -(1 - r);
  auto phi_den_f = one_f;
  phi_den_f[1] = -(1 - rd);
  check_close(polya::series_constant(n, Rational(1)) / phi_den_e, one_f / phi_den_f);

  auto f_e = polya::series_monomial(n, 1, r) / phi_den_e;
  auto f_f = polya::series_monomial(n, 1, rd) / phi_den_f;
  check_close(f_e, f_f);
}

TEST_CASE("error paths") {
  auto a3 = polya::series_constant(3, Rational(1));
  auto a4 = polya::series_constant(4, Rational(1));
  CHECK_THROWS_AS(a3 + a4, std::invalid_argument);
  CHECK_THROWS_AS(a3 * a4, std::invalid_argument);

  auto zero_const = polya::series_monomial(3, 1, Rational(1));
  CHECK_THROWS_AS(a3 / zero_const, std::domain_error);

  auto neg = polya::series_constant(3, Rational(-1));
  CHECK_THROWS_AS(polya::series_sqrt(neg), std::domain_error);
  auto non_square = polya::series_constant(3, Rational(2));
  CHECK_THROWS_AS(polya::series_sqrt(non_square), std::domain_error);
  // floating field accepts any positive constant
  CHECK(polya::series_sqrt(polya::series_constant(3, 2.0))[0] == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(polya::series_log(polya::series_constant(3, Rational(2))), std::domain_error);
}
