#ifndef POLYA_RATIONAL_HPP
#define POLYA_RATIONAL_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace polya {

// expression templates off: series/field code stores and passes plain values
using BigInt =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<
        boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
        boost::multiprecision::et_off>;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Parse "3/10", "0.3", "1e-3" or "42" into an exact rational.
Rational rational_from_string(std::string_view s);

/// Exact square root, or nullopt if q is not the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& q);

// --- field adaptors shared by the generic series code -----------------------
// The first argument is a witness carrying field context (unused for the
// built-in fields, needed by extension fields).

inline double field_zero(const double&) { return 0.0; }
inline double field_one(const double&) { return 1.0; }
inline double field_from_int(const double&, long long n) { return static_cast<double>(n); }
inline bool field_is_zero(const double& x) { return x == 0.0; }

inline Rational field_zero(const Rational&) { return Rational(0); }
inline Rational field_one(const Rational&) { return Rational(1); }
inline Rational field_from_int(const Rational&, long long n) { return Rational(n); }
inline bool field_is_zero(const Rational& x) { return x.is_zero(); }

inline double field_sqrt(const double& x) {
  if (!(x > 0.0)) throw std::domain_error("sqrt of nonpositive constant term");
  return std::sqrt(x);
}

inline Rational field_sqrt(const Rational& x) {
  if (x <= 0) throw std::domain_error("sqrt of nonpositive constant term");
  auto root = rational_sqrt(x);
  if (!root) throw std::domain_error("constant term is not a perfect rational square");
  return *root;
}

}  // namespace polya

#endif
