#ifndef POLYA_QUADRATIC_FIELD_HPP
#define POLYA_QUADRATIC_FIELD_HPP

#include <stdexcept>

#include "polya/rational.hpp"

namespace polya {

/// Element a + b*alpha of the quadratic extension Q(alpha), alpha^2 = s.
///
/// The cumulant amplitudes are linear in A = sqrt(r/(2-r)) with rational
/// coefficients, so the whole entropy expansion closes in this field when
/// s = r/(2-r) is not a perfect square. Every element carries s; mixing
/// elements from different extensions is an error.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a, Rational b, Rational s)
      : a_(std::move(a)), b_(std::move(b)), s_(std::move(s)) {}

  const Rational& rat() const { return a_; }
  const Rational& irr() const { return b_; }
  const Rational& modulus() const { return s_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return {x.a_ + y.a_, x.b_ + y.b_, x.s_};
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return {x.a_ - y.a_, x.b_ - y.b_, x.s_};
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return {x.a_ * y.a_ + x.b_ * y.b_ * x.s_, x.a_ * y.b_ + x.b_ * y.a_, x.s_};
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * x.s_;
    if (norm.is_zero())
      throw std::domain_error(y.is_zero() ? "division by zero in quadratic extension"
                                          : "degenerate quadratic extension (square modulus)");
    return x * QuadExt(y.a_ / norm, -y.b_ / norm, x.s_);
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  static void check(const QuadExt& x, const QuadExt& y) {
    if (x.s_ != y.s_) throw std::invalid_argument("mixed quadratic extensions");
  }

  Rational a_{0}, b_{0};
  Rational s_{0};
};

inline QuadExt field_zero(const QuadExt& like) { return {Rational(0), Rational(0), like.modulus()}; }
inline QuadExt field_one(const QuadExt& like) { return {Rational(1), Rational(0), like.modulus()}; }
inline QuadExt field_from_int(const QuadExt& like, long long n) {
  return {Rational(n), Rational(0), like.modulus()};
}
inline bool field_is_zero(const QuadExt& x) { return x.is_zero(); }

/// Exact square root when representable as v or v*alpha.
inline QuadExt field_sqrt(const QuadExt& x) {
  if (!x.irr().is_zero())
    throw std::domain_error("sqrt of a generic quadratic-extension element");
  if (x.rat() <= 0) throw std::domain_error("sqrt of nonpositive constant term");
  if (auto root = rational_sqrt(x.rat()))
    return {*root, Rational(0), x.modulus()};
  if (x.modulus() > 0)
    if (auto root = rational_sqrt(x.rat() / x.modulus()))
      return {Rational(0), *root, x.modulus()};
  throw std::domain_error("constant term has no square root in the extension");
}

inline double to_double(const QuadExt& x) {
  return to_double(x.rat()) + to_double(x.irr()) * std::sqrt(to_double(x.modulus()));
}

}  // namespace polya

#endif
