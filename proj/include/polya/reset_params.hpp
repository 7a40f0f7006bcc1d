#ifndef POLYA_RESET_PARAMS_HPP
#define POLYA_RESET_PARAMS_HPP

#include <stdexcept>
#include <string_view>

#include "polya/rational.hpp"

namespace polya {

/// Per-step resetting probability r, kept exact when it was given as a
/// ratio or decimal string so that rational test vectors match exactly.
class ResetParams {
 public:
  static ResetParams from_string(std::string_view s) {
    ResetParams p;
    p.exact_ = rational_from_string(s);
    p.value_ = to_double(p.exact_);
    p.is_exact_ = true;
    p.validate();
    return p;
  }

  static ResetParams from_rational(Rational r) {
    ResetParams p;
    p.exact_ = std::move(r);
    p.value_ = to_double(p.exact_);
    p.is_exact_ = true;
    p.validate();
    return p;
  }

  static ResetParams from_double(double r) {
    ResetParams p;
    p.value_ = r;
    p.is_exact_ = false;
    p.validate();
    return p;
  }

  double value() const { return value_; }
  bool is_exact() const { return is_exact_; }

  const Rational& exact() const {
    if (!is_exact_) throw std::logic_error("resetting probability was not given exactly");
    return exact_;
  }

  /// r in the requested coefficient field.
  template <class F>
  F as() const;

 private:
  void validate() const {
    if (!(value_ >= 0.0 && value_ <= 1.0))
      throw std::invalid_argument("resetting probability must lie in [0,1]");
  }

  Rational exact_{0};
  double value_ = 0.0;
  bool is_exact_ = false;
};

template <>
inline Rational ResetParams::as<Rational>() const {
  return exact();
}

template <>
inline double ResetParams::as<double>() const {
  return value_;
}

}  // namespace polya

#endif
