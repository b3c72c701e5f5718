#pragma once

#include <cmath>
#include <string>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "sobtrace/errors.hpp"

namespace sobtrace::specfun {

/// Positive argument of the Gamma function. Construction rejects poles and
/// the negative axis, so anything holding a GammaArg is safe to evaluate.
class GammaArg {
 public:
  explicit GammaArg(double x) : x_(x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("Gamma argument must be positive and finite, got " + std::to_string(x));
    }
  }
  double value() const noexcept { return x_; }

 private:
  double x_;
};

namespace detail {
// Domain is validated up front; overflow cannot happen for lgamma on (0, 1e300).
using quiet_policy = boost::math::policies::policy<boost::math::policies::domain_error<boost::math::policies::ignore_error>,
                                                   boost::math::policies::pole_error<boost::math::policies::ignore_error>,
                                                   boost::math::policies::overflow_error<boost::math::policies::ignore_error>,
                                                   boost::math::policies::evaluation_error<boost::math::policies::ignore_error>,
                                                   boost::math::policies::promote_double<true>>;
}  // namespace detail

/// ln Gamma(x) for x > 0 (Lanczos approximation, evaluated in long double).
inline double log_gamma(GammaArg x) {
  return boost::math::lgamma(x.value(), detail::quiet_policy{});
}

inline double log_gamma(double x) { return log_gamma(GammaArg{x}); }

/// Gamma(a) / Gamma(b), computed as a difference of logarithms so that the
/// quotient stays finite when the individual Gammas would overflow.
inline double gamma_ratio(GammaArg a, GammaArg b) {
  if (a.value() == b.value()) {
    return 1.0;
  }
  return std::exp(log_gamma(a) - log_gamma(b));
}

inline double gamma_ratio(double a, double b) { return gamma_ratio(GammaArg{a}, GammaArg{b}); }

/// ln(Gamma(a) / Gamma(b)); use when the ratio itself may overflow.
inline double log_gamma_ratio(double a, double b) {
  return log_gamma(GammaArg{a}) - log_gamma(GammaArg{b});
}

}  // namespace sobtrace::specfun
