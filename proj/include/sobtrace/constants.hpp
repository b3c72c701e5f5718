#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "sobtrace/errors.hpp"
#include "sobtrace/specfun.hpp"

namespace sobtrace {

/// Index tuple (q, p, s, t, m, n) of the trace inequality
///
///   || tr u ||_{W^{t - m/p, p}(R^{n-m})} <= C_{q,s,t,m} || u ||_{W^{s,q}(R^n)}.
///
/// p is always derived from q, so the pair is conjugate by construction.
/// Values outside the admissible window s - n(1/q - 1/p) > t >= m/p can be
/// represented; they are flagged rather than rejected so that sweeps can walk
/// up to the boundary.
class IndexParams {
 public:
  double q() const noexcept { return q_; }
  double p() const noexcept { return p_; }
  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

  double inv_q() const noexcept { return 1.0 / q_; }
  double inv_p() const noexcept { return (q_ - 1.0) / q_; }
  /// 1/q - 1/p, exactly zero at q = 2.
  double exponent_gap() const noexcept { return (2.0 - q_) / q_; }

  /// Upper end of the admissible t window, s - n(1/q - 1/p).
  double t_boundary() const noexcept { return s_ - n_ * exponent_gap(); }
  /// Lower end of the admissible t window, m/p.
  double t_floor() const noexcept { return m_ * inv_p(); }
  /// Smoothness index of the trace side, t - m/p.
  double trace_order() const noexcept { return t_ - t_floor(); }

  bool admissible() const noexcept { return t_boundary() > t_ && t_ >= t_floor(); }

  /// Same (q, m, n) with different smoothness indices.
  IndexParams with_st(double s, double t) const {
    IndexParams copy = *this;
    copy.s_ = s;
    copy.t_ = t;
    return copy;
  }

  friend IndexParams make_params(double q, double s, double t, int m, int n);

 private:
  IndexParams() = default;
  double q_{2.0};
  double p_{2.0};
  double s_{0.0};
  double t_{0.0};
  int m_{1};
  int n_{2};
};

/// Validates (q, m, n) and derives p = q/(q-1). Inadmissible (s, t) is not an
/// error; check IndexParams::admissible().
inline IndexParams make_params(double q, double s, double t, int m, int n) {
  if (!(q > 1.0 && q <= 2.0)) {
    throw DomainError("q must lie in (1, 2], got " + std::to_string(q));
  }
  if (m < 1) {
    throw DomainError("codimension m must be a positive integer, got " + std::to_string(m));
  }
  if (n <= m) {
    throw DomainError("dimension n must exceed m, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  if (!std::isfinite(s) || !std::isfinite(t)) {
    throw DomainError("smoothness indices must be finite");
  }
  IndexParams params;
  params.q_ = q;
  params.p_ = q / (q - 1.0);
  params.s_ = s;
  params.t_ = t;
  params.m_ = m;
  params.n_ = n;
  return params;
}

/// C_{q,s,t,m} with every multiplicative factor kept separately.
struct ConstantBreakdown {
  double value{};
  double pi_factor{};
  double two_factor{};
  double pq_factor{};
  double gamma_factor_1{};
  double gamma_factor_2{};
};

/// Closed-form trace constant
///
///   C = pi^{(n-m)/(2q) - n/(2p)} 2^{-m/2} q^{(2n-m)/(2q)} p^{-(2n-m)/(2p)}
///       [Gamma((sq-m)/2) / Gamma(sq/2)]^{1/q}
///       [Gamma(a - n/2) / Gamma(a - m/2)]^{1/q - 1/p},   a = (s-t)p / (2(p-2)).
///
/// At q = 2 the last bracket carries exponent zero and is taken as 1 without
/// evaluating a (which would divide by p - 2 = 0).
inline ConstantBreakdown trace_constant(const IndexParams& params) {
  const double q = params.q();
  const double p = params.p();
  const double s = params.s();
  const double m = params.m();
  const double n = params.n();

  const double first_num = (s * q - m) / 2.0;
  if (!(first_num > 0.0)) {
    throw DomainError("trace_constant: gamma_factor_1 has Gamma((sq-m)/2) with non-positive argument " +
                      std::to_string(first_num));
  }

  ConstantBreakdown out;
  out.pi_factor = std::pow(std::numbers::pi, (n - m) / (2.0 * q) - n / (2.0 * p));
  out.two_factor = std::pow(2.0, -m / 2.0);
  out.pq_factor = std::exp((2.0 * n - m) / (2.0 * q) * std::log(q) - (2.0 * n - m) / (2.0 * p) * std::log(p));
  out.gamma_factor_1 = std::exp(specfun::log_gamma_ratio(first_num, s * q / 2.0) / q);

  if (params.exponent_gap() == 0.0) {
    out.gamma_factor_2 = 1.0;
  } else {
    const double a = (s - params.t()) * p / (2.0 * (p - 2.0));
    if (!(a - n / 2.0 > 0.0)) {
      throw DomainError("trace_constant: gamma_factor_2 has Gamma((s-t)p/(2(p-2)) - n/2) with non-positive argument " +
                        std::to_string(a - n / 2.0));
    }
    out.gamma_factor_2 = std::exp(specfun::log_gamma_ratio(a - n / 2.0, a - m / 2.0) * params.exponent_gap());
  }

  if (!params.admissible()) {
    throw DomainError("trace_constant: indices violate s - n(1/q - 1/p) > t >= m/p");
  }

  out.value = out.pi_factor * out.two_factor * out.pq_factor * out.gamma_factor_1 * out.gamma_factor_2;
  return out;
}

/// Sharp constant of the Hilbert-space trace inequality H^s(R^n) -> H^{s-m/2}(R^{n-m}):
/// (Gamma(s - m/2) / ((4 pi)^{m/2} Gamma(s)))^{1/2}.
inline double homogeneous_case_constant(double s, int m) {
  if (m < 1) {
    throw DomainError("homogeneous_case_constant: m must be >= 1");
  }
  if (!(s > m / 2.0)) {
    throw DomainError("homogeneous_case_constant: requires s > m/2, got s=" + std::to_string(s));
  }
  const double log_sq = specfun::log_gamma_ratio(s - m / 2.0, s) - (m / 2.0) * std::log(4.0 * std::numbers::pi);
  return std::exp(0.5 * log_sq);
}

/// Sharp Hausdorff-Young constant (q^{1/q} / p^{1/p})^{d/2} for the unitary
/// Fourier transform on R^d. q = 1 is the p = infinity limit, where the value is 1.
inline double babenko_beckner_constant(double q, int d) {
  if (!(q >= 1.0 && q <= 2.0)) {
    throw DomainError("babenko_beckner_constant: q must lie in [1, 2], got " + std::to_string(q));
  }
  if (d < 1) {
    throw DomainError("babenko_beckner_constant: dimension must be >= 1");
  }
  if (q == 1.0) {
    return 1.0;
  }
  const double p = q / (q - 1.0);
  return std::exp(d / (2.0 * q) * std::log(q) - d / (2.0 * p) * std::log(p));
}

/// Operator norm of the unitary transform (2 pi)^{-d/2} int u e^{-i x.xi} from L^q
/// to L^p, attained by Gaussians. Differs from babenko_beckner_constant by
/// (2 pi)^{-d(1/q - 1/p)/2}; the latter is the norm for the e^{-2 pi i x.xi}
/// transform and is only an upper bound here.
inline double sharp_hausdorff_young_constant(double q, int d) {
  const double bb = babenko_beckner_constant(q, d);
  const double gap = q == 1.0 ? 1.0 : (2.0 - q) / q;
  return bb * std::pow(2.0 * std::numbers::pi, -d * gap / 2.0);
}

/// pi^{m/2} Gamma(alpha - m/2) / Gamma(alpha): the value of
/// integral over R^m of (1+|a|^2)^{alpha-m/2} (1+|a|^2+|y|^2)^{-alpha} dy.
inline double lemma1_rhs(double alpha, int m) {
  if (m < 1) {
    throw DomainError("lemma1_rhs: m must be >= 1");
  }
  if (!(alpha > m / 2.0)) {
    throw DomainError("lemma1_rhs: requires alpha > m/2, got alpha=" + std::to_string(alpha));
  }
  return std::exp((m / 2.0) * std::log(std::numbers::pi) + specfun::log_gamma_ratio(alpha - m / 2.0, alpha));
}

/// Explicit constant of the slab identity for the extension operator: the
/// slab value at exponent alpha*p, pi^{m/2} Gamma(alpha p - m/2) / Gamma(alpha p).
inline double lemma2_constant(double alpha, double p, int m) {
  if (!(alpha * p - m / 2.0 > 0.0)) {
    throw DomainError("lemma2_constant: requires alpha*p > m/2");
  }
  return lemma1_rhs(alpha * p, m);
}

}  // namespace sobtrace
