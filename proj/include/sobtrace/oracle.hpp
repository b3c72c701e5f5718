#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sobtrace/errors.hpp"
#include "sobtrace/quadrature.hpp"

// Ground truth that does not go through the grid, the FFT or the Gamma
// function: one-dimensional radial quadratures of the integrals behind the
// trace identity, weighted slab integrals and Gaussian test functions.

namespace sobtrace::oracle {

using quad::QuadratureResult;

/// Surface area of the unit sphere S^{d-1} for d = 1, 2, 3.
inline double sphere_area(int d) {
  switch (d) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * std::numbers::pi;
    case 3:
      return 4.0 * std::numbers::pi;
    default:
      throw DimensionError("radial oracles support dimensions 1..3, got " + std::to_string(d));
  }
}

inline quad::Tolerance default_tolerance() { return quad::Tolerance{1e-15, 1e-12, 400'000}; }

/// integral over R^m of (1 + |xi'|^2 + |xi''|^2)^{-alpha} dxi'', by radial quadrature.
inline QuadratureResult slab_integral(double alpha, int m, double xi_prime_norm,
                                      const quad::Tolerance& tol = default_tolerance()) {
  if (!(alpha > m / 2.0)) {
    throw DomainError("slab integral diverges unless alpha > m/2");
  }
  if (!(xi_prime_norm >= 0.0)) {
    throw DomainError("|xi'| must be non-negative");
  }
  const double base = 1.0 + xi_prime_norm * xi_prime_norm;
  const double area = sphere_area(m);
  auto radial = [&](double r) { return std::pow(r, m - 1) * std::pow(base + r * r, -alpha); };
  auto result = quad::integrate_half_line(radial, std::sqrt(base), tol);
  result.value *= area;
  result.abs_error_estimate *= area;
  return result;
}

/// integral over R^m of (1+|xi'|^2)^{alpha-m/2} (1+|xi'|^2+|xi''|^2)^{-alpha} dxi''.
/// Independent of xi' in exact arithmetic.
inline QuadratureResult lemma1_lhs(double alpha, int m, double xi_prime_norm,
                                   const quad::Tolerance& tol = default_tolerance()) {
  auto result = slab_integral(alpha, m, xi_prime_norm, tol);
  const double weight = std::pow(1.0 + xi_prime_norm * xi_prime_norm, alpha - m / 2.0);
  result.value *= weight;
  result.abs_error_estimate *= weight;
  return result;
}

/// amplitude * exp(-rate |xi|^2) on R^dim.
struct GaussianSpectrum {
  double amplitude;
  double rate;
  int dim;

  double operator()(double radius) const { return amplitude * std::exp(-rate * radius * radius); }
};

/// F(exp(-a|x|^2)) = (2a)^{-d/2} exp(-|xi|^2 / (4a)) under the unitary convention.
inline GaussianSpectrum gaussian_transform(double a, int d) {
  if (!(a > 0.0)) {
    throw DomainError("gaussian_transform: width parameter must be positive");
  }
  if (d < 1) {
    throw DimensionError("gaussian_transform: dimension must be >= 1");
  }
  return GaussianSpectrum{std::pow(2.0 * a, -d / 2.0), 1.0 / (4.0 * a), d};
}

/// ||exp(-a|x|^2)||_{W^{s,2}(R^d)} through Plancherel and a radial integral.
inline double gaussian_h_s_norm(double a, double s, int d, const quad::Tolerance& tol = default_tolerance()) {
  const GaussianSpectrum spectrum = gaussian_transform(a, d);
  auto radial = [&](double r) {
    const double v = spectrum(r);
    return std::pow(1.0 + r * r, s) * v * v * std::pow(r, d - 1);
  };
  const auto result = quad::integrate_half_line(radial, std::sqrt(2.0 * a), tol);
  return std::sqrt(sphere_area(d) * result.value);
}

/// integral over R^n of | g^(xi') (1+|xi'|^2)^{beta-m/2} (1+|xi|^2)^{-alpha} |^p dxi,
/// as an outer radial quadrature in xi' (dimension n-m) around an inner
/// quadrature of the xi'' slab.
inline QuadratureResult lemma2_lhs(const GaussianSpectrum& g_hat, double alpha, double beta, double p, int m, int n,
                                   const quad::Tolerance& tol = default_tolerance()) {
  if (g_hat.dim != n - m) {
    throw DimensionError("lemma2_lhs: boundary spectrum must live on R^{n-m}");
  }
  if (!(alpha * p > m / 2.0)) {
    throw DomainError("lemma2_lhs: requires alpha*p > m/2");
  }
  if (g_hat.amplitude == 0.0) {
    return QuadratureResult{0.0, 0.0, 1};
  }
  const int retained = n - m;
  long inner_evaluations = 0;
  const quad::Tolerance inner_tol{0.0, tol.relative, tol.max_evaluations};
  auto radial = [&](double r) {
    const double g = std::abs(g_hat(r));
    if (g == 0.0) {
      return 0.0;
    }
    const auto slab = slab_integral(alpha * p, m, r, inner_tol);
    inner_evaluations += slab.evaluations;
    return std::pow(g, p) * std::pow(1.0 + r * r, (beta - m / 2.0) * p) * slab.value * std::pow(r, retained - 1);
  };
  const double scale = 1.0 / std::sqrt(std::max(g_hat.rate * p, 1e-3));
  auto result = quad::integrate_half_line(radial, scale, tol);
  const double area = sphere_area(retained);
  result.value *= area;
  result.abs_error_estimate *= area;
  result.evaluations += inner_evaluations;
  return result;
}

/// integral over R^{n-m} of | g^(xi') (1+|xi'|^2)^{beta-alpha-m/(2q)} |^p dxi', 1/q = 1 - 1/p.
inline QuadratureResult lemma2_marginal(const GaussianSpectrum& g_hat, double alpha, double beta, double p, int m,
                                        int n, const quad::Tolerance& tol = default_tolerance()) {
  if (g_hat.dim != n - m) {
    throw DimensionError("lemma2_marginal: boundary spectrum must live on R^{n-m}");
  }
  if (g_hat.amplitude == 0.0) {
    return QuadratureResult{0.0, 0.0, 1};
  }
  const int retained = n - m;
  const double inv_q = 1.0 - 1.0 / p;
  const double exponent = (beta - alpha - m * inv_q / 2.0) * p;
  auto radial = [&](double r) {
    return std::pow(std::abs(g_hat(r)), p) * std::pow(1.0 + r * r, exponent) * std::pow(r, retained - 1);
  };
  const double scale = 1.0 / std::sqrt(std::max(g_hat.rate * p, 1e-3));
  auto result = quad::integrate_half_line(radial, scale, tol);
  const double area = sphere_area(retained);
  result.value *= area;
  result.abs_error_estimate *= area;
  return result;
}

}  // namespace sobtrace::oracle
