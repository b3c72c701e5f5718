#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "sobtrace/errors.hpp"

namespace sobtrace::quad {

struct QuadratureResult {
  double value{};
  double abs_error_estimate{};
  long evaluations{};
};

struct Tolerance {
  double absolute = 1e-13;
  double relative = 1e-12;
  long max_evaluations = 400'000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class Fn>
Segment gauss_kronrod_15(Fn& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);

  std::array<double, 7> f_left{};
  std::array<double, 7> f_right{};
  double kronrod = kKronrodWeights[7] * f_centre;
  double gauss = kGaussWeights[3] * f_centre;
  double abs_sum = std::abs(kronrod);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f_left[j] = f(centre - dx);
    f_right[j] = f(centre + dx);
    const double pair = f_left[j] + f_right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(f_left[j]) + std::abs(f_right[j]));
    if (j % 2 == 1) {
      gauss += kGaussWeights[j / 2] * pair;
    }
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(f_centre - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));
  }

  const double scale = std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  asc *= scale;
  abs_sum *= scale;
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  if (abs_sum > tiny / (50.0 * eps)) {
    error = std::max(50.0 * eps * abs_sum, error);
  }
  return Segment{a, b, kronrod * half, error};
}

}  // namespace detail

/// Globally adaptive G7-K15 on [a, b]: the segment with the largest error
/// estimate is bisected until the summed estimate meets the tolerance.
/// Throws NonConvergence when the evaluation budget runs out first.
template <class Fn>
QuadratureResult integrate(Fn&& f, double a, double b, const Tolerance& tol = {}) {
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod_15(f, a, b));
  long evaluations = 15;
  double total = heap.top().value;
  double error = heap.top().error;

  while (error > std::max(tol.absolute, tol.relative * std::abs(total))) {
    if (evaluations + 30 > tol.max_evaluations) {
      throw NonConvergence("adaptive quadrature: error estimate " + std::to_string(error) + " above target after " +
                           std::to_string(evaluations) + " evaluations");
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NonConvergence("adaptive quadrature: interval cannot be bisected further");
    }
    const detail::Segment left = detail::gauss_kronrod_15(f, worst.a, mid);
    const detail::Segment right = detail::gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the segments to shed the drift of the running updates.
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return QuadratureResult{value, err, evaluations};
}

/// Integral of f over [0, inf) via r = scale * tan(theta), theta in [0, pi/2).
/// For integrands like (B + r^2)^{-alpha} with scale = sqrt(B) this turns the
/// integrand into powers of sin and cos, the classical reduction.
template <class Fn>
QuadratureResult integrate_half_line(Fn&& f, double scale, const Tolerance& tol = {}) {
  auto mapped = [&](double theta) {
    const double c = std::cos(theta);
    const double r = scale * std::tan(theta);
    return f(r) * scale / (c * c);
  };
  return integrate(mapped, 0.0, std::numbers::pi / 2.0, tol);
}

}  // namespace sobtrace::quad
