#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sobtrace/constants.hpp"
#include "sobtrace/errors.hpp"
#include "sobtrace/grid.hpp"
#include "sobtrace/spectral.hpp"

namespace sobtrace {

/// Split R^n = R^{n-m} x R^m. The retained coordinates x' are the first n-m
/// axes and the trace kills the last m axes (x'' = 0).
class SplitDims {
 public:
  SplitDims(int n, int m) : n_(n), m_(m) {
    if (m < 1 || n - m < 1) {
      throw DimensionError("split needs m >= 1 and n - m >= 1, got n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int n_minus_m() const noexcept { return n_ - m_; }

 private:
  int n_;
  int m_;
};

namespace detail {

inline void require_split(const Field& field, const SplitDims& split, const char* op) {
  if (field.grid().dim() != split.n()) {
    throw DimensionError(std::string(op) + ": field is " + std::to_string(field.grid().dim()) +
                         "-dimensional, split expects n=" + std::to_string(split.n()));
  }
}

inline GridSpec retained_grid(const GridSpec& grid, const SplitDims& split) {
  return GridSpec(split.n_minus_m(), grid.half_width(), grid.points());
}

// N^m: number of nodes in one x'' (or xi'') slab.
inline std::size_t slab_size(const GridSpec& grid, const SplitDims& split) {
  std::size_t count = 1;
  for (int a = 0; a < split.m(); ++a) {
    count *= grid.points();
  }
  return count;
}

}  // namespace detail

/// Restriction to x'' = 0: samples u(x', 0) on the (n-m)-dimensional grid.
inline Field trace_restrict(const Field& field, const SplitDims& split) {
  require_domain(field, Domain::spatial, "trace_restrict");
  detail::require_split(field, split, "trace_restrict");
  const GridSpec& grid = field.grid();
  const GridSpec out_grid = detail::retained_grid(grid, split);
  const std::size_t slab = detail::slab_size(grid, split);

  // Offset of (x'' = 0) inside a slab: every killed axis at index N/2.
  std::size_t origin = 0;
  for (int a = 0; a < split.m(); ++a) {
    origin = origin * grid.points() + grid.origin_index();
  }

  std::vector<complex> values(out_grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = field[i * slab + origin];
  }
  return Field(out_grid, Domain::spatial, std::move(values));
}

/// Trace computed on the Fourier side:
///   f^(xi') = (2 pi)^{-m/2} integral over R^m of u^(xi', xi'') dxi'',
/// with the integral replaced by the rectangle rule over the truncated box.
inline Field trace_fourier(const Field& field, const SplitDims& split) {
  require_domain(field, Domain::frequency, "trace_fourier");
  detail::require_split(field, split, "trace_fourier");
  const GridSpec& grid = field.grid();
  const GridSpec out_grid = detail::retained_grid(grid, split);
  const std::size_t slab = detail::slab_size(grid, split);
  const double weight = std::pow(grid.frequency_spacing(), split.m()) * std::pow(2.0 * std::numbers::pi, -split.m() / 2.0);

  std::vector<complex> values(out_grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    complex sum{};
    for (std::size_t j = 0; j < slab; ++j) {
      sum += field[i * slab + j];
    }
    values[i] = weight * sum;
  }
  return Field(out_grid, Domain::frequency, std::move(values));
}

/// Right inverse of the trace:
///   u = 2^{m/2} Gamma(s) / Gamma(s - m/2)
///       F^{-1}[ g^(xi') (1 + |xi'|^2)^{s - m/2} / (1 + |xi|^2)^s ].
/// The xi'' integral of the multiplier is the slab integral (see lemma1_rhs), so in the
/// continuum trace(u) = g. On the grid the truncated xi'' tail decays like
/// R^{1-2s} with R the largest frequency node.
inline Field extend(const Field& g_field, double s, const SplitDims& split, const GridSpec& target_grid) {
  require_domain(g_field, Domain::spatial, "extend");
  if (!(s > split.m() / 2.0)) {
    throw DomainError("extend: requires s > m/2, got s=" + std::to_string(s));
  }
  if (g_field.grid().dim() != split.n_minus_m()) {
    throw DimensionError("extend: boundary datum must be (n-m)-dimensional");
  }
  if (target_grid.dim() != split.n() || target_grid.points() != g_field.grid().points() ||
      target_grid.half_width() != g_field.grid().half_width()) {
    throw DimensionError("extend: target grid must share L and N with the boundary grid and have dimension n");
  }

  const double m = split.m();
  const double prefactor = std::pow(2.0, m / 2.0) / specfun::gamma_ratio(s - m / 2.0, s);
  const Field g_hat = fourier_forward(g_field);
  const std::size_t slab = detail::slab_size(target_grid, split);

  std::vector<complex> spectrum(target_grid.size());
  for (std::size_t i = 0; i < g_hat.size(); ++i) {
    const double r2_retained = detail::squared_frequency_norm(g_hat.grid(), i);
    const complex boundary = prefactor * g_hat[i] * std::pow(1.0 + r2_retained, s - m / 2.0);
    for (std::size_t j = 0; j < slab; ++j) {
      const std::size_t flat = i * slab + j;
      spectrum[flat] = boundary * std::pow(1.0 + detail::squared_frequency_norm(target_grid, flat), -s);
    }
  }
  return fourier_inverse(Field(target_grid, Domain::frequency, std::move(spectrum)));
}

}  // namespace sobtrace
