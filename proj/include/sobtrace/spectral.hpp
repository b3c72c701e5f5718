#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include <fftw3.h>

#include "sobtrace/errors.hpp"
#include "sobtrace/grid.hpp"

namespace sobtrace {

/// Order s of the Bessel-potential multiplier (1 + |xi|^2)^{s/2}.
/// Negative orders smooth.
struct BesselExponent {
  explicit BesselExponent(double order) : value(order) {
    if (!std::isfinite(order)) {
      throw DomainError("Bessel exponent must be finite");
    }
  }
  double value;
};

namespace detail {

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

inline FftwBuffer make_fftw_buffer(std::size_t n) {
  auto* raw = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (raw == nullptr) {
    throw std::bad_alloc();
  }
  return FftwBuffer(raw);
}

// FFTW planning is not thread-safe; executing an existing plan on new arrays
// is. Plans are created once per (dim, N, sign) under a lock and reused on
// fftw_malloc'd buffers, which keeps alignment (and thus the codelets chosen,
// and thus the rounding) identical from call to call.
class PlanCache {
 public:
  static fftw_plan get(int dim, std::size_t points, int sign) {
    static PlanCache cache;
    std::lock_guard lock(cache.mutex_);
    const auto key = std::make_tuple(dim, points, sign);
    if (auto it = cache.plans_.find(key); it != cache.plans_.end()) {
      return it->second;
    }
    std::vector<int> dims(static_cast<std::size_t>(dim), static_cast<int>(points));
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) {
      total *= points;
    }
    auto scratch = make_fftw_buffer(total);
    fftw_plan plan = fftw_plan_dft(dim, dims.data(), scratch.get(), scratch.get(), sign, FFTW_ESTIMATE);
    if (plan == nullptr) {
      throw std::runtime_error("FFTW failed to create a plan");
    }
    cache.plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) {
      fftw_destroy_plan(plan);
    }
  }
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

// (-1)^{sum of per-axis indices}. Multiplying by it before and after an FFT
// moves the origin from index 0 to index N/2 on each axis (N/2 is even since N >= 8).
inline double checkerboard(const GridSpec& grid, std::size_t flat) {
  const auto idx = grid.unflatten(flat);
  std::size_t parity = 0;
  for (int a = 0; a < grid.dim(); ++a) {
    parity += idx[static_cast<std::size_t>(a)];
  }
  return (parity & 1U) != 0U ? -1.0 : 1.0;
}

inline std::vector<complex> centered_dft(const GridSpec& grid, std::span<const complex> in, int sign, double scale) {
  const std::size_t total = in.size();
  auto buf = make_fftw_buffer(total);
  for (std::size_t i = 0; i < total; ++i) {
    const double c = checkerboard(grid, i);
    buf[i][0] = c * in[i].real();
    buf[i][1] = c * in[i].imag();
  }
  fftw_execute_dft(PlanCache::get(grid.dim(), grid.points(), sign), buf.get(), buf.get());
  std::vector<complex> out(total);
  for (std::size_t i = 0; i < total; ++i) {
    const double c = checkerboard(grid, i) * scale;
    out[i] = complex(c * buf[i][0], c * buf[i][1]);
  }
  return out;
}

inline double squared_frequency_norm(const GridSpec& grid, std::size_t flat) {
  const auto idx = grid.unflatten(flat);
  double r2 = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const double xi = grid.frequency(idx[static_cast<std::size_t>(a)]);
    r2 += xi * xi;
  }
  return r2;
}

inline double weighted_power_sum(std::span<const complex> values, double exponent) {
  double sum = 0.0;
  if (exponent == 2.0) {
    for (const complex& v : values) {
      sum += std::norm(v);
    }
  } else {
    for (const complex& v : values) {
      sum += std::pow(std::abs(v), exponent);
    }
  }
  return sum;
}

inline void require_exponent(double q, const char* op) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError(std::string(op) + ": exponent must be finite and >= 1");
  }
}

}  // namespace detail

/// Discrete unitary Fourier transform:
///   u^(xi_k) = (2 pi)^{-d/2} h^d sum_j u(x_j) exp(-i x_j . xi_k).
/// Exact as a discrete identity; approximates the continuous transform for
/// functions that are negligible near the box edge.
inline Field fourier_forward(const Field& field) {
  require_domain(field, Domain::spatial, "fourier_forward");
  const GridSpec& grid = field.grid();
  const double scale = grid.cell_volume() * std::pow(2.0 * std::numbers::pi, -grid.dim() / 2.0);
  return Field(grid, Domain::frequency, detail::centered_dft(grid, field.values(), FFTW_FORWARD, scale));
}

/// Adjoint of fourier_forward, weight (2 pi)^{-d/2} (pi/L)^d and exp(+i x . xi).
inline Field fourier_inverse(const Field& field) {
  require_domain(field, Domain::frequency, "fourier_inverse");
  const GridSpec& grid = field.grid();
  const double scale = grid.frequency_cell_volume() * std::pow(2.0 * std::numbers::pi, -grid.dim() / 2.0);
  return Field(grid, Domain::spatial, detail::centered_dft(grid, field.values(), FFTW_BACKWARD, scale));
}

/// Pointwise (1 + |xi_k|^2)^{s/2}.
inline Field bessel_multiply(const Field& field, BesselExponent order) {
  require_domain(field, Domain::frequency, "bessel_multiply");
  std::vector<complex> values(field.values().begin(), field.values().end());
  if (order.value != 0.0) {
    const double half = order.value / 2.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] *= std::pow(1.0 + detail::squared_frequency_norm(field.grid(), i), half);
    }
  }
  return Field(field.grid(), Domain::frequency, std::move(values));
}

/// Rectangle-rule L^q norm, (h^d sum |u_j|^q)^{1/q}, of a spatial field.
inline double lq_norm(const Field& field, double q) {
  require_domain(field, Domain::spatial, "lq_norm");
  detail::require_exponent(q, "lq_norm");
  const double sum = detail::weighted_power_sum(field.values(), q);
  return std::pow(field.grid().cell_volume() * sum, 1.0 / q);
}

/// Frequency-side L^p norm with cell weight (pi/L)^d.
inline double frequency_lp_norm(const Field& field, double p) {
  require_domain(field, Domain::frequency, "frequency_lp_norm");
  detail::require_exponent(p, "frequency_lp_norm");
  const double sum = detail::weighted_power_sum(field.values(), p);
  return std::pow(field.grid().frequency_cell_volume() * sum, 1.0 / p);
}

/// || F^{-1}((1 + |xi|^2)^{s/2} F u) ||_{L^q}, evaluated in physical space.
inline double sobolev_norm(const Field& field, double s, double q) {
  require_domain(field, Domain::spatial, "sobolev_norm");
  detail::require_exponent(q, "sobolev_norm");
  if (s == 0.0) {
    return lq_norm(field, q);
  }
  return lq_norm(fourier_inverse(bessel_multiply(fourier_forward(field), BesselExponent{s})), q);
}

}  // namespace sobtrace
