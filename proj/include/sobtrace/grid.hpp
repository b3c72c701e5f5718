#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sobtrace/errors.hpp"

namespace sobtrace {

using complex = std::complex<double>;

inline constexpr int kMaxDim = 3;
inline constexpr std::size_t kMaxPointsPerAxis = std::size_t{1} << 16;

// Index convention, shared by every module:
//   values are stored row-major, axis 0 slowest;
//   per-axis index j in [0, N) maps to the centered integer k = j - N/2,
//   spatial coordinate  x = k * h,      h = 2L/N,
//   frequency node     xi = k * pi/L.
// The coordinate x = 0 (and xi = 0) therefore sits at j = N/2 on every axis.

/// Uniform tensor grid on [-L, L)^d with N points per axis.
class GridSpec {
 public:
  GridSpec(int dim, double half_width, std::size_t points) : dim_(dim), half_width_(half_width), points_(points) {
    if (dim < 1 || dim > kMaxDim) {
      throw DimensionError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
      throw DomainError("grid half-width must be positive");
    }
    if (points < 8 || !std::has_single_bit(points)) {
      throw DomainError("points per axis must be a power of two >= 8, got " + std::to_string(points));
    }
    if (points > kMaxPointsPerAxis) {
      throw DomainError("points per axis exceeds 2^16");
    }
  }

  int dim() const noexcept { return dim_; }
  double half_width() const noexcept { return half_width_; }
  std::size_t points() const noexcept { return points_; }

  double spacing() const noexcept { return 2.0 * half_width_ / static_cast<double>(points_); }
  double frequency_spacing() const noexcept { return std::numbers::pi / half_width_; }
  double cell_volume() const noexcept { return std::pow(spacing(), dim_); }
  double frequency_cell_volume() const noexcept { return std::pow(frequency_spacing(), dim_); }

  std::size_t size() const noexcept {
    std::size_t total = 1;
    for (int a = 0; a < dim_; ++a) {
      total *= points_;
    }
    return total;
  }

  /// Centered integer k = j - N/2 for per-axis index j.
  std::ptrdiff_t centered(std::size_t j) const noexcept {
    return static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(points_ / 2);
  }
  double coordinate(std::size_t j) const noexcept { return static_cast<double>(centered(j)) * spacing(); }
  double frequency(std::size_t j) const noexcept { return static_cast<double>(centered(j)) * frequency_spacing(); }
  std::size_t origin_index() const noexcept { return points_ / 2; }

  /// Per-axis indices of the flat row-major offset.
  std::array<std::size_t, kMaxDim> unflatten(std::size_t flat) const noexcept {
    std::array<std::size_t, kMaxDim> idx{};
    for (int a = dim_ - 1; a >= 0; --a) {
      idx[static_cast<std::size_t>(a)] = flat % points_;
      flat /= points_;
    }
    return idx;
  }

  std::size_t flatten(std::span<const std::size_t> idx) const noexcept {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
      flat = flat * points_ + idx[static_cast<std::size_t>(a)];
    }
    return flat;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dim_;
  double half_width_;
  std::size_t points_;
};

/// Doubles the resolution and stretches the box by sqrt(2), so both the
/// aliasing and the truncation error drop along a refinement sequence.
inline GridSpec refine(const GridSpec& grid) {
  if (grid.points() * 2 > kMaxPointsPerAxis) {
    throw DomainError("refine: more than 2^16 points per axis");
  }
  return GridSpec(grid.dim(), grid.half_width() * std::numbers::sqrt2, grid.points() * 2);
}

enum class Domain : std::uint32_t { spatial = 0, frequency = 1 };

inline const char* to_string(Domain d) { return d == Domain::spatial ? "spatial" : "frequency"; }

/// Complex samples on a GridSpec, tagged with the domain they live in.
/// Immutable once built; operations return new fields.
class Field {
 public:
  Field(GridSpec grid, Domain domain, std::vector<complex> values)
      : grid_(grid), domain_(domain), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw DimensionError("field has " + std::to_string(values_.size()) + " values, grid needs " +
                           std::to_string(grid_.size()));
    }
  }

  static Field zeros(GridSpec grid, Domain domain) { return Field(grid, domain, std::vector<complex>(grid.size())); }

  const GridSpec& grid() const noexcept { return grid_; }
  Domain domain() const noexcept { return domain_; }
  std::span<const complex> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  complex at(std::span<const std::size_t> idx) const { return values_[grid_.flatten(idx)]; }
  complex operator[](std::size_t flat) const { return values_[flat]; }

 private:
  GridSpec grid_;
  Domain domain_;
  std::vector<complex> values_;
};

inline void require_domain(const Field& f, Domain expected, const char* op) {
  if (f.domain() != expected) {
    throw TagError(std::string(op) + ": expected a " + to_string(expected) + " field, got " + to_string(f.domain()));
  }
}

/// Pointwise samples f(x_j) at every node of the grid, spatial-tagged.
/// f receives the node coordinates as a span of length grid.dim().
template <class Fn>
Field sample(const GridSpec& grid, Fn&& f) {
  std::vector<complex> values(grid.size());
  std::array<double, kMaxDim> x{};
  const auto d = static_cast<std::size_t>(grid.dim());
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const auto idx = grid.unflatten(flat);
    for (std::size_t a = 0; a < d; ++a) {
      x[a] = grid.coordinate(idx[a]);
    }
    values[flat] = complex(f(std::span<const double>(x.data(), d)));
  }
  return Field(grid, Domain::spatial, std::move(values));
}

/// c * field, same tag.
inline Field scaled(const Field& f, complex c) {
  std::vector<complex> values(f.values().begin(), f.values().end());
  for (auto& v : values) {
    v *= c;
  }
  return Field(f.grid(), f.domain(), std::move(values));
}

// Binary layout (all little-endian):
//   uint32 dim | uint32 N | float64 L | uint32 domain_tag (0 spatial, 1 frequency)
//   then N^d pairs of float64 (real, imaginary) in row-major order.
namespace detail {

template <class T>
void write_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw std::runtime_error("field stream truncated");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace detail

inline void write_field(std::ostream& out, const Field& f) {
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().dim()));
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().points()));
  detail::write_le<double>(out, f.grid().half_width());
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.domain()));
  for (const complex& v : f.values()) {
    detail::write_le<double>(out, v.real());
    detail::write_le<double>(out, v.imag());
  }
}

inline Field read_field(std::istream& in) {
  const auto dim = detail::read_le<std::uint32_t>(in);
  const auto points = detail::read_le<std::uint32_t>(in);
  const auto half_width = detail::read_le<double>(in);
  const auto tag = detail::read_le<std::uint32_t>(in);
  if (tag > 1) {
    throw std::runtime_error("field stream has unknown domain tag " + std::to_string(tag));
  }
  const GridSpec grid(static_cast<int>(dim), half_width, points);
  std::vector<complex> values(grid.size());
  for (auto& v : values) {
    const double re = detail::read_le<double>(in);
    const double im = detail::read_le<double>(in);
    v = complex(re, im);
  }
  return Field(grid, static_cast<Domain>(tag), std::move(values));
}

}  // namespace sobtrace
