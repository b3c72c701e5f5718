#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sobtrace/constants.hpp"
#include "sobtrace/errors.hpp"
#include "sobtrace/grid.hpp"
#include "sobtrace/spectral.hpp"
#include "sobtrace/traceops.hpp"

namespace sobtrace {

// ---------------------------------------------------------------------------
// Test-function family

struct GaussianComponent {
  double amplitude;
  double width;
  std::array<double, kMaxDim> center;
};

/// Sum of isotropic Gaussians a_i exp(-|x - c_i|^2 / (2 w_i^2)).
class GaussianMixture {
 public:
  GaussianMixture(int dim, std::vector<GaussianComponent> components) : dim_(dim), components_(std::move(components)) {}

  int dim() const noexcept { return dim_; }
  const std::vector<GaussianComponent>& components() const noexcept { return components_; }

  complex operator()(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& c : components_) {
      double r2 = 0.0;
      for (std::size_t a = 0; a < x.size(); ++a) {
        const double d = x[a] - c.center[a];
        r2 += d * d;
      }
      sum += c.amplitude * std::exp(-r2 / (2.0 * c.width * c.width));
    }
    return complex(sum, 0.0);
  }

 private:
  int dim_;
  std::vector<GaussianComponent> components_;
};

struct MixtureFamily {
  int min_components = 1;
  int max_components = 5;
  double amplitude_min = -1.0;
  double amplitude_max = 1.0;
  double width_min = 0.5;
  double width_max = 2.0;
  double center_min = -2.0;
  double center_max = 2.0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// std::uniform_real_distribution is implementation-defined; this mapping is not.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

}  // namespace detail

/// Deterministic draw from the family: same (dim, family, seed) gives the same mixture.
inline GaussianMixture draw_mixture(int dim, const MixtureFamily& family, std::uint64_t seed) {
  if (family.min_components < 1 || family.max_components < family.min_components) {
    throw std::invalid_argument("mixture family needs 1 <= min_components <= max_components");
  }
  if (!(family.width_min > 0.0) || family.width_max < family.width_min) {
    throw std::invalid_argument("mixture family needs 0 < width_min <= width_max");
  }
  std::mt19937_64 rng(detail::splitmix64(seed));
  const auto span = static_cast<std::uint64_t>(family.max_components - family.min_components + 1);
  const int count = family.min_components + static_cast<int>(rng() % span);
  std::vector<GaussianComponent> components;
  components.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    GaussianComponent c{};
    c.amplitude = detail::uniform(rng, family.amplitude_min, family.amplitude_max);
    c.width = detail::uniform(rng, family.width_min, family.width_max);
    for (int a = 0; a < dim; ++a) {
      c.center[static_cast<std::size_t>(a)] = detail::uniform(rng, family.center_min, family.center_max);
    }
    components.push_back(c);
  }
  return GaussianMixture(dim, std::move(components));
}

// ---------------------------------------------------------------------------
// Single-instance verification

using TestFunction = std::function<complex(std::span<const double>)>;

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

/// Allowed excess of the ratio over 1, per refinement level.
struct VerifyTolerance {
  double base = 5e-2;
  double refined = 1e-2;
  int refined_from_level = 2;
  // Two ratios that agree to this relative slack count as non-increasing;
  // below it the differences are round-off, not discretization.
  double monotone_slack = 1e-10;
  // lhs below this with rhs == 0 is accepted as zero.
  double zero_lhs = 1e-12;

  double allowed(std::size_t level) const {
    return static_cast<int>(level) >= refined_from_level ? refined : base;
  }
};

struct RefinementStep {
  std::size_t points;
  double half_width;
  double lhs;
  double rhs;
  double ratio;
};

struct VerificationReport {
  IndexParams params;
  double lhs{};
  double rhs_norm{};
  double constant{};
  double ratio{};
  std::vector<RefinementStep> refinement_trace{};
  Verdict verdict{Verdict::inconclusive};
  std::string note{};
};

namespace detail {

inline RefinementStep evaluate_level(const Field& u, const IndexParams& params, double constant) {
  const SplitDims split(params.n(), params.m());
  const double lhs = sobolev_norm(trace_restrict(u, split), params.trace_order(), params.p());
  const double rhs = sobolev_norm(u, params.s(), params.q());
  double ratio = 0.0;
  if (rhs > 0.0) {
    ratio = lhs / (constant * rhs);
  } else if (lhs > 0.0) {
    ratio = std::numeric_limits<double>::infinity();
  }
  return RefinementStep{u.grid().points(), u.grid().half_width(), lhs, rhs, ratio};
}

inline void require_verifiable(const IndexParams& params, int field_dim) {
  if (!params.admissible()) {
    throw DomainError("verify_instance: indices are not admissible");
  }
  if (field_dim != params.n()) {
    throw DimensionError("verify_instance: field dimension differs from n");
  }
}

inline void finish_report(VerificationReport& report, const VerifyTolerance& tol) {
  const RefinementStep& last = report.refinement_trace.back();
  report.lhs = last.lhs;
  report.rhs_norm = last.rhs;
  report.ratio = last.ratio;

  for (const auto& step : report.refinement_trace) {
    if (step.rhs == 0.0 && step.lhs > tol.zero_lhs) {
      report.verdict = Verdict::inconclusive;
      report.note = "numerical inconsistency: zero source norm with non-zero trace norm";
      return;
    }
  }

  const auto& trace = report.refinement_trace;
  const std::size_t final_level = trace.size() - 1;
  const bool within = report.ratio <= 1.0 + tol.allowed(final_level);
  bool monotone = true;
  if (trace.size() >= 2) {
    const double prev = trace[trace.size() - 2].ratio;
    monotone = report.ratio <= prev + tol.monotone_slack * std::abs(prev);
  }
  report.verdict = within && monotone ? Verdict::pass : Verdict::fail;
  if (!within) {
    report.note = "ratio exceeds 1 + tolerance";
  } else if (!monotone) {
    report.note = "ratio increased over the last refinement";
  }
}

}  // namespace detail

/// Checks the trace inequality for a sampled field on its own grid only.
inline VerificationReport verify_instance(const Field& u, const IndexParams& params, const VerifyTolerance& tol = {}) {
  require_domain(u, Domain::spatial, "verify_instance");
  detail::require_verifiable(params, u.grid().dim());
  VerificationReport report{.params = params};
  report.constant = trace_constant(params).value;
  report.refinement_trace.push_back(detail::evaluate_level(u, params, report.constant));
  detail::finish_report(report, tol);
  return report;
}

/// Checks the trace inequality for u on `base` and on `refinements` refined grids.
inline VerificationReport verify_instance(const TestFunction& u, const GridSpec& base, const IndexParams& params,
                                          int refinements, const VerifyTolerance& tol = {}) {
  detail::require_verifiable(params, base.dim());
  if (refinements < 0) {
    throw std::invalid_argument("verify_instance: refinement count must be non-negative");
  }
  VerificationReport report{.params = params};
  report.constant = trace_constant(params).value;
  GridSpec grid = base;
  for (int level = 0; level <= refinements; ++level) {
    if (level > 0) {
      grid = refine(grid);
    }
    report.refinement_trace.push_back(detail::evaluate_level(sample(grid, u), params, report.constant));
  }
  detail::finish_report(report, tol);
  return report;
}

/// ||F u||_{l^p} / ||u||_{l^q} with p the conjugate of q; equals the
/// sharp Hausdorff-Young constant for Gaussians.
inline double hausdorff_young_ratio(const Field& spatial, double q) {
  if (!(q > 1.0 && q <= 2.0)) {
    throw DomainError("hausdorff_young_ratio: q must lie in (1, 2]");
  }
  const double p = q / (q - 1.0);
  return frequency_lp_norm(fourier_forward(spatial), p) / lq_norm(spatial, q);
}

// ---------------------------------------------------------------------------
// Sweeps

struct ParamTuple {
  double q;
  double s;
  double t;
  int m;
  int n;
  auto operator<=>(const ParamTuple&) const = default;
};

struct SweepSpec {
  // Explicit tuples, used verbatim.
  std::vector<ParamTuple> tuples;
  // Cartesian ranges; only admissible combinations at least boundary_margin
  // below the upper end of the t window are kept.
  std::vector<double> q_values;
  std::vector<double> s_values;
  std::vector<double> t_values;
  std::vector<int> m_values;
  std::vector<int> n_values;
  double boundary_margin = 0.1;

  int functions_per_tuple = 3;
  MixtureFamily family;
  std::uint64_t seed = 1;

  std::size_t points = 128;
  double half_width = 12.0;
  int refinements = 2;
  VerifyTolerance tolerance;
  // 0 = hardware concurrency; SOBTRACE_MAX_WORKERS caps either way.
  int workers = 0;
};

struct SweepEntry {
  ParamTuple tuple;
  int function_index;
  std::uint64_t function_seed;
  std::optional<VerificationReport> report;
  std::string error;
};

/// Sorted, de-duplicated list of tuples a sweep will run.
inline std::vector<ParamTuple> expand_tuples(const SweepSpec& spec) {
  std::vector<ParamTuple> out = spec.tuples;
  for (double q : spec.q_values) {
    for (double s : spec.s_values) {
      for (double t : spec.t_values) {
        for (int m : spec.m_values) {
          for (int n : spec.n_values) {
            if (m < 1 || n <= m || !(q > 1.0 && q <= 2.0)) {
              continue;
            }
            const IndexParams params = make_params(q, s, t, m, n);
            if (params.admissible() && t <= params.t_boundary() - spec.boundary_margin) {
              out.push_back(ParamTuple{q, s, t, m, n});
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Seed of the j-th test function in dimension n; shared by all tuples with that n.
inline std::uint64_t function_seed(std::uint64_t seed, int n, int j) {
  return detail::splitmix64(detail::splitmix64(seed ^ (static_cast<std::uint64_t>(n) << 32)) +
                            static_cast<std::uint64_t>(j));
}

inline int resolve_workers(int requested, std::size_t tasks) {
  int workers = requested > 0 ? requested : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("SOBTRACE_MAX_WORKERS"); cap != nullptr) {
    const int limit = std::atoi(cap);
    if (limit > 0) {
      workers = std::min(workers, limit);
    }
  }
  workers = std::min<int>(workers, static_cast<int>(std::max<std::size_t>(tasks, 1)));
  return std::max(workers, 1);
}

/// Runs every (tuple, function) instance. Instances are independent and are
/// spread over worker threads; the result order is the sorted tuple order,
/// then function index, whatever order the workers finish in.
inline std::vector<SweepEntry> run_sweep(const SweepSpec& spec) {
  const std::vector<ParamTuple> tuples = expand_tuples(spec);
  std::vector<SweepEntry> entries;
  for (const auto& tuple : tuples) {
    for (int j = 0; j < spec.functions_per_tuple; ++j) {
      entries.push_back(SweepEntry{tuple, j, function_seed(spec.seed, tuple.n, j), std::nullopt, {}});
    }
  }

  auto run_one = [&](SweepEntry& entry) {
    try {
      const ParamTuple& tp = entry.tuple;
      const IndexParams params = make_params(tp.q, tp.s, tp.t, tp.m, tp.n);
      if (!params.admissible()) {
        entry.error = "inadmissible indices";
        return;
      }
      const GaussianMixture mixture = draw_mixture(tp.n, spec.family, entry.function_seed);
      const GridSpec base(tp.n, spec.half_width, spec.points);
      entry.report = verify_instance(mixture, base, params, spec.refinements, spec.tolerance);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
  };

  const int workers = resolve_workers(spec.workers, entries.size());
  if (workers <= 1) {
    for (auto& entry : entries) {
      run_one(entry);
    }
    return entries;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < entries.size(); i = next++) {
        run_one(entries[i]);
      }
    });
  }
  pool.clear();
  return entries;
}

inline Verdict entry_verdict(const SweepEntry& entry) {
  return entry.report ? entry.report->verdict : Verdict::inconclusive;
}

namespace detail {
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// One row per instance: q,p,s,t,m,n,grid_N,lhs,rhs,constant,ratio,verdict.
/// grid_N and the norms refer to the finest grid of the refinement trace.
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepEntry>& entries) {
  using detail::format_double;
  out << "q,p,s,t,m,n,grid_N,lhs,rhs,constant,ratio,verdict\n";
  for (const auto& e : entries) {
    const ParamTuple& tp = e.tuple;
    out << format_double(tp.q) << ',' << format_double(tp.q / (tp.q - 1.0)) << ',' << format_double(tp.s) << ','
        << format_double(tp.t) << ',' << tp.m << ',' << tp.n << ',';
    if (e.report) {
      const auto& r = *e.report;
      out << r.refinement_trace.back().points << ',' << format_double(r.lhs) << ',' << format_double(r.rhs_norm) << ','
          << format_double(r.constant) << ',' << format_double(r.ratio) << ',' << to_string(r.verdict) << '\n';
    } else {
      out << ",,,,," << to_string(Verdict::inconclusive) << '\n';
    }
  }
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) {
    throw std::invalid_argument("not a number: " + s);
  }
  return v;
}

inline long long parse_integer(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) {
    throw std::invalid_argument("not an integer: " + s);
  }
  return v;
}

}  // namespace detail

/// Reads a flat `key = value` sweep description; `#` starts a comment.
/// List keys take comma-separated values; `tuple = q, s, t, m, n` may repeat.
inline SweepSpec parse_sweep_config(std::istream& in) {
  using namespace detail;
  SweepSpec spec;
  std::string line;
  int line_no = 0;
  auto doubles = [](const std::string& v) {
    std::vector<double> out;
    for (const auto& item : split_list(v)) {
      out.push_back(parse_double(item));
    }
    return out;
  };
  auto ints = [](const std::string& v) {
    std::vector<int> out;
    for (const auto& item : split_list(v)) {
      out.push_back(static_cast<int>(parse_integer(item)));
    }
    return out;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "tuple") {
        const auto items = split_list(value);
        if (items.size() != 5) {
          throw std::invalid_argument("tuple needs q, s, t, m, n");
        }
        spec.tuples.push_back(ParamTuple{parse_double(items[0]), parse_double(items[1]), parse_double(items[2]),
                                         static_cast<int>(parse_integer(items[3])),
                                         static_cast<int>(parse_integer(items[4]))});
        make_params(spec.tuples.back().q, spec.tuples.back().s, spec.tuples.back().t, spec.tuples.back().m,
                    spec.tuples.back().n);
      } else if (key == "q") {
        spec.q_values = doubles(value);
      } else if (key == "s") {
        spec.s_values = doubles(value);
      } else if (key == "t") {
        spec.t_values = doubles(value);
      } else if (key == "m") {
        spec.m_values = ints(value);
      } else if (key == "n") {
        spec.n_values = ints(value);
      } else if (key == "boundary_margin") {
        spec.boundary_margin = parse_double(value);
      } else if (key == "functions") {
        spec.functions_per_tuple = static_cast<int>(parse_integer(value));
      } else if (key == "seed") {
        spec.seed = static_cast<std::uint64_t>(parse_integer(value));
      } else if (key == "points") {
        spec.points = static_cast<std::size_t>(parse_integer(value));
      } else if (key == "half_width") {
        spec.half_width = parse_double(value);
      } else if (key == "refinements") {
        spec.refinements = static_cast<int>(parse_integer(value));
      } else if (key == "base_tolerance") {
        spec.tolerance.base = parse_double(value);
      } else if (key == "refined_tolerance") {
        spec.tolerance.refined = parse_double(value);
      } else if (key == "monotone_slack") {
        spec.tolerance.monotone_slack = parse_double(value);
      } else if (key == "workers") {
        spec.workers = static_cast<int>(parse_integer(value));
      } else if (key == "components_min") {
        spec.family.min_components = static_cast<int>(parse_integer(value));
      } else if (key == "components_max") {
        spec.family.max_components = static_cast<int>(parse_integer(value));
      } else if (key == "amplitude_min") {
        spec.family.amplitude_min = parse_double(value);
      } else if (key == "amplitude_max") {
        spec.family.amplitude_max = parse_double(value);
      } else if (key == "width_min") {
        spec.family.width_min = parse_double(value);
      } else if (key == "width_max") {
        spec.family.width_max = parse_double(value);
      } else if (key == "center_min") {
        spec.family.center_min = parse_double(value);
      } else if (key == "center_max") {
        spec.family.center_max = parse_double(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (spec.functions_per_tuple < 0 || spec.refinements < 0) {
    throw std::invalid_argument("config: functions and refinements must be non-negative");
  }
  GridSpec(1, spec.half_width, spec.points);  // validates points / half_width
  return spec;
}

// ---------------------------------------------------------------------------
// Asymptotics of the constant

enum class AsymptoticsMode { boundary_blowup, large_s_decay };

struct AsymptoticsRow {
  double parameter;  // t_k (boundary mode) or s (decay mode)
  double abscissa;   // k (boundary mode) or ln s (decay mode)
  std::optional<double> constant;
  std::string error;
};

struct AsymptoticsTable {
  AsymptoticsMode mode;
  std::vector<AsymptoticsRow> rows;
  double fitted_slope{};
  double predicted_slope{};
};

/// Leading-order slope of ln C:
///  boundary mode: C ~ delta^{-(1/q - 1/p)} from Gamma(delta) ~ 1/delta, and delta
///    shrinks tenfold per step, so d ln C / dk = (1/q - 1/p) ln 10;
///  decay mode: Gamma(x - c)/Gamma(x) ~ x^{-c} (Stirling) applied to both brackets,
///    the first at x ~ sq/2 with c = m/2 and power 1/q, the second at x ~ s p/(2(p-2))
///    with c = (n-m)/2 and power 1/q - 1/p, gives
///    d ln C / d ln s = -(m/(2q) + (n-m)/2 (1/q - 1/p)).
inline double predicted_slope(AsymptoticsMode mode, const IndexParams& base) {
  if (mode == AsymptoticsMode::boundary_blowup) {
    return base.exponent_gap() * std::log(10.0);
  }
  return -(base.m() / (2.0 * base.q()) + (base.n() - base.m()) / 2.0 * base.exponent_gap());
}

inline constexpr std::array<double, 5> kDecaySmoothness = {5.0, 10.0, 20.0, 40.0, 80.0};
inline constexpr int kBoundarySteps = 6;

/// boundary_blowup: t_k = t_b - 10^{-k} (t_b - t_base), k = 1..6, with
/// t_b = s - n(1/q - 1/p). large_s_decay: s in {5, 10, 20, 40, 80} at the base t.
/// Per-row failures are kept in the row; the slope is a least-squares fit of
/// ln C against the abscissa over the rows that evaluated.
inline AsymptoticsTable asymptotics_campaign(AsymptoticsMode mode, const IndexParams& base) {
  AsymptoticsTable table{mode, {}, 0.0, predicted_slope(mode, base)};
  if (mode == AsymptoticsMode::boundary_blowup) {
    if (base.exponent_gap() == 0.0) {
      throw DomainError(
          "boundary mode needs q < 2: at q = 2 the second Gamma bracket has exponent 0 and the constant does not "
          "depend on t");
    }
    if (!base.admissible()) {
      throw DomainError("boundary mode needs an admissible base point");
    }
    const double t_b = base.t_boundary();
    const double delta = t_b - base.t();
    for (int k = 1; k <= kBoundarySteps; ++k) {
      const double t = t_b - std::pow(10.0, -k) * delta;
      table.rows.push_back(AsymptoticsRow{t, static_cast<double>(k), std::nullopt, {}});
    }
  } else {
    for (double s : kDecaySmoothness) {
      table.rows.push_back(AsymptoticsRow{s, std::log(s), std::nullopt, {}});
    }
  }

  for (auto& row : table.rows) {
    try {
      const IndexParams params = mode == AsymptoticsMode::boundary_blowup ? base.with_st(base.s(), row.parameter)
                                                                          : base.with_st(row.parameter, base.t());
      row.constant = trace_constant(params).value;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const auto& row : table.rows) {
    if (row.constant) {
      const double y = std::log(*row.constant);
      sx += row.abscissa;
      sy += y;
      sxx += row.abscissa * row.abscissa;
      sxy += row.abscissa * y;
      ++count;
    }
  }
  if (count >= 2) {
    table.fitted_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  } else {
    table.fitted_slope = std::numeric_limits<double>::quiet_NaN();
  }
  return table;
}

// ---------------------------------------------------------------------------
// Extension round trip

struct ExtensionStep {
  std::size_t points;
  double half_width;
  double relative_sup_error;
};

/// sup |trace(extend(g)) - g| / sup |g| for g = exp(-|x'|^2/2) on a refinement sequence.
inline std::vector<ExtensionStep> extension_roundtrip(double s, const SplitDims& split, const GridSpec& base_boundary,
                                                      int refinements) {
  if (base_boundary.dim() != split.n_minus_m()) {
    throw DimensionError("extension_roundtrip: boundary grid must be (n-m)-dimensional");
  }
  std::vector<ExtensionStep> out;
  GridSpec boundary = base_boundary;
  for (int level = 0; level <= refinements; ++level) {
    if (level > 0) {
      boundary = refine(boundary);
    }
    const Field g = sample(boundary, [](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) {
        r2 += v * v;
      }
      return std::exp(-r2 / 2.0);
    });
    const GridSpec target(split.n(), boundary.half_width(), boundary.points());
    const Field back = trace_restrict(extend(g, s, split, target), split);
    double err = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      err = std::max(err, std::abs(back[i] - g[i]));
      peak = std::max(peak, std::abs(g[i]));
    }
    out.push_back(ExtensionStep{boundary.points(), boundary.half_width(), err / peak});
  }
  return out;
}

}  // namespace sobtrace
