#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sobtrace/sobtrace.hpp"

namespace {

using namespace sobtrace;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct IndexArgs {
  double q = 2.0;
  double s = 1.0;
  double t = 0.75;
  int m = 1;
  int n = 2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--q", q, "source integrability exponent in (1, 2]")->required();
    cmd->add_option("--s", s, "source smoothness")->required();
    cmd->add_option("--t", t, "trace-side index")->required();
    cmd->add_option("--m", m, "codimension")->required();
    cmd->add_option("--n", n, "ambient dimension")->required();
  }
  IndexParams params() const { return make_params(q, s, t, m, n); }
};

json to_json(const IndexParams& p) {
  return {{"q", p.q()}, {"p", p.p()}, {"s", p.s()}, {"t", p.t()}, {"m", p.m()}, {"n", p.n()}};
}

json to_json(const ConstantBreakdown& c) {
  return {{"value", c.value},
          {"pi_factor", c.pi_factor},
          {"two_factor", c.two_factor},
          {"pq_factor", c.pq_factor},
          {"gamma_factor_1", c.gamma_factor_1},
          {"gamma_factor_2", c.gamma_factor_2}};
}

json to_json(const VerificationReport& r) {
  json trace = json::array();
  for (const auto& step : r.refinement_trace) {
    trace.push_back({{"grid_N", step.points},
                     {"half_width", step.half_width},
                     {"lhs", step.lhs},
                     {"rhs", step.rhs},
                     {"ratio", step.ratio}});
  }
  json out = {{"params", to_json(r.params)}, {"lhs", r.lhs},           {"rhs_norm", r.rhs_norm},
              {"constant", r.constant},      {"ratio", r.ratio},       {"refinement_trace", trace},
              {"verdict", to_string(r.verdict)}};
  if (!r.note.empty()) {
    out["note"] = r.note;
  }
  return out;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int run_constant(const IndexArgs& args, bool as_json) {
  const auto c = trace_constant(args.params());
  if (as_json) {
    print_json(to_json(c));
  } else {
    std::printf("value           %.17g\npi_factor       %.17g\ntwo_factor      %.17g\npq_factor       %.17g\n"
                "gamma_factor_1  %.17g\ngamma_factor_2  %.17g\n",
                c.value, c.pi_factor, c.two_factor, c.pq_factor, c.gamma_factor_1, c.gamma_factor_2);
  }
  return kExitPass;
}

int run_lemma1(double alpha, int m, double xi) {
  const auto lhs = oracle::slab_integral(alpha, m, xi);
  const double rhs = lemma1_rhs(alpha, m) * std::pow(1.0 + xi * xi, -(alpha - m / 2.0));
  const double err = std::abs(lhs.value - rhs) / rhs;
  print_json({{"alpha", alpha},
              {"m", m},
              {"xi_prime_norm", xi},
              {"lhs", lhs.value},
              {"lhs_abs_error_estimate", lhs.abs_error_estimate},
              {"evaluations", lhs.evaluations},
              {"rhs", rhs},
              {"relative_error", err}});
  return err <= 1e-8 ? kExitPass : kExitFail;
}

int run_lemma2(double alpha, double beta, double p, int m, int n, double width) {
  const auto g = oracle::gaussian_transform(width, n - m);
  const auto lhs = oracle::lemma2_lhs(g, alpha, beta, p, m, n);
  const auto marginal = oracle::lemma2_marginal(g, alpha, beta, p, m, n);
  const double constant = lemma2_constant(alpha, p, m);
  const double rhs = constant * marginal.value;
  const double err = rhs == 0.0 ? std::abs(lhs.value) : std::abs(lhs.value - rhs) / rhs;
  print_json({{"alpha", alpha},
              {"beta", beta},
              {"p", p},
              {"m", m},
              {"n", n},
              {"boundary_gaussian", {{"amplitude", g.amplitude}, {"rate", g.rate}}},
              {"lhs", lhs.value},
              {"marginal", marginal.value},
              {"constant", constant},
              {"rhs", rhs},
              {"relative_error", err}});
  return err <= 1e-6 ? kExitPass : kExitFail;
}

struct VerifyArgs {
  IndexArgs index;
  std::uint64_t seed = 1;
  int refine = 2;
  std::size_t points = 128;
  double half_width = 12.0;
  std::string field_in;
  std::string field_out;
};

int run_verify(const VerifyArgs& a) {
  const IndexParams params = a.index.params();
  const VerificationReport report = [&] {
    if (!a.field_in.empty()) {
      std::ifstream in(a.field_in, std::ios::binary);
      if (!in) {
        throw std::runtime_error("cannot open " + a.field_in);
      }
      return verify_instance(read_field(in), params);
    }
    const GaussianMixture mixture = draw_mixture(params.n(), MixtureFamily{}, a.seed);
    const GridSpec base(params.n(), a.half_width, a.points);
    if (!a.field_out.empty()) {
      std::ofstream out(a.field_out, std::ios::binary);
      write_field(out, sample(base, mixture));
      if (!out) {
        throw std::runtime_error("cannot write " + a.field_out);
      }
    }
    return verify_instance(mixture, base, params, a.refine);
  }();
  json out = to_json(report);
  if (a.field_in.empty()) {
    out["seed"] = a.seed;
  }
  print_json(out);
  return report.verdict == Verdict::pass ? kExitPass : kExitFail;
}

int run_extend(double s, int m, int n, int refine, std::size_t points, double half_width, const std::string& out_path) {
  const SplitDims split(n, m);
  const auto steps = extension_roundtrip(s, split, GridSpec(split.n_minus_m(), half_width, points), refine);
  json rows = json::array();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    json row = {{"grid_N", steps[i].points},
                {"half_width", steps[i].half_width},
                {"relative_sup_error", steps[i].relative_sup_error}};
    if (i > 0) {
      row["shrink_factor"] = steps[i - 1].relative_sup_error / steps[i].relative_sup_error;
    }
    rows.push_back(row);
  }
  if (!out_path.empty()) {
    GridSpec boundary(split.n_minus_m(), half_width, points);
    for (int i = 0; i < refine; ++i) {
      boundary = sobtrace::refine(boundary);
    }
    const Field g = sample(boundary, [](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) {
        r2 += v * v;
      }
      return std::exp(-r2 / 2.0);
    });
    std::ofstream out(out_path, std::ios::binary);
    write_field(out, extend(g, s, split, GridSpec(n, boundary.half_width(), boundary.points())));
    if (!out) {
      throw std::runtime_error("cannot write " + out_path);
    }
  }
  const bool ok = steps.front().relative_sup_error <= 1e-3;
  print_json({{"s", s}, {"m", m}, {"n", n}, {"steps", rows}, {"base_within_1e-3", ok}});
  return ok ? kExitPass : kExitFail;
}

int run_sweep_cmd(const std::string& config_path, const std::string& summary_path, int workers) {
  std::ifstream in(config_path);
  if (!in) {
    throw std::invalid_argument("cannot open config " + config_path);
  }
  SweepSpec spec = parse_sweep_config(in);
  if (workers > 0) {
    spec.workers = workers;
  }
  const auto entries = run_sweep(spec);
  write_sweep_csv(std::cout, entries);
  std::cout.flush();

  int counts[3] = {0, 0, 0};
  double worst = 0.0;
  json errors = json::array();
  for (const auto& e : entries) {
    ++counts[static_cast<int>(entry_verdict(e))];
    if (e.report) {
      worst = std::max(worst, e.report->ratio);
    } else {
      errors.push_back({{"q", e.tuple.q}, {"s", e.tuple.s}, {"t", e.tuple.t}, {"m", e.tuple.m}, {"n", e.tuple.n},
                        {"function", e.function_index}, {"error", e.error}});
    }
  }
  const json summary = {{"instances", entries.size()},
                        {"tuples", expand_tuples(spec).size()},
                        {"pass", counts[static_cast<int>(Verdict::pass)]},
                        {"fail", counts[static_cast<int>(Verdict::fail)]},
                        {"inconclusive", counts[static_cast<int>(Verdict::inconclusive)]},
                        {"max_ratio", worst},
                        {"seed", spec.seed},
                        {"errors", errors}};
  if (summary_path.empty()) {
    std::cerr << summary.dump(2) << '\n';
  } else {
    std::ofstream out(summary_path);
    out << summary.dump(2) << '\n';
  }
  return counts[static_cast<int>(Verdict::pass)] == static_cast<int>(entries.size()) ? kExitPass : kExitFail;
}

int run_asymptotics(const std::string& mode_name, const IndexArgs& args) {
  AsymptoticsMode mode;
  if (mode_name == "boundary") {
    mode = AsymptoticsMode::boundary_blowup;
  } else if (mode_name == "decay") {
    mode = AsymptoticsMode::large_s_decay;
  } else {
    throw std::invalid_argument("--mode must be boundary or decay");
  }
  const auto table = asymptotics_campaign(mode, args.params());
  std::printf("parameter,abscissa,constant,fitted_slope,predicted_slope,error\n");
  for (const auto& row : table.rows) {
    std::printf("%.17g,%.17g,", row.parameter, row.abscissa);
    if (row.constant) {
      std::printf("%.17g", *row.constant);
    }
    std::printf(",%.17g,%.17g,%s\n", table.fitted_slope, table.predicted_slope, row.error.c_str());
  }
  const bool ok = std::isfinite(table.fitted_slope) &&
                  std::abs(table.fitted_slope - table.predicted_slope) <= 0.1 * std::abs(table.predicted_slope);
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of the fractional Sobolev trace inequality"};
  app.require_subcommand(1);

  IndexArgs constant_args;
  bool constant_json = false;
  auto* constant = app.add_subcommand("constant", "closed-form trace constant and its factors");
  constant_args.attach(constant);
  constant->add_flag("--json", constant_json, "print a JSON object");

  double alpha = 1.0;
  double beta = 1.0;
  double p = 2.0;
  int m = 1;
  int n = 2;
  double xi = 0.0;
  auto* lemma1 = app.add_subcommand("lemma1", "slab integral by quadrature vs closed form");
  lemma1->add_option("--alpha", alpha)->required();
  lemma1->add_option("--m", m)->required();
  lemma1->add_option("--xi", xi, "|xi'|")->required();

  double width = 0.5;
  auto* lemma2 = app.add_subcommand("lemma2", "weighted p-integral vs its factored form");
  lemma2->add_option("--alpha", alpha)->required();
  lemma2->add_option("--beta", beta)->required();
  lemma2->add_option("--p", p)->required();
  lemma2->add_option("--m", m)->required();
  lemma2->add_option("--n", n)->required();
  lemma2->add_option("--gaussian-a", width, "boundary datum is the transform of exp(-a|x|^2)")->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check the trace inequality on one seeded Gaussian mixture");
  verify_args.index.attach(verify);
  verify->add_option("--seed", verify_args.seed)->capture_default_str();
  verify->add_option("--refine", verify_args.refine)->capture_default_str();
  verify->add_option("--points", verify_args.points)->capture_default_str();
  verify->add_option("--half-width", verify_args.half_width)->capture_default_str();
  verify->add_option("--field", verify_args.field_in, "verify a saved field on its own grid instead");
  verify->add_option("--save-field", verify_args.field_out, "write the base-grid samples");

  double ext_s = 2.0;
  int refine = 2;
  std::size_t ext_points = 256;
  double ext_half_width = 10.0;
  std::string ext_out;
  auto* ext = app.add_subcommand("extend", "trace of the extension of exp(-|x'|^2/2) under refinement");
  ext->add_option("--s", ext_s)->required();
  ext->add_option("--m", m)->required();
  ext->add_option("--n", n)->required();
  ext->add_option("--refine", refine)->capture_default_str();
  ext->add_option("--points", ext_points)->capture_default_str();
  ext->add_option("--half-width", ext_half_width)->capture_default_str();
  ext->add_option("--out", ext_out, "write the extension on the finest grid");

  std::string config;
  std::string summary;
  int workers = 0;
  auto* sweep = app.add_subcommand("sweep", "run a configured campaign; CSV on stdout, JSON summary on stderr");
  sweep->add_option("--config", config)->required();
  sweep->add_option("--summary", summary, "write the JSON summary here instead of stderr");
  sweep->add_option("--workers", workers, "override the config's worker count");

  std::string mode;
  IndexArgs asym_args;
  auto* asym = app.add_subcommand("asymptotics", "constant near the t boundary or for large s");
  asym->add_option("--mode", mode, "boundary or decay")->required();
  asym_args.attach(asym);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*constant) {
      return run_constant(constant_args, constant_json);
    }
    if (*lemma1) {
      return run_lemma1(alpha, m, xi);
    }
    if (*lemma2) {
      return run_lemma2(alpha, beta, p, m, n, width);
    }
    if (*verify) {
      return run_verify(verify_args);
    }
    if (*ext) {
      return run_extend(ext_s, m, n, refine, ext_points, ext_half_width, ext_out);
    }
    if (*sweep) {
      return run_sweep_cmd(config, summary, workers);
    }
    if (*asym) {
      return run_asymptotics(mode, asym_args);
    }
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
