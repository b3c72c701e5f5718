#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "sobtrace/harness.hpp"
#include "sobtrace/oracle.hpp"

namespace {

using namespace sobtrace;

complex unit_gaussian(std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) {
    r2 += v * v;
  }
  return std::exp(-r2 / 2.0);
}

std::string csv_of(const SweepSpec& spec) {
  std::ostringstream out;
  write_sweep_csv(out, run_sweep(spec));
  return out.str();
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.tuples = {{2.0, 1.0, 0.75, 1, 2}, {1.5, 3.0, 2.0, 1, 2}};
  spec.functions_per_tuple = 2;
  spec.points = 32;
  spec.half_width = 10.0;
  spec.refinements = 1;
  spec.workers = 1;
  return spec;
}

TEST(DrawMixture, DeterministicAndInRange) {
  const MixtureFamily family;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = draw_mixture(3, family, seed);
    const auto b = draw_mixture(3, family, seed);
    ASSERT_EQ(a.components().size(), b.components().size());
    EXPECT_GE(a.components().size(), 1U);
    EXPECT_LE(a.components().size(), 5U);
    for (std::size_t i = 0; i < a.components().size(); ++i) {
      const auto& c = a.components()[i];
      EXPECT_EQ(c.amplitude, b.components()[i].amplitude);
      EXPECT_GE(c.amplitude, -1.0);
      EXPECT_LE(c.amplitude, 1.0);
      EXPECT_GE(c.width, 0.5);
      EXPECT_LE(c.width, 2.0);
      for (int k = 0; k < 3; ++k) {
        EXPECT_GE(c.center[k], -2.0);
        EXPECT_LE(c.center[k], 2.0);
      }
    }
  }
  EXPECT_THROW(draw_mixture(1, MixtureFamily{0, 3}, 1), std::invalid_argument);
}

TEST(VerifyInstance, ZeroFieldIsVacuous) {
  const auto r = verify_instance(Field::zeros(GridSpec(2, 10.0, 32), Domain::spatial), make_params(2.0, 1.0, 0.75, 1, 2));
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs_norm, 0.0);
  EXPECT_EQ(r.ratio, 0.0);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(VerifyInstance, OddFieldHasZeroTrace) {
  const GridSpec g(2, 10.0, 64);
  const Field u = sample(g, [](std::span<const double> x) { return x[1] * std::exp(-(x[0] * x[0] + x[1] * x[1])); });
  const auto r = verify_instance(u, make_params(1.5, 3.0, 2.0, 1, 2));
  EXPECT_LE(r.lhs, 1e-15);
  EXPECT_GT(r.rhs_norm, 0.0);
  EXPECT_LE(r.ratio, 1e-14);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

// q = 2 makes every quantity a Gaussian H^s norm, so the continuum ratio is
// known through the radial oracle: ||e^{-x^2/2}||_{H^{1/4}(R)} / (C ||e^{-|x|^2/2}||_{H^1(R^2)}).
TEST(VerifyInstance, GaussianHilbertCase) {
  const auto params = make_params(2.0, 1.0, 0.75, 1, 2);
  const auto r = verify_instance(unit_gaussian, GridSpec(2, 10.0, 128), params, 2);
  ASSERT_EQ(r.refinement_trace.size(), 3U);
  EXPECT_EQ(r.refinement_trace[0].points, 128U);
  EXPECT_EQ(r.refinement_trace[2].points, 512U);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_LE(r.ratio, 1.0 + 5e-2);
  EXPECT_LE(r.refinement_trace[2].ratio, r.refinement_trace[1].ratio * (1.0 + 1e-10));
  EXPECT_LT(std::abs(r.ratio - r.lhs / (r.constant * r.rhs_norm)), 1e-15);

  const double limit = oracle::gaussian_h_s_norm(0.5, 0.25, 1) /
                       (homogeneous_case_constant(1.0, 1) * oracle::gaussian_h_s_norm(0.5, 1.0, 2));
  EXPECT_LT(std::abs(r.ratio - limit) / limit, 1e-8);
}

TEST(VerifyInstance, ScalingInvariance) {
  const auto params = make_params(1.5, 3.0, 2.0, 1, 2);
  const GridSpec g(2, 10.0, 64);
  const Field u = sample(g, draw_mixture(2, MixtureFamily{}, 9));
  const double base = verify_instance(u, params).ratio;
  for (complex c : {complex(-3.7, 0.0), complex(1e-3, 0.0), complex(0.0, 2.0)}) {
    EXPECT_LT(std::abs(verify_instance(scaled(u, c), params).ratio - base) / base, 1e-12);
  }
}

TEST(VerifyInstance, Errors) {
  const Field u = Field::zeros(GridSpec(2, 10.0, 16), Domain::spatial);
  EXPECT_THROW(verify_instance(u, make_params(2.0, 1.0, 0.4, 1, 2)), DomainError);
  EXPECT_THROW(verify_instance(u, make_params(2.0, 2.0, 1.0, 1, 3)), DimensionError);
  EXPECT_THROW(verify_instance(fourier_forward(u), make_params(2.0, 1.0, 0.75, 1, 2)), TagError);
}

TEST(VerifyInstance, VerdictRules) {
  VerificationReport report{make_params(2.0, 1.0, 0.75, 1, 2)};
  report.refinement_trace = {{64, 10.0, 1.0, 1.0, 0.9}, {128, 14.0, 1.0, 1.0, 0.95}};
  detail::finish_report(report, VerifyTolerance{});
  EXPECT_EQ(report.verdict, Verdict::fail);

  report.refinement_trace = {{64, 10.0, 1.0, 1.0, 1.04}};
  detail::finish_report(report, VerifyTolerance{});
  EXPECT_EQ(report.verdict, Verdict::pass);

  report.refinement_trace = {{64, 10.0, 1.0, 1.0, 1.04}, {128, 14.0, 1.0, 1.0, 1.03}, {256, 20.0, 1.0, 1.0, 1.02}};
  detail::finish_report(report, VerifyTolerance{});
  EXPECT_EQ(report.verdict, Verdict::fail);

  report.refinement_trace = {{64, 10.0, 1e-3, 0.0, 0.0}};
  detail::finish_report(report, VerifyTolerance{});
  EXPECT_EQ(report.verdict, Verdict::inconclusive);
}

TEST(HausdorffYoungRatio, GaussianMatchesSharpConstant) {
  const GridSpec g(1, 10.0 * std::numbers::sqrt2, 1024);
  const Field u = sample(g, unit_gaussian);
  EXPECT_NEAR(hausdorff_young_ratio(u, 1.5), sharp_hausdorff_young_constant(1.5, 1), 1e-12);
  EXPECT_NEAR(hausdorff_young_ratio(u, 2.0), 1.0, 1e-12);
  EXPECT_THROW(hausdorff_young_ratio(u, 1.0), DomainError);
}

TEST(Sweep, ExpandTuplesFiltersAndSorts) {
  SweepSpec spec;
  spec.q_values = {2.0, 1.5};
  spec.s_values = {3.0};
  spec.t_values = {0.1, 1.0, 2.0, 2.3};
  spec.m_values = {1};
  spec.n_values = {2};
  const auto tuples = expand_tuples(spec);
  // q=1.5: window [1/3, 7/3), margin keeps t <= 7/3 - 0.1; q=2: [1/2, 3).
  const std::vector<ParamTuple> expected = {
      {1.5, 3.0, 1.0, 1, 2}, {1.5, 3.0, 2.0, 1, 2}, {2.0, 3.0, 1.0, 1, 2}, {2.0, 3.0, 2.0, 1, 2}, {2.0, 3.0, 2.3, 1, 2}};
  EXPECT_EQ(tuples, expected);
}

TEST(Sweep, Cardinality) {
  SweepSpec spec = small_spec();
  spec.tuples.clear();
  for (double t : {0.6, 0.7, 0.8, 0.9, 1.0}) {
    spec.tuples.push_back({2.0, 1.5, t, 1, 2});
    spec.tuples.push_back({1.5, 3.0, t + 1.0, 1, 2});
  }
  spec.functions_per_tuple = 3;
  const auto entries = run_sweep(spec);
  ASSERT_EQ(entries.size(), 30U);
  for (const auto& e : entries) {
    ASSERT_TRUE(e.report.has_value()) << e.error;
    EXPECT_EQ(e.report->refinement_trace.size(), 2U);
  }
  EXPECT_TRUE(std::is_sorted(entries.begin(), entries.end(), [](const SweepEntry& a, const SweepEntry& b) {
    return std::tie(a.tuple, a.function_index) < std::tie(b.tuple, b.function_index);
  }));
}

TEST(Sweep, DeterministicAcrossRunsAndWorkers) {
  SweepSpec spec = small_spec();
  const std::string first = csv_of(spec);
  EXPECT_EQ(csv_of(spec), first);
  spec.workers = 3;
  EXPECT_EQ(csv_of(spec), first);
  spec.seed = 2;
  EXPECT_NE(csv_of(spec), first);
}

TEST(Sweep, EmptyRange) {
  SweepSpec spec;
  EXPECT_TRUE(run_sweep(spec).empty());
  std::ostringstream out;
  write_sweep_csv(out, {});
  EXPECT_EQ(out.str(), "q,p,s,t,m,n,grid_N,lhs,rhs,constant,ratio,verdict\n");
}

TEST(Sweep, InstanceErrorsAreRecorded) {
  SweepSpec spec = small_spec();
  spec.tuples = {{2.0, 1.0, 0.2, 1, 2}};
  spec.functions_per_tuple = 1;
  const auto entries = run_sweep(spec);
  ASSERT_EQ(entries.size(), 1U);
  EXPECT_FALSE(entries[0].report.has_value());
  EXPECT_FALSE(entries[0].error.empty());
  EXPECT_EQ(entry_verdict(entries[0]), Verdict::inconclusive);
}

TEST(Sweep, CsvRowShape) {
  SweepSpec spec = small_spec();
  spec.tuples = {{2.0, 1.0, 0.75, 1, 2}};
  spec.functions_per_tuple = 1;
  std::istringstream in(csv_of(spec));
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 11);
  EXPECT_EQ(row.rfind("2,2,1,0.75,1,2,64,", 0), 0U) << row;
  EXPECT_TRUE(row.ends_with(",pass") || row.ends_with(",fail")) << row;
}

TEST(SweepConfig, Parses) {
  std::istringstream in(R"(# comment line
tuple = 2, 1, 0.75, 1, 2
tuple = 1.5, 3, 2, 1, 2   # trailing comment
q = 1.25, 1.5
s = 4
t = 2
m = 1
n = 2
functions = 7
seed = 42
points = 64
half_width = 11.5
refinements = 1
base_tolerance = 0.06
refined_tolerance = 0.02
workers = 2
components_max = 3
width_min = 0.75
center_max = 1.5
)");
  const SweepSpec spec = parse_sweep_config(in);
  EXPECT_EQ(spec.tuples.size(), 2U);
  EXPECT_EQ(spec.q_values, (std::vector<double>{1.25, 1.5}));
  EXPECT_EQ(spec.functions_per_tuple, 7);
  EXPECT_EQ(spec.seed, 42U);
  EXPECT_EQ(spec.points, 64U);
  EXPECT_EQ(spec.half_width, 11.5);
  EXPECT_EQ(spec.refinements, 1);
  EXPECT_EQ(spec.tolerance.base, 0.06);
  EXPECT_EQ(spec.tolerance.refined, 0.02);
  EXPECT_EQ(spec.workers, 2);
  EXPECT_EQ(spec.family.max_components, 3);
  EXPECT_EQ(spec.family.width_min, 0.75);
  EXPECT_EQ(spec.family.center_max, 1.5);
  EXPECT_EQ(expand_tuples(spec).size(), 4U);
}

TEST(SweepConfig, Rejections) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_sweep_config(in);
  };
  EXPECT_THROW(parse("colour = blue\n"), std::invalid_argument);
  EXPECT_THROW(parse("seed\n"), std::invalid_argument);
  EXPECT_THROW(parse("points = 100\n"), DomainError);
  EXPECT_THROW(parse("tuple = 2, 1, 0.75\n"), std::invalid_argument);
  EXPECT_THROW(parse("q = 1.5x\n"), std::invalid_argument);
  try {
    parse("seed = 1\n\nbogus = 3\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Asymptotics, BoundaryBlowup) {
  const auto base = make_params(1.5, 3.0, 2.0, 1, 2);
  const auto table = asymptotics_campaign(AsymptoticsMode::boundary_blowup, base);
  ASSERT_EQ(table.rows.size(), 6U);
  for (std::size_t k = 1; k < table.rows.size(); ++k) {
    ASSERT_TRUE(table.rows[k].constant.has_value());
    EXPECT_GT(*table.rows[k].constant, *table.rows[k - 1].constant);
    EXPECT_GT(table.rows[k].parameter, table.rows[k - 1].parameter);
    EXPECT_LT(table.rows[k].parameter, base.t_boundary());
  }
  EXPECT_NEAR(table.predicted_slope, std::log(10.0) / 3.0, 1e-15);
  EXPECT_LT(std::abs(table.fitted_slope - table.predicted_slope), 0.1 * table.predicted_slope);
}

TEST(Asymptotics, LargeSmoothnessDecay) {
  const auto table = asymptotics_campaign(AsymptoticsMode::large_s_decay, make_params(1.5, 5.0, 1.0, 1, 2));
  ASSERT_EQ(table.rows.size(), 5U);
  for (std::size_t k = 1; k < table.rows.size(); ++k) {
    EXPECT_LT(*table.rows[k].constant, *table.rows[k - 1].constant);
  }
  EXPECT_NEAR(table.predicted_slope, -0.5, 1e-15);
  EXPECT_LT(std::abs(table.fitted_slope - table.predicted_slope), 0.1 * std::abs(table.predicted_slope));
}

TEST(Asymptotics, RowErrorsDoNotAbort) {
  // s = 5 with t = 4.5 is outside the window; larger s are fine.
  const auto table = asymptotics_campaign(AsymptoticsMode::large_s_decay, make_params(1.5, 10.0, 4.5, 1, 2));
  EXPECT_FALSE(table.rows[0].constant.has_value());
  EXPECT_FALSE(table.rows[0].error.empty());
  EXPECT_TRUE(table.rows[1].constant.has_value());
  EXPECT_TRUE(std::isfinite(table.fitted_slope));
}

TEST(Asymptotics, BoundaryModeRejectsHilbertCase) {
  EXPECT_THROW(asymptotics_campaign(AsymptoticsMode::boundary_blowup, make_params(2.0, 3.0, 1.5, 1, 2)), DomainError);
}

}  // namespace
