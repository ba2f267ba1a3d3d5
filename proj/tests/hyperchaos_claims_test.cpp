// Claims that the reference 5D system is hyperchaotic at its base setting and
// across three parameter windows. These are checked as stated; see README for
// what the discretized map actually does.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cfin/sweep.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "oracles.hpp"

namespace cfin {
namespace {

FinanceSetup window_base(double k, double p, double alpha5) {
  FinanceSetup s = reference_setup();
  s.params.k = k;
  s.params.p = p;
  s.orders[4] = alpha5;
  return s;
}

void expect_all_hyperchaotic(SweepParameter target, double lo, double hi, std::size_t points,
                             const FinanceSetup& base) {
  SweepPlan plan;
  plan.target = target;
  plan.lo = lo;
  plan.hi = hi;
  plan.grid_points = points;
  plan.base = base;
  const SweepResult result = spectrum_scan(plan);
  for (const auto& rec : result.records) {
    std::ostringstream spectrum;
    for (double l : rec.spectrum.exponents) spectrum << l << ' ';
    EXPECT_EQ(rec.regime, Regime::hyperchaotic)
        << to_string(target) << "=" << rec.value << " -> " << (rec.regime ? to_string(*rec.regime) : "none")
        << " [" << spectrum.str() << "]";
  }
}

TEST(HyperchaosClaims, ReferencePointHasTwoPositiveExponents) {
  const LyapunovSpectrum s = finance_spectrum(reference_setup(), LyapunovSettings{});
  ASSERT_EQ(s.exponents.size(), 5u);
  EXPECT_EQ(count_positive(s, 0.01), 2u);
  EXPECT_EQ(std::count_if(s.exponents.begin(), s.exponents.end(), [](double l) { return l < -0.01; }), 3);
  EXPECT_EQ(classify_regime(s, 0.01), Regime::hyperchaotic);
}

TEST(HyperchaosClaims, Alpha5Window) {
  expect_all_hyperchaotic(SweepParameter::alpha5, 0.232, 0.328, 13, window_base(2.0, 1.0, 0.24));
}

TEST(HyperchaosClaims, EthicsWeightWindow) {
  expect_all_hyperchaotic(SweepParameter::p, 1.0, 2.0, 11, window_base(2.0, 1.0, 0.3));
}

TEST(HyperchaosClaims, CouplingStrengthWindow) {
  expect_all_hyperchaotic(SweepParameter::k, 1.5, 2.5, 11, window_base(2.0, 1.0, 0.3));
}

TEST(HyperchaosClaims, BifurcationSamplesIndependentOfTransientLength) {
  bool diverged_short = false, diverged_long = false;
  const auto short_run =
      bifurcation_column(reference_setup(), Component::u, BifurcationSettings{10'000, 200}, diverged_short);
  const auto long_run =
      bifurcation_column(reference_setup(), Component::u, BifurcationSettings{20'000, 200}, diverged_long);
  ASSERT_FALSE(diverged_short);
  ASSERT_FALSE(diverged_long);
  EXPECT_LT(oracle::ks_statistic(short_run, long_run), 0.05);
}

TEST(HyperchaosClaims, AttractorStaysBoundedOverLongRun) {
  const AttractorTrace trace = attractor_trace(reference_setup(), 210'000, 10'000,
                                               {Component::y, Component::z, Component::u});
  EXPECT_FALSE(trace.diverged);
  EXPECT_LT(trace.max_norm, 1e3);
}

std::string lyapunov_log(const std::vector<std::string>& overrides) {
  const cli::RunConfig cfg = cli::load_config(std::nullopt, std::string("paper-sec4"), overrides);
  std::ostringstream log;
  cli::CommandOptions opts;
  opts.output = (std::filesystem::temp_directory_path() / "cfin_claims_spectrum.csv").string();
  cli::run_lyapunov(cfg, opts, log);
  std::filesystem::remove(opts.output);
  return log.str();
}

TEST(HyperchaosClaims, CliLabelsReferencePresetHyperchaotic) {
  const std::string log = lyapunov_log({});
  EXPECT_NE(log.find("regime: hyperchaotic"), std::string::npos) << log;
  EXPECT_NE(log.find("positive exponents (> 0.01): 2"), std::string::npos) << log;
}

TEST(HyperchaosClaims, CliLabelsCouplingWindowPointHyperchaotic) {
  const std::string log = lyapunov_log({"params.k=1.5", "orders.4=0.3"});
  EXPECT_NE(log.find("regime: hyperchaotic"), std::string::npos) << log;
}

}  // namespace
}  // namespace cfin
