#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "momrob/error.hpp"
#include "momrob/mom.hpp"
#include "momrob/optim.hpp"
#include "oracles.hpp"

using namespace momrob;

namespace {

// Points with y * x > 1 for u = 1, b = 0: every hinge margin exceeds 1.
Dataset wide_margin_dataset() {
  FeatureMatrix x(12, 1);
  std::vector<int> y(12);
  for (int i = 0; i < 12; ++i) {
    const int label = i % 2 ? 1 : -1;
    x(i, 0) = label * (2.0 + 0.25 * i);
    y[i] = label;
  }
  return Dataset(x, y);
}

double empirical_risk(const Dataset& ds, const LinearModel& m, LossKind loss) {
  const auto l = sample_losses(ds, m, loss);
  return oracle::direct_mean(l);
}

MomGdConfig small_config(std::size_t k, std::size_t t) {
  MomGdConfig cfg;
  cfg.k = k;
  cfg.iterations = t;
  cfg.seed = RngSeed{17};
  return cfg;
}

}  // namespace

TEST(StepSchedule, Rates) {
  const StepSchedule inv{ScheduleKind::InverseT, 2.0};
  EXPECT_EQ(inv.rate(0), 2.0);
  EXPECT_EQ(inv.rate(3), 0.5);
  const StepSchedule c{ScheduleKind::Constant, 0.3};
  EXPECT_EQ(c.rate(100), 0.3);
  EXPECT_THROW(validate(StepSchedule{ScheduleKind::Constant, -1.0}), ArgumentError);
  EXPECT_EQ(parse_schedule_kind("inverse-t"), ScheduleKind::InverseT);
  EXPECT_EQ(parse_schedule_kind("constant"), ScheduleKind::Constant);
  EXPECT_THROW(parse_schedule_kind("cosine"), ArgumentError);
  EXPECT_EQ(parse_gradient_scale("sum"), GradientScale::BlockSum);
  EXPECT_EQ(parse_gradient_scale("mean"), GradientScale::BlockMean);
  EXPECT_THROW(parse_gradient_scale("max"), ArgumentError);
}

TEST(MomGd, ZeroGradientFixedPoint) {
  const Dataset ds = wide_margin_dataset();
  LinearModel init = LinearModel::zeros(1);
  init.u(0) = 1.0;
  MomGdConfig cfg = small_config(3, 1);
  cfg.loss = LossKind::Hinge;
  const auto res = mom_gd_train(ds, init, cfg);
  EXPECT_EQ(res.model.u, init.u);
  EXPECT_EQ(res.model.b, init.b);
}

TEST(MomGd, SingleBlockStepMatchesFullBatchOracle) {
  const Dataset ds = testing_support::random_dataset(80, 3, 1);
  LinearModel init = LinearModel::zeros(3);
  init.u << 0.2, -0.1, 0.4;
  init.b = 0.05;
  MomGdConfig cfg = small_config(1, 1);
  cfg.relax_block_range = true;
  cfg.gradient_scale = GradientScale::BlockMean;
  cfg.schedule = {ScheduleKind::Constant, 0.7};
  const auto res = mom_gd_train(ds, init, cfg);
  const Eigen::VectorXd want = init.parameters() - 0.7 * oracle::full_batch_gradient(ds, init.parameters(), cfg.loss);
  const Eigen::VectorXd got = res.model.parameters();
  EXPECT_LE((got - want).norm(), 1e-12 * want.norm());
}

TEST(MomGd, SingleBlockReproducesErmIterates) {
  const Dataset ds = testing_support::random_dataset(64, 2, 2);
  const LinearModel init = LinearModel::zeros(2);
  const StepSchedule schedule{ScheduleKind::InverseT, 1.5};
  MomGdConfig cfg = small_config(1, 200);
  cfg.relax_block_range = true;
  cfg.gradient_scale = GradientScale::BlockMean;
  cfg.schedule = schedule;
  cfg.record_iterates = true;
  const auto mom = mom_gd_train(ds, init, cfg);
  std::vector<Eigen::VectorXd> erm_iterates;
  erm_gd_train(ds, init, 200, schedule, LossKind::Logistic, &erm_iterates);
  ASSERT_EQ(mom.trace.iterates.size(), 200u);
  for (std::size_t t = 0; t < 200; ++t)
    EXPECT_LE((mom.trace.iterates[t] - erm_iterates[t]).norm(), 1e-12 * erm_iterates[t].norm()) << t;
}

TEST(MomGd, Deterministic) {
  const Dataset ds = generate_toy(100, 5, RngSeed{3});
  MomGdConfig cfg = small_config(10, 100);
  cfg.record_selections = true;
  const auto a = mom_gd_train(ds, LinearModel::zeros(2), cfg);
  const auto b = mom_gd_train(ds, LinearModel::zeros(2), cfg);
  EXPECT_EQ(a.model.u, b.model.u);
  EXPECT_EQ(a.model.b, b.model.b);
  ASSERT_EQ(a.trace.median_blocks.size(), b.trace.median_blocks.size());
  for (std::size_t t = 0; t < a.trace.median_blocks.size(); ++t) {
    EXPECT_EQ(a.trace.median_blocks[t].members, b.trace.median_blocks[t].members);
    EXPECT_EQ(a.trace.median_blocks[t].objective, b.trace.median_blocks[t].objective);
  }
  cfg.seed = RngSeed{18};
  const auto c = mom_gd_train(ds, LinearModel::zeros(2), cfg);
  EXPECT_NE(a.model.u, c.model.u);
}

TEST(MomGd, TraceShape) {
  const Dataset ds = generate_toy(100, 5, RngSeed{3});
  MomGdConfig cfg = small_config(7, 25);
  cfg.record_selections = true;
  cfg.record_iterates = true;
  const auto res = mom_gd_train(ds, LinearModel::zeros(2), cfg);
  EXPECT_TRUE(res.trace.recorded);
  EXPECT_EQ(res.trace.n, 105u);
  EXPECT_EQ(res.trace.k, 7u);
  ASSERT_EQ(res.trace.median_blocks.size(), 25u);
  ASSERT_EQ(res.trace.iterates.size(), 25u);
  for (std::size_t t = 0; t < 25; ++t) {
    const auto& rec = res.trace.median_blocks[t];
    EXPECT_EQ(rec.t, t);
    EXPECT_EQ(rec.members.size(), 15u);
    EXPECT_EQ(rec.partition_seed, derive_seed(cfg.seed, t).value);
    Rng rng(RngSeed{rec.partition_seed});
    EXPECT_EQ(random_equipartition(105, 7, rng).block(rec.k_med), rec.members);
  }
  EXPECT_EQ(res.model.parameters(), res.trace.iterates.back());
}

TEST(MomGd, FixedPartitionKeepsBlocks) {
  const Dataset ds = generate_toy(60, 3, RngSeed{4});
  MomGdConfig cfg = small_config(7, 40);
  cfg.fixed_partition = true;
  cfg.record_selections = true;
  const auto res = mom_gd_train(ds, LinearModel::zeros(2), cfg);
  Rng rng(derive_seed(cfg.seed, 0));
  const Partition p = random_equipartition(63, 7, rng);
  for (const auto& rec : res.trace.median_blocks) EXPECT_EQ(rec.members, p.block(rec.k_med));
}

TEST(MomGd, Errors) {
  const Dataset ds = generate_toy(20, 0, RngSeed{5});
  const LinearModel init = LinearModel::zeros(2);
  EXPECT_THROW(mom_gd_train(ds, init, small_config(21, 5)), ArgumentError);
  EXPECT_THROW(mom_gd_train(ds, init, small_config(2, 5)), ArgumentError);
  EXPECT_THROW(mom_gd_train(ds, init, small_config(11, 5)), ArgumentError);
  EXPECT_THROW(mom_gd_train(ds, init, small_config(3, 0)), ArgumentError);
  MomGdConfig relaxed = small_config(21, 5);
  relaxed.relax_block_range = true;
  EXPECT_THROW(mom_gd_train(ds, init, relaxed), ArgumentError);
  relaxed.k = 20;
  EXPECT_NO_THROW(mom_gd_train(ds, init, relaxed));
  MomGdConfig zo = small_config(3, 5);
  zo.loss = LossKind::ZeroOne;
  EXPECT_THROW(mom_gd_train(ds, init, zo), UnsupportedOperation);
  EXPECT_THROW(mom_gd_train(ds, LinearModel::zeros(3), small_config(3, 5)), DimensionError);
}

TEST(MomGd, NonFiniteIterateAborts) {
  const Dataset ds = generate_toy(20, 0, RngSeed{5});
  MomGdConfig cfg = small_config(3, 5);
  cfg.schedule = {ScheduleKind::Constant, 1e308};
  EXPECT_THROW(mom_gd_train(ds, LinearModel::zeros(2), cfg), NumericError);
}

TEST(MomGd, PerSampleGradientsBounded) {
  const Dataset ds = generate_toy(600, 30, RngSeed{6});
  MomGdConfig cfg = small_config(120, 200);
  cfg.record_iterates = true;
  const auto res = mom_gd_train(ds, LinearModel::zeros(2), cfg);
  double bound = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i)
    bound = std::max(bound, std::sqrt(1.0 + ds.row(i)[0] * ds.row(i)[0] + ds.row(i)[1] * ds.row(i)[1]));
  for (std::size_t t = 0; t < res.trace.iterates.size(); t += 20) {
    const LinearModel m = LinearModel::from_parameters(res.trace.iterates[t]);
    for (std::size_t i = 0; i < ds.size(); i += 7) {
      const std::vector<std::size_t> one{i};
      EXPECT_LE(summed_gradient(ds, m, one, LossKind::Logistic).norm(), bound * (1 + 1e-12));
    }
  }
}

TEST(MomGd, ExpectedObjectiveDecreasesOnCleanData) {
  int successes = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Dataset ds = generate_gaussians(300, RngSeed{100 + s});
    MomGdConfig cfg = small_config(15, 500);
    cfg.seed = RngSeed{200 + s};
    const LinearModel init = LinearModel::zeros(2);
    const auto res = mom_gd_train(ds, init, cfg);
    const double before = expected_mom_objective(ds, init, 15, LossKind::Logistic, 100, RngSeed{s});
    const double after = expected_mom_objective(ds, res.model, 15, LossKind::Logistic, 100, RngSeed{s});
    successes += after <= before;
  }
  EXPECT_GE(successes, 9);
}

TEST(ErmGd, SeparableTwoPointsLossDecreases) {
  FeatureMatrix x(2, 1);
  x << -1.0, 1.0;
  const Dataset ds(x, {-1, 1});
  LinearModel m = LinearModel::zeros(1);
  double prev = empirical_risk(ds, m, LossKind::Logistic);
  for (int t = 0; t < 50; ++t) {
    m = erm_gd_train(ds, m, 1, {ScheduleKind::Constant, 0.1}, LossKind::Logistic);
    const double cur = empirical_risk(ds, m, LossKind::Logistic);
    EXPECT_LT(cur, prev) << t;
    prev = cur;
  }
}

TEST(ErmGd, ZeroGradientIdentity) {
  const Dataset ds = wide_margin_dataset();
  LinearModel init = LinearModel::zeros(1);
  init.u(0) = 1.0;
  const LinearModel m = erm_gd_train(ds, init, 10, {ScheduleKind::Constant, 1.0}, LossKind::Hinge);
  EXPECT_EQ(m.u, init.u);
  EXPECT_EQ(m.b, init.b);
}

TEST(ErmGd, Errors) {
  const Dataset ds = wide_margin_dataset();
  const LinearModel init = LinearModel::zeros(1);
  EXPECT_THROW(erm_gd_train(ds, init, 0, {}, LossKind::Logistic), ArgumentError);
  EXPECT_THROW(erm_gd_train(ds, init, 5, {}, LossKind::ZeroOne), UnsupportedOperation);
  EXPECT_THROW(erm_gd_train(ds, init, 5, {ScheduleKind::Constant, 1e308}, LossKind::Logistic), NumericError);
}

TEST(MomObjective, ConstantLoss) {
  const Dataset ds = wide_margin_dataset();
  LinearModel m = LinearModel::zeros(1);
  m.u(0) = 1.0;
  Rng rng(RngSeed{1});
  EXPECT_EQ(mom_objective(ds, m, random_equipartition(12, 3, rng), LossKind::Hinge), 0.0);
}

TEST(MomObjective, SingleBlockIsEmpiricalRisk) {
  const Dataset ds = testing_support::random_dataset(50, 2, 3);
  LinearModel m = LinearModel::zeros(2);
  m.u << 0.5, 0.5;
  Rng rng(RngSeed{2});
  const double got = mom_objective(ds, m, random_equipartition(50, 1, rng), LossKind::Logistic);
  EXPECT_NEAR(got, empirical_risk(ds, m, LossKind::Logistic), 1e-15);
}

TEST(MomObjective, MatchesSortOracle) {
  const Dataset ds = testing_support::random_dataset(77, 3, 4);
  Rng rng(RngSeed{3});
  for (int t = 0; t < 30; ++t) {
    LinearModel m = LinearModel::zeros(3);
    m.u << rng.normal(), rng.normal(), rng.normal();
    const Partition p = random_equipartition(77, 1 + rng.uniform_index(25), rng);
    const auto losses = sample_losses(ds, m, LossKind::Logistic);
    EXPECT_NEAR(mom_objective(ds, m, p, LossKind::Logistic), oracle::median_of_block_means(losses, p), 1e-14);
  }
}

TEST(ExpectedMomObjective, SingleBlockEqualsEmpiricalRisk) {
  const Dataset ds = testing_support::random_dataset(40, 2, 5);
  LinearModel m = LinearModel::zeros(2);
  m.u << 1.0, -1.0;
  const double risk = empirical_risk(ds, m, LossKind::Logistic);
  for (std::size_t n_mc : {1u, 7u, 300u})
    EXPECT_NEAR(expected_mom_objective(ds, m, 1, LossKind::Logistic, n_mc, RngSeed{n_mc}), risk, 1e-12);
  EXPECT_EQ(kExpectedObjectiveSamples, 300u);
  EXPECT_THROW(expected_mom_objective(ds, m, 1, LossKind::Logistic, 0, RngSeed{1}), ArgumentError);
}

TEST(ExpectedMomObjective, VarianceShrinksWithSamples) {
  const Dataset ds = generate_toy(100, 5, RngSeed{6});
  LinearModel m = LinearModel::zeros(2);
  m.u << -0.5, -0.5;
  auto variance = [&](std::size_t n_mc) {
    std::vector<double> v;
    for (std::uint64_t s = 0; s < 60; ++s)
      v.push_back(expected_mom_objective(ds, m, 11, LossKind::Logistic, n_mc, RngSeed{1000 * n_mc + s}));
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / (v.size() - 1);
  };
  const double ratio = variance(5) / variance(20);
  EXPECT_GT(ratio, 2.0);
  EXPECT_LT(ratio, 8.0);
}

TEST(GradientCheck, ZeroStep) {
  const Dataset ds = testing_support::random_dataset(30, 2, 7);
  Rng rng(RngSeed{1});
  EXPECT_THROW(median_block_gradient_check(ds, LinearModel::zeros(2), random_equipartition(30, 3, rng),
                                           LossKind::Logistic, 0.0),
               ArgumentError);
}

TEST(GradientCheck, OneDimensionalThreeBlocks) {
  FeatureMatrix x(6, 1);
  x << -2.0, 0.5, 1.0, -0.3, 3.0, 0.2;
  const Dataset ds(x, {-1, 1, 1, -1, -1, 1});
  const Partition p(6, {{0, 1}, {2, 3}, {4, 5}});
  LinearModel m = LinearModel::zeros(1);
  m.u(0) = 0.4;
  m.b = -0.1;
  const GradientCheck gc = median_block_gradient_check(ds, m, p, LossKind::Logistic, 1e-6);
  ASSERT_EQ(gc.status, GradientCheckStatus::Ok);
  for (Eigen::Index j = 0; j < 2; ++j) EXPECT_NEAR(gc.analytic(j), gc.numeric(j), 1e-6);
}

TEST(GradientCheck, NearlyTiedBlocksWithUniqueMedian) {
  // Identical blocks, then a small perturbation makes the median unique.
  const std::size_t m = 8;
  FeatureMatrix x(3 * m, 2);
  std::vector<int> y(3 * m);
  Rng rng(RngSeed{9});
  for (std::size_t i = 0; i < m; ++i) {
    const double a = rng.normal(), b = rng.normal();
    const int label = i % 2 ? 1 : -1;
    for (std::size_t k = 0; k < 3; ++k) {
      x(k * m + i, 0) = a + 0.01 * static_cast<double>(k);
      x(k * m + i, 1) = b;
      y[k * m + i] = label;
    }
  }
  const Dataset ds(x, y);
  std::vector<std::vector<std::size_t>> blocks(3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < m; ++i) blocks[k].push_back(k * m + i);
  LinearModel model = LinearModel::zeros(2);
  model.u << 0.7, -0.3;
  const GradientCheck gc = median_block_gradient_check(ds, model, Partition(3 * m, blocks), LossKind::Logistic, 1e-7);
  ASSERT_EQ(gc.status, GradientCheckStatus::Ok);
  EXPECT_LE(gc.max_relative_deviation, 1e-5);
}

TEST(GradientCheck, TiedMediansAreInconclusive) {
  FeatureMatrix x(6, 1);
  x << 1.0, 1.0, 1.0, 1.0, 1.0, 1.0;
  const Dataset ds(x, {1, 1, 1, 1, 1, 1});
  const Partition p(6, {{0, 1}, {2, 3}, {4, 5}});
  const GradientCheck gc = median_block_gradient_check(ds, LinearModel::zeros(1), p, LossKind::Logistic, 1e-6);
  EXPECT_EQ(gc.status, GradientCheckStatus::Inconclusive);
}

TEST(GradientCheck, HingeKinkIsInconclusive) {
  // Block means 0.5, 0, 2; the median block holds a sample with margin exactly 1.
  FeatureMatrix x(6, 1);
  x << 2.0, 0.0, 10.0, 12.0, 2.0, 2.0;
  const Dataset ds(x, {1, 1, 1, 1, -1, -1});
  const Partition p(6, {{0, 1}, {2, 3}, {4, 5}});
  LinearModel m = LinearModel::zeros(1);
  m.u(0) = 0.5;
  const GradientCheck gc = median_block_gradient_check(ds, m, p, LossKind::Hinge, 1e-6);
  EXPECT_EQ(gc.status, GradientCheckStatus::Inconclusive);
  m.u(0) = 0.4;  // margins move off the kink
  EXPECT_EQ(median_block_gradient_check(ds, m, p, LossKind::Hinge, 1e-6).status, GradientCheckStatus::Ok);
}

TEST(GradientCheck, RandomInteriorConfigurations) {
  Rng rng(RngSeed{10});
  int conclusive = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Dataset ds = testing_support::random_dataset(90, 3, 300 + trial);
    const Partition p = random_equipartition(90, 2 * (1 + rng.uniform_index(7)) + 1, rng);
    LinearModel m = LinearModel::zeros(3);
    m.u << rng.normal(), rng.normal(), rng.normal();
    m.b = rng.normal();
    const GradientCheck gc = median_block_gradient_check(ds, m, p, LossKind::Logistic, 1e-6);
    if (gc.status != GradientCheckStatus::Ok) continue;
    ++conclusive;
    EXPECT_LE(gc.max_relative_deviation, 1e-5);
  }
  EXPECT_GE(conclusive, 50);
}

TEST(FitLogisticErm, StationaryPoint) {
  const Dataset ds = generate_gaussians(2000, RngSeed{11});
  const LinearModel m = fit_logistic_erm(ds);
  EXPECT_LT(oracle::full_batch_gradient(ds, m.parameters(), LossKind::Logistic).norm(), 1e-9);
  EXPECT_LT(m.u(0), 0.0);  // +1 class sits at (-1, -1)
}
