#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "momrob/error.hpp"
#include "momrob/optim.hpp"
#include "momrob/serialize.hpp"

using namespace momrob;
using testing_support::temp_path;
using testing_support::write_text;

TEST(ModelJson, LinearRoundTripIsBitExact) {
  LinearModel m = LinearModel::zeros(3);
  m.u << 0.1, -1.0 / 3.0, 1e-300;
  m.b = std::nextafter(2.5, 3.0);
  const auto back = std::get<LinearModel>(model_from_json(to_json(m)));
  ASSERT_EQ(back.dim(), 3u);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(back.u(j), m.u(j));
  EXPECT_EQ(back.b, m.b);
}

TEST(ModelJson, KernelRoundTripPredictsIdentically) {
  const Dataset ds = testing_support::random_dataset(60, 2, 4);
  FastKlrConfig cfg;
  cfg.k = 3;
  cfg.iterations = 5;
  cfg.kernel = {KernelKind::Rbf, 0.7};
  const KernelModel m = fast_klr_mom_train(TrainingView(ds), cfg).model;
  const auto path = temp_path("kernel_model.json");
  save_model(m, path);
  const auto back = std::get<KernelModel>(load_model(path));
  EXPECT_EQ(back.blocks, m.blocks);
  EXPECT_EQ(back.active_block, m.active_block);
  EXPECT_EQ(back.kernel.gamma, 0.7);
  EXPECT_TRUE(back.block_kernels.empty());
  for (std::size_t i = 0; i < 10; ++i)
    EXPECT_EQ(kernel_predict_score(back, ds.row(i)), kernel_predict_score(m, ds.row(i)));
}

TEST(ModelJson, RejectsMalformedInput) {
  EXPECT_THROW(model_from_json("{"), ParseError);
  EXPECT_THROW(model_from_json(R"({"type":"tree"})"), ParseError);
  EXPECT_THROW(model_from_json(R"({"type":"linear","u":[1,2]})"), ParseError);
  EXPECT_THROW(model_from_json(R"({"type":"linear","u":"x","b":0})"), ParseError);
  const std::string base =
      R"({"type":"kernel","kernel":{"type":"rbf","gamma":1},"support":[[0,0],[1,1]],)";
  EXPECT_THROW(model_from_json(base + R"("alpha":[1],"blocks":[[0]],"active_block":0})"),
               DimensionError);
  EXPECT_THROW(model_from_json(base + R"("alpha":[1,2],"blocks":[[0],[5]],"active_block":0})"),
               ParseError);
  EXPECT_THROW(model_from_json(base + R"("alpha":[1,2],"blocks":[[0],[1]],"active_block":2})"),
               ParseError);
  EXPECT_NO_THROW(model_from_json(base + R"("alpha":[1,2],"blocks":[[0],[1]],"active_block":null})"));
  EXPECT_THROW(load_model(temp_path("does_not_exist.json")), std::runtime_error);
}

TEST(ConfigJson, RoundTripAndDefaults) {
  MomGdConfig cfg;
  cfg.k = 17;
  cfg.iterations = 33;
  cfg.schedule = {ScheduleKind::Constant, 0.125};
  cfg.loss = LossKind::Hinge;
  cfg.seed = RngSeed{123456789012345ULL};
  cfg.gradient_scale = GradientScale::BlockMean;
  const MomGdConfig back = mom_config_from_json(to_json(cfg));
  EXPECT_EQ(back.k, 17u);
  EXPECT_EQ(back.iterations, 33u);
  EXPECT_EQ(back.schedule.kind, ScheduleKind::Constant);
  EXPECT_EQ(back.schedule.eta0, 0.125);
  EXPECT_EQ(back.loss, LossKind::Hinge);
  EXPECT_EQ(back.seed, cfg.seed);
  EXPECT_EQ(back.gradient_scale, GradientScale::BlockMean);
  const MomGdConfig defaults = mom_config_from_json("{}");
  EXPECT_EQ(defaults.k, MomGdConfig{}.k);
  EXPECT_THROW(mom_config_from_json(R"({"loss":"squared"})"), ArgumentError);
  EXPECT_THROW(mom_config_from_json(R"({"k":"ten"})"), ParseError);
  EXPECT_THROW(mom_config_from_json(R"({"eta0":-1})"), ArgumentError);
}

TEST(TraceJsonl, RoundTrip) {
  const Dataset ds = testing_support::random_dataset(90, 2, 8);
  MomGdConfig cfg;
  cfg.k = 5;
  cfg.iterations = 12;
  cfg.record_selections = true;
  const TrainTrace trace = mom_gd_train(ds, LinearModel::zeros(2), cfg).trace;
  const auto path = temp_path("trace.jsonl");
  write_trace_jsonl(trace, path);
  const TrainTrace back = read_trace_jsonl(path);
  EXPECT_TRUE(back.recorded);
  ASSERT_EQ(back.median_blocks.size(), trace.median_blocks.size());
  for (std::size_t i = 0; i < back.median_blocks.size(); ++i) {
    const auto& a = trace.median_blocks[i];
    const auto& b = back.median_blocks[i];
    EXPECT_EQ(a.t, b.t);
    EXPECT_EQ(a.partition_seed, b.partition_seed);
    EXPECT_EQ(a.k_med, b.k_med);
    EXPECT_EQ(a.members, b.members);
    EXPECT_EQ(a.objective, b.objective);
  }
}

TEST(TraceJsonl, Errors) {
  EXPECT_THROW(write_trace_jsonl(TrainTrace{}, temp_path("empty_trace.jsonl")), ArgumentError);
  const auto path = temp_path("bad_trace.jsonl");
  write_text(path,
             "{\"t\":0,\"partition_seed\":1,\"k_med\":0,\"members\":[1],\"objective\":0.5}\n"
             "\n"
             "{\"t\":1,\"partition_seed\":2}\n");
  try {
    read_trace_jsonl(path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
  }
  EXPECT_THROW(read_trace_jsonl(temp_path("missing_trace.jsonl")), std::runtime_error);
}
