// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include <doctest.h>

#include <filesystem>

#include "emgclean/error.hpp"
#include "emgclean/io.hpp"
#include "oracles.hpp"

using namespace emgclean;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "emgclean_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("signal CSV round trip keeps every bit") {
  const auto a = oracle::random_vector(300, 1, 1e-3);
  auto b = oracle::random_vector(300, 2, 1e5);
  b[7] = 1.0 / 3.0;
  b[8] = -0.0;
  const Recording rec({SignalBuffer(a, 512.0), SignalBuffer(b, 512.0)});
  const auto path = scratch("roundtrip.csv");
  write_signal_csv(path, rec);
  const auto back = read_signal_csv(path);
  CHECK(back.fs_from_header);
  CHECK(back.recording == rec);
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST_CASE("signal CSV parsing") {
  const auto plain = parse_signal_csv("1.5,2\n3,4\r\n\n5,6\n");
  CHECK_FALSE(plain.fs_from_header);
  CHECK(plain.recording.fs() == kDefaultFs);
  CHECK(plain.recording.channel_count() == 2);
  CHECK(plain.recording.channels()[1].vector() == std::vector<double>{2, 4, 6});

  CHECK(parse_signal_csv("# fs=1000\n0.25\n").recording.fs() == 1000.0);
  CHECK_THROWS_AS(parse_signal_csv("1,2\n3\n"), IoError);
  CHECK_THROWS_AS(parse_signal_csv("1,abc\n"), IoError);
  CHECK_THROWS_AS(parse_signal_csv("# fs=-4\n1\n"), IoError);
  CHECK_THROWS_AS(parse_signal_csv("# only a comment\n"), IoError);
  CHECK_THROWS_AS(read_signal_csv(scratch("missing.csv")), IoError);
}

TEST_CASE("model JSON round trip and validation") {
  SvmModel m;
  m.weights = {0.1, -2.0, 1.0 / 7.0};
  m.bias = -0.3;
  m.feature_means = {1.0, 2.0, 3.0};
  m.feature_stds = {0.5, 1.5, 2.5};
  m.box_constraint = 1.0;
  const auto path = scratch("model.json");
  save_model(path, m);
  const auto back = load_model(path);
  CHECK(back.weights == m.weights);
  CHECK(back.bias == m.bias);
  CHECK(back.feature_means == m.feature_means);
  CHECK(back.feature_stds == m.feature_stds);
  CHECK(back.box_constraint == m.box_constraint);

  auto j = to_json(m);
  CHECK(j["version"] == 1);
  j["feature_stds"][1] = 0.0;
  CHECK_THROWS_AS(model_from_json(j), IoError);
  j = to_json(m);
  j["weights"].push_back(1.0);
  CHECK_THROWS_AS(model_from_json(j), IoError);
  j = to_json(m);
  j["version"] = 2;
  CHECK_THROWS_AS(model_from_json(j), IoError);
  j = to_json(m);
  j.erase("bias");
  CHECK_THROWS_AS(model_from_json(j), IoError);

  write_file_atomic(scratch("broken.json"), "{not json");
  CHECK_THROWS_AS(load_model(scratch("broken.json")), IoError);
}

TEST_CASE("trace and history formatting") {
  DenoiseTrace clean;
  clean.label = SegmentLabel::kClean;
  DenoiseTrace bad;
  bad.label = SegmentLabel::kCorrupted;
  bad.start_sample = 2500;
  bad.wavelet = "fk6";
  bad.level = 3;
  bad.lambdas = std::vector<double>(8, 0.5);
  bad.history = {1.0, 2.0};
  const auto lines = format_trace_jsonl({clean, bad});
  const auto first = nlohmann::json::parse(lines.substr(0, lines.find('\n')));
  CHECK(first["label"] == "clean");
  CHECK_FALSE(first.contains("lambdas"));
  const auto second = nlohmann::json::parse(lines.substr(lines.find('\n') + 1));
  CHECK(second["lambdas"].size() == 8);
  CHECK(second["start_sample"] == 2500);
  CHECK(format_history_csv({clean, bad}) ==
        "segment,channel,start_sample,iteration,best_fitness\n1,0,2500,1,1\n1,0,2500,2,2\n");
}

TEST_CASE("report JSON flags a missing reference") {
  EvaluationReport r;
  r.mi = 1.25;
  r.channels.push_back({});
  const auto j = to_json(r);
  CHECK(j["cc"].is_null());
  CHECK(j["reference_available"] == false);
  CHECK(j["mi"] == 1.25);
}

TEST_CASE("window lists") {
  CHECK(parse_windows("").empty());
  const auto w = parse_windows("0:1.3, 2:4.2,7.6:8.5");
  REQUIRE(w.size() == 3);
  CHECK(w[1].start == 2.0);
  CHECK(w[2].end == 8.5);
  CHECK_THROWS_AS(parse_windows("0-1"), ParameterError);
  CHECK_THROWS_AS(parse_windows("a:b"), ParameterError);
}
