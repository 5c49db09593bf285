// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emgclean/classifier.hpp"
#include "emgclean/error.hpp"
#include "emgclean/io.hpp"
#include "emgclean/metrics.hpp"
#include "emgclean/pipeline.hpp"
#include "emgclean/simulator.hpp"
#include "emgclean/wavelet.hpp"

#ifndef EMGCLEAN_VERSION
#define EMGCLEAN_VERSION "0.0.0"
#endif

namespace emgclean::cli {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Thrown for bad flag values that CLI11 itself cannot catch.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path sibling(const fs::path& path, const std::string& suffix) {
  return path.parent_path() / (path.stem().string() + suffix);
}

struct Manifest {
  std::string command;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::string> outputs;
  std::vector<std::string> notes;
  Clock::time_point started = Clock::now();

  void write(const fs::path& path) {
    const double elapsed = std::chrono::duration<double>(Clock::now() - started).count();
    outputs.push_back(path.string());
    nlohmann::json j = {{"schema_version", kManifestSchemaVersion},
                        {"command", command},
                        {"args", args},
                        {"seed", seed},
                        {"config", config},
                        {"version", {{"emgclean", EMGCLEAN_VERSION}}},
                        {"outputs", outputs},
                        {"notes", notes},
                        {"timing", {{"elapsed_seconds", elapsed}}}};
    write_file_atomic(path, j.dump(2) + "\n");
  }
};

SignalFile read_signal(const std::string& path, std::ostream& err) {
  auto file = read_signal_csv(path);
  if (!file.fs_from_header) {
    err << "warning: " << path << " has no '# fs=' header; assuming " << kDefaultFs << " Hz\n";
  }
  return file;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      if (!current.empty()) items.push_back(current);
      current.clear();
    } else if (c != ' ') {
      current += c;
    }
  }
  if (!current.empty()) items.push_back(current);
  return items;
}

struct SimulateFlags {
  double duration = 10.0;
  double fs = 250.0;
  std::uint64_t seed = 1;
  std::optional<std::string> windows;
  double snr_db = -3.0;
  std::string out_clean;
  std::string out_emg;
  std::string out_corrupted;
};

int cmd_simulate(const SimulateFlags& f, Manifest& manifest, std::ostream& out) {
  SimulationSpec spec;
  spec.duration = f.duration;
  spec.fs = f.fs;
  spec.seed = f.seed;
  spec.snr_db = f.snr_db;
  try {
    spec.artifact_windows = f.windows ? parse_windows(*f.windows)
                                      : std::vector<ArtifactWindow>{{0.0, f.duration}};
    validate(spec);
  } catch (const ParameterError& e) {
    throw UsageError(std::string(f.windows ? "--windows: " : "") + e.what());
  }
  const auto trial = simulate_trial(spec);
  write_signal_csv(f.out_clean, Recording({trial.clean}));
  write_signal_csv(f.out_emg, Recording({trial.emg}));
  write_signal_csv(f.out_corrupted, Recording({trial.corrupted}));

  manifest.seed = f.seed;
  manifest.config = to_json(spec);
  manifest.outputs = {f.out_clean, f.out_emg, f.out_corrupted};
  manifest.write(sibling(f.out_corrupted, ".manifest.json"));
  out << "wrote " << trial.corrupted.size() << " samples per file\n";
  return kExitOk;
}

struct TrainFlags {
  int n_per_class = 200;
  std::uint64_t seed = 1;
  std::string model_out;
};

int cmd_train(const TrainFlags& f, Manifest& manifest, std::ostream& out) {
  if (f.n_per_class < 5) throw UsageError("--n-per-class must be at least 5");
  const auto dataset = build_dataset(f.n_per_class, f.seed);
  std::vector<FeatureVector> features;
  std::vector<SegmentLabel> labels;
  for (const auto& item : dataset) {
    features.push_back(extract_features(item.signal.samples()));
    labels.push_back(item.label);
  }
  const auto split = stratified_split(labels, 0.2, derive_seed(f.seed, 1));
  std::vector<FeatureVector> train_x, test_x;
  std::vector<SegmentLabel> train_y, test_y;
  for (auto i : split.train) {
    train_x.push_back(features[i]);
    train_y.push_back(labels[i]);
  }
  for (auto i : split.test) {
    test_x.push_back(features[i]);
    test_y.push_back(labels[i]);
  }
  SvmTrainingOptions options;
  options.seed = derive_seed(f.seed, 2);
  const auto model = train_svm(train_x, train_y, options);
  const auto held_out = evaluate(model, test_x, test_y);
  const auto cv = cross_validate(train_x, train_y, 5, options);
  save_model(f.model_out, model);

  nlohmann::json report = {{"segments", dataset.size()},
                           {"train", split.train.size()},
                           {"test", split.test.size()},
                           {"held_out", to_json(held_out)},
                           {"cross_validation", to_json(cv)},
                           {"cv_folds", 5}};
  out << report.dump(2) << "\n";

  manifest.seed = f.seed;
  manifest.config = {{"n_per_class", f.n_per_class}, {"test_fraction", 0.2}, {"C", options.box_constraint}};
  manifest.outputs = {f.model_out};
  manifest.write(sibling(f.model_out, ".manifest.json"));
  return kExitOk;
}

struct DenoiseFlags {
  std::string input;
  std::string model;
  std::string out;
  std::optional<std::string> reference;
  std::string wavelet = "fk6";
  std::string level = "3";
  std::string optimizer = "gwo";
  std::uint64_t seed = 1;
  int population = 20;
  int iterations = 50;
};

PipelineConfig make_config(const DenoiseFlags& f) {
  PipelineConfig cfg;
  if (f.wavelet != "auto") {
    try {
      wavelet_by_name(f.wavelet);
    } catch (const ParameterError& e) {
      throw UsageError(std::string("--wavelet: ") + e.what());
    }
  }
  cfg.wavelet = f.wavelet;
  if (f.level == "auto") {
    cfg.level = std::nullopt;
  } else {
    try {
      std::size_t used = 0;
      cfg.level = std::stoi(f.level, &used);
      if (used != f.level.size() || *cfg.level < 1) throw std::invalid_argument("level");
    } catch (const std::exception&) {
      throw UsageError("--level must be a positive integer or 'auto'");
    }
  }
  try {
    cfg.swarm.algorithm = swarm_algorithm_from_string(f.optimizer);
  } catch (const ParameterError& e) {
    throw UsageError(std::string("--optimizer: ") + e.what());
  }
  cfg.swarm.population = f.population;
  cfg.swarm.iterations = f.iterations;
  try {
    validate(cfg.swarm);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  cfg.seed = f.seed;
  cfg.fitness = f.reference ? FitnessMode::kOracle : FitnessMode::kLiteral;
  return cfg;
}

int cmd_denoise(const DenoiseFlags& f, Manifest& manifest, std::ostream& out, std::ostream& err) {
  const auto cfg = make_config(f);
  const auto input = read_signal(f.input, err);
  const auto model = load_model(f.model);
  std::optional<Recording> reference;
  if (f.reference) {
    reference = read_signal(*f.reference, err).recording;
    if (reference->length() != input.recording.length() ||
        reference->channel_count() != input.recording.channel_count()) {
      throw IoError("reference shape does not match the input");
    }
  }

  const auto result = denoise_recording(input.recording, cfg, model, reference);
  const auto report = evaluate_run(input.recording, result.recording, reference, cfg.mi_bins);
  std::size_t corrupted = 0;
  for (const auto& t : result.traces) corrupted += t.label == SegmentLabel::kCorrupted;

  const fs::path out_path(f.out);
  const auto trace_path = sibling(out_path, ".trace.jsonl");
  const auto report_path = sibling(out_path, ".report.json");
  const auto history_path = sibling(out_path, ".history.csv");
  write_signal_csv(out_path, result.recording);
  write_file_atomic(trace_path, format_trace_jsonl(result.traces));
  auto report_json = to_json(report);
  report_json["segments"] = result.traces.size();
  report_json["corrupted_segments"] = corrupted;
  report_json["fitness_mode"] = std::string(to_string(cfg.fitness));
  write_file_atomic(report_path, report_json.dump(2) + "\n");
  write_file_atomic(history_path, format_history_csv(result.traces));

  manifest.seed = f.seed;
  manifest.config = {{"wavelet", f.wavelet},
                     {"level", f.level},
                     {"optimizer", f.optimizer},
                     {"population", f.population},
                     {"iterations", f.iterations},
                     {"fitness_mode", std::string(to_string(cfg.fitness))},
                     {"patch_half_width", cfg.patch_half_width},
                     {"search_half_width", cfg.search_half_width},
                     {"segment_seconds", cfg.segment_seconds}};
  manifest.outputs = {out_path.string(), trace_path.string(), report_path.string(),
                      history_path.string()};
  if (corrupted == 0) manifest.notes.push_back("no corrupted segments");
  manifest.write(sibling(out_path, ".manifest.json"));
  out << report_json.dump(2) << "\n";
  return kExitOk;
}

struct SelectFlags {
  std::vector<std::string> inputs;
  int level = 3;
  std::optional<std::string> candidates;
};

int cmd_select_wavelet(const SelectFlags& f, std::ostream& out, std::ostream& err) {
  std::vector<WaveletFilter> filters;
  const auto names = f.candidates ? split_list(*f.candidates) : wavelet_names();
  if (names.empty()) throw UsageError("--candidates is empty");
  for (const auto& name : names) {
    try {
      filters.push_back(wavelet_by_name(name));
    } catch (const ParameterError&) {
      std::string valid;
      for (const auto& n : wavelet_names()) valid += (valid.empty() ? "" : ", ") + n;
      throw UsageError("--candidates: unknown wavelet '" + name + "'; valid names: " + valid);
    }
  }
  if (f.level < 1) throw UsageError("--level must be >= 1");
  std::vector<SignalBuffer> signals;
  for (const auto& path : f.inputs) {
    const auto file = read_signal(path, err);
    for (const auto& ch : file.recording.channels()) signals.push_back(ch);
  }
  auto rows = reconstruction_error_table(signals, filters, f.level);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.mean_error < b.mean_error; });
  out << format_error_table_csv(rows);
  return kExitOk;
}

int cmd_psd(const std::vector<std::string>& inputs, std::ostream& out, std::ostream& err) {
  for (const auto& path : inputs) {
    const auto rec = read_signal(path, err).recording;
    for (std::size_t ch = 0; ch < rec.channel_count(); ++ch) {
      out << "# " << path << " channel " << ch << "\n";
      out << format_psd_csv(psd(rec.channels()[ch]));
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"EMG artifact removal for EEG", "emgclean"};
  app.require_subcommand(1);

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic contaminated EEG trial");
  simulate->add_option("--duration", sim.duration, "Length in seconds")->capture_default_str();
  simulate->add_option("--fs", sim.fs, "Sampling rate in Hz")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--windows", sim.windows,
                       "Artifact windows as start:end seconds, comma separated (default: whole trial)");
  simulate->add_option("--snr-db", sim.snr_db, "Clean to artifact power ratio in dB")->capture_default_str();
  simulate->add_option("--out-clean", sim.out_clean, "Clean EEG CSV")->required();
  simulate->add_option("--out-emg", sim.out_emg, "Artifact CSV")->required();
  simulate->add_option("--out-corrupted", sim.out_corrupted, "Contaminated EEG CSV")->required();

  TrainFlags tr;
  auto* train = app.add_subcommand("train", "Train the artifact classifier on simulated segments");
  train->add_option("--n-per-class", tr.n_per_class, "Segments per class")->capture_default_str();
  train->add_option("--seed", tr.seed, "Random seed")->capture_default_str();
  train->add_option("--model-out", tr.model_out, "Model JSON")->required();

  DenoiseFlags dn;
  auto* denoise = app.add_subcommand("denoise", "Detect and correct artifact segments");
  denoise->add_option("--input", dn.input, "Input signal CSV")->required();
  denoise->add_option("--model", dn.model, "Classifier model JSON")->required();
  denoise->add_option("--out", dn.out, "Output signal CSV")->required();
  denoise->add_option("--reference", dn.reference, "Clean reference CSV; enables oracle fitness");
  denoise->add_option("--wavelet", dn.wavelet, "Wavelet name or 'auto'")->capture_default_str();
  denoise->add_option("--level", dn.level, "Decomposition level or 'auto'")->capture_default_str();
  denoise->add_option("--optimizer", dn.optimizer, "gwo or pso")->capture_default_str();
  denoise->add_option("--seed", dn.seed, "Random seed")->capture_default_str();
  denoise->add_option("--population", dn.population, "Swarm size")->capture_default_str();
  denoise->add_option("--iterations", dn.iterations, "Swarm iterations")->capture_default_str();

  SelectFlags sel;
  auto* select = app.add_subcommand("select-wavelet", "Rank wavelets by reconstruction error");
  select->add_option("--input", sel.inputs, "Signal CSV files")->required()->expected(1, -1);
  select->add_option("--level", sel.level, "Decomposition level")->capture_default_str();
  select->add_option("--candidates", sel.candidates, "Comma separated wavelet names");

  std::vector<std::string> psd_inputs;
  auto* psd_cmd = app.add_subcommand("psd", "Welch power spectral density");
  psd_cmd->add_option("--input", psd_inputs, "Signal CSV files")->required()->expected(1, -1);

  Manifest manifest;
  manifest.args.assign(argv + 1, argv + argc);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      manifest.command = "simulate";
      return cmd_simulate(sim, manifest, out);
    }
    if (train->parsed()) {
      manifest.command = "train";
      return cmd_train(tr, manifest, out);
    }
    if (denoise->parsed()) {
      manifest.command = "denoise";
      return cmd_denoise(dn, manifest, out, err);
    }
    if (select->parsed()) return cmd_select_wavelet(sel, out, err);
    if (psd_cmd->parsed()) return cmd_psd(psd_inputs, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace emgclean::cli
