// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "emgclean/classifier.hpp"
#include "emgclean/metrics.hpp"
#include "emgclean/optimizer.hpp"
#include "emgclean/pipeline.hpp"
#include "emgclean/simulator.hpp"

namespace emgclean {

inline constexpr double kDefaultFs = 250.0;
inline constexpr int kModelVersion = 1;
inline constexpr int kManifestSchemaVersion = 1;

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Signal CSV: optional "# fs=<Hz>" line, then one row per sample and one
/// column per channel, values printed with 17 significant digits.
std::string format_signal_csv(const Recording& rec);

struct SignalFile {
  Recording recording;
  /// False when the header was absent and kDefaultFs was assumed.
  bool fs_from_header = false;
};

SignalFile parse_signal_csv(std::string_view text);
void write_signal_csv(const std::filesystem::path& path, const Recording& rec);
SignalFile read_signal_csv(const std::filesystem::path& path);

nlohmann::json to_json(const SvmModel& model);
/// Validates version, array lengths and strictly positive stds.
SvmModel model_from_json(const nlohmann::json& j);
void save_model(const std::filesystem::path& path, const SvmModel& model);
SvmModel load_model(const std::filesystem::path& path);

nlohmann::json to_json(const ClassifierReport& report);
nlohmann::json to_json(const DenoiseTrace& trace);
nlohmann::json to_json(const EvaluationReport& report);
nlohmann::json to_json(const SimulationSpec& spec);

/// One JSON object per line.
std::string format_trace_jsonl(const std::vector<DenoiseTrace>& traces);

/// segment,channel,start_sample,iteration,best_fitness rows for every
/// segment that ran the optimizer.
std::string format_history_csv(const std::vector<DenoiseTrace>& traces);

/// frequency,power rows.
std::string format_psd_csv(const std::vector<PsdPoint>& points);

/// wavelet,mean_error,std_error rows.
std::string format_error_table_csv(const std::vector<WaveletErrorRow>& rows);

/// "s:e,s:e,..." in seconds. Empty text yields no windows.
std::vector<ArtifactWindow> parse_windows(std::string_view text);

}  // namespace emgclean
