// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#include "emgclean/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "emgclean/error.hpp"

namespace emgclean {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError("line " + std::to_string(line) + ": cannot parse '" + std::string(text) +
                  "' as a number");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_signal_csv(const Recording& rec) {
  std::string out = "# fs=" + format_double(rec.fs()) + "\n";
  for (std::size_t i = 0; i < rec.length(); ++i) {
    for (std::size_t ch = 0; ch < rec.channel_count(); ++ch) {
      if (ch > 0) out += ',';
      out += format_double(rec.channels()[ch][i]);
    }
    out += '\n';
  }
  return out;
}

SignalFile parse_signal_csv(std::string_view text) {
  double fs = kDefaultFs;
  bool have_fs = false;
  std::vector<std::vector<double>> columns;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto pos = line.find("fs=");
      if (pos != std::string_view::npos) {
        fs = parse_double(line.substr(pos + 3), line_no);
        if (!(fs > 0.0)) throw IoError("sampling rate in header must be positive");
        have_fs = true;
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (columns.empty()) columns.resize(cells.size());
    if (cells.size() != columns.size()) {
      throw IoError("line " + std::to_string(line_no) + ": expected " +
                    std::to_string(columns.size()) + " columns, found " +
                    std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) columns[c].push_back(parse_double(cells[c], line_no));
  }
  if (columns.empty()) throw IoError("signal file contains no samples");
  std::vector<SignalBuffer> channels;
  for (auto& col : columns) channels.emplace_back(std::move(col), fs);
  return {Recording(std::move(channels)), have_fs};
}

void write_signal_csv(const std::filesystem::path& path, const Recording& rec) {
  write_file_atomic(path, format_signal_csv(rec));
}

SignalFile read_signal_csv(const std::filesystem::path& path) {
  return parse_signal_csv(read_file(path));
}

nlohmann::json to_json(const SvmModel& model) {
  return {{"version", kModelVersion},
          {"weights", model.weights},
          {"bias", model.bias},
          {"feature_means", model.feature_means},
          {"feature_stds", model.feature_stds},
          {"C", model.box_constraint}};
}

SvmModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kModelVersion) throw IoError("unsupported model version");
    auto triple = [&](const char* key) {
      const auto& arr = j.at(key);
      if (!arr.is_array() || arr.size() != 3) {
        throw IoError(std::string("model field '") + key + "' must hold 3 numbers");
      }
      return std::array<double, 3>{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
    };
    SvmModel m;
    m.weights = triple("weights");
    m.bias = j.at("bias").get<double>();
    m.feature_means = triple("feature_means");
    m.feature_stds = triple("feature_stds");
    m.box_constraint = j.at("C").get<double>();
    for (double sd : m.feature_stds) {
      if (!(sd > 0.0)) throw IoError("model feature_stds must be positive");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed model document: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const SvmModel& model) {
  write_file_atomic(path, to_json(model).dump(2) + "\n");
}

SvmModel load_model(const std::filesystem::path& path) {
  try {
    return model_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse model '" + path.string() + "': " + e.what());
  }
}

nlohmann::json to_json(const ClassifierReport& r) {
  return {{"sensitivity", r.sensitivity},
          {"specificity", r.specificity},
          {"accuracy", r.accuracy},
          {"tp", r.counts.tp},
          {"fp", r.counts.fp},
          {"tn", r.counts.tn},
          {"fn", r.counts.fn}};
}

nlohmann::json to_json(const DenoiseTrace& t) {
  nlohmann::json j = {{"channel", t.channel},
                      {"start_sample", t.start_sample},
                      {"label", std::string(to_string(t.label))}};
  if (t.label == SegmentLabel::kCorrupted) {
    j["fitness_mode"] = std::string(to_string(t.fitness));
    j["optimizer"] = std::string(to_string(t.algorithm));
    j["wavelet"] = t.wavelet;
    j["level"] = t.level;
    j["lambdas"] = t.lambdas;
    j["subband_sar"] = t.subband_sar;
    j["best_fitness"] = t.best_fitness;
    j["iterations"] = t.history.size();
  }
  return j;
}

nlohmann::json to_json(const EvaluationReport& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json channels = nlohmann::json::array();
  for (const auto& c : r.channels) {
    channels.push_back({{"cc", opt(c.cc)}, {"ssim", opt(c.ssim)}, {"mi", c.mi}, {"sar_db", opt(c.sar_db)}});
  }
  return {{"cc", opt(r.cc)},
          {"ssim", opt(r.ssim)},
          {"mi", r.mi},
          {"mi_bins", r.mi_bins},
          {"sar_db", opt(r.sar_db)},
          {"reference_available", r.cc.has_value()},
          {"channels", channels}};
}

nlohmann::json to_json(const SimulationSpec& s) {
  nlohmann::json windows = nlohmann::json::array();
  for (const auto& w : s.artifact_windows) windows.push_back({w.start, w.end});
  return {{"duration", s.duration},
          {"fs", s.fs},
          {"n_sinusoids", s.n_sinusoids},
          {"eeg_band", {s.eeg_band.lo, s.eeg_band.hi}},
          {"emg_band", {s.emg_band.lo, s.emg_band.hi}},
          {"artifact_windows", windows},
          {"snr_db", s.snr_db},
          {"seed", s.seed}};
}

std::string format_trace_jsonl(const std::vector<DenoiseTrace>& traces) {
  std::string out;
  for (const auto& t : traces) out += to_json(t).dump() + "\n";
  return out;
}

std::string format_history_csv(const std::vector<DenoiseTrace>& traces) {
  std::string out = "segment,channel,start_sample,iteration,best_fitness\n";
  for (std::size_t s = 0; s < traces.size(); ++s) {
    const auto& t = traces[s];
    for (std::size_t it = 0; it < t.history.size(); ++it) {
      out += std::to_string(s) + "," + std::to_string(t.channel) + "," +
             std::to_string(t.start_sample) + "," + std::to_string(it + 1) + "," +
             format_double(t.history[it]) + "\n";
    }
  }
  return out;
}

std::string format_psd_csv(const std::vector<PsdPoint>& points) {
  std::string out = "frequency,power\n";
  for (const auto& p : points) out += format_double(p.frequency) + "," + format_double(p.power) + "\n";
  return out;
}

std::string format_error_table_csv(const std::vector<WaveletErrorRow>& rows) {
  std::string out = "wavelet,mean_error,std_error\n";
  for (const auto& r : rows) {
    out += r.name + "," + format_double(r.mean_error) + "," + format_double(r.std_error) + "\n";
  }
  return out;
}

std::vector<ArtifactWindow> parse_windows(std::string_view text) {
  std::vector<ArtifactWindow> windows;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return windows;
  for (auto part : split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw ParameterError("window '" + std::string(part) + "' is not of the form start:end");
    }
    try {
      windows.push_back({parse_double(part.substr(0, colon), 0), parse_double(part.substr(colon + 1), 0)});
    } catch (const IoError&) {
      throw ParameterError("window '" + std::string(part) + "' has a non-numeric bound");
    }
  }
  return windows;
}

}  // namespace emgclean
