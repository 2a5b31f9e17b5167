#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffsim/simulation.hpp"

namespace ffsim {

/// File I/O failure; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> timeseries_columns();

/// Writes every `decimation`-seconds sample of the log as CSV.
void emit_timeseries(const SimulationLog& log, const std::string& path, double decimation = 0.1);

struct Timeseries {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Timeseries read_timeseries(const std::string& path);

/// One row of a CSV written by emit_timeseries, for a single record.
std::vector<double> timeseries_row(const LogRecord& rec);

struct ControllerPair {
  ControllerKind orbit = ControllerKind::kNftsm;
  ControllerKind attitude = ControllerKind::kNftsm;
};

std::string pair_label(const ControllerPair& pair);

struct RunManifest {
  std::string name;
  std::string config_path;
  std::string output_dir;
  std::vector<ControllerPair> controllers;
  std::vector<std::uint64_t> seeds;
};

/// Reads a manifest file: either one scenario object or
/// {"scenarios": [...]}. Relative paths resolve against the manifest's
/// directory; the output directory is placed under `output_root` when given.
std::vector<RunManifest> load_manifest(const std::string& path, const std::string& output_root = "");

struct ComparisonRow {
  ControllerPair pair;
  std::uint64_t seed = 0;
  UncertaintyDraw draw;
  Metrics metrics;
};

struct ComparisonReport {
  std::string scenario;
  std::vector<ComparisonRow> rows;
  /// True when every row used the same seed and the same uncertainty draws.
  bool streams_identical = true;
};

/// Runs every controller pair of `manifest` on `base` with its first seed.
/// Writes `<output_dir>/<pair>.csv` when `write_timeseries` is set.
ComparisonReport run_comparison(const RunManifest& manifest, const SimulationConfig& base,
                                bool write_timeseries = true);

/// Plain-text table: aligned time (min) and fuel (N s) per controller pair.
std::string format_comparison(const ComparisonReport& report);

std::string format_metrics(const Metrics& m);

/// Writes `content` to `path`, creating parent directories.
void write_text(const std::string& path, const std::string& content);

}  // namespace ffsim
