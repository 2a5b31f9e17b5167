#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ffsim/config.hpp"
#include "ffsim/error_bounds.hpp"
#include "ffsim/monte_carlo.hpp"
#include "ffsim/reporting.hpp"
#include "ffsim/simulation.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kConfig = 3,
  kIo = 4,
  kRuntime = 5,
};

std::string output_root() {
  const char* env = std::getenv("FFSIM_OUTPUT_ROOT");
  return env && *env ? env : "out";
}

int cmd_run(const std::string& config_path, std::string out_dir, double decimation) {
  const ffsim::SimulationConfig cfg = ffsim::load_config(config_path);
  if (out_dir.empty()) out_dir = (fs::path(output_root()) / fs::path(config_path).stem()).string();
  const ffsim::SimulationResult res = ffsim::run_closed_loop(cfg);
  const std::string csv = (fs::path(out_dir) / "timeseries.csv").string();
  ffsim::emit_timeseries(res.log, csv, decimation);
  const std::string summary = ffsim::format_metrics(res.metrics);
  ffsim::write_text((fs::path(out_dir) / "metrics.txt").string(), summary);
  std::cout << "controllers: orbit " << ffsim::to_string(cfg.control.orbit) << ", attitude "
            << ffsim::to_string(cfg.control.attitude) << "\n"
            << summary << "timeseries: " << csv << "\n";
  return kOk;
}

int cmd_bounds(const std::string& config_path) {
  const ffsim::SimulationConfig cfg = ffsim::load_config(config_path);
  const auto orb = ffsim::orbit_feasibility(cfg.control.orbit_nftsm.sliding);
  const auto att = ffsim::attitude_feasibility(cfg.control.attitude_nftsm.sliding);
  std::cout << ffsim::format_feasibility(orb) << ffsim::format_feasibility(att);
  return kOk;
}

int cmd_compare(const std::string& manifest_path) {
  const auto scenarios = ffsim::load_manifest(manifest_path, output_root());
  std::vector<std::string> outputs(scenarios.size());
  std::vector<std::string> failures;
  std::mutex mutex;
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        const auto& m = scenarios[i];
        const ffsim::SimulationConfig base = ffsim::load_config(m.config_path);
        const auto report = ffsim::run_comparison(m, base);
        outputs[i] = ffsim::format_comparison(report);
        ffsim::write_text((fs::path(m.output_dir) / "summary.txt").string(), outputs[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mutex);
        failures.push_back(e.what());
      }
    });
    if (workers.size() >= std::max(1u, std::thread::hardware_concurrency())) {
      for (auto& w : workers) w.join();
      workers.clear();
    }
  }
  for (auto& w : workers) w.join();
  if (!failures.empty()) {
    for (const auto& f : failures) std::cerr << "error: " << f << "\n";
    return kRuntime;
  }
  for (const auto& o : outputs) std::cout << o << "\n";
  return kOk;
}

void print_stats(std::ostream& os, const char* name, const ffsim::MetricStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-26s mean %.6g  min %.6g  p05 %.6g  p50 %.6g  p95 %.6g  max %.6g\n",
                name, s.mean, s.min, s.p05, s.p50, s.p95, s.max);
  os << buf;
}

int cmd_batch(const std::string& manifest_path, int runs, std::uint64_t seed, int threads) {
  const auto scenarios = ffsim::load_manifest(manifest_path, output_root());
  for (const auto& m : scenarios) {
    ffsim::SimulationConfig base = ffsim::load_config(m.config_path);
    if (!m.controllers.empty()) {
      base.control.orbit = m.controllers.front().orbit;
      base.control.attitude = m.controllers.front().attitude;
    }
    const auto stats = ffsim::monte_carlo_batch(base, runs, seed, threads);
    std::ostringstream os;
    os << "scenario: " << m.name << "  runs: " << runs << "  seed: " << seed << "\n";
    print_stats(os, "aligned time (s)", stats.aligned_time);
    print_stats(os, "fuel (N s)", stats.fuel);
    print_stats(os, "first |r_e| <= 3 m (s)", stats.first_position_convergence);
    print_stats(os, "first |s_orb| <= eps (s)", stats.first_s_orb_convergence);
    print_stats(os, "tilt switches", stats.switch_count);
    ffsim::write_text((fs::path(m.output_dir) / "batch.txt").string(), os.str());
    std::cout << os.str();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formation-flying closed-loop simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string manifest_path;
  std::string out_dir;
  double decimation = 0.1;
  int runs = 10;
  std::uint64_t seed = 1;
  int threads = 0;

  auto* run = app.add_subcommand("run", "Run one closed-loop scenario");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (default: $FFSIM_OUTPUT_ROOT/<config stem>)");
  run->add_option("--decimation", decimation, "CSV sample interval in seconds");

  auto* compare = app.add_subcommand("compare", "Run the controller comparison of a manifest");
  compare->add_option("manifest", manifest_path, "Run manifest (JSON)")->required();

  auto* bounds = app.add_subcommand("bounds", "Print error bounds and gain feasibility");
  bounds->add_option("config", config_path, "Scenario config (JSON)")->required();

  auto* batch = app.add_subcommand("batch", "Monte Carlo batch over uncertainty draws");
  batch->add_option("manifest", manifest_path, "Run manifest (JSON)")->required();
  batch->add_option("--runs", runs, "Number of runs")->check(CLI::PositiveNumber);
  batch->add_option("--seed", seed, "Batch seed");
  batch->add_option("--threads", threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, decimation);
    if (*bounds) return cmd_bounds(config_path);
    if (*compare) return cmd_compare(manifest_path);
    if (*batch) return cmd_batch(manifest_path, runs, seed, threads);
  } catch (const ffsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ffsim::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
