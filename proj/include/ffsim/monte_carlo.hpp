#pragma once

#include <cstdint>
#include <vector>

#include "ffsim/simulation.hpp"

namespace ffsim {

struct MetricStats {
  std::size_t n = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double p05 = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
};

/// Order-independent summary (values are sorted before any reduction).
MetricStats summarize(std::vector<double> values);

struct BatchStatistics {
  std::vector<std::uint64_t> seeds;
  std::vector<Metrics> runs;  // in seed order
  MetricStats aligned_time;
  MetricStats fuel;
  MetricStats first_position_convergence;
  MetricStats first_s_orb_convergence;
  MetricStats switch_count;
};

BatchStatistics summarize_runs(const std::vector<Metrics>& runs);

/// Per-run seeds derived from a batch seed.
std::vector<std::uint64_t> batch_seeds(std::uint64_t seed, int n_runs);

/// Independent seeded runs of `base`, spread over `threads` workers
/// (0 = hardware concurrency). Per-step logs are not retained.
BatchStatistics monte_carlo_batch(const SimulationConfig& base, int n_runs, std::uint64_t seed,
                                  int threads = 0);

}  // namespace ffsim
