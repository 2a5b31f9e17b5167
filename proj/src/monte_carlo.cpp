#include "ffsim/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ffsim {

namespace {

double percentile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

MetricStats summarize(std::vector<double> values) {
  MetricStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  s.min = values.front();
  s.max = values.back();
  s.p05 = percentile(values, 0.05);
  s.p50 = percentile(values, 0.50);
  s.p95 = percentile(values, 0.95);
  return s;
}

BatchStatistics summarize_runs(const std::vector<Metrics>& runs) {
  BatchStatistics b;
  b.runs = runs;
  std::vector<double> aligned, fuel, pos, sorb, sw;
  for (const auto& m : runs) {
    aligned.push_back(m.aligned_time);
    fuel.push_back(m.fuel);
    pos.push_back(m.first_position_convergence);
    sorb.push_back(m.first_s_orb_convergence);
    sw.push_back(m.switch_count);
  }
  b.aligned_time = summarize(aligned);
  b.fuel = summarize(fuel);
  b.first_position_convergence = summarize(pos);
  b.first_s_orb_convergence = summarize(sorb);
  b.switch_count = summarize(sw);
  return b;
}

std::vector<std::uint64_t> batch_seeds(std::uint64_t seed, int n_runs) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n_runs; ++i) seeds.push_back(splitmix64(seed + static_cast<std::uint64_t>(i)));
  return seeds;
}

BatchStatistics monte_carlo_batch(const SimulationConfig& base, int n_runs, std::uint64_t seed,
                                  int threads) {
  if (n_runs < 1) throw std::invalid_argument("monte_carlo_batch: n_runs must be at least 1");
  base.validate();
  const auto seeds = batch_seeds(seed, n_runs);
  std::vector<Metrics> results(seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        SimulationConfig cfg = base;
        cfg.seed = seeds[i];
        cfg.record_log = false;
        results[i] = run_closed_loop(cfg).metrics;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(seeds.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  BatchStatistics b = summarize_runs(results);
  b.seeds = seeds;
  return b;
}

}  // namespace ffsim
