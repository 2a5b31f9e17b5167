#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ffsim/monte_carlo.hpp"

using namespace ffsim;

namespace {

SimulationConfig short_config() {
  SimulationConfig c;
  c.duration = 10.0;
  return c;
}

}  // namespace

TEST(MonteCarlo, SummaryIsPermutationInvariant) {
  std::vector<double> v;
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> d(0.0, 3.0);
  for (int i = 0; i < 257; ++i) v.push_back(d(rng));
  const MetricStats ref = summarize(v);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(v.begin(), v.end(), rng);
    const MetricStats s = summarize(v);
    EXPECT_EQ(s.mean, ref.mean);
    EXPECT_EQ(s.p05, ref.p05);
    EXPECT_EQ(s.p50, ref.p50);
    EXPECT_EQ(s.p95, ref.p95);
  }
}

TEST(MonteCarlo, SummaryOfKnownValues) {
  const MetricStats s = summarize({4.0, 1.0, 3.0, 2.0, 5.0});
  EXPECT_EQ(s.n, 5u);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.min, 1.0);
  EXPECT_DOUBLE_EQ(s.max, 5.0);
  EXPECT_DOUBLE_EQ(s.p50, 3.0);
  EXPECT_DOUBLE_EQ(s.p05, 1.2);
  EXPECT_DOUBLE_EQ(s.p95, 4.8);
  EXPECT_EQ(summarize({}).n, 0u);
}

TEST(MonteCarlo, SingleRunReducesToClosedLoop) {
  const SimulationConfig base = short_config();
  const BatchStatistics b = monte_carlo_batch(base, 1, 77, 1);
  ASSERT_EQ(b.runs.size(), 1u);
  SimulationConfig single = base;
  single.seed = b.seeds.front();
  const Metrics m = run_closed_loop(single).metrics;
  EXPECT_EQ(b.runs.front().fuel, m.fuel);
  EXPECT_EQ(b.runs.front().aligned_time, m.aligned_time);
  EXPECT_EQ(b.fuel.mean, m.fuel);
}

TEST(MonteCarlo, ZeroWidthUncertaintyGivesIdenticalRuns) {
  SimulationConfig base = short_config();
  base.uncertainty = {false, false, false};
  const BatchStatistics b = monte_carlo_batch(base, 4, 5, 2);
  for (const auto& m : b.runs) {
    EXPECT_EQ(m.fuel, b.runs.front().fuel);
    EXPECT_EQ(m.k_orb_max, b.runs.front().k_orb_max);
  }
  EXPECT_EQ(b.fuel.min, b.fuel.max);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResults) {
  const SimulationConfig base = short_config();
  const BatchStatistics one = monte_carlo_batch(base, 4, 11, 1);
  const BatchStatistics many = monte_carlo_batch(base, 4, 11, 4);
  ASSERT_EQ(one.seeds, many.seeds);
  for (std::size_t i = 0; i < one.runs.size(); ++i) EXPECT_EQ(one.runs[i].fuel, many.runs[i].fuel);
}

TEST(MonteCarlo, SeedsAreDistinctAndReproducible) {
  const auto a = batch_seeds(1, 100);
  EXPECT_EQ(a, batch_seeds(1, 100));
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  EXPECT_THROW(monte_carlo_batch(short_config(), 0, 1), std::invalid_argument);
}
