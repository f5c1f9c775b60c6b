#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "sst/toll.hpp"

namespace sst {

// Counter-based stream: output i of stream (seed, worker) is a pure hash of
// (seed, worker, i), so fixed seed + fixed worker count reproduces the
// sample stream bit-for-bit regardless of scheduling.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t worker = 0);
  uint64_t next_u64();
  double next_u01();  // in [0, 1)

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
};

// Double-precision toll/initial tables for the samplers.
struct SamplerTables {
  SamplerTables(const TollSpec& spec, long n_max);
  int m;
  std::vector<double> toll;     // toll[n] for n >= m-1 (0 below)
  std::vector<double> initial;  // initial[j], j <= m-2
};

// One draw of the additive functional under the RPM model: recursive
// uniform-composition splitting, O(n) per sample.
double sample_rpm(const SamplerTables& t, long n, CounterRng& rng);

// Catalan-model sampler: root rank l with probability beta_{l-1}beta_{n-l}/beta_n
// via memoized per-size inverse CDFs (shared, read-mostly).
class CatalanSplitTable {
 public:
  explicit CatalanSplitTable(long n_max);
  // cumulative root-rank distribution for subtree size s (built lazily)
  const std::vector<double>& cdf(long s) const;
  double log_beta(long n) const { return logbeta_[n]; }

 private:
  std::vector<double> logbeta_;
  mutable std::vector<std::unique_ptr<std::vector<double>>> cdfs_;
  mutable std::mutex mutex_;
};

double sample_catalan(const SamplerTables& t, const CatalanSplitTable& split, long n,
                      CounterRng& rng);

struct SampleReport {
  std::string model;
  long n = 0;
  long sample_count = 0;
  uint64_t seed = 0;
  int workers = 1;
  double mean = 0, variance = 0, central3 = 0, central4 = 0;
  double se_mean = 0, se_variance = 0, se_central3 = 0, se_central4 = 0;
  double skewness = 0, excess_kurtosis = 0;
  double z_skewness = 0, z_kurtosis = 0;
  // per-moment sigma distances when targets are given (mean, variance)
  std::vector<double> target_sigma_distance;
};

// Batch-means reduction of raw samples.
SampleReport empirical_report(const std::vector<double>& samples,
                              const std::vector<double>& targets = {});

enum class Model { RPM, Catalan };

SampleReport simulate(Model model, const TollSpec& spec, long n, long samples,
                      uint64_t seed, int workers = 1,
                      const std::vector<double>& targets = {});

}  // namespace sst
