#include "sst/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace sst {

namespace {

inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(uint64_t seed, uint64_t worker)
    : base_(mix64(seed) ^ mix64(mix64(worker) + 0xD1B54A32D192ED03ull)) {}

uint64_t CounterRng::next_u64() { return mix64(base_ + counter_++); }

double CounterRng::next_u01() {
  return (next_u64() >> 11) * 0x1.0p-53;
}

SamplerTables::SamplerTables(const TollSpec& spec, long n_max) : m(spec.m) {
  toll.assign(n_max + 1, 0.0);
  for (long n = spec.m - 1; n <= n_max; ++n) toll[n] = to_double(toll_value(spec, n));
  initial.resize(spec.m - 1);
  for (long j = 0; j <= spec.m - 2; ++j) initial[j] = to_double(spec.initial_value(j));
}

double sample_rpm(const SamplerTables& t, long n, CounterRng& rng) {
  const int m = t.m;
  double acc = 0.0;
  std::vector<long> work;
  work.push_back(n);
  long ranks[64];
  while (!work.empty()) {
    long s = work.back();
    work.pop_back();
    if (s <= m - 2) {
      acc += t.initial[s];
      continue;
    }
    acc += t.toll[s];
    // Floyd's algorithm: m-1 distinct ranks uniform in {1..s}
    int k = m - 1;
    int cnt = 0;
    for (long j = s - k + 1; j <= s; ++j) {
      long r = 1 + (long)(rng.next_u01() * j);
      if (r > j) r = j;
      bool dup = false;
      for (int i = 0; i < cnt; ++i)
        if (ranks[i] == r) dup = true;
      ranks[cnt++] = dup ? j : r;
    }
    std::sort(ranks, ranks + cnt);
    long prev = 0;
    for (int i = 0; i < k; ++i) {
      work.push_back(ranks[i] - 1 - prev);
      prev = ranks[i];
    }
    work.push_back(s - prev);
  }
  return acc;
}

CatalanSplitTable::CatalanSplitTable(long n_max) {
  logbeta_.resize(n_max + 1);
  logbeta_[0] = 0.0;
  for (long i = 1; i <= n_max; ++i)
    logbeta_[i] = logbeta_[i - 1] + std::log(2.0 * (2 * i - 1) / (i + 1));
  cdfs_.resize(n_max + 1);
}

const std::vector<double>& CatalanSplitTable::cdf(long s) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (cdfs_[s]) return *cdfs_[s];
  }
  auto table = std::make_unique<std::vector<double>>(s);
  double acc = 0.0;
  for (long l = 1; l <= s; ++l) {
    acc += std::exp(logbeta_[l - 1] + logbeta_[s - l] - logbeta_[s]);
    (*table)[l - 1] = acc;
  }
  (*table)[s - 1] = 1.0;
  std::lock_guard<std::mutex> lock(mutex_);
  if (!cdfs_[s]) cdfs_[s] = std::move(table);
  return *cdfs_[s];
}

double sample_catalan(const SamplerTables& t, const CatalanSplitTable& split, long n,
                      CounterRng& rng) {
  double acc = 0.0;
  std::vector<long> work;
  work.push_back(n);
  while (!work.empty()) {
    long s = work.back();
    work.pop_back();
    if (s == 0) {
      acc += t.initial[0];
      continue;
    }
    acc += t.toll[s];
    if (s == 1) {
      acc += 2 * t.initial[0];
      continue;
    }
    const auto& cdf = split.cdf(s);
    double u = rng.next_u01();
    long l =
        1 + (long)(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (l > s) l = s;
    work.push_back(l - 1);
    work.push_back(s - l);
  }
  return acc;
}

SampleReport empirical_report(const std::vector<double>& samples,
                              const std::vector<double>& targets) {
  SampleReport rep;
  long S = (long)samples.size();
  rep.sample_count = S;
  long B = std::clamp<long>(S / 100, 10, 1000);
  if (S < 1000) B = std::max<long>(2, S / 10);
  long per = S / B;
  B = S / per;

  double mean = 0;
  for (double x : samples) mean += x;
  mean /= S;
  rep.mean = mean;

  double c2 = 0, c3 = 0, c4 = 0;
  for (double x : samples) {
    double d = x - mean;
    c2 += d * d;
    c3 += d * d * d;
    c4 += d * d * d * d;
  }
  c2 /= S; c3 /= S; c4 /= S;
  rep.variance = c2 * S / std::max<long>(1, S - 1);
  rep.central3 = c3;
  rep.central4 = c4;
  double sd = std::sqrt(std::max(1e-300, c2));
  rep.skewness = c2 > 0 ? c3 / (sd * sd * sd) : 0.0;
  rep.excess_kurtosis = c2 > 0 ? c4 / (c2 * c2) - 3.0 : 0.0;
  rep.z_skewness = rep.skewness / std::sqrt(6.0 / S);
  rep.z_kurtosis = rep.excess_kurtosis / std::sqrt(24.0 / S);

  // batch means for the standard errors
  std::vector<double> bm, bv, b3, b4;
  for (long b = 0; b < B; ++b) {
    double m1 = 0;
    for (long i = b * per; i < (b + 1) * per; ++i) m1 += samples[i];
    m1 /= per;
    double v = 0, t3 = 0, t4 = 0;
    for (long i = b * per; i < (b + 1) * per; ++i) {
      double d = samples[i] - m1;
      v += d * d; t3 += d * d * d; t4 += d * d * d * d;
    }
    bm.push_back(m1);
    bv.push_back(v / std::max<long>(1, per - 1));
    b3.push_back(t3 / per);
    b4.push_back(t4 / per);
  }
  auto se_of = [&](const std::vector<double>& xs) {
    double m1 = 0;
    for (double x : xs) m1 += x;
    m1 /= xs.size();
    double v = 0;
    for (double x : xs) v += (x - m1) * (x - m1);
    v /= std::max<size_t>(1, xs.size() - 1);
    return std::sqrt(v / xs.size());
  };
  rep.se_mean = se_of(bm);
  rep.se_variance = se_of(bv);
  rep.se_central3 = se_of(b3);
  rep.se_central4 = se_of(b4);

  if (!targets.empty()) {
    if (targets.size() >= 1 && rep.se_mean > 0)
      rep.target_sigma_distance.push_back((rep.mean - targets[0]) / rep.se_mean);
    if (targets.size() >= 2 && rep.se_variance > 0)
      rep.target_sigma_distance.push_back((rep.variance - targets[1]) / rep.se_variance);
  }
  return rep;
}

SampleReport simulate(Model model, const TollSpec& spec, long n, long samples,
                      uint64_t seed, int workers, const std::vector<double>& targets) {
  SamplerTables tables(spec, n);
  std::unique_ptr<CatalanSplitTable> split;
  if (model == Model::Catalan) {
    if (spec.m != 2) throw DomainError("catalan sampler requires m = 2");
    split = std::make_unique<CatalanSplitTable>(n);
  }
  if (workers < 1) workers = 1;
  std::vector<double> all(samples);
  auto run_worker = [&](int w) {
    CounterRng rng(seed, (uint64_t)w);
    for (long i = w; i < samples; i += workers) {
      all[i] = model == Model::RPM ? sample_rpm(tables, n, rng)
                                   : sample_catalan(tables, *split, n, rng);
    }
  };
  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
    for (auto& t : pool) t.join();
  }
  auto rep = empirical_report(all, targets);
  rep.model = model == Model::RPM ? "rpm" : "catalan";
  rep.n = n;
  rep.seed = seed;
  rep.workers = workers;
  return rep;
}

}  // namespace sst
