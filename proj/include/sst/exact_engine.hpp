#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "sst/special.hpp"
#include "sst/toll.hpp"

namespace sst {

namespace detail {

template <typename S>
S toll_as(const TollSpec& spec, long n) {
  if constexpr (std::is_same_v<S, Rational>) {
    auto v = toll_value_exact(spec, n);
    if (!v) throw DomainError("toll has no exact rational value");
    return *v;
  } else {
    return toll_value(spec, n);
  }
}

template <typename S>
S initial_as(const TollSpec& spec, long n) {
  if constexpr (std::is_same_v<S, Rational>) {
    auto v = initial_value_exact(spec, n);
    if (!v) throw DomainError("initial value has no exact rational form");
    return *v;
  } else {
    return spec.initial_value(n);
  }
}

// Weighted prefix sums S_t(n) = sum_{j=0}^{n-(m-1)} C(n-1-j, t) x_j,
// updated in O(m) per step via the Pascal identity.
template <typename S>
class BinomialPrefix {
 public:
  BinomialPrefix(int m) : m_(m), sums_(m - 1, S(0)) {
    for (int t = 0; t <= m - 2; ++t) cm2_.push_back(S(binomial_exact(m - 2, t)));
  }

  // Advance from n to n+1 given x_{n+1-(m-1)}; first call must be for
  // n = m-1 with x_0.
  void push(const S& x_new) {
    std::vector<S> next(m_ - 1);
    if (!started_) {
      for (int t = 0; t <= m_ - 2; ++t) next[t] = cm2_[t] * x_new;
      started_ = true;
    } else {
      for (int t = 0; t <= m_ - 2; ++t) {
        next[t] = sums_[t] + (t > 0 ? sums_[t - 1] : S(0)) + cm2_[t] * x_new;
      }
    }
    sums_ = std::move(next);
  }

  const S& top() const { return sums_[m_ - 2]; }  // S_{m-2}(n)

 private:
  int m_;
  bool started_ = false;
  std::vector<S> sums_;
  std::vector<S> cm2_;
};

}  // namespace detail

// Means a_n under the basic RPM recurrence with b_n = toll for
// n >= m-1 and a_j = b_j initial values; O(n_max * m) total.
template <typename S>
std::vector<S> rpm_mean_sweep(const TollSpec& spec, long n_max) {
  const int m = spec.m;
  std::vector<S> a(n_max + 1);
  for (long j = 0; j <= std::min<long>(m - 2, n_max); ++j) a[j] = detail::initial_as<S>(spec, j);
  if (n_max < m - 1) return a;
  detail::BinomialPrefix<S> prefix(m);
  S cnm1(binomial_exact(m - 1, m - 1));  // C(n, m-1) tracked incrementally
  for (long n = m - 1; n <= n_max; ++n) {
    if (n > m - 1) cnm1 = cnm1 * S(n) / S(n - (m - 1));
    prefix.push(a[n - (m - 1)]);
    a[n] = detail::toll_as<S>(spec, n) + S(m) * prefix.top() / cnm1;
  }
  return a;
}

std::vector<Real> rpm_mean(const TollSpec& spec, long n_max);

// Full moment sweep under the RPM model.  With `center` set, computes
// moments of X_n - center*(n+1) via the centered recurrence (the affine
// centering telescopes through the composition law, so only the initial
// values change).  Returns values[k][n] for 0 <= k <= k_max and the
// inhomogeneous terms r[k][n] of the moment recurrence.
template <typename S>
struct MomentSweep {
  std::vector<std::vector<S>> values;
  std::vector<std::vector<S>> inhomog;
};

template <typename S>
MomentSweep<S> rpm_moment_sweep(const TollSpec& spec, int k_max, long n_max,
                                const std::optional<S>& center = std::nullopt) {
  const int m = spec.m;
  MomentSweep<S> out;
  out.values.assign(k_max + 1, std::vector<S>(n_max + 1, S(0)));
  out.inhomog.assign(k_max + 1, std::vector<S>(n_max + 1, S(0)));
  for (long n = 0; n <= n_max; ++n) out.values[0][n] = S(1);

  auto initial_of = [&](long j) {
    S b = detail::initial_as<S>(spec, j);
    if (center) b -= *center * S(j + 1);
    return b;
  };

  // Convolution cache: key = sorted tuple (k_1..k_m), value = m-fold
  // convolution array of the corresponding moment sequences.  Convolving
  // with the order-0 sequence (all ones) is a running prefix sum.
  std::map<std::vector<int>, std::vector<S>> conv_cache;
  auto convolution = [&](std::vector<int> ks) -> const std::vector<S>& {
    std::sort(ks.begin(), ks.end(), std::greater<int>());
    auto it = conv_cache.find(ks);
    if (it != conv_cache.end()) return it->second;
    std::vector<S> acc = out.values[ks[0]];
    for (size_t t = 1; t < ks.size(); ++t) {
      if (ks[t] == 0) {
        for (long i = 1; i <= n_max; ++i) acc[i] += acc[i - 1];
        continue;
      }
      const auto& b = out.values[ks[t]];
      std::vector<S> next(n_max + 1, S(0));
      if (t == 1 && ks[0] == ks[1]) {
        // symmetric self-convolution: half the products
        for (long i = 0; i <= n_max; ++i) {
          if (acc[i] == 0) continue;
          S twice = acc[i] + acc[i];
          for (long j = i + 1; i + j <= n_max; ++j) next[i + j] += twice * b[j];
          if (2 * i <= n_max) next[2 * i] += acc[i] * acc[i];
        }
      } else {
        for (long i = 0; i <= n_max; ++i) {
          if (acc[i] == 0) continue;
          for (long j = 0; i + j <= n_max; ++j) next[i + j] += acc[i] * b[j];
        }
      }
      acc = std::move(next);
    }
    return conv_cache.emplace(std::move(ks), std::move(acc)).first->second;
  };

  // Ordered tuples (k_1..k_m, k_{m+1}) summing to k with k_i < k for i <= m.
  std::vector<std::vector<std::pair<std::vector<int>, BigInt>>> tuples(k_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    std::vector<int> cur(m + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == m) {
        cur[m] = left;
        // multinomial k! / prod(cur_i!)
        BigInt mult(1);
        for (long i = 2; i <= k; ++i) mult *= i;
        for (int i = 0; i <= m; ++i)
          for (long f = 2; f <= cur[i]; ++f) mult /= f;
        tuples[k].push_back({cur, mult});
        return;
      }
      for (int v = 0; v <= std::min(left, k - 1); ++v) {
        cur[pos] = v;
        rec(pos + 1, left - v);
      }
      cur[pos] = 0;
    };
    rec(0, k);
  }

  for (int k = 1; k <= k_max; ++k) {
    auto& mu = out.values[k];
    auto& r = out.inhomog[k];
    for (long j = 0; j <= std::min<long>(m - 2, n_max); ++j) {
      S b = initial_of(j);
      S p(1);
      for (int i = 0; i < k; ++i) p *= b;
      mu[j] = p;
    }
    if (n_max < m - 1) continue;
    detail::BinomialPrefix<S> prefix(m);
    S cnm1(1);
    for (long n = m - 1; n <= n_max; ++n) {
      if (n > m - 1) cnm1 = cnm1 * S(n) / S(n - (m - 1));
      prefix.push(mu[n - (m - 1)]);
      S tn = detail::toll_as<S>(spec, n);
      S rn(0);
      for (const auto& [tup, mult] : tuples[k]) {
        bool uses_self = false;
        for (int i = 0; i < m; ++i)
          if (tup[i] >= k) uses_self = true;
        if (uses_self) continue;  // excluded by construction; defensive
        std::vector<int> ks(tup.begin(), tup.begin() + m);
        const auto& cv = convolution(ks);
        S tpow(1);
        for (int i = 0; i < tup[m]; ++i) tpow *= tn;
        rn += S(mult) * tpow * cv[n - (m - 1)];
      }
      r[n] = rn / cnm1;
      mu[n] = S(m) * prefix.top() / cnm1 + r[n];
    }
    // The convolution cache refers to sequences of order < k only, but the
    // order-k row changed nothing there; keep cache across k.
  }
  return out;
}

// Catalan-model sweep (m = 2 only), in the scaled domain
// mubar_n(k) = beta_n mu_n(k) / 4^n; r_0(k) adopts the
// convention rbar_0(k) := mubar_0(k).
template <typename S>
struct CatalanSweep {
  std::vector<S> q;  // beta_n / 4^n
  std::vector<std::vector<S>> scaled;    // mubar[k][n]
  std::vector<std::vector<S>> inhomog;   // rbar[k][n]
};

template <typename S>
CatalanSweep<S> catalan_moment_sweep(const TollSpec& spec, int k_max, long n_max,
                                     const std::optional<S>& center = std::nullopt) {
  if (spec.m != 2) throw DomainError("catalan model requires m = 2");
  CatalanSweep<S> out;
  out.q.assign(n_max + 1, S(0));
  out.q[0] = S(1);
  for (long i = 1; i <= n_max; ++i) out.q[i] = out.q[i - 1] * S(2 * i - 1) / S(2 * (i + 1));
  out.scaled.assign(k_max + 1, std::vector<S>(n_max + 1, S(0)));
  out.inhomog.assign(k_max + 1, std::vector<S>(n_max + 1, S(0)));
  out.scaled[0] = out.q;

  S b0 = detail::initial_as<S>(spec, 0);
  if (center) b0 -= *center;

  for (int k = 1; k <= k_max; ++k) {
    auto& mub = out.scaled[k];
    auto& rb = out.inhomog[k];
    S p(1);
    for (int i = 0; i < k; ++i) p *= b0;
    mub[0] = p;
    rb[0] = p;  // rbar_0(k) := mubar_0(k)

    // Unordered pairs k1 <= k2 < k with k1 + k2 <= k; weight counts both
    // orders and carries the multinomial coefficient.
    struct Pair {
      int k1, k2, k3;
      S weight;
    };
    std::vector<Pair> pairs;
    for (int k1 = 0; k1 < k; ++k1) {
      for (int k2 = k1; k2 < k && k1 + k2 <= k; ++k2) {
        int k3 = k - k1 - k2;
        BigInt mult(1);
        for (long i = 2; i <= k; ++i) mult *= i;
        for (long f = 2; f <= k1; ++f) mult /= f;
        for (long f = 2; f <= k2; ++f) mult /= f;
        for (long f = 2; f <= k3; ++f) mult /= f;
        if (k1 != k2) mult *= 2;
        pairs.push_back({k1, k2, k3, S(mult)});
      }
    }

    for (long n = 1; n <= n_max; ++n) {
      S tn = detail::toll_as<S>(spec, n);
      S rn(0);
      for (const auto& pr : pairs) {
        S cv(0);
        if (pr.k1 == 0 && pr.k2 == 0) {
          cv = S(4) * out.q[n];  // sum beta_{j-1} beta_{n-j} = beta_n
        } else {
          const auto& a = out.scaled[pr.k1];
          const auto& b = out.scaled[pr.k2];
          for (long j = 1; j <= n; ++j) cv += a[j - 1] * b[n - j];
        }
        S tpow(1);
        for (int i = 0; i < pr.k3; ++i) tpow *= tn;
        rn += pr.weight * tpow * cv;
      }
      rb[n] = rn / S(4);
      S hom(0);
      for (long j = 1; j <= n; ++j) hom += out.q[n - j] * mub[j - 1];
      mub[n] = hom / S(2) + rb[n];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Public Real-typed interface.

struct MomentTable {
  enum class Model { RPM, Catalan };
  Model model;
  TollSpec spec;
  int k_max = 1;
  long n_max = 0;
  std::vector<std::vector<Real>> values;   // [k][n]; centered if centering set
  std::vector<std::vector<Real>> inhomog;  // [k][n]
  std::vector<Real> scaled0;               // catalan: beta_n/4^n
  std::vector<std::vector<Real>> scaled;   // catalan: mubar[k][n]
  std::optional<std::vector<Real>> centering;

  Real moment(int k, long n) const { return values.at(k).at(n); }
  Real variance(long n) const { return values.at(2).at(n) - values.at(1).at(n) * values.at(1).at(n); }
};

MomentTable rpm_moments(const TollSpec& spec, int k_max, long n_max,
                        const std::optional<std::vector<Real>>& centering = std::nullopt);
MomentTable catalan_moments(const TollSpec& spec, int k_max, long n_max,
                            const std::optional<std::vector<Real>>& centering = std::nullopt);

// Centering by binomial transform of an uncentered table (any sequence c_n).
std::vector<std::vector<Real>> center_by_binomial_transform(
    const std::vector<std::vector<Real>>& uncentered, const std::vector<Real>& c);

// Brute-force oracles.
struct BruteforceMoments {
  std::vector<Real> moments;                       // index k = 0..k_max
  std::optional<std::vector<Rational>> exact;      // set when toll is rational
};

BruteforceMoments rpm_moments_bruteforce(const TollSpec& spec, long n, int k_max);
BruteforceMoments catalan_bruteforce(const TollSpec& spec, long n, int k_max);

}  // namespace sst
