#include "sst/exact_engine.hpp"

#include <numeric>

namespace sst {

std::vector<Real> rpm_mean(const TollSpec& spec, long n_max) {
  return rpm_mean_sweep<Real>(spec, n_max);
}

namespace {

// The centered recurrence applies only to c_n = c*(n+1); anything else goes
// through the binomial transform.  c = 0 (all-zero sequence) is a no-op.
std::optional<Real> affine_center(const std::vector<Real>& c, long n_max) {
  if ((long)c.size() < n_max + 1) throw DomainError("centering sequence too short");
  Real c0 = c[0];
  for (long n = 0; n <= n_max; ++n) {
    if (abs(c[n] - c0 * (n + 1)) > abs(c0) * 1e-30 + Real(1e-30)) return std::nullopt;
  }
  return c0;
}

}  // namespace

MomentTable rpm_moments(const TollSpec& spec, int k_max, long n_max,
                        const std::optional<std::vector<Real>>& centering) {
  if (k_max < 1) throw DomainError("rpm_moments: k_max >= 1 required");
  MomentTable t;
  t.model = MomentTable::Model::RPM;
  t.spec = spec;
  t.k_max = k_max;
  t.n_max = n_max;
  t.centering = centering;
  std::optional<Real> aff =
      centering ? affine_center(*centering, n_max) : std::optional<Real>(Real(0));
  if (!aff) {
    // General sequence: binomial transform of the uncentered sweep.
    auto sweep = rpm_moment_sweep<Real>(spec, k_max, n_max);
    t.values = center_by_binomial_transform(sweep.values, *centering);
    t.inhomog = std::move(sweep.inhomog);
    return t;
  }
  auto sweep = rpm_moment_sweep<Real>(spec, k_max, n_max,
                                      *aff == 0 ? std::nullopt : aff);
  t.values = std::move(sweep.values);
  t.inhomog = std::move(sweep.inhomog);
  return t;
}

MomentTable catalan_moments(const TollSpec& spec, int k_max, long n_max,
                            const std::optional<std::vector<Real>>& centering) {
  if (spec.m != 2) throw DomainError("catalan_moments: unsupported model for m != 2");
  if (k_max < 0) throw DomainError("catalan_moments: k_max >= 0 required");
  MomentTable t;
  t.model = MomentTable::Model::Catalan;
  t.spec = spec;
  t.k_max = k_max;
  t.n_max = n_max;
  t.centering = centering;
  std::optional<Real> aff =
      centering ? affine_center(*centering, n_max) : std::optional<Real>(Real(0));
  if (!aff) {
    // general sequence: values are centered, the scaled table stays uncentered
    auto sweep = catalan_moment_sweep<Real>(spec, k_max, n_max);
    t.scaled0 = sweep.q;
    t.scaled = sweep.scaled;
    std::vector<std::vector<Real>> unc(k_max + 1, std::vector<Real>(n_max + 1));
    for (int k = 0; k <= k_max; ++k)
      for (long n = 0; n <= n_max; ++n) unc[k][n] = sweep.scaled[k][n] / sweep.q[n];
    t.values = center_by_binomial_transform(unc, *centering);
    t.inhomog = std::move(sweep.inhomog);
    return t;
  }
  auto sweep = catalan_moment_sweep<Real>(spec, k_max, n_max,
                                          *aff == 0 ? std::nullopt : aff);
  t.scaled0 = sweep.q;
  t.scaled = sweep.scaled;
  t.values.assign(k_max + 1, std::vector<Real>(n_max + 1));
  for (int k = 0; k <= k_max; ++k)
    for (long n = 0; n <= n_max; ++n) t.values[k][n] = sweep.scaled[k][n] / sweep.q[n];
  t.inhomog = std::move(sweep.inhomog);
  return t;
}

std::vector<std::vector<Real>> center_by_binomial_transform(
    const std::vector<std::vector<Real>>& uncentered, const std::vector<Real>& c) {
  int k_max = (int)uncentered.size() - 1;
  long n_max = (long)uncentered[0].size() - 1;
  std::vector<std::vector<Real>> out(k_max + 1, std::vector<Real>(n_max + 1, Real(0)));
  for (long n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= k_max; ++k) {
      Real acc(0);
      for (int j = 0; j <= k; ++j) {
        Real term = binomial_real(k, j) * uncentered[j][n];
        Real cp(1);
        for (int i = 0; i < k - j; ++i) cp *= -c[n];
        acc += term * cp;
      }
      out[k][n] = acc;
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// Brute-force oracles.

namespace {

struct KeyNode {
  std::vector<long> keys;
  std::vector<std::unique_ptr<KeyNode>> children;
};

void insert_key(KeyNode& node, long key, int m) {
  if ((int)node.keys.size() < m - 1 && node.children.empty()) {
    node.keys.insert(std::upper_bound(node.keys.begin(), node.keys.end(), key), key);
    return;
  }
  if (node.children.empty()) node.children.resize(m);
  size_t branch = std::upper_bound(node.keys.begin(), node.keys.end(), key) - node.keys.begin();
  if (!node.children[branch]) node.children[branch] = std::make_unique<KeyNode>();
  insert_key(*node.children[branch], key, m);
}

long subtree_keys(const KeyNode& node) {
  long s = node.keys.size();
  for (auto& c : node.children)
    if (c) s += subtree_keys(*c);
  return s;
}

template <typename S>
S functional_on_keytree(const KeyNode& node, const TollSpec& spec) {
  long s = subtree_keys(node);
  if (s <= spec.m - 2) return detail::initial_as<S>(spec, s);
  S acc = detail::toll_as<S>(spec, s);
  for (int i = 0; i < spec.m; ++i) {
    if (i < (int)node.children.size() && node.children[i])
      acc += functional_on_keytree<S>(*node.children[i], spec);
    else
      acc += detail::initial_as<S>(spec, 0);
  }
  return acc;
}

template <typename S>
std::vector<S> rpm_bruteforce_sweep(const TollSpec& spec, long n, int k_max) {
  std::vector<long> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<S> sums(k_max + 1, S(0));
  long count = 0;
  do {
    KeyNode root;
    for (long key : perm) insert_key(root, key, spec.m);
    S f = n == 0 ? detail::initial_as<S>(spec, 0) : functional_on_keytree<S>(root, spec);
    S p(1);
    for (int k = 0; k <= k_max; ++k) {
      sums[k] += p;
      p *= f;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& s : sums) s /= S(count);
  return sums;
}

template <typename S>
std::vector<std::vector<S>> catalan_values_by_size(const TollSpec& spec, long n) {
  std::vector<std::vector<S>> values(n + 1);
  values[0] = {detail::initial_as<S>(spec, 0)};
  for (long s = 1; s <= n; ++s) {
    S ts = detail::toll_as<S>(spec, s);
    for (long l = 1; l <= s; ++l) {
      for (const S& vl : values[l - 1])
        for (const S& vr : values[s - l]) values[s].push_back(vl + vr + ts);
    }
  }
  return values;
}

}  // namespace

BruteforceMoments rpm_moments_bruteforce(const TollSpec& spec, long n, int k_max) {
  if (n > 8) throw DomainError("rpm_moments_bruteforce: n > 8 exceeds oracle capacity");
  if (k_max > 3) throw DomainError("rpm_moments_bruteforce: k_max > 3 exceeds oracle capacity");
  BruteforceMoments out;
  bool exact_ok = toll_value_exact(spec, spec.m - 1).has_value();
  for (long j = 0; j <= spec.m - 2 && exact_ok; ++j)
    exact_ok = initial_value_exact(spec, j).has_value();
  if (exact_ok) {
    auto ex = rpm_bruteforce_sweep<Rational>(spec, n, k_max);
    out.exact = ex;
    out.moments.reserve(ex.size());
    for (auto& r : ex) out.moments.emplace_back(r);
  } else {
    out.moments = rpm_bruteforce_sweep<Real>(spec, n, k_max);
  }
  return out;
}

BruteforceMoments catalan_bruteforce(const TollSpec& spec, long n, int k_max) {
  if (spec.m != 2) throw DomainError("catalan_bruteforce: m = 2 only");
  if (n > 12) throw DomainError("catalan_bruteforce: n > 12 exceeds oracle capacity");
  if (k_max > 3) throw DomainError("catalan_bruteforce: k_max > 3 exceeds oracle capacity");
  BruteforceMoments out;
  bool exact_ok =
      toll_value_exact(spec, 1).has_value() && initial_value_exact(spec, 0).has_value();
  auto finish = [&](auto values, auto zero) {
    using S = decltype(zero);
    std::vector<S> sums(k_max + 1, S(0));
    for (const S& v : values[n]) {
      S p(1);
      for (int k = 0; k <= k_max; ++k) {
        sums[k] += p;
        p *= v;
      }
    }
    for (auto& s : sums) s /= S((long)values[n].size());
    return sums;
  };
  if (exact_ok) {
    auto ex = finish(catalan_values_by_size<Rational>(spec, n), Rational(0));
    out.exact = ex;
    for (auto& r : ex) out.moments.emplace_back(r);
  } else {
    out.moments = finish(catalan_values_by_size<Real>(spec, n), Real(0));
  }
  return out;
}

}  // namespace sst
