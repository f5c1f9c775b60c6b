#include "sst/toll.hpp"

#include <fstream>
#include <sstream>

#include "sst/special.hpp"

namespace sst {

namespace {
std::vector<Real> default_initial(int m, std::vector<Real> initial) {
  if (initial.empty()) initial.assign(m - 1, Real(0));
  if ((int)initial.size() != m - 1)
    throw DomainError("TollSpec: initial values must have length m-1");
  return initial;
}
}  // namespace

TollSpec TollSpec::constant(int m, const Real& c, std::vector<Real> initial) {
  return {m, ConstantToll{c, std::nullopt}, default_initial(m, std::move(initial))};
}

TollSpec TollSpec::constant_exact(int m, const Rational& c, std::vector<Real> initial) {
  return {m, ConstantToll{Real(c), c}, default_initial(m, std::move(initial))};
}

TollSpec TollSpec::power(int m, const Real& alpha, std::vector<Real> initial) {
  if (alpha <= 0) throw DomainError("power toll requires alpha > 0");
  std::optional<long> ai;
  if (alpha == floor(alpha) && alpha < 1e9) ai = static_cast<long>(alpha);
  return {m, PowerToll{alpha, ai}, default_initial(m, std::move(initial))};
}

TollSpec TollSpec::power_int(int m, long alpha, std::vector<Real> initial) {
  return {m, PowerToll{Real(alpha), alpha}, default_initial(m, std::move(initial))};
}

TollSpec TollSpec::log_toll(int m, std::vector<Real> initial) {
  return {m, LogToll{}, default_initial(m, std::move(initial))};
}

TollSpec TollSpec::log_binomial(int m, std::vector<Real> initial) {
  return {m, LogBinomialToll{}, default_initial(m, std::move(initial))};
}

TollSpec TollSpec::explicit_toll(int m, std::vector<Real> values, std::vector<Real> initial) {
  return {m, ExplicitToll{std::move(values)}, default_initial(m, std::move(initial))};
}

TollSpec TollSpec::degenerate(int m, const Real& t) {
  std::vector<Real> init(m - 1);
  for (int j = 0; j < m - 1; ++j) init[j] = t * j;
  return {m, ConstantToll{t * (m - 1), std::nullopt}, std::move(init)};
}

Real TollSpec::initial_value(long n) const {
  if (n < 0 || n > m - 2) throw DomainError("initial_value: n outside [0, m-2]");
  return initial[n];
}

Real toll_value(const TollSpec& spec, long n) {
  if (n < spec.m - 1)
    throw DomainError("toll_value: t_n undefined for n < m-1 (got n=" + std::to_string(n) + ")");
  return std::visit(
      [&](const auto& fam) -> Real {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, ConstantToll>) {
          return fam.c;
        } else if constexpr (std::is_same_v<T, PowerToll>) {
          return pow(Real(n), fam.alpha);
        } else if constexpr (std::is_same_v<T, LogToll>) {
          return log(Real(n));
        } else if constexpr (std::is_same_v<T, LogBinomialToll>) {
          // ln C(n, m-1) via lgamma; exact 0 at n = m-1.
          if (n == spec.m - 1) return Real(0);
          return lgamma_r(Real(n + 1)) - lgamma_r(Real(n - spec.m + 2)) - lgamma_r(Real(spec.m));
        } else {
          static_assert(std::is_same_v<T, ExplicitToll>);
          size_t idx = n - (spec.m - 1);
          if (idx >= fam.values.size())
            throw std::out_of_range("explicit toll: index past stored range");
          return fam.values[idx];
        }
      },
      spec.family);
}

std::optional<Rational> toll_value_exact(const TollSpec& spec, long n) {
  if (n < spec.m - 1)
    throw DomainError("toll_value_exact: t_n undefined for n < m-1");
  if (auto* c = std::get_if<ConstantToll>(&spec.family)) return c->c_exact;
  if (auto* p = std::get_if<PowerToll>(&spec.family)) {
    if (!p->alpha_int) return std::nullopt;
    BigInt v(1);
    for (long i = 0; i < *p->alpha_int; ++i) v *= BigInt(n);
    return Rational(v);
  }
  return std::nullopt;
}

std::optional<Rational> initial_value_exact(const TollSpec& spec, long n) {
  if (n < 0 || n > spec.m - 2) throw DomainError("initial_value_exact: n outside [0, m-2]");
  const Real& b = spec.initial[n];
  if (b == floor(b) && abs(b) < Real(1e18)) return Rational(BigInt(static_cast<long long>(b)));
  return std::nullopt;
}

TollSpec TollSpec::parse(int m, const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "constant") {
    Real c = arg.empty() ? Real(1) : Real(arg);
    return TollSpec::constant(m, c);
  }
  if (head == "power") {
    if (arg.empty()) throw DomainError("power toll requires power:ALPHA");
    return TollSpec::power(m, Real(arg));
  }
  if (head == "log") return TollSpec::log_toll(m);
  if (head == "logbinomial") return TollSpec::log_binomial(m);
  if (head == "explicit") {
    std::ifstream in(arg);
    if (!in) throw DomainError("explicit toll: cannot open " + arg);
    std::vector<Real> vals;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      vals.emplace_back(line);
    }
    return TollSpec::explicit_toll(m, std::move(vals));
  }
  throw DomainError("unknown toll family: " + head);
}

std::string TollSpec::name() const {
  return std::visit(
      [&](const auto& fam) -> std::string {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, ConstantToll>) {
          return "constant:" + fam.c.str(6);
        } else if constexpr (std::is_same_v<T, PowerToll>) {
          return "power:" + fam.alpha.str(6);
        } else if constexpr (std::is_same_v<T, LogToll>) {
          return "log";
        } else if constexpr (std::is_same_v<T, LogBinomialToll>) {
          return "logbinomial";
        } else {
          return "explicit";
        }
      },
      family);
}

std::unique_ptr<SizeSplitTree> make_leaf(long keys) {
  auto t = std::make_unique<SizeSplitTree>();
  t->size = keys;
  return t;
}

std::unique_ptr<SizeSplitTree> make_internal(
    std::vector<std::unique_ptr<SizeSplitTree>> children) {
  auto t = std::make_unique<SizeSplitTree>();
  long total = 0;
  for (auto& c : children) total += c->size;
  t->size = total + static_cast<long>(children.size()) - 1;
  t->children = std::move(children);
  return t;
}

void check_tree(const SizeSplitTree& tree, int m) {
  if (tree.is_leaf()) {
    if (tree.size > m - 2)
      throw DomainError("leaf holds more than m-2 keys");
    return;
  }
  if ((int)tree.children.size() != m) throw DomainError("internal node arity mismatch");
  if (tree.size < m - 1) throw DomainError("internal node smaller than m-1 keys");
  long sum = 0;
  for (auto& c : tree.children) {
    check_tree(*c, m);
    sum += c->size;
  }
  if (sum != tree.size - (m - 1)) throw DomainError("child sizes do not sum to size-(m-1)");
}

Real functional_eval(const SizeSplitTree& tree, const TollSpec& spec) {
  check_tree(tree, spec.m);
  // Bottom-up over an explicit stack; post-order accumulate.
  std::function<Real(const SizeSplitTree&)> eval = [&](const SizeSplitTree& t) -> Real {
    if (t.is_leaf()) return spec.initial_value(t.size);
    Real s = toll_value(spec, t.size);
    for (auto& c : t.children) s += eval(*c);
    return s;
  };
  return eval(tree);
}

}  // namespace sst
