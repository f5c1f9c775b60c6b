#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sst/real.hpp"

namespace sst {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Toll families.  Values t_n are defined for n >= m-1 only.
struct ConstantToll {
  Real c;
  std::optional<Rational> c_exact;
};
struct PowerToll {
  Real alpha;
  std::optional<long> alpha_int;  // set when alpha is a nonnegative integer
};
struct LogToll {};
struct LogBinomialToll {};
struct ExplicitToll {
  std::vector<Real> values;  // values[i] = t_{m-1+i}
};

using TollFamily = std::variant<ConstantToll, PowerToll, LogToll, LogBinomialToll, ExplicitToll>;

// A toll family plus branching factor and initial values b_0..b_{m-2}
// (the functional on trees with fewer than m-1 keys).
struct TollSpec {
  int m = 2;
  TollFamily family;
  std::vector<Real> initial;  // size m-1; defaults to zeros

  static TollSpec constant(int m, const Real& c, std::vector<Real> initial = {});
  static TollSpec constant_exact(int m, const Rational& c, std::vector<Real> initial = {});
  static TollSpec power(int m, const Real& alpha, std::vector<Real> initial = {});
  static TollSpec power_int(int m, long alpha, std::vector<Real> initial = {});
  static TollSpec log_toll(int m, std::vector<Real> initial = {});
  static TollSpec log_binomial(int m, std::vector<Real> initial = {});
  static TollSpec explicit_toll(int m, std::vector<Real> values, std::vector<Real> initial = {});

  // t_n + 1-based helpers for the degenerate toll t*min(m-1, n).
  static TollSpec degenerate(int m, const Real& t);

  Real initial_value(long n) const;  // b_n for 0 <= n <= m-2

  // Parse a CLI name: constant[:C] | power:ALPHA | log | logbinomial | explicit:PATH.
  static TollSpec parse(int m, const std::string& text);
  std::string name() const;
};

// t_n for n >= m-1; throws DomainError below that.
Real toll_value(const TollSpec& spec, long n);

// Exact rational toll where the family permits it (Constant with rational c,
// Power with integer alpha); nullopt otherwise.
std::optional<Rational> toll_value_exact(const TollSpec& spec, long n);
std::optional<Rational> initial_value_exact(const TollSpec& spec, long n);

// Size-split tree: the only structure additive functionals can see.
struct SizeSplitTree {
  long size = 0;
  std::vector<std::unique_ptr<SizeSplitTree>> children;  // empty => leaf

  bool is_leaf() const { return children.empty(); }
};

std::unique_ptr<SizeSplitTree> make_leaf(long keys);
std::unique_ptr<SizeSplitTree> make_internal(std::vector<std::unique_ptr<SizeSplitTree>> children);

// Validates the size-split invariants for arity m.
void check_tree(const SizeSplitTree& tree, int m);

// f(T) = sum over children + t_{|T|}; leaves return initial[size].
Real functional_eval(const SizeSplitTree& tree, const TollSpec& spec);

}  // namespace sst
