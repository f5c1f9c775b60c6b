#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sst/toll.hpp"

using namespace sst;

namespace {
double d(const Real& x) { return to_double(x); }
}

TEST_CASE("toll_value families") {
  // (m=3, LogBinomial, n=4) -> ln 6
  auto shape3 = TollSpec::log_binomial(3);
  CHECK(d(abs(toll_value(shape3, 4) - log(Real(6)))) < 1e-30);
  // (m=2, Log, n=1) -> 0
  auto log2 = TollSpec::log_toll(2);
  CHECK(toll_value(log2, 1) == 0);
  // (m=2, Power alpha=1, n=5) -> 5
  auto pow1 = TollSpec::power_int(2, 1);
  CHECK(toll_value(pow1, 5) == 5);
  CHECK(*toll_value_exact(pow1, 5) == Rational(5));
  // LogBinomial at n = m-1 is exactly 0 and nonnegative after
  auto shape4 = TollSpec::log_binomial(4);
  CHECK(toll_value(shape4, 3) == 0);
  for (long n = 3; n < 40; ++n) CHECK(d(toll_value(shape4, n)) >= 0.0);
}

TEST_CASE("toll domain errors") {
  auto spec = TollSpec::log_toll(3);
  CHECK_THROWS_AS(toll_value(spec, 1), DomainError);
  auto ex = TollSpec::explicit_toll(2, {Real(1), Real(2)});
  CHECK(toll_value(ex, 2) == 2);
  CHECK_THROWS_AS(toll_value(ex, 3), std::out_of_range);
}

TEST_CASE("toll parse names") {
  auto t = TollSpec::parse(2, "power:1.5");
  CHECK(d(toll_value(t, 4)) == doctest::Approx(8.0));
  auto c = TollSpec::parse(3, "constant:2.5");
  CHECK(d(toll_value(c, 7)) == doctest::Approx(2.5));
  CHECK_THROWS(TollSpec::parse(2, "nosuch"));
}

TEST_CASE("functional_eval base cases") {
  // empty tree, b_0 = 0 -> 0
  auto spec = TollSpec::power_int(2, 1);
  auto empty = make_leaf(0);
  CHECK(functional_eval(*empty, spec) == 0);

  // m=2, toll t_n = n, right chain with 3 keys -> 3+2+1 = 6
  auto chain = make_internal([&] {
    std::vector<std::unique_ptr<SizeSplitTree>> cs;
    cs.push_back(make_leaf(0));
    cs.push_back(make_internal([&] {
      std::vector<std::unique_ptr<SizeSplitTree>> cs2;
      cs2.push_back(make_leaf(0));
      cs2.push_back(make_internal([&] {
        std::vector<std::unique_ptr<SizeSplitTree>> cs3;
        cs3.push_back(make_leaf(0));
        cs3.push_back(make_leaf(0));
        return cs3;
      }()));
      return cs2;
    }()));
    return cs;
  }());
  CHECK(chain->size == 3);
  CHECK(d(functional_eval(*chain, spec)) == doctest::Approx(6.0));

  // m=3, single node with 2 keys, LogBinomial -> ln C(2,2) = 0
  auto spec3 = TollSpec::log_binomial(3);
  std::vector<std::unique_ptr<SizeSplitTree>> leaves;
  for (int i = 0; i < 3; ++i) leaves.push_back(make_leaf(0));
  auto single = make_internal(std::move(leaves));
  CHECK(single->size == 2);
  CHECK(functional_eval(*single, spec3) == 0);
}

namespace {

std::unique_ptr<SizeSplitTree> random_tree(int m, long size, std::mt19937& rng) {
  if (size <= m - 2) return make_leaf(size);
  long rest = size - (m - 1);
  std::vector<long> parts(m, 0);
  for (long i = 0; i < rest; ++i) parts[rng() % m]++;
  std::vector<std::unique_ptr<SizeSplitTree>> cs;
  for (int i = 0; i < m; ++i) cs.push_back(random_tree(m, parts[i], rng));
  return make_internal(std::move(cs));
}

}  // namespace

TEST_CASE("degenerate toll evaluates to t*size on random trees") {
  std::mt19937 rng(7);
  for (int m : {2, 3, 4}) {
    auto spec = TollSpec::degenerate(m, Real(3));
    for (int rep = 0; rep < 25; ++rep) {
      long size = rng() % 40;
      auto t = random_tree(m, size, rng);
      CHECK(d(abs(functional_eval(*t, spec) - Real(3) * size)) < 1e-25);
    }
  }
}

TEST_CASE("functional_eval invariant under child permutation") {
  std::mt19937 rng(11);
  auto spec = TollSpec::log_binomial(3);
  for (int rep = 0; rep < 25; ++rep) {
    auto t = random_tree(3, 12 + (long)(rng() % 20), rng);
    Real before = functional_eval(*t, spec);
    if (!t->is_leaf()) std::swap(t->children[0], t->children[2]);
    CHECK(d(abs(functional_eval(*t, spec) - before)) < 1e-28);
  }
}

TEST_CASE("arity mismatch is a structural error") {
  auto spec = TollSpec::log_toll(3);
  std::vector<std::unique_ptr<SizeSplitTree>> cs;
  cs.push_back(make_leaf(0));
  cs.push_back(make_leaf(0));
  auto bad = make_internal(std::move(cs));  // arity 2 under m=3
  CHECK_THROWS_AS(functional_eval(*bad, spec), DomainError);
}
