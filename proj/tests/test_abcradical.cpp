#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "facdio/abcradical.hpp"
#include "facdio/error.hpp"
#include "oracles.hpp"

using namespace facdio;

namespace {

EquationInstance make(std::vector<std::vector<long>> q, std::vector<long> a) {
  std::vector<IntegerPolynomial> qs;
  for (auto& c : q) qs.emplace_back(std::vector<BigInt>(c.begin(), c.end()));
  return EquationInstance::with_monomial(qs, std::vector<BigInt>(a.begin(), a.end()), 2);
}

oracle::Z oracle_lhs(const std::vector<std::vector<long>>& q, const std::vector<long>& a, const NTuple& n) {
  oracle::Z v = 1;
  for (std::size_t i = 0; i < q.size(); ++i) {
    oracle::Z x = oracle::factorial(n[i]);
    for (std::uint64_t k = 0; k < n[i]; ++k) x *= a[i];
    v *= oracle::eval(q[i], x);
  }
  return v;
}

double zlog(const oracle::Z& z) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace

TEST_CASE("epsilon selection") {
  auto p = select_epsilon(make({{0, 1}, {0, 1}}, {1, 1}));
  CHECK(p.epsilon == 0.5);
  CHECK(p.epsilon_exponent == 1);
  p = select_epsilon(make({{0, 0, 1, 1}}, {1}));
  CHECK(p.epsilon == 0.5);
  // x (1 + x^5): need 1 - 5 eps > 9/10, so eps < 1/50
  p = select_epsilon(make({{0, 1, 0, 0, 0, 0, 1}}, {1}));
  CHECK(p.epsilon == 1.0 / 64);
  CHECK(p.epsilon_exponent == 6);
  CHECK(p.terms[0].multiplicity == 1);
  CHECK(p.terms[0].cofactor_degree == 5);
  CHECK(p.terms[0].coefficient_sum == 2);
  CHECK_THROWS_AS(select_epsilon(make({{1, 1}}, {1})), PreconditionError);
  p = select_epsilon(make({{0, 1}}, {6}));
  CHECK(p.radical_of_a == 6);
}

TEST_CASE("radical bound and ratio on x * y") {
  const auto inst = make({{0, 1}, {0, 1}}, {1, 1});
  const auto p0 = params_with_epsilon(inst, 0);
  CHECK(radical_bound_log(inst, {10, 10}, p0) == doctest::Approx(20 * std::log(4.0)));
  CHECK_THROWS_AS(radical_bound_log(inst, {0, 3}, p0), PreconditionError);
  const double r5 = 10 * std::log(4.0) - 2 * std::log(120.0);
  const double r10 = 20 * std::log(4.0) - 2 * std::log(3628800.0);
  CHECK(abc_log_ratio(inst, {5, 5}, p0) == doctest::Approx(r5));
  CHECK(abc_log_ratio(inst, {10, 10}, p0) == doctest::Approx(r10));
  CHECK(r5 > 0);
  CHECK(r10 < 0);
}

TEST_CASE("lhs_log against exact values") {
  const std::vector<std::vector<long>> q = {{0, 1, 3}, {0, 0, 2, 1}};
  const std::vector<long> a = {1, 2};
  const auto inst = make(q, a);
  for (const NTuple& n : std::vector<NTuple>{{1, 1}, {3, 5}, {12, 7}, {30, 40}, {60, 2}})
    CHECK(lhs_log(inst, n) == doctest::Approx(zlog(oracle_lhs(q, a, n))).epsilon(1e-12));
}

TEST_CASE("exact radical examples") {
  CHECK(exact_radical_small(make({{0, 1}, {0, 1}}, {1, 1}), {4, 3}) == 6);
  CHECK(exact_radical_small(make({{0, 1}}, {1}), {1}) == 1);
  CHECK(exact_radical_small(make({{0, 1, 1}}, {1}), {4}) == 30);
}

TEST_CASE("exact radical never exceeds the bound") {
  const std::vector<std::pair<std::vector<std::vector<long>>, std::vector<long>>> suite = {
      {{{0, 1}}, {1}},
      {{{0, 1, 1}}, {2}},
      {{{0, 1}, {0, 0, 1}}, {1, 3}},
      {{{0, 1, 3}, {0, 0, 2, 1}}, {1, 2}},
      {{{0, 1, 0, -1}}, {5}},
  };
  for (const auto& [q, a] : suite) {
    const auto inst = make(q, a);
    const auto p0 = params_with_epsilon(inst, 0);
    for (const auto& n : tuples_with_max(q.size(), 1, 6)) {
      const auto want = oracle::radical(oracle_lhs(q, a, n));
      const auto got = exact_radical_small(inst, n);
      CHECK(got == want);
      CHECK(zlog(want) <= radical_bound_log(inst, n, p0) + 1e-9);
    }
  }
}

TEST_CASE("relaxed bound dominates the ratio") {
  const auto inst = make({{0, 1, 3}, {0, 0, 2, 1}}, {1, 2});
  for (double eps : {0.0, 0.125, 0.5}) {
    const auto p = params_with_epsilon(inst, eps);
    for (const auto& n : tuples_with_max(2, 1, 20))
      CHECK(relaxed_ratio_log(inst, n, p) >= abc_log_ratio(inst, n, p) - 1e-9);
  }
}

TEST_CASE("ratio decreases along the diagonal") {
  const auto inst = make({{0, 1}, {0, 1, 1}}, {1, 1});
  const auto p = select_epsilon(inst);
  double prev = abc_log_ratio(inst, {10, 10}, p);
  for (std::uint64_t k = 11; k <= 50; ++k) {
    const double cur = abc_log_ratio(inst, {k, k}, p);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(prev < -100);
}

TEST_CASE("grid and CSV") {
  const auto inst = make({{0, 1}, {0, 1}}, {1, 1});
  const auto p = select_epsilon(inst);
  const auto rows = abc_grid(inst, 4, p, 2);
  REQUIRE(rows.size() == 16);
  CHECK(rows.front().n == NTuple{1, 1});
  CHECK(rows.back().n == NTuple{4, 4});
  CHECK(rows[5].log_ratio == doctest::Approx(abc_log_ratio(inst, rows[5].n, p)));
  CHECK(abc_grid(inst, 4, p, 1).size() == rows.size());
  const auto csv = abc_grid_csv(rows, 2);
  CHECK(csv.rfind("n_1,n_2,log_F,log_radical_bound,log_ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}
