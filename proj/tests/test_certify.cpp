#include <set>

#include "doctest.h"
#include "facdio/certify.hpp"
#include "facdio/error.hpp"
#include "oracles.hpp"

using namespace facdio;

namespace {

std::vector<IntegerPolynomial> polys(std::vector<std::vector<long>> q) {
  std::vector<IntegerPolynomial> out;
  for (auto& c : q) out.emplace_back(std::vector<BigInt>(c.begin(), c.end()));
  return out;
}

std::vector<BigInt> ints(std::vector<long> a) { return {a.begin(), a.end()}; }

EquationInstance sum_two_squares() {
  return EquationInstance::with_form(polys({{0, 1}}), ints({1}), BinaryForm::from_ints({1, 0, 1}));
}

// Instances with sum l_i < d used for soundness checks.
std::vector<EquationInstance> certify_suite() {
  std::vector<EquationInstance> s;
  s.push_back(sum_two_squares());
  s.push_back(EquationInstance::with_form(polys({{0, 1}}), ints({1}), BinaryForm::from_ints({1, 0, 0, 2})));
  s.push_back(EquationInstance::with_form(polys({{0, 1}, {0, 1}}), ints({1, 1}), BinaryForm::from_ints({1, 0, 0, 2})));
  s.push_back(EquationInstance::with_form(polys({{0, 1, 1}}), ints({1}), BinaryForm::from_ints({1, 1, 1})));
  FormFactorization two{{{BinaryForm::from_ints({1, 0, 1}), 1}, {BinaryForm::from_ints({1, 0, 3}), 1}}};
  s.push_back(EquationInstance::with_factored_form(polys({{0, 1}}), ints({2}), two));
  s.push_back(EquationInstance::with_form(polys({{0, 0, 1}, {0, 1}}), ints({1, 3}), BinaryForm::from_ints({1, 0, 0, 0, 1})));
  s.push_back(EquationInstance::with_univariate(polys({{0, 1}}), ints({1}), IntegerPolynomial::from_ints({1, 0, 1})));
  return s;
}

// Is n a perfect d-th power (n >= 0, or d odd)? Binary search on |root|.
std::optional<oracle::Z> oracle_root(const oracle::Z& n, unsigned d) {
  const oracle::Z m = abs(n);
  oracle::Z lo = 0, hi = 1;
  auto pw = [d](const oracle::Z& x) {
    oracle::Z v = 1;
    for (unsigned k = 0; k < d; ++k) v *= x;
    return v;
  };
  while (pw(hi) < m) hi *= 2;
  while (lo < hi) {
    oracle::Z mid = (lo + hi) / 2;
    if (pw(mid) < m) lo = mid + 1;
    else hi = mid;
  }
  if (pw(lo) != m) return std::nullopt;
  if (n < 0) {
    if (d % 2 == 0) return std::nullopt;
    return -lo;
  }
  return lo;
}

}  // namespace

TEST_CASE("certificate examples for x^2+y^2") {
  const auto inst = sum_two_squares();
  const auto c3 = interval_certificate(inst, 3);
  CHECK(c3.lower() == 3);
  CHECK(c3.upper() == 6);
  CHECK(c3.covers(4));
  CHECK(c3.covers(5));
  CHECK_FALSE(c3.covers(3));
  CHECK_FALSE(c3.covers(6));
  CHECK(c3.sum_l == 1);
  CHECK(c3.d == 2);
  const auto c7 = interval_certificate(inst, 7);
  for (std::uint64_t n = 8; n <= 13; ++n) CHECK(c7.covers(n));
  CHECK_FALSE(c7.covers(14));

  // Independent oracle: 24 and 120 are not sums of two squares.
  for (long v : {24L, 120L}) {
    bool rep = false;
    for (long x = 0; x * x <= v; ++x)
      for (long y = 0; y * y <= v; ++y) rep = rep || (x * x + y * y == v);
    CHECK_FALSE(rep);
  }
  CHECK(verify_certificate(c3, inst, 200));
  CHECK(verify_certificate(c7, inst, 2000, 0));
}

TEST_CASE("certificate preconditions") {
  const auto two = EquationInstance::with_form(polys({{0, 1}, {0, 1}}), ints({1, 1}), BinaryForm::from_ints({1, 0, 1}));
  CHECK_THROWS_WITH_AS(interval_certificate(two, 3), doctest::Contains("sum of l_i < d"), PreconditionError);
  const auto shifted = EquationInstance::with_form(polys({{1, 1}}), ints({1}), BinaryForm::from_ints({1, 0, 1}));
  CHECK_THROWS_WITH_AS(interval_certificate(shifted, 3), doctest::Contains("l_1 = 0"), PreconditionError);
  const auto inst = sum_two_squares();
  CHECK_THROWS_AS(interval_certificate(inst, 5), PreconditionError);  // not useful
  CHECK_THROWS_AS(interval_certificate(inst, 9), PreconditionError);  // not prime
  const auto mono = EquationInstance::with_monomial(polys({{0, 1}}), ints({1}), 2);
  CHECK_THROWS_AS(interval_certificate(mono, 3), PreconditionError);
  const auto div_a = EquationInstance::with_form(polys({{0, 1}}), ints({3}), BinaryForm::from_ints({1, 0, 1}));
  CHECK_THROWS_WITH_AS(interval_certificate(div_a, 3), doctest::Contains("q_coprime_A_1"), PreconditionError);
}

TEST_CASE("tampered certificates fail validation") {
  const auto inst = sum_two_squares();
  auto c = interval_certificate(inst, 3);
  auto lowered = c;
  lowered.d = 1;
  CHECK_FALSE(certificate_is_valid(lowered, inst));
  CHECK_FALSE(verify_certificate(lowered, inst, 100));
  auto moved = c;
  moved.q = 5;
  CHECK_FALSE(verify_certificate(moved, inst, 100));
  auto failed = c;
  failed.hypotheses[0].passed = false;
  CHECK_FALSE(certificate_is_valid(failed, inst));
  // A certificate for a different instance does not transfer.
  const auto other = EquationInstance::with_form(polys({{0, 1}}), ints({3}), BinaryForm::from_ints({1, 0, 1}));
  CHECK_FALSE(certificate_is_valid(c, other));
}

TEST_CASE("certificate JSON round trip") {
  const auto inst = sum_two_squares();
  for (const auto& c : certificates_up_to(inst, 50)) {
    const auto j = certificate_to_json(c);
    const auto text = j.dump();
    const auto back = certificate_from_json(nlohmann::ordered_json::parse(text));
    CHECK(back.q == c.q);
    CHECK(back.evidence == c.evidence);
    CHECK(back.sum_l == c.sum_l);
    CHECK(back.d == c.d);
    CHECK(back.hypotheses.size() == c.hypotheses.size());
    CHECK(certificate_is_valid(back, inst));
    CHECK(certificate_to_json(back).dump() == text);
  }
  CHECK_THROWS_AS(certificate_from_json(nlohmann::ordered_json::parse(R"({"q": 3})")), PreconditionError);
  auto bad = certificate_to_json(interval_certificate(inst, 3));
  bad["interval"] = {3, 7};
  CHECK_THROWS_AS(certificate_from_json(bad), PreconditionError);
}

TEST_CASE("soundness over the suite for useful q <= 30") {
  int checked = 0;
  for (const auto& inst : certify_suite()) {
    for (const auto& c : certificates_up_to(inst, 30, 0)) {
      CAPTURE(c.q);
      CHECK(verify_certificate(c, inst, 500, 0));
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("chained certificates leave only 1, 2, 3, 6, 7 below 26") {
  const auto inst = sum_two_squares();
  // 13 = 1 mod 4 is not useful; 11 and 19 cover the same range.
  CHECK_THROWS_AS(interval_certificate(inst, 13), PreconditionError);
  std::vector<IntervalCertificate> chain;
  for (std::uint64_t q : {3, 7, 11, 19}) chain.push_back(interval_certificate(inst, q));
  std::set<std::uint64_t> open;
  for (std::uint64_t n = 1; n <= 25; ++n) {
    bool covered = false;
    for (const auto& c : chain) covered = covered || c.covers(n);
    if (!covered) open.insert(n);
  }
  CHECK(open == std::set<std::uint64_t>{1, 2, 3, 6, 7});
}

TEST_CASE("monomial decision examples") {
  auto dec = monomial_solve_complete(EquationInstance::with_monomial(polys({{0, 1}}), ints({1}), 2));
  CHECK(dec.bound == 8);
  CHECK(dec.complete);
  REQUIRE(dec.solutions.size() == 2);
  CHECK(dec.solutions[0].n == NTuple{1});
  CHECK(dec.solutions[0].x == -1);
  CHECK(dec.solutions[1].x == 1);
  CHECK_FALSE(dec.coefficient_reading.empty());

  dec = monomial_solve_complete(EquationInstance::with_monomial(polys({{0, 0, 1}}), ints({1}), 3));
  REQUIRE(dec.solutions.size() == 1);
  CHECK(dec.solutions[0].n == NTuple{1});
  CHECK(dec.solutions[0].x == 1);

  dec = monomial_solve_complete(EquationInstance::with_monomial(polys({{0, 1}}), ints({2}), 2));
  CHECK(dec.bound == 16);
  CHECK(dec.solutions.empty());

  CHECK_THROWS_AS(monomial_solve_complete(EquationInstance::with_monomial(polys({{0, 0, 1}}), ints({1}), 2)),
                  PreconditionError);
  CHECK_THROWS_AS(monomial_solve_complete(EquationInstance::with_monomial(polys({{1, 1}}), ints({1}), 2)),
                  PreconditionError);
}

TEST_CASE("monomial completeness against brute force to 2 N0") {
  struct Case {
    std::vector<std::vector<long>> q;
    std::vector<long> a;
    unsigned d;
  };
  const std::vector<Case> cases = {
      {{{0, 1}}, {1}, 2},          {{{0, 0, 1}}, {1}, 3},     {{{0, 1}}, {2}, 2},
      {{{0, 1}, {0, 1}}, {1, 1}, 3}, {{{0, 1, 1}}, {1}, 2},   {{{0, 1}}, {3}, 3},
      {{{0, 2}}, {1}, 2},          {{{0, 1}, {0, 1}}, {1, 2}, 3},
  };
  for (const auto& c : cases) {
    const auto inst = EquationInstance::with_monomial(polys(c.q), ints(c.a), c.d);
    const auto dec = monomial_solve_complete(inst);
    CHECK(dec.complete);
    std::set<std::pair<NTuple, std::string>> got;
    for (const auto& s : dec.solutions) got.insert({s.n, s.x.get_str()});
    std::set<std::pair<NTuple, std::string>> want;
    for (std::uint64_t nr = 1; nr <= 2 * dec.bound; ++nr)
      for (const auto& n : tuples_with_max(inst.r(), 1, nr)) {
        oracle::Z lhs = 1;
        for (std::size_t i = 0; i < inst.r(); ++i) {
          oracle::Z x = oracle::factorial(n[i]);
          for (std::uint64_t k = 0; k < n[i]; ++k) x *= c.a[i];
          lhs *= oracle::eval(c.q[i], x);
        }
        if (auto r = oracle_root(lhs, c.d)) {
          want.insert({n, r->get_str()});
          if (c.d % 2 == 0 && *r != 0) want.insert({n, oracle::Z(-*r).get_str()});
        }
      }
    CHECK(got == want);
  }
}

TEST_CASE("monomial with non-constant cofactors and r >= 2 is marked incomplete") {
  const auto inst = EquationInstance::with_monomial(polys({{0, 1}, {0, 1, 1}}), ints({1, 1}), 3);
  const auto dec = monomial_solve_complete(inst);
  CHECK_FALSE(dec.complete);
  CHECK(dec.proof_note.find("complete only up to") != std::string::npos);
}
