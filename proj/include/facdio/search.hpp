#pragma once

// Bounded exhaustive search for solutions of ∏ Q_i(A_i^{n_i} n_i!) = rhs.
//
// Representability uses exact integer arithmetic only: slices f(x, y0) - L
// are split into monotone runs using the recursively located critical points
// of their derivatives, and each run is bisected over the integers.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "facdio/certify.hpp"
#include "facdio/instance.hpp"

namespace facdio {

/// Every integer root of p in [lo, hi]. The zero polynomial is rejected
/// (every integer would be a root); callers handle it.
std::vector<BigInt> integer_roots(const IntegerPolynomial& p, const BigInt& lo, const BigInt& hi);

/// Cauchy bound: every real root of p has |root| <= the returned value.
BigInt root_bound(const IntegerPolynomial& p);

/// A rational m > 0 with |f(x,y)| >= m max(|x|,|y|)^d for all integers, or
/// nullopt when f is not definite or the certification grid cannot separate
/// |f| from zero on the boundary of the unit square.
std::optional<mpq_class> definite_lower_bound(const BinaryForm& f);

/// Box large enough to contain every solution of f(x,y) = L for a definite f.
std::optional<std::uint64_t> automatic_box(const BinaryForm& f, const BigInt& L);

/// All (x, y) with |x|, |y| <= box and f(x,y) = L. Without a box, f must be
/// definite and the box is derived; otherwise PreconditionError.
std::vector<std::pair<BigInt, BigInt>> represent_form(const BinaryForm& f, const BigInt& L,
                                                      std::optional<std::uint64_t> xy_box);

/// All integers x with p(x) = L. Complete; requires degree >= 1.
std::vector<BigInt> represent_univariate(const IntegerPolynomial& p, const BigInt& L);

struct SearchSolution {
  NTuple n;
  BigInt x;
  std::optional<BigInt> y;  // only for binary-form right-hand sides
  BigInt lhs;

  friend bool operator==(const SearchSolution&, const SearchSolution&) = default;
};

struct SearchOptions {
  std::uint64_t n_bound = 10;
  /// 0 = derive from definiteness (binary forms only).
  std::uint64_t xy_box = 0;
  bool prune = false;
  std::vector<IntervalCertificate> certificates;  // used when prune is set
  unsigned jobs = 1;
};

struct SearchReport {
  std::vector<SearchSolution> solutions;  // sorted by (n, x, y)
  std::uint64_t n_min = 1;
  std::uint64_t n_bound = 0;
  std::uint64_t xy_box = 0;
  bool automatic_box = false;
  std::vector<IntervalCertificate> pruned;  // certificates that removed work
  std::vector<std::uint64_t> brute_forced_nr;  // values of max n_i actually searched
  std::uint64_t tuples_total = 0;
  std::uint64_t tuples_pruned = 0;
  std::uint64_t tuples_tested = 0;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Enumerates every admissible tuple with max n_i <= n_bound (ordered by
/// max n_i), evaluates the lhs exactly and collects every representation.
/// Q_i need not vanish at 0. With prune, tuples whose max n_i lies in a
/// certificate's interval are skipped; each certificate is validated first.
SearchReport solve_instance(const EquationInstance& inst, const SearchOptions& opts);

/// Exact re-check of one solution against the equation.
bool solution_holds(const EquationInstance& inst, const SearchSolution& s);

}  // namespace facdio
