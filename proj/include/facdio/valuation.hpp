#pragma once

// q-adic valuation of the left-hand side ∏ Q_i(A_i^{n_i} n_i!), exactly and
// as the interval bound Σ l_i used to exclude q < n_r < 2q.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "facdio/instance.hpp"

namespace facdio {

struct ValuationContribution {
  arith::Valuation factorial_part = 0;  // l_i (n_i ν_q(A_i) + ν_q(n_i!))
  arith::Valuation cofactor_part = 0;   // ν_q(R_i(A_i^{n_i} n_i!))
};

struct ValuationProfile {
  std::uint64_t q = 0;
  std::vector<ValuationContribution> contributions;
  arith::Valuation total = 0;
};

/// Exact profile; nullopt when some R_i(A_i^{n_i} n_i!) = 0, i.e. the LHS
/// vanishes and the equation asks for f(x,y) = 0.
std::optional<ValuationProfile> lhs_valuation_exact(const EquationInstance& inst, const NTuple& n, std::uint64_t q);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The per-prime conditions under which ν_q(lhs) <= Σ l_i on q < n_r < 2q:
///   q ∤ A_i, q ∤ f_{i0}, and q ∤ R_i(A_i^m m!) for every admissible m < q.
/// For m >= q the last one follows from the second; for m < q it does not,
/// and without it a small n_i can push the valuation past Σ l_i.
std::vector<HypothesisCheck> interval_hypotheses(const EquationInstance& inst, std::uint64_t q);

/// Σ l_i, certified as an upper bound on lhs_valuation_exact(...).total for
/// every admissible tuple with max n_i = n_max. Throws PreconditionError
/// naming the failed condition when q < n_max < 2q or a hypothesis fails.
unsigned lhs_valuation_bound(const EquationInstance& inst, std::uint64_t n_max, std::uint64_t q);

}  // namespace facdio
