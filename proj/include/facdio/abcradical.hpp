#pragma once

// Radical growth of F(n) = ∏ Q_i(A_i^{n_i} n_i!).
//
// Everything here checks the growth hypothesis N(F)^{1+ε} = o(F) under which
// the abc conjecture would give finiteness; nothing here proves or assumes
// abc itself. Reports carry the phrase "conditional on abc".
//
// Chain used, with X_i = A_i^{n_i} n_i! and Q_i = x^{l_i} R_i:
//   N(F) <= ∏ N(A_i) 4^{n_i} |R_i(X_i)|                       (radical bound)
//   N(F)^{1+ε}/F <= C'' 4^{(1+ε)Σn_i} ∏ X_i^{d_i ε - l_i}     (relaxed bound)
// with C'' = (∏ N(A_i))^{1+ε} (∏ D_i)^ε and D_i = Σ |coefficients of R_i|.

#include <cstdint>
#include <string>
#include <vector>

#include "facdio/instance.hpp"

namespace facdio {

inline constexpr const char* kAbcConditionalNote = "conditional on abc";

struct AbcTerm {
  unsigned multiplicity = 0;     // l_i
  unsigned cofactor_degree = 0;  // d_i = deg R_i
  BigInt coefficient_sum;        // D_i
};

struct AbcBoundParams {
  std::vector<AbcTerm> terms;
  BigInt radical_of_a = 1;  // C = ∏ N(A_i)
  unsigned epsilon_exponent = 1;  // ε = 2^-k when auto-selected
  double epsilon = 0.5;
};

/// Largest ε = 2^-k, 1 <= k <= 20, with l_i - d_i ε > 9/10 for every i.
AbcBoundParams select_epsilon(const EquationInstance& inst);

/// Same terms, caller-chosen ε >= 0 (ε = 0 is allowed for diagnostics).
AbcBoundParams params_with_epsilon(const EquationInstance& inst, double epsilon);

/// log of C 4^{Σ n_i} ∏ |R_i(X_i)|. Requires every n_i >= 1.
double radical_bound_log(const EquationInstance& inst, const NTuple& n, const AbcBoundParams& params);

/// log |F(n)|, from log-gamma for n_i! and exact cofactor values while small.
double lhs_log(const EquationInstance& inst, const NTuple& n);

/// (1 + ε) radical_bound_log - log F. Negative means the bound ratio is < 1.
double abc_log_ratio(const EquationInstance& inst, const NTuple& n, const AbcBoundParams& params);

/// log of C'' 4^{(1+ε)Σn_i} ∏ X_i^{d_i ε - l_i}; always >= abc_log_ratio.
double relaxed_ratio_log(const EquationInstance& inst, const NTuple& n, const AbcBoundParams& params);

/// Exact N(F(n)), checked against exp(radical_bound_log) (relative 1e-9).
/// Throws UnfactoredError past the budget, InvariantError on a violation.
BigInt exact_radical_small(const EquationInstance& inst, const NTuple& n, const arith::FactorBudget& budget = {});

struct AbcGridRow {
  NTuple n;
  double log_f = 0;
  double log_radical_bound = 0;
  double log_ratio = 0;
};

/// Every tuple in [1, n_max]^r, evaluated on `jobs` threads, in lexicographic order.
std::vector<AbcGridRow> abc_grid(const EquationInstance& inst, std::uint64_t n_max, const AbcBoundParams& params,
                                 unsigned jobs = 1);

/// CSV with header n_1..n_r,log_F,log_radical_bound,log_ratio.
std::string abc_grid_csv(const std::vector<AbcGridRow>& rows, std::size_t r);

}  // namespace facdio
