#pragma once

// Interval certificates and the complete procedure for rhs = x^d.
//
// A certificate at a useful prime q states that no integer solution has
// q < max n_i < 2q. On that range ν_q(lhs) lies in [1, Σ l_i], while any
// nonzero value of the form has ν_q a multiple of its degree d > Σ l_i.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "facdio/instance.hpp"
#include "facdio/usefulprimes.hpp"
#include "facdio/valuation.hpp"

namespace facdio {

struct IntervalCertificate {
  std::uint64_t q = 0;
  UsefulPrimeEvidence evidence;
  unsigned sum_l = 0;
  unsigned d = 0;  // total degree of the rhs form
  std::vector<HypothesisCheck> hypotheses;

  /// Excluded open interval (q, 2q) for max n_i.
  std::uint64_t lower() const { return q; }
  std::uint64_t upper() const { return 2 * q; }
  bool covers(std::uint64_t n_r) const { return q < n_r && n_r < 2 * q; }
};

/// Throws PreconditionError naming the failing condition: l_i >= 1, Σ l_i < d,
/// q useful for the rhs form, and every interval hypothesis.
IntervalCertificate interval_certificate(const EquationInstance& inst, std::uint64_t q);

/// Issues certificates for every useful prime <= q_limit at which the
/// preconditions hold; primes that fail a hypothesis are skipped.
std::vector<IntervalCertificate> certificates_up_to(const EquationInstance& inst, std::uint64_t q_limit,
                                                    unsigned jobs = 1);

/// True when the certificate's claims match a fresh derivation for `inst`.
bool certificate_is_valid(const IntervalCertificate& cert, const EquationInstance& inst);

/// Validity check, then brute-force replay: every admissible tuple with
/// q < max n_i < 2q against every |x|, |y| <= xy_box.
bool verify_certificate(const IntervalCertificate& cert, const EquationInstance& inst, std::uint64_t xy_box,
                        unsigned jobs = 1);

nlohmann::ordered_json certificate_to_json(const IntervalCertificate& cert);
IntervalCertificate certificate_from_json(const nlohmann::ordered_json& j);

struct MonomialSolution {
  NTuple n;
  BigInt x;
};

struct MonomialDecision {
  std::uint64_t bound = 0;  // N0: no solution with max n_i > N0 when `complete`
  std::vector<MonomialSolution> solutions;
  /// Whether the bound argument covers this instance unconditionally.
  bool complete = false;
  std::string proof_note;
  std::string coefficient_reading;
};

/// Enumerates every tuple with max n_i <= N0 = 8 max{A_i, |coefficients of R_i|}
/// and collects the exact d-th powers. Requires l_i >= 1 and d > Σ l_i.
MonomialDecision monomial_solve_complete(const EquationInstance& inst);

}  // namespace facdio
