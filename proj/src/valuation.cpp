#include "facdio/valuation.hpp"

#include "facdio/error.hpp"
#include "facdio/modp.hpp"

namespace facdio {

std::optional<ValuationProfile> lhs_valuation_exact(const EquationInstance& inst, const NTuple& n, std::uint64_t q) {
  if (n.size() != inst.r()) throw PreconditionError("tuple length differs from r");
  if (!arith::is_prime(q)) throw PreconditionError("q must be prime");
  const BigInt bq = arith::from_u64(q);
  ValuationProfile prof;
  prof.q = q;
  for (std::size_t i = 0; i < inst.r(); ++i) {
    const auto& split = inst.splits()[i];
    BigInt cof = split.cofactor(inst.factor_argument(i, n[i]));
    if (sgn(cof) == 0) return std::nullopt;
    ValuationContribution c;
    BigInt rest;
    const arith::Valuation va = mpz_remove(rest.get_mpz_t(), inst.a()[i].get_mpz_t(), bq.get_mpz_t());
    c.factorial_part = split.multiplicity * (n[i] * va + arith::legendre_valuation(n[i], q));
    c.cofactor_part = arith::integer_valuation(cof, bq);
    prof.total += c.factorial_part + c.cofactor_part;
    prof.contributions.push_back(c);
  }
  return prof;
}

std::vector<HypothesisCheck> interval_hypotheses(const EquationInstance& inst, std::uint64_t q) {
  std::vector<HypothesisCheck> out;
  for (std::size_t i = 0; i < inst.r(); ++i) {
    const std::string k = std::to_string(i + 1);
    out.push_back({"q_coprime_A_" + k, arith::mod_u64(inst.a()[i], q) != 0, "A_" + k + " = " + inst.a()[i].get_str()});
    const BigInt& f0 = inst.cofactor_constant(i);
    out.push_back({"q_coprime_f0_" + k, arith::mod_u64(f0, q) != 0, "f_" + k + "0 = " + f0.get_str()});

    if (inst.r() == 1) {
      out.push_back({"q_coprime_R_" + k + "_below_q", true, "vacuous for r = 1: n_1 = n_r > q"});
      continue;
    }
    // Walk X_m = A^m m! mod q and look for q | R_i(X_m) with m < q.
    const auto r = modp::PolyModP::reduce(inst.splits()[i].cofactor, q);
    const std::uint64_t a = arith::mod_u64(inst.a()[i], q);
    std::uint64_t x = 1;  // X_0
    std::optional<std::uint64_t> hit;
    for (std::uint64_t m = 0; m < q; ++m) {
      if (m > 0) x = arith::mulmod(arith::mulmod(x, a, q), m % q, q);
      if (m < inst.min_n()) continue;
      if (r(x) == 0) {
        hit = m;
        break;
      }
    }
    out.push_back({"q_coprime_R_" + k + "_below_q", !hit,
                   hit ? "q | R_" + k + "(A^m m!) at m = " + std::to_string(*hit) : "no m < q with q | R_" + k});
  }
  return out;
}

unsigned lhs_valuation_bound(const EquationInstance& inst, std::uint64_t n_max, std::uint64_t q) {
  if (!arith::is_prime(q)) throw PreconditionError("q must be prime");
  if (!(q < n_max && n_max < 2 * q))
    throw PreconditionError("need q < n_max < 2q (q = " + std::to_string(q) + ", n_max = " + std::to_string(n_max) + ")");
  for (const auto& h : interval_hypotheses(inst, q))
    if (!h.passed) throw PreconditionError("hypothesis " + h.name + " fails: " + h.detail);
  return inst.sum_l();
}

}  // namespace facdio
