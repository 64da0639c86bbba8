#pragma once

// Integer utilities on top of GMP: prime valuations, Legendre's formula,
// radicals, primorials, exact d-th roots and primality.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace facdio {

using BigInt = mpz_class;

namespace arith {

/// Exponent of a prime in a nonzero integer.
using Valuation = unsigned long;

/// Work limits for factoring. Trial division runs up to `trial_limit`, then
/// Pollard-Brent rho gets `rho_iterations` steps per attempt for each composite
/// cofactor, with `rho_attempts` different seeds before giving up.
struct FactorBudget {
  std::uint64_t trial_limit = 100'000;
  std::uint64_t rho_iterations = 2'000'000;
  unsigned rho_attempts = 8;
};

/// ν_p(n). Throws PreconditionError for n = 0 or composite p. Sign-blind.
Valuation integer_valuation(const BigInt& n, const BigInt& p);

/// ν_p(n!) via Σ ⌊n/p^k⌋, without forming n!.
Valuation legendre_valuation(std::uint64_t n, std::uint64_t p);

/// Prime factorization of |n| as ascending (prime, exponent) pairs.
/// Throws UnfactoredError when the budget is exhausted.
std::vector<std::pair<BigInt, Valuation>> factorize(const BigInt& n,
                                                    const FactorBudget& budget = {});

/// Product of the distinct primes dividing n (radical(±1) = 1).
/// Throws PreconditionError for n = 0 and UnfactoredError past the budget.
BigInt radical(const BigInt& n, const FactorBudget& budget = {});

/// Product of all primes <= n.
BigInt primorial(std::uint64_t n);

/// x with x^d = n, or nullopt. For even d the non-negative root is returned.
std::optional<BigInt> perfect_power_root(const BigInt& n, unsigned long d);

/// Sieve of Eratosthenes; empty for limit < 2.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Deterministic for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Deterministic up to 2^64, BPSW plus Miller-Rabin rounds above.
bool is_prime(const BigInt& n);

/// n! as a big integer.
BigInt factorial(std::uint64_t n);

/// Fits in uint64_t?
bool fits_u64(const BigInt& n);
std::uint64_t to_u64(const BigInt& n);
BigInt from_u64(std::uint64_t v);

/// Nonnegative residue of n modulo m (m > 0).
std::uint64_t mod_u64(const BigInt& n, std::uint64_t m);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Natural log of |n| for n != 0, accurate for arbitrarily large n.
double log_abs(const BigInt& n);

}  // namespace arith
}  // namespace facdio
