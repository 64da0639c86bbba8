#pragma once

// Useful primes: q such that no declared factor f_j(x,1) has a root mod q
// and q is coprime to a_d, a_0, the content and the modified discriminant.
// For such q, q | f(x,y) forces q | x and q | y, hence deg(f) | ν_q(f(x,y)).

#include <cstdint>
#include <optional>
#include <vector>

#include "facdio/modp.hpp"
#include "facdio/poly.hpp"

namespace facdio {

/// Quantities every useful prime must avoid, computed once per form.
///
/// `delta_mod` is the modified discriminant of the squarefree kernel
/// ∏ f_j. With all e_j = 1 this is the composite's own Δ_mod; with repeated
/// factors the composite discriminant vanishes identically, while the
/// kernel's stays nonzero and is still divisible by every Δ_{j,mod}.
struct UsefulPrimeGuards {
  BigInt a_d;
  BigInt a_0;
  BigInt content;
  BigInt delta_mod;

  static UsefulPrimeGuards of(const FormFactorization& f);
};

struct GuardGcds {
  std::uint64_t with_a_d = 0;
  std::uint64_t with_a_0 = 0;
  std::uint64_t with_delta_mod = 0;
  std::uint64_t with_content = 0;

  bool all_one() const {
    return with_a_d == 1 && with_a_0 == 1 && with_delta_mod == 1 && with_content == 1;
  }
  friend bool operator==(const GuardGcds&, const GuardGcds&) = default;
};

struct UsefulPrimeEvidence {
  std::uint64_t q = 0;
  std::vector<modp::DegreePattern> patterns;  // one per declared factor
  GuardGcds guards;

  friend bool operator==(const UsefulPrimeEvidence&, const UsefulPrimeEvidence&) = default;
};

std::optional<UsefulPrimeEvidence> is_useful_prime(const FormFactorization& f, std::uint64_t q,
                                                   modp::RootTest how = modp::RootTest::kAuto);

/// Same, with precomputed guards (the scan computes them once).
std::optional<UsefulPrimeEvidence> is_useful_prime(const FormFactorization& f, const UsefulPrimeGuards& guards,
                                                   std::uint64_t q, modp::RootTest how = modp::RootTest::kAuto);

struct UsefulPrimeScan {
  std::uint64_t limit = 0;
  std::vector<UsefulPrimeEvidence> primes;  // ascending q
  std::uint64_t primes_scanned = 0;         // π(limit)
  double density = 0.0;                     // primes.size() / π(limit)
  /// No useful prime found. Existence is guaranteed for irreducible forms of
  /// degree >= 2 but without a bound, so an empty scan decides nothing.
  bool inconclusive = false;
};

/// All useful primes <= limit, computed on `jobs` threads (0 = hardware).
UsefulPrimeScan scan_useful_primes(const FormFactorization& f, std::uint64_t limit, unsigned jobs = 1,
                                   modp::RootTest how = modp::RootTest::kAuto);

}  // namespace facdio
