#include "facdio/usefulprimes.hpp"

#include <algorithm>
#include <thread>

#include "facdio/error.hpp"
#include "facdio/parallel.hpp"

namespace facdio {

namespace {

std::uint64_t gcd_with(const BigInt& v, std::uint64_t q) {
  // q prime: gcd is q or 1 (gcd(q, 0) = q).
  return arith::mod_u64(v, q) == 0 ? q : 1;
}

}  // namespace

UsefulPrimeGuards UsefulPrimeGuards::of(const FormFactorization& f) {
  BinaryForm composite = f.expand();
  BinaryForm kernel = f.squarefree_kernel();
  UsefulPrimeGuards g;
  g.a_d = composite.leading();
  g.a_0 = composite.trailing();
  g.content = composite.content();
  // a_d = 0 means f(x,1) drops degree; no prime can be useful then.
  g.delta_mod = sgn(kernel.leading()) == 0 ? BigInt(0) : modified_discriminant(kernel).value;
  return g;
}

std::optional<UsefulPrimeEvidence> is_useful_prime(const FormFactorization& f, const UsefulPrimeGuards& guards,
                                                   std::uint64_t q, modp::RootTest how) {
  if (!arith::is_prime(q)) return std::nullopt;
  UsefulPrimeEvidence ev;
  ev.q = q;
  ev.guards = {gcd_with(guards.a_d, q), gcd_with(guards.a_0, q), gcd_with(guards.delta_mod, q),
               gcd_with(guards.content, q)};
  if (!ev.guards.all_one()) return std::nullopt;
  for (const auto& [factor, e] : f.factors) {
    IntegerPolynomial p = factor.dehomogenize();
    // q ∤ a_d of the composite, so q ∤ the leading coefficient of each factor.
    modp::DegreePattern pat = modp::degree_pattern(p, q);
    const bool root = modp::has_root_mod(p, q, how);
    if (root != (pat.count(1) > 0))
      throw InvariantError("root test and degree pattern disagree at q = " + std::to_string(q));
    if (root) return std::nullopt;
    ev.patterns.push_back(std::move(pat));
  }
  return ev;
}

std::optional<UsefulPrimeEvidence> is_useful_prime(const FormFactorization& f, std::uint64_t q,
                                                   modp::RootTest how) {
  return is_useful_prime(f, UsefulPrimeGuards::of(f), q, how);
}

UsefulPrimeScan scan_useful_primes(const FormFactorization& f, std::uint64_t limit, unsigned jobs,
                                   modp::RootTest how) {
  UsefulPrimeScan scan;
  scan.limit = limit;
  const auto primes = arith::primes_up_to(limit);
  scan.primes_scanned = primes.size();
  const UsefulPrimeGuards guards = UsefulPrimeGuards::of(f);

  auto chunks = parallel_map_chunks(primes.size(), jobs, [&](std::size_t begin, std::size_t end) {
    std::vector<UsefulPrimeEvidence> found;
    for (std::size_t i = begin; i < end; ++i)
      if (auto ev = is_useful_prime(f, guards, primes[i], how)) found.push_back(std::move(*ev));
    return found;
  });
  for (auto& chunk : chunks)
    for (auto& ev : chunk) scan.primes.push_back(std::move(ev));
  std::sort(scan.primes.begin(), scan.primes.end(), [](const auto& a, const auto& b) { return a.q < b.q; });

  scan.density = primes.empty() ? 0.0 : static_cast<double>(scan.primes.size()) / static_cast<double>(primes.size());
  scan.inconclusive = scan.primes.empty();
  return scan;
}

}  // namespace facdio
