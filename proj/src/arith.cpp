#include "facdio/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "facdio/error.hpp"

namespace facdio::arith {

bool fits_u64(const BigInt& n) { return sgn(n) >= 0 && mpz_fits_ulong_p(n.get_mpz_t()); }

std::uint64_t to_u64(const BigInt& n) {
  if (!fits_u64(n)) throw PreconditionError("value does not fit in 64 bits: " + n.get_str());
  return mpz_get_ui(n.get_mpz_t());
}

BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_set_ui(r.get_mpz_t(), v);
  return r;
}

std::uint64_t mod_u64(const BigInt& n, std::uint64_t m) {
  return mpz_fdiv_ui(n.get_mpz_t(), m);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const BigInt& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Valuation integer_valuation(const BigInt& n, const BigInt& p) {
  if (sgn(n) == 0) throw PreconditionError("valuation of 0 is infinite");
  if (!is_prime(p)) throw PreconditionError("valuation base is not prime: " + p.get_str());
  BigInt rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

Valuation legendre_valuation(std::uint64_t n, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError("valuation base is not prime: " + std::to_string(p));
  Valuation v = 0;
  while (n >= p) {
    n /= p;
    v += n;
  }
  return v;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i) {
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

BigInt factorial(std::uint64_t n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt primorial(std::uint64_t n) {
  BigInt r;
  mpz_primorial_ui(r.get_mpz_t(), n);
  return r;
}

std::optional<BigInt> perfect_power_root(const BigInt& n, unsigned long d) {
  if (d < 2) throw PreconditionError("root degree must be >= 2");
  if (sgn(n) < 0 && d % 2 == 0) return std::nullopt;
  BigInt mag = abs(n);
  BigInt root;
  if (mpz_root(root.get_mpz_t(), mag.get_mpz_t(), d) == 0) return std::nullopt;
  BigInt check;
  mpz_pow_ui(check.get_mpz_t(), root.get_mpz_t(), d);
  if (check != mag) return std::nullopt;
  if (sgn(n) < 0) root = -root;
  return root;
}

double log_abs(const BigInt& n) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

namespace {

// Brent's variant with batched gcds. Returns a nontrivial factor or 0.
BigInt pollard_brent(const BigInt& n, unsigned long c, std::uint64_t max_iter) {
  BigInt y = 2, x, q = 1, g = 1, ys, t;
  std::uint64_t r = 1, done = 0;
  const std::uint64_t m = 128;
  auto step = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  do {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    do {
      ys = y;
      for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
        step(y);
        t = abs(x - y);
        q = q * t % n;
      }
      g = gcd(q, n);
      k += m;
      done += m;
    } while (k < r && g == 1 && done < max_iter);
    r *= 2;
  } while (g == 1 && done < max_iter);
  if (g == n) {
    // Batched gcd overshot; back up one step at a time.
    do {
      step(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  if (g == 1 || g == n) return 0;
  return g;
}

void split(const BigInt& n, const FactorBudget& budget, std::map<BigInt, Valuation>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (auto r = perfect_power_root(n, 2)) {
    std::map<BigInt, Valuation> half;
    split(*r, budget, half);
    for (auto& [p, e] : half) out[p] += 2 * e;
    return;
  }
  for (unsigned attempt = 0; attempt < budget.rho_attempts; ++attempt) {
    BigInt f = pollard_brent(n, 1 + attempt, budget.rho_iterations);
    if (f != 0) {
      split(f, budget, out);
      split(n / f, budget, out);
      return;
    }
  }
  throw UnfactoredError("factorization budget exceeded on cofactor " + n.get_str());
}

}  // namespace

std::vector<std::pair<BigInt, Valuation>> factorize(const BigInt& n, const FactorBudget& budget) {
  if (sgn(n) == 0) throw PreconditionError("cannot factor 0");
  BigInt rest = abs(n);
  std::map<BigInt, Valuation> found;
  static const std::vector<std::uint64_t> kSmallPrimes = primes_up_to(1'000'000);
  std::vector<std::uint64_t> extended;
  const std::vector<std::uint64_t>* trial = &kSmallPrimes;
  if (budget.trial_limit > 1'000'000) {
    extended = primes_up_to(budget.trial_limit);
    trial = &extended;
  }
  BigInt bp;
  for (std::uint64_t p : *trial) {
    if (p > budget.trial_limit || rest == 1) break;
    if (fits_u64(rest) && p > to_u64(rest) / p) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      bp = from_u64(p);
      found[bp] = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), bp.get_mpz_t());
    }
  }
  split(rest, budget, found);
  return {found.begin(), found.end()};
}

BigInt radical(const BigInt& n, const FactorBudget& budget) {
  BigInt r = 1;
  for (const auto& [p, e] : factorize(n, budget)) r *= p;
  return r;
}

}  // namespace facdio::arith
