#pragma once

// Polynomials over F_q and the factorization degree pattern of p mod q.
//
// For q not dividing lc(p)·Δ(p) the pattern equals the cycle type of the
// Frobenius at q (Dedekind), which is how C_F membership is decided here
// without ever computing a Galois group.

#include <cstdint>
#include <vector>

#include "facdio/poly.hpp"

namespace facdio::modp {

/// Dense polynomial over F_q, constant first, always trimmed.
class PolyModP {
 public:
  PolyModP(std::vector<std::uint64_t> ascending, std::uint64_t q);
  static PolyModP reduce(const IntegerPolynomial& p, std::uint64_t q);
  static PolyModP x(std::uint64_t q) { return PolyModP({0, 1}, q); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::uint64_t modulus() const { return q_; }
  const std::vector<std::uint64_t>& coefficients() const { return c_; }
  std::uint64_t operator()(std::uint64_t x) const;

  PolyModP monic() const;
  PolyModP derivative() const;

  friend PolyModP operator+(const PolyModP& a, const PolyModP& b);
  friend PolyModP operator-(const PolyModP& a, const PolyModP& b);
  friend PolyModP operator*(const PolyModP& a, const PolyModP& b);
  friend PolyModP operator%(const PolyModP& a, const PolyModP& b);
  friend PolyModP operator/(const PolyModP& a, const PolyModP& b);
  friend bool operator==(const PolyModP& a, const PolyModP& b) { return a.q_ == b.q_ && a.c_ == b.c_; }

 private:
  void trim();
  std::vector<std::uint64_t> c_;
  std::uint64_t q_;
};

/// Monic gcd (zero if both are zero).
PolyModP gcd(PolyModP a, PolyModP b);
/// base^e mod m.
PolyModP powmod(PolyModP base, std::uint64_t e, const PolyModP& m);

enum class RootTest { kAuto, kScan, kGcd };

/// Roots are scanned exhaustively up to this modulus in kAuto mode.
inline constexpr std::uint64_t kRootScanThreshold = 10'000;

/// Does p have a root in F_q? Throws PreconditionError if p ≡ 0 mod q.
bool has_root_mod(const IntegerPolynomial& p, std::uint64_t q, RootTest how = RootTest::kAuto);

/// Number of distinct roots of p in F_q by exhaustive scan.
std::uint64_t count_roots_scan(const IntegerPolynomial& p, std::uint64_t q);

struct DegreePattern {
  std::vector<unsigned> parts;  // ascending, with multiplicity
  /// q | Δ or p not squarefree mod q: the pattern is not a cycle type.
  bool ramified = false;

  unsigned sum() const;
  unsigned count(unsigned part) const;
  unsigned min_part() const;
  friend bool operator==(const DegreePattern& a, const DegreePattern& b) = default;
};

/// Degrees of the irreducible factors of p mod q. Requires q ∤ lc(p).
DegreePattern degree_pattern(const IntegerPolynomial& p, std::uint64_t q);

}  // namespace facdio::modp
