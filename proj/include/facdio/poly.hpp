#pragma once

// Exact integer polynomials and homogeneous binary forms.
//
// IntegerPolynomial stores coefficients constant-first. BinaryForm stores
// a_d ... a_0 (leading first), matching f(x,y) = a_d x^d + ... + a_0 y^d.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "facdio/arith.hpp"

namespace facdio {

class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<BigInt> ascending);
  static IntegerPolynomial from_ints(std::initializer_list<long> ascending);
  static IntegerPolynomial monomial(const BigInt& c, std::size_t power);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  /// Coefficient of x^i (zero past the degree).
  BigInt coeff(std::size_t i) const;
  const BigInt& leading() const;

  BigInt operator()(const BigInt& x) const;
  /// gcd of the coefficients, non-negative; 0 for the zero polynomial.
  BigInt content() const;
  IntegerPolynomial derivative() const;
  /// Divide every coefficient by c, which must divide all of them.
  IntegerPolynomial exact_div(const BigInt& c) const;

  friend IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend IntegerPolynomial operator-(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend bool operator==(const IntegerPolynomial& a, const IntegerPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

class BinaryForm {
 public:
  BinaryForm() = default;
  /// Coefficients a_d, ..., a_0; the degree is size - 1.
  explicit BinaryForm(std::vector<BigInt> descending);
  static BinaryForm from_ints(std::initializer_list<long> descending);

  unsigned degree() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients_desc() const { return coeffs_; }
  const BigInt& leading() const { return coeffs_.front(); }   // a_d
  const BigInt& trailing() const { return coeffs_.back(); }   // a_0
  BigInt content() const;

  /// f(x, 1) as an ordinary polynomial.
  IntegerPolynomial dehomogenize() const;
  /// y^d p(x/y) for a polynomial of degree <= d.
  static BinaryForm homogenize(const IntegerPolynomial& p, unsigned d);

  BigInt operator()(const BigInt& x, const BigInt& y) const;

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  std::vector<BigInt> coeffs_;
};

/// A form given as a product of declared factors f_j^{e_j}.
struct FormFactorization {
  std::vector<std::pair<BinaryForm, unsigned>> factors;

  static FormFactorization single(BinaryForm f) { return {{{std::move(f), 1u}}}; }
  BinaryForm expand() const;
  /// Product of the distinct declared factors (exponents dropped).
  BinaryForm squarefree_kernel() const;
  /// Σ d_j e_j.
  unsigned total_degree() const;
  /// min d_j e_j.
  unsigned min_factor_degree() const;
};

/// Throws PreconditionError unless the factorization expands to `composite`.
void verify_factorization(const FormFactorization& fact, const BinaryForm& composite);

struct ZeroRootSplit {
  unsigned multiplicity = 0;    // l
  IntegerPolynomial cofactor;   // R, with R(0) != 0
};

ZeroRootSplit zero_root_split(const IntegerPolynomial& q);

/// Discriminant via the Sylvester resultant Res(p, p') / lc(p), with the
/// sign (-1)^{n(n-1)/2}. Degree 1 polynomials have discriminant 1.
BigInt discriminant(const IntegerPolynomial& p);

/// Determinant of a square integer matrix by Bareiss elimination.
BigInt determinant(std::vector<std::vector<BigInt>> m);

BigInt resultant(const IntegerPolynomial& a, const IntegerPolynomial& b);

struct ModifiedDiscriminant {
  BigInt value;         // Δ / g^{2d-2}
  BigInt content;       // g
  BigInt discriminant;  // Δ of f(x,1)
};

/// Uses f(x,1). Requires a_d != 0 and d >= 1.
ModifiedDiscriminant modified_discriminant(const BinaryForm& f);

inline BigInt eval_form(const BinaryForm& f, const BigInt& x, const BigInt& y) { return f(x, y); }

/// A prime q <= prime_budget with q not dividing the leading coefficient and
/// p mod q irreducible. Its existence proves p irreducible over Q; absence
/// proves nothing. The content is stripped first.
std::optional<std::uint64_t> irreducibility_witness(const IntegerPolynomial& p,
                                                    std::uint64_t prime_budget);

}  // namespace facdio
