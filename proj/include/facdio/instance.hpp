#pragma once

// The equation ∏ Q_i(A_i^{n_i} n_i!) = rhs, with the right-hand side one of
// a binary form (possibly given factored), a univariate polynomial, or x^d.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "facdio/poly.hpp"

namespace facdio {

struct FormRhs {
  FormFactorization factors;  // a single factor with exponent 1 if not factored
  BinaryForm composite;
  bool declared_factored = false;
};

struct UnivariateRhs {
  IntegerPolynomial poly;
};

struct MonomialRhs {
  unsigned d = 2;
};

using Rhs = std::variant<FormRhs, UnivariateRhs, MonomialRhs>;

struct InstanceFlags {
  bool assume_irreducible = false;
  bool allow_zero_n = false;
};

/// Tuple of exponents n_1..n_r.
using NTuple = std::vector<std::uint64_t>;

/// All tuples of length r with entries in [lo, max] whose largest entry is
/// exactly max, in lexicographic order.
std::vector<NTuple> tuples_with_max(std::size_t r, std::uint64_t lo, std::uint64_t max);

class EquationInstance {
 public:
  /// Validates |Q| = |A| >= 1, no zero Q_i, every A_i >= 1. Factored forms are
  /// checked against the composite by expansion.
  EquationInstance(std::vector<IntegerPolynomial> q, std::vector<BigInt> a, Rhs rhs, InstanceFlags flags = {});

  static EquationInstance with_form(std::vector<IntegerPolynomial> q, std::vector<BigInt> a, BinaryForm f);
  static EquationInstance with_factored_form(std::vector<IntegerPolynomial> q, std::vector<BigInt> a,
                                             FormFactorization f);
  static EquationInstance with_univariate(std::vector<IntegerPolynomial> q, std::vector<BigInt> a,
                                          IntegerPolynomial f);
  static EquationInstance with_monomial(std::vector<IntegerPolynomial> q, std::vector<BigInt> a, unsigned d);

  std::size_t r() const { return q_.size(); }
  const std::vector<IntegerPolynomial>& q() const { return q_; }
  const std::vector<BigInt>& a() const { return a_; }
  const std::vector<ZeroRootSplit>& splits() const { return splits_; }
  const Rhs& rhs() const { return rhs_; }
  const InstanceFlags& flags() const { return flags_; }

  /// Σ l_i.
  unsigned sum_l() const;
  /// Degree of the right-hand side (total degree for factored forms).
  unsigned rhs_degree() const;
  /// f_{i0} = R_i(0).
  const BigInt& cofactor_constant(std::size_t i) const { return splits_[i].cofactor.coefficients().front(); }

  /// The right-hand side as a factored binary form: binary forms as given,
  /// univariate f homogenized to y^d f(x/y). Empty for monomial rhs.
  std::optional<FormFactorization> rhs_form() const;

  /// Smallest admissible n_i (1, or 0 with allow_zero_n).
  std::uint64_t min_n() const { return flags_.allow_zero_n ? 0 : 1; }

  /// A_i^{n} n!.
  BigInt factor_argument(std::size_t i, std::uint64_t n) const;
  /// ∏ Q_i(A_i^{n_i} n_i!).
  BigInt lhs_value(const NTuple& n) const;

  /// Throws PreconditionError naming the first i with l_i = 0.
  void require_zero_roots() const;

 private:
  std::vector<IntegerPolynomial> q_;
  std::vector<BigInt> a_;
  Rhs rhs_;
  InstanceFlags flags_;
  std::vector<ZeroRootSplit> splits_;
};

}  // namespace facdio
