#include "facdio/instance.hpp"

#include <algorithm>
#include <string>

#include "facdio/error.hpp"

namespace facdio {

std::vector<NTuple> tuples_with_max(std::size_t r, std::uint64_t lo, std::uint64_t max) {
  std::vector<NTuple> out;
  if (r == 0 || max < lo) return out;
  NTuple t(r, lo);
  while (true) {
    if (*std::max_element(t.begin(), t.end()) == max) out.push_back(t);
    std::size_t k = r;
    while (k > 0 && t[k - 1] == max) t[--k] = lo;
    if (k == 0) break;
    ++t[k - 1];
  }
  return out;
}

EquationInstance::EquationInstance(std::vector<IntegerPolynomial> q, std::vector<BigInt> a, Rhs rhs,
                                   InstanceFlags flags)
    : q_(std::move(q)), a_(std::move(a)), rhs_(std::move(rhs)), flags_(flags) {
  if (q_.empty()) throw PreconditionError("Q list is empty");
  if (q_.size() != a_.size()) throw PreconditionError("Q/A length mismatch");
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (q_[i].is_zero()) throw PreconditionError("Q_" + std::to_string(i + 1) + " is the zero polynomial");
    if (a_[i] < 1) throw PreconditionError("A_" + std::to_string(i + 1) + " must be a positive integer");
    splits_.push_back(zero_root_split(q_[i]));
  }
  if (auto* f = std::get_if<FormRhs>(&rhs_)) {
    verify_factorization(f->factors, f->composite);
    if (f->composite.degree() < 1) throw PreconditionError("rhs form must have degree >= 1");
  } else if (auto* u = std::get_if<UnivariateRhs>(&rhs_)) {
    if (u->poly.degree() < 1) throw PreconditionError("rhs polynomial must have degree >= 1");
  } else if (std::get<MonomialRhs>(rhs_).d < 1) {
    throw PreconditionError("monomial exponent must be >= 1");
  }
}

EquationInstance EquationInstance::with_form(std::vector<IntegerPolynomial> q, std::vector<BigInt> a, BinaryForm f) {
  FormRhs rhs{FormFactorization::single(f), f, false};
  return EquationInstance(std::move(q), std::move(a), std::move(rhs));
}

EquationInstance EquationInstance::with_factored_form(std::vector<IntegerPolynomial> q, std::vector<BigInt> a,
                                                      FormFactorization f) {
  BinaryForm composite = f.expand();
  FormRhs rhs{std::move(f), std::move(composite), true};
  return EquationInstance(std::move(q), std::move(a), std::move(rhs));
}

EquationInstance EquationInstance::with_univariate(std::vector<IntegerPolynomial> q, std::vector<BigInt> a,
                                                   IntegerPolynomial f) {
  return EquationInstance(std::move(q), std::move(a), UnivariateRhs{std::move(f)});
}

EquationInstance EquationInstance::with_monomial(std::vector<IntegerPolynomial> q, std::vector<BigInt> a,
                                                 unsigned d) {
  return EquationInstance(std::move(q), std::move(a), MonomialRhs{d});
}

unsigned EquationInstance::sum_l() const {
  unsigned s = 0;
  for (const auto& sp : splits_) s += sp.multiplicity;
  return s;
}

unsigned EquationInstance::rhs_degree() const {
  if (auto* f = std::get_if<FormRhs>(&rhs_)) return f->composite.degree();
  if (auto* u = std::get_if<UnivariateRhs>(&rhs_)) return static_cast<unsigned>(u->poly.degree());
  return std::get<MonomialRhs>(rhs_).d;
}

std::optional<FormFactorization> EquationInstance::rhs_form() const {
  if (auto* f = std::get_if<FormRhs>(&rhs_)) return f->factors;
  if (auto* u = std::get_if<UnivariateRhs>(&rhs_))
    return FormFactorization::single(BinaryForm::homogenize(u->poly, static_cast<unsigned>(u->poly.degree())));
  return std::nullopt;
}

BigInt EquationInstance::factor_argument(std::size_t i, std::uint64_t n) const {
  BigInt v;
  mpz_pow_ui(v.get_mpz_t(), a_[i].get_mpz_t(), n);
  return v * arith::factorial(n);
}

BigInt EquationInstance::lhs_value(const NTuple& n) const {
  if (n.size() != r()) throw PreconditionError("tuple length differs from r");
  BigInt acc = 1;
  for (std::size_t i = 0; i < r(); ++i) acc *= q_[i](factor_argument(i, n[i]));
  return acc;
}

void EquationInstance::require_zero_roots() const {
  for (std::size_t i = 0; i < r(); ++i)
    if (splits_[i].multiplicity == 0) {
      const std::string k = std::to_string(i + 1);
      throw PreconditionError("Q_" + k + "(0) != 0: l_" + k + " = 0");
    }
}

}  // namespace facdio
