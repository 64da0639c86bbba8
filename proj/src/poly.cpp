#include "facdio/poly.hpp"

#include <algorithm>
#include <sstream>

#include "facdio/error.hpp"
#include "facdio/modp.hpp"

namespace facdio {

namespace {

std::string term_string(const BigInt& c, const std::string& mono, bool first) {
  std::string out;
  BigInt mag = abs(c);
  if (!first) out += sgn(c) < 0 ? " - " : " + ";
  else if (sgn(c) < 0) out += "-";
  if (mono.empty() || mag != 1) out += mag.get_str();
  out += mono;
  return out;
}

std::string power_string(const char* var, std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return std::string(var) + "^" + std::to_string(k);
}

}  // namespace

IntegerPolynomial::IntegerPolynomial(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) {
  trim();
}

IntegerPolynomial IntegerPolynomial::from_ints(std::initializer_list<long> ascending) {
  std::vector<BigInt> c;
  for (long v : ascending) c.emplace_back(v);
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial IntegerPolynomial::monomial(const BigInt& c, std::size_t power) {
  std::vector<BigInt> v(power + 1, 0);
  v[power] = c;
  return IntegerPolynomial(std::move(v));
}

void IntegerPolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

BigInt IntegerPolynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

const BigInt& IntegerPolynomial::leading() const {
  if (coeffs_.empty()) throw PreconditionError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

BigInt IntegerPolynomial::operator()(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigInt IntegerPolynomial::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

IntegerPolynomial IntegerPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntegerPolynomial(std::move(d));
}

IntegerPolynomial IntegerPolynomial::exact_div(const BigInt& c) const {
  std::vector<BigInt> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), c.get_mpz_t()))
      throw InvariantError("inexact coefficient division by " + c.get_str());
    mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), c.get_mpz_t());
  }
  return IntegerPolynomial(std::move(out));
}

IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return IntegerPolynomial(std::move(out));
}

IntegerPolynomial operator-(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
  return IntegerPolynomial(std::move(out));
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntegerPolynomial(std::move(out));
}

std::string IntegerPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (sgn(coeffs_[k]) == 0) continue;
    out += term_string(coeffs_[k], power_string("x", k), first);
    first = false;
  }
  return out;
}

BinaryForm::BinaryForm(std::vector<BigInt> descending) : coeffs_(std::move(descending)) {
  if (coeffs_.empty()) throw PreconditionError("binary form needs at least one coefficient");
}

BinaryForm BinaryForm::from_ints(std::initializer_list<long> descending) {
  std::vector<BigInt> c;
  for (long v : descending) c.emplace_back(v);
  return BinaryForm(std::move(c));
}

BigInt BinaryForm::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

IntegerPolynomial BinaryForm::dehomogenize() const {
  return IntegerPolynomial(std::vector<BigInt>(coeffs_.rbegin(), coeffs_.rend()));
}

BinaryForm BinaryForm::homogenize(const IntegerPolynomial& p, unsigned d) {
  if (p.degree() > static_cast<int>(d)) throw PreconditionError("polynomial degree exceeds form degree");
  std::vector<BigInt> desc(d + 1);
  for (unsigned k = 0; k <= d; ++k) desc[d - k] = p.coeff(k);
  return BinaryForm(std::move(desc));
}

BigInt BinaryForm::operator()(const BigInt& x, const BigInt& y) const {
  // Horner in x; the y-power grows as we move toward a_0.
  BigInt acc = 0, ypow = 1;
  std::vector<BigInt> ypows(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    ypows[k] = ypow;
    ypow *= y;
  }
  const std::size_t d = coeffs_.size() - 1;
  for (std::size_t i = 0; i <= d; ++i) acc = acc * x + coeffs_[i] * ypows[i];
  return acc;
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return BinaryForm(std::move(out));
}

std::string BinaryForm::to_string() const {
  const std::size_t d = degree();
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i <= d; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    std::string mono = power_string("x", d - i);
    mono += power_string("y", i);
    out += term_string(coeffs_[i], mono, first);
    first = false;
  }
  return first ? "0" : out;
}

BinaryForm FormFactorization::expand() const {
  if (factors.empty()) throw PreconditionError("empty factorization");
  BinaryForm acc = BinaryForm::from_ints({1});
  for (const auto& [f, e] : factors)
    for (unsigned k = 0; k < e; ++k) acc = acc * f;
  return acc;
}

BinaryForm FormFactorization::squarefree_kernel() const {
  if (factors.empty()) throw PreconditionError("empty factorization");
  BinaryForm acc = BinaryForm::from_ints({1});
  for (const auto& [f, e] : factors) acc = acc * f;
  return acc;
}

unsigned FormFactorization::total_degree() const {
  unsigned d = 0;
  for (const auto& [f, e] : factors) d += f.degree() * e;
  return d;
}

unsigned FormFactorization::min_factor_degree() const {
  unsigned m = ~0u;
  for (const auto& [f, e] : factors) m = std::min(m, f.degree() * e);
  return m;
}

void verify_factorization(const FormFactorization& fact, const BinaryForm& composite) {
  for (const auto& [f, e] : fact.factors)
    if (e == 0) throw PreconditionError("factor exponent must be >= 1");
  BinaryForm expanded = fact.expand();
  if (!(expanded == composite))
    throw PreconditionError("declared factors expand to " + expanded.to_string() + ", not " +
                            composite.to_string());
}

ZeroRootSplit zero_root_split(const IntegerPolynomial& q) {
  if (q.is_zero()) throw PreconditionError("zero polynomial has no zero-root split");
  const auto& c = q.coefficients();
  unsigned l = 0;
  while (sgn(c[l]) == 0) ++l;
  return {l, IntegerPolynomial(std::vector<BigInt>(c.begin() + l, c.end()))};
}

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt resultant(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const std::size_t m = a.degree(), n = b.degree();
  const std::size_t size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = a.coeff(m - k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = b.coeff(n - k);
  return determinant(std::move(s));
}

BigInt discriminant(const IntegerPolynomial& p) {
  if (p.degree() < 1) throw PreconditionError("discriminant needs degree >= 1");
  const long n = p.degree();
  BigInt res = resultant(p, p.derivative());
  BigInt q;
  if (!mpz_divisible_p(res.get_mpz_t(), p.leading().get_mpz_t()))
    throw InvariantError("resultant not divisible by leading coefficient");
  mpz_divexact(q.get_mpz_t(), res.get_mpz_t(), p.leading().get_mpz_t());
  return (n * (n - 1) / 2) % 2 ? BigInt(-q) : q;
}

ModifiedDiscriminant modified_discriminant(const BinaryForm& f) {
  if (f.degree() < 1) throw PreconditionError("modified discriminant needs degree >= 1");
  if (sgn(f.leading()) == 0) throw PreconditionError("a_d = 0: f(x,1) drops degree");
  ModifiedDiscriminant out;
  out.discriminant = discriminant(f.dehomogenize());
  out.content = f.content();
  BigInt scale;
  mpz_pow_ui(scale.get_mpz_t(), out.content.get_mpz_t(), 2 * f.degree() - 2);
  if (!mpz_divisible_p(out.discriminant.get_mpz_t(), scale.get_mpz_t()))
    throw InvariantError("discriminant not divisible by g^(2d-2)");
  mpz_divexact(out.value.get_mpz_t(), out.discriminant.get_mpz_t(), scale.get_mpz_t());
  return out;
}

std::optional<std::uint64_t> irreducibility_witness(const IntegerPolynomial& p, std::uint64_t prime_budget) {
  if (p.degree() < 1) return std::nullopt;
  IntegerPolynomial prim = p.exact_div(p.content());
  const unsigned d = prim.degree();
  for (std::uint64_t q : arith::primes_up_to(prime_budget)) {
    if (arith::mod_u64(prim.leading(), q) == 0) continue;
    auto pattern = modp::degree_pattern(prim, q);
    if (pattern.parts.size() == 1 && pattern.parts.front() == d) return q;
  }
  return std::nullopt;
}

}  // namespace facdio
