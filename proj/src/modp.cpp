#include "facdio/modp.hpp"

#include <algorithm>
#include <string>

#include "facdio/error.hpp"

namespace facdio::modp {

namespace {

std::uint64_t inverse(std::uint64_t a, std::uint64_t q) { return arith::powmod(a, q - 2, q); }

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  std::uint64_t s = a + b;
  return (s >= q || s < a) ? s - q : s;
}

std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t q) { return a >= b ? a - b : a + (q - b); }

void check_same(const PolyModP& a, const PolyModP& b) {
  if (a.modulus() != b.modulus()) throw PreconditionError("mixing polynomials over different fields");
}

}  // namespace

PolyModP::PolyModP(std::vector<std::uint64_t> ascending, std::uint64_t q) : c_(std::move(ascending)), q_(q) {
  if (q < 2) throw PreconditionError("modulus must be a prime");
  for (auto& v : c_) v %= q_;
  trim();
}

PolyModP PolyModP::reduce(const IntegerPolynomial& p, std::uint64_t q) {
  std::vector<std::uint64_t> c;
  c.reserve(p.coefficients().size());
  for (const auto& v : p.coefficients()) c.push_back(arith::mod_u64(v, q));
  return PolyModP(std::move(c), q);
}

void PolyModP::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint64_t PolyModP::operator()(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= q_;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = addm(arith::mulmod(acc, x, q_), *it, q_);
  return acc;
}

PolyModP PolyModP::monic() const {
  if (c_.empty()) return *this;
  std::uint64_t inv = inverse(c_.back(), q_);
  std::vector<std::uint64_t> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = arith::mulmod(c_[i], inv, q_);
  return PolyModP(std::move(out), q_);
}

PolyModP PolyModP::derivative() const {
  if (c_.size() <= 1) return PolyModP({}, q_);
  std::vector<std::uint64_t> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = arith::mulmod(c_[i], i % q_, q_);
  return PolyModP(std::move(out), q_);
}

PolyModP operator+(const PolyModP& a, const PolyModP& b) {
  check_same(a, b);
  std::vector<std::uint64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t x = i < a.c_.size() ? a.c_[i] : 0, y = i < b.c_.size() ? b.c_[i] : 0;
    out[i] = addm(x, y, a.q_);
  }
  return PolyModP(std::move(out), a.q_);
}

PolyModP operator-(const PolyModP& a, const PolyModP& b) {
  check_same(a, b);
  std::vector<std::uint64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t x = i < a.c_.size() ? a.c_[i] : 0, y = i < b.c_.size() ? b.c_[i] : 0;
    out[i] = subm(x, y, a.q_);
  }
  return PolyModP(std::move(out), a.q_);
}

PolyModP operator*(const PolyModP& a, const PolyModP& b) {
  check_same(a, b);
  if (a.c_.empty() || b.c_.empty()) return PolyModP({}, a.q_);
  std::vector<std::uint64_t> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out[i + j] = addm(out[i + j], arith::mulmod(a.c_[i], b.c_[j], a.q_), a.q_);
  return PolyModP(std::move(out), a.q_);
}

namespace {

// Long division; returns {quotient, remainder}.
std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b) {
  check_same(a, b);
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  const std::uint64_t q = a.modulus();
  std::vector<std::uint64_t> rem = a.coefficients();
  const auto& d = b.coefficients();
  if (rem.size() < d.size()) return {PolyModP({}, q), a};
  std::vector<std::uint64_t> quot(rem.size() - d.size() + 1, 0);
  const std::uint64_t inv = inverse(d.back(), q);
  for (std::size_t shift = quot.size(); shift-- > 0;) {
    const std::size_t k = shift + d.size() - 1;
    std::uint64_t coef = arith::mulmod(rem[k], inv, q);
    if (coef == 0) continue;
    quot[shift] = coef;
    for (std::size_t j = 0; j < d.size(); ++j)
      rem[shift + j] = subm(rem[shift + j], arith::mulmod(coef, d[j], q), q);
  }
  rem.resize(d.size() - 1);
  return {PolyModP(std::move(quot), q), PolyModP(std::move(rem), q)};
}

}  // namespace

PolyModP operator%(const PolyModP& a, const PolyModP& b) { return divmod(a, b).second; }
PolyModP operator/(const PolyModP& a, const PolyModP& b) { return divmod(a, b).first; }

PolyModP gcd(PolyModP a, PolyModP b) {
  while (!b.is_zero()) {
    PolyModP r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyModP powmod(PolyModP base, std::uint64_t e, const PolyModP& m) {
  PolyModP result = PolyModP({1}, m.modulus()) % m;
  base = base % m;
  while (e) {
    if (e & 1) result = (result * base) % m;
    e >>= 1;
    if (e) base = (base * base) % m;
  }
  return result;
}

std::uint64_t count_roots_scan(const IntegerPolynomial& p, std::uint64_t q) {
  PolyModP r = PolyModP::reduce(p, q);
  if (r.is_zero()) throw PreconditionError("polynomial vanishes identically mod " + std::to_string(q));
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < q; ++x)
    if (r(x) == 0) ++n;
  return n;
}

bool has_root_mod(const IntegerPolynomial& p, std::uint64_t q, RootTest how) {
  PolyModP r = PolyModP::reduce(p, q);
  if (r.is_zero()) throw PreconditionError("polynomial vanishes identically mod " + std::to_string(q));
  if (r.degree() == 0) return false;
  if (how == RootTest::kAuto) how = q <= kRootScanThreshold ? RootTest::kScan : RootTest::kGcd;
  if (how == RootTest::kScan) {
    for (std::uint64_t x = 0; x < q; ++x)
      if (r(x) == 0) return true;
    return false;
  }
  // Roots in F_q are exactly the common roots with x^q - x.
  PolyModP xq = powmod(PolyModP::x(q), q, r);
  return gcd(xq - PolyModP::x(q), r).degree() > 0;
}

unsigned DegreePattern::sum() const {
  unsigned s = 0;
  for (unsigned p : parts) s += p;
  return s;
}

unsigned DegreePattern::count(unsigned part) const {
  return static_cast<unsigned>(std::count(parts.begin(), parts.end(), part));
}

unsigned DegreePattern::min_part() const { return parts.empty() ? 0 : parts.front(); }

namespace {

// Degrees of the irreducible factors of a squarefree monic polynomial.
void distinct_degree(PolyModP g, std::vector<unsigned>& out) {
  const std::uint64_t q = g.modulus();
  const PolyModP x = PolyModP::x(q);
  PolyModP h = x % g;
  for (unsigned k = 1; g.degree() >= 2 * static_cast<int>(k); ++k) {
    h = powmod(h, q, g);
    PolyModP t = gcd(h - x, g);
    if (t.degree() > 0) {
      for (int i = 0; i < t.degree() / static_cast<int>(k); ++i) out.push_back(k);
      g = g / t;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.push_back(static_cast<unsigned>(g.degree()));
}

// Squarefree decomposition over F_q; each factor is paired with its multiplicity.
void squarefree_parts(const PolyModP& f, unsigned scale, std::vector<std::pair<PolyModP, unsigned>>& out) {
  const std::uint64_t q = f.modulus();
  PolyModP c = gcd(f, f.derivative());
  PolyModP w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    PolyModP y = gcd(w, c);
    PolyModP fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * scale);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a q-th power: its q-th root keeps every q-th coefficient.
    std::vector<std::uint64_t> root;
    const auto& cc = c.coefficients();
    for (std::size_t k = 0; k < cc.size(); k += q) root.push_back(cc[k]);
    squarefree_parts(PolyModP(std::move(root), q).monic(), scale * static_cast<unsigned>(q), out);
  }
}

}  // namespace

DegreePattern degree_pattern(const IntegerPolynomial& p, std::uint64_t q) {
  if (!arith::is_prime(q)) throw PreconditionError("degree pattern needs a prime modulus");
  if (p.is_zero() || arith::mod_u64(p.leading(), q) == 0)
    throw PreconditionError("q divides the leading coefficient");
  PolyModP f = PolyModP::reduce(p, q).monic();
  DegreePattern out;
  if (f.degree() == 0) return out;
  out.ramified = gcd(f, f.derivative()).degree() > 0;
  std::vector<std::pair<PolyModP, unsigned>> parts;
  squarefree_parts(f, 1, parts);
  for (const auto& [g, mult] : parts) {
    std::vector<unsigned> degs;
    distinct_degree(g, degs);
    for (unsigned d : degs)
      for (unsigned k = 0; k < mult; ++k) out.parts.push_back(d);
  }
  std::sort(out.parts.begin(), out.parts.end());
  if (out.sum() != static_cast<unsigned>(f.degree()))
    throw InvariantError("degree pattern does not sum to the degree");
  return out;
}

}  // namespace facdio::modp
