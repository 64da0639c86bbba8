#include "facdio/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>

#include "facdio/error.hpp"
#include "facdio/parallel.hpp"

namespace facdio {

namespace {

int sign_at(const IntegerPolynomial& p, const BigInt& x) { return sgn(p(x)); }

// Integer c in [a, b) with a sign change of p between c and c + 1, given
// strictly opposite signs at a and b. Returns c exactly when p(c) = 0.
BigInt bisect_sign_change(const IntegerPolynomial& p, BigInt a, BigInt b, int sa) {
  while (b - a > 1) {
    BigInt mid = (a + b) / 2;
    const int sm = sign_at(p, mid);
    if (sm == 0) return mid;
    if (sm == sa) a = mid;
    else b = mid;
  }
  return a;
}

// Sorted integers in [lo, hi], including lo and hi, such that p is strictly
// monotone on every gap of length >= 2 between consecutive entries. Built from
// the floor and ceiling of every real critical point, found recursively.
std::vector<BigInt> monotone_breakpoints(const IntegerPolynomial& p, const BigInt& lo, const BigInt& hi) {
  std::vector<BigInt> out{lo, hi};
  if (p.degree() <= 1) return out;
  const IntegerPolynomial dp = p.derivative();
  const std::vector<BigInt> inner = monotone_breakpoints(dp, lo, hi);
  out = inner;
  for (std::size_t k = 0; k + 1 < inner.size(); ++k) {
    const BigInt& a = inner[k];
    const BigInt& b = inner[k + 1];
    if (b - a < 2) continue;
    const int sa = sign_at(dp, a), sb = sign_at(dp, b);
    if (sa * sb >= 0) continue;  // monotone derivative, no interior zero
    BigInt c = bisect_sign_change(dp, a, b, sa);
    out.push_back(c);
    out.push_back(c + 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void push_unique(std::vector<BigInt>& v, const BigInt& x) {
  if (v.empty() || v.back() != x) v.push_back(x);
}

BigInt pow_u(const BigInt& b, unsigned e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Lower bound on |g| over [-1, 1], or <= 0 when the grid cannot certify one.
// nullopt when g changes sign (or vanishes) at a grid point: g has a real zero.
std::optional<mpq_class> edge_lower_bound(const IntegerPolynomial& g, unsigned cells) {
  BigInt lip = 0;
  for (std::size_t k = 1; k < g.coefficients().size(); ++k) lip += abs(g.coefficients()[k]) * static_cast<unsigned long>(k);
  const mpq_class margin(lip, BigInt(cells));
  mpq_class best;
  int sign = 0;
  for (unsigned i = 0; i < cells; ++i) {
    // midpoint of the i-th cell of width 2/cells
    mpq_class c(static_cast<long>(2 * i + 1) - static_cast<long>(cells), static_cast<long>(cells));
    c.canonicalize();
    mpq_class v = 0;
    for (auto it = g.coefficients().rbegin(); it != g.coefficients().rend(); ++it) v = v * c + mpq_class(*it);
    const int s = sgn(v);
    if (s == 0 || (sign != 0 && s != sign)) return std::nullopt;
    sign = s;
    mpq_class bound = abs(v) - margin;
    if (i == 0 || bound < best) best = bound;
  }
  return best;
}

std::optional<mpq_class> compute_lower_bound(const BinaryForm& f) {
  const unsigned d = f.degree();
  if (d == 0 || d % 2 != 0) return std::nullopt;
  // |f| on the boundary of [-1,1]^2; f(-x,-y) = f(x,y), so two edges suffice.
  const IntegerPolynomial top = f.dehomogenize();  // f(t, 1)
  const IntegerPolynomial side(std::vector<BigInt>(f.coefficients_desc().begin(), f.coefficients_desc().end()));  // f(1, t)
  const BigInt one = 1;
  if (sign_at(top, -one) * sign_at(top, one) <= 0 || sign_at(side, -one) * sign_at(side, one) <= 0) return std::nullopt;
  for (unsigned cells = 16; cells <= (1u << 16); cells *= 2) {
    auto m1 = edge_lower_bound(top, cells), m2 = edge_lower_bound(side, cells);
    if (!m1 || !m2) return std::nullopt;
    mpq_class m = std::min(*m1, *m2);
    if (m > 0) return m;
  }
  return std::nullopt;
}

}  // namespace

BigInt root_bound(const IntegerPolynomial& p) {
  if (p.degree() < 1) return 0;
  BigInt m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, BigInt(abs(p.coeff(k))));
  BigInt lc = abs(p.leading()), q;
  mpz_cdiv_q(q.get_mpz_t(), m.get_mpz_t(), lc.get_mpz_t());
  return q + 1;
}

std::vector<BigInt> integer_roots(const IntegerPolynomial& p, const BigInt& lo, const BigInt& hi) {
  if (p.is_zero()) throw PreconditionError("zero polynomial: every integer is a root");
  std::vector<BigInt> roots;
  if (p.degree() == 0 || lo > hi) return roots;
  const auto bp = monotone_breakpoints(p, lo, hi);
  for (std::size_t k = 0; k < bp.size(); ++k) {
    const BigInt& a = bp[k];
    const int sa = sign_at(p, a);
    if (sa == 0) push_unique(roots, a);
    if (k + 1 == bp.size()) break;
    const BigInt& b = bp[k + 1];
    if (b - a < 2) continue;
    const int sb = sign_at(p, b);
    if (sa * sb >= 0) continue;
    BigInt c = bisect_sign_change(p, a, b, sa);
    if (sign_at(p, c) == 0) push_unique(roots, c);
  }
  return roots;
}

std::optional<mpq_class> definite_lower_bound(const BinaryForm& f) {
  static std::mutex mu;
  static std::map<std::vector<BigInt>, std::optional<mpq_class>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f.coefficients_desc());
    if (it != cache.end()) return it->second;
  }
  auto m = compute_lower_bound(f);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(f.coefficients_desc(), m);
  return m;
}

std::optional<std::uint64_t> automatic_box(const BinaryForm& f, const BigInt& L) {
  auto m = definite_lower_bound(f);
  if (!m) return std::nullopt;
  const unsigned d = f.degree();
  // Smallest B with m B^d > |L|; any solution then has max(|x|,|y|) < B.
  mpq_class ratio = mpq_class(abs(L)) / *m;
  BigInt fl = ratio.get_num() / ratio.get_den();
  BigInt b;
  mpz_root(b.get_mpz_t(), fl.get_mpz_t(), d);
  while (*m * mpq_class(pow_u(b, d)) <= mpq_class(abs(L))) ++b;
  if (!arith::fits_u64(b)) return std::nullopt;
  return arith::to_u64(b);
}

std::vector<std::pair<BigInt, BigInt>> represent_form(const BinaryForm& f, const BigInt& L,
                                                      std::optional<std::uint64_t> xy_box) {
  if (!xy_box) {
    xy_box = automatic_box(f, L);
    if (!xy_box) throw PreconditionError("form " + f.to_string() + " is not certified definite; an explicit box is required");
  }
  const unsigned d = f.degree();
  const auto& c = f.coefficients_desc();
  const BigInt box = arith::from_u64(*xy_box);
  BigInt reach = 0;
  for (const auto& v : c) reach += abs(v);
  if (abs(L) > reach * pow_u(box, d)) return {};

  std::vector<std::pair<BigInt, BigInt>> out;
  for (BigInt y = -box; y <= box; ++y) {
    // Coefficient of x^k in f(x, y) is a_k y^{d-k}.
    std::vector<BigInt> asc(d + 1);
    BigInt ypow = 1;
    for (unsigned i = 0; i <= d; ++i) {
      asc[d - i] = c[i] * ypow;
      ypow *= y;
    }
    asc[0] -= L;
    IntegerPolynomial slice(std::move(asc));
    if (slice.is_zero()) {
      for (BigInt x = -box; x <= box; ++x) out.emplace_back(x, y);
      continue;
    }
    for (auto& x : integer_roots(slice, -box, box)) out.emplace_back(std::move(x), y);
  }
  for (const auto& [x, y] : out)
    if (f(x, y) != L) throw InvariantError("represent_form accepted a non-solution");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BigInt> represent_univariate(const IntegerPolynomial& p, const BigInt& L) {
  if (p.degree() < 1) throw PreconditionError("univariate rhs needs degree >= 1");
  IntegerPolynomial g = p - IntegerPolynomial({L});
  BigInt bound = root_bound(g);
  auto roots = integer_roots(g, -bound, bound);
  for (const auto& x : roots)
    if (p(x) != L) throw InvariantError("represent_univariate accepted a non-solution");
  return roots;
}

bool solution_holds(const EquationInstance& inst, const SearchSolution& s) {
  const BigInt lhs = inst.lhs_value(s.n);
  if (lhs != s.lhs) return false;
  if (const auto* f = std::get_if<FormRhs>(&inst.rhs())) return s.y && f->composite(s.x, *s.y) == lhs;
  if (s.y) return false;
  if (const auto* u = std::get_if<UnivariateRhs>(&inst.rhs())) return u->poly(s.x) == lhs;
  return pow_u(s.x, std::get<MonomialRhs>(inst.rhs()).d) == lhs;
}

SearchReport solve_instance(const EquationInstance& inst, const SearchOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.n_min = inst.min_n();
  rep.n_bound = opts.n_bound;
  rep.xy_box = opts.xy_box;
  const auto* form = std::get_if<FormRhs>(&inst.rhs());
  rep.automatic_box = form && opts.xy_box == 0;
  if (rep.automatic_box && !definite_lower_bound(form->composite))
    throw PreconditionError("rhs form is not certified definite; pass an explicit --xy-box");

  if (opts.prune)
    for (const auto& cert : opts.certificates)
      if (!certificate_is_valid(cert, inst))
        throw PreconditionError("certificate at q = " + std::to_string(cert.q) + " does not apply to this instance");

  // Enumerate by max n_i ascending; keep the tuples that need brute force.
  std::vector<std::pair<NTuple, BigInt>> work;
  std::vector<bool> cert_used(opts.certificates.size(), false);
  for (std::uint64_t nr = rep.n_min; nr <= opts.n_bound; ++nr) {
    const auto tuples = tuples_with_max(inst.r(), rep.n_min, nr);
    rep.tuples_total += tuples.size();
    bool pruned = false;
    if (opts.prune) {
      for (std::size_t k = 0; k < opts.certificates.size(); ++k)
        if (opts.certificates[k].covers(nr)) {
          cert_used[k] = true;
          pruned = true;
          break;
        }
    }
    if (pruned) {
      rep.tuples_pruned += tuples.size();
      continue;
    }
    rep.brute_forced_nr.push_back(nr);
    for (const auto& n : tuples) work.emplace_back(n, inst.lhs_value(n));
  }
  rep.tuples_tested = work.size();
  for (std::size_t k = 0; k < cert_used.size(); ++k)
    if (cert_used[k]) rep.pruned.push_back(opts.certificates[k]);
  if (form && opts.xy_box > 0 && static_cast<double>(work.size()) * (2.0 * opts.xy_box + 1) > 1e8)
    rep.warnings.push_back("estimated cost: " + std::to_string(work.size()) + " tuples x " +
                           std::to_string(2 * opts.xy_box + 1) + " slices");

  // Identical lhs values (from symmetric factors) are solved once.
  std::vector<BigInt> distinct;
  for (const auto& w : work) distinct.push_back(w.second);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (rep.automatic_box) {
    double slices = 0;
    for (const auto& L : distinct)
      if (auto b = automatic_box(form->composite, L)) slices += 2.0 * static_cast<double>(*b) + 1;
    if (slices > 1e8)
      rep.warnings.push_back("estimated cost: about " + std::to_string(static_cast<long double>(slices)) +
                             " slices under automatic boxes; consider --prune or a smaller --n-max");
  }

  using Reps = std::vector<std::pair<BigInt, std::optional<BigInt>>>;
  auto chunks = parallel_map_chunks(distinct.size(), opts.jobs, [&](std::size_t b, std::size_t e) {
    std::vector<Reps> res;
    for (std::size_t i = b; i < e; ++i) {
      const BigInt& L = distinct[i];
      Reps reps;
      if (form) {
        std::optional<std::uint64_t> box;
        if (opts.xy_box > 0) box = opts.xy_box;
        for (auto& [x, y] : represent_form(form->composite, L, box)) reps.emplace_back(x, y);
      } else if (const auto* u = std::get_if<UnivariateRhs>(&inst.rhs())) {
        for (auto& x : represent_univariate(u->poly, L)) reps.emplace_back(x, std::nullopt);
      } else {
        const unsigned d = std::get<MonomialRhs>(inst.rhs()).d;
        if (sgn(L) == 0) {
          reps.emplace_back(0, std::nullopt);
        } else if (d == 1) {
          reps.emplace_back(L, std::nullopt);
        } else if (auto root = arith::perfect_power_root(L, d)) {
          if (d % 2 == 0) reps.emplace_back(-*root, std::nullopt);
          reps.emplace_back(*root, std::nullopt);
        }
      }
      res.push_back(std::move(reps));
    }
    return res;
  });
  std::map<BigInt, Reps> by_value;
  std::size_t idx = 0;
  for (auto& chunk : chunks)
    for (auto& reps : chunk) by_value.emplace(distinct[idx++], std::move(reps));

  for (const auto& [n, L] : work)
    for (const auto& [x, y] : by_value.at(L)) rep.solutions.push_back({n, x, y, L});

  std::sort(rep.solutions.begin(), rep.solutions.end(), [](const SearchSolution& a, const SearchSolution& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  for (const auto& s : rep.solutions)
    if (!solution_holds(inst, s)) throw InvariantError("search produced a solution that does not re-verify");
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace facdio
