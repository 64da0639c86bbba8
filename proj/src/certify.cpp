#include "facdio/certify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "facdio/error.hpp"
#include "facdio/parallel.hpp"

namespace facdio {

namespace {

FormFactorization certificate_form(const EquationInstance& inst) {
  auto form = inst.rhs_form();
  if (!form) throw PreconditionError("interval certificates need a form or univariate rhs; use decide-monomial for x^d");
  return *form;
}

using i128 = __int128;

// |v| < 2^126 assumed.
i128 to_i128(const BigInt& v) {
  BigInt m = abs(v), hi;
  mpz_tdiv_q_2exp(hi.get_mpz_t(), m.get_mpz_t(), 64);
  const std::uint64_t low = mpz_getlimbn(m.get_mpz_t(), 0);
  i128 out = (static_cast<i128>(mpz_get_ui(hi.get_mpz_t())) << 64) | static_cast<i128>(low);
  return sgn(v) < 0 ? -out : out;
}

// Does f(x, y) = target for some |x|, |y| <= box? Plain exhaustive evaluation.
bool box_attains(const BinaryForm& f, const BigInt& target, std::uint64_t box, unsigned jobs) {
  const auto& coeffs = f.coefficients_desc();
  const unsigned d = f.degree();
  BigInt bx = arith::from_u64(box), reach = 0, pw;
  for (const auto& c : coeffs) reach += abs(c);
  mpz_pow_ui(pw.get_mpz_t(), bx.get_mpz_t(), d);
  reach *= pw;
  if (abs(target) > reach) return false;

  const long long lo = -static_cast<long long>(box), span = 2 * static_cast<long long>(box) + 1;
  std::atomic<bool> found{false};
  const BigInt limit = BigInt(1) << 120;

  if (reach < limit) {
    // Every partial Horner sum is bounded by reach, so 128-bit arithmetic is exact.
    std::vector<i128> a;
    for (const auto& c : coeffs) a.push_back(to_i128(c));
    const i128 t = to_i128(target);
    parallel_map_chunks(static_cast<std::size_t>(span), jobs, [&](std::size_t b, std::size_t e) {
      std::vector<i128> yp(d + 1);
      for (std::size_t iy = b; iy < e && !found.load(std::memory_order_relaxed); ++iy) {
        const i128 y = lo + static_cast<long long>(iy);
        yp[0] = 1;
        for (unsigned k = 1; k <= d; ++k) yp[k] = yp[k - 1] * y;
        for (long long x = lo; x < lo + span; ++x) {
          i128 acc = 0;
          for (unsigned i = 0; i <= d; ++i) acc = acc * x + a[i] * yp[i];
          if (acc == t) {
            found = true;
            break;
          }
        }
      }
      return 0;
    });
    return found;
  }
  parallel_map_chunks(static_cast<std::size_t>(span), jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t iy = b; iy < e && !found.load(std::memory_order_relaxed); ++iy) {
      const BigInt y = BigInt(static_cast<long>(lo + static_cast<long long>(iy)));
      for (long long x = lo; x < lo + span; ++x) {
        if (f(BigInt(static_cast<long>(x)), y) == target) {
          found = true;
          break;
        }
      }
    }
    return 0;
  });
  return found;
}

}  // namespace

IntervalCertificate interval_certificate(const EquationInstance& inst, std::uint64_t q) {
  const FormFactorization form = certificate_form(inst);
  inst.require_zero_roots();
  IntervalCertificate cert;
  cert.q = q;
  cert.sum_l = inst.sum_l();
  cert.d = form.total_degree();
  if (!(cert.sum_l < cert.d))
    throw PreconditionError("sum of l_i < d fails (sum_l = " + std::to_string(cert.sum_l) +
                            ", d = " + std::to_string(cert.d) + ")");
  if (!arith::is_prime(q)) throw PreconditionError(std::to_string(q) + " is not prime");
  auto ev = is_useful_prime(form, q);
  if (!ev) throw PreconditionError(std::to_string(q) + " is not a useful prime for the rhs form");
  cert.evidence = std::move(*ev);
  cert.hypotheses = interval_hypotheses(inst, q);
  for (const auto& h : cert.hypotheses)
    if (!h.passed) throw PreconditionError("hypothesis " + h.name + " fails: " + h.detail);
  return cert;
}

std::vector<IntervalCertificate> certificates_up_to(const EquationInstance& inst, std::uint64_t q_limit,
                                                    unsigned jobs) {
  const FormFactorization form = certificate_form(inst);
  inst.require_zero_roots();
  std::vector<IntervalCertificate> out;
  for (const auto& ev : scan_useful_primes(form, q_limit, jobs).primes) {
    try {
      out.push_back(interval_certificate(inst, ev.q));
    } catch (const PreconditionError&) {
      // q fails an interval hypothesis for this instance; no certificate.
    }
  }
  return out;
}

bool certificate_is_valid(const IntervalCertificate& cert, const EquationInstance& inst) {
  IntervalCertificate fresh;
  try {
    fresh = interval_certificate(inst, cert.q);
  } catch (const PreconditionError&) {
    return false;
  }
  if (fresh.sum_l != cert.sum_l || fresh.d != cert.d || !(fresh.evidence == cert.evidence)) return false;
  if (fresh.hypotheses.size() != cert.hypotheses.size()) return false;
  for (std::size_t i = 0; i < fresh.hypotheses.size(); ++i)
    if (fresh.hypotheses[i].name != cert.hypotheses[i].name || !cert.hypotheses[i].passed) return false;
  return true;
}

bool verify_certificate(const IntervalCertificate& cert, const EquationInstance& inst, std::uint64_t xy_box,
                        unsigned jobs) {
  if (!certificate_is_valid(cert, inst)) return false;
  const BinaryForm f = certificate_form(inst).expand();
  for (std::uint64_t nr = cert.q + 1; nr < 2 * cert.q; ++nr) {
    for (const auto& n : tuples_with_max(inst.r(), inst.min_n(), nr)) {
      if (box_attains(f, inst.lhs_value(n), xy_box, jobs)) return false;
    }
  }
  return true;
}

nlohmann::ordered_json certificate_to_json(const IntervalCertificate& cert) {
  nlohmann::ordered_json j;
  j["q"] = cert.q;
  auto pats = nlohmann::ordered_json::array();
  for (const auto& p : cert.evidence.patterns) pats.push_back(p.parts);
  j["patterns"] = pats;
  j["guards"] = {{"gcd_q_a_d", cert.evidence.guards.with_a_d},
                 {"gcd_q_a_0", cert.evidence.guards.with_a_0},
                 {"gcd_q_delta_mod", cert.evidence.guards.with_delta_mod},
                 {"gcd_q_content", cert.evidence.guards.with_content}};
  j["interval"] = {cert.lower(), cert.upper()};
  j["sum_l"] = cert.sum_l;
  j["d"] = cert.d;
  auto hyps = nlohmann::ordered_json::array();
  for (const auto& h : cert.hypotheses) hyps.push_back({{"name", h.name}, {"passed", h.passed}, {"detail", h.detail}});
  j["hypotheses"] = hyps;
  return j;
}

IntervalCertificate certificate_from_json(const nlohmann::ordered_json& j) {
  try {
    IntervalCertificate c;
    c.q = j.at("q").get<std::uint64_t>();
    c.evidence.q = c.q;
    for (const auto& p : j.at("patterns")) c.evidence.patterns.push_back({p.get<std::vector<unsigned>>(), false});
    const auto& g = j.at("guards");
    c.evidence.guards = {g.at("gcd_q_a_d").get<std::uint64_t>(), g.at("gcd_q_a_0").get<std::uint64_t>(),
                         g.at("gcd_q_delta_mod").get<std::uint64_t>(), g.at("gcd_q_content").get<std::uint64_t>()};
    const auto& iv = j.at("interval");
    if (iv.size() != 2 || iv[0].get<std::uint64_t>() != c.q || iv[1].get<std::uint64_t>() != 2 * c.q)
      throw PreconditionError("certificate interval must be [q, 2q]");
    c.sum_l = j.at("sum_l").get<unsigned>();
    c.d = j.at("d").get<unsigned>();
    if (j.contains("hypotheses"))
      for (const auto& h : j.at("hypotheses"))
        c.hypotheses.push_back({h.at("name").get<std::string>(), h.at("passed").get<bool>(),
                                h.value("detail", std::string{})});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed certificate: ") + e.what());
  }
}

MonomialDecision monomial_solve_complete(const EquationInstance& inst) {
  const auto* mono = std::get_if<MonomialRhs>(&inst.rhs());
  if (!mono) throw PreconditionError("monomial decision needs rhs x^d");
  inst.require_zero_roots();
  const unsigned d = mono->d;
  if (!(d > inst.sum_l()))
    throw PreconditionError("d > sum of l_i fails (d = " + std::to_string(d) + ", sum_l = " +
                            std::to_string(inst.sum_l()) + ")");
  if (d < 2) throw PreconditionError("monomial exponent must be >= 2");

  BigInt m = 0;
  bool constant_cofactors = true;
  for (std::size_t i = 0; i < inst.r(); ++i) {
    m = std::max(m, inst.a()[i]);
    for (const auto& c : inst.splits()[i].cofactor.coefficients()) m = std::max(m, BigInt(abs(c)));
    if (inst.splits()[i].cofactor.degree() > 0) constant_cofactors = false;
  }
  MonomialDecision out;
  out.bound = arith::to_u64(8 * m);
  out.coefficient_reading = "N0 = 8 * max({A_i} U {|c| : c coefficient of R_i}), all coefficients of every cofactor";
  out.complete = inst.r() == 1 || constant_cofactors;

  for (std::uint64_t nr = 1; nr <= out.bound; ++nr) {
    for (const auto& n : tuples_with_max(inst.r(), 1, nr)) {
      const BigInt lhs = inst.lhs_value(n);
      if (sgn(lhs) == 0) {
        out.solutions.push_back({n, 0});
        continue;
      }
      auto root = arith::perfect_power_root(lhs, d);
      if (!root) continue;
      if (d % 2 == 0) out.solutions.push_back({n, -*root});
      out.solutions.push_back({n, *root});
    }
  }

  std::ostringstream note;
  note << "For max n_i = n_r > " << out.bound << " Bertrand gives a prime q in (n_r/2, n_r); q > "
       << out.bound / 2 << " so q divides no A_i and no f_i0, and nu_q(n_i!) <= 1. ";
  if (out.complete) {
    note << "Every cofactor factor with n_i >= q is a unit mod q"
         << (constant_cofactors ? " and constant cofactors are units, " : ", ")
         << "so nu_q(lhs) lies in [1, " << inst.sum_l() << "] with " << inst.sum_l() << " < d = " << d
         << ": lhs is not a d-th power. The listed set is complete.";
  } else {
    note << "With r >= 2 and a non-constant cofactor, q may divide R_i(A_i^n_i n_i!) for some n_i < q, "
            "so nu_q(lhs) is not bounded by sum l_i and the listed set is complete only up to n_r <= "
         << out.bound << ".";
  }
  out.proof_note = note.str();
  return out;
}

}  // namespace facdio
