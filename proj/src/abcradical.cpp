#include "facdio/abcradical.hpp"

#include <cmath>
#include <sstream>

#include "facdio/error.hpp"
#include "facdio/parallel.hpp"

namespace facdio {

namespace {

const double kLog4 = std::log(4.0);
// Below this log X_i the cofactor is evaluated exactly.
constexpr double kExactLogLimit = 200.0;

double log_argument(const EquationInstance& inst, std::size_t i, std::uint64_t n) {
  return static_cast<double>(n) * arith::log_abs(inst.a()[i]) + std::lgamma(static_cast<double>(n) + 1.0);
}

// log |R_i(X_i)|.
double log_cofactor(const EquationInstance& inst, std::size_t i, std::uint64_t n, double log_x) {
  const IntegerPolynomial& r = inst.splits()[i].cofactor;
  if (r.degree() == 0) return arith::log_abs(r.coeff(0));
  if (log_x <= kExactLogLimit) {
    BigInt v = r(inst.factor_argument(i, n));
    if (sgn(v) == 0) throw PreconditionError("F vanishes: R_" + std::to_string(i + 1) + "(A^n n!) = 0");
    return arith::log_abs(v);
  }
  // Dominant term times (1 + tail); the tail is below e^-200 in relative size
  // unless coefficients are astronomically larger than the leading one.
  const int e = r.degree();
  const BigInt& lead = r.leading();
  const double log_lead = arith::log_abs(lead);
  double tail = 0.0;
  for (int j = 0; j < e; ++j) {
    const BigInt& c = r.coeff(j);
    if (sgn(c) == 0) continue;
    const double mag = std::exp(arith::log_abs(c) - log_lead + (j - e) * log_x);
    tail += (sgn(c) == sgn(lead) ? mag : -mag);
  }
  return log_lead + e * log_x + std::log1p(tail);
}

void require_positive(const NTuple& n, std::size_t r) {
  if (n.size() != r) throw PreconditionError("tuple length differs from r");
  for (auto v : n)
    if (v < 1) throw PreconditionError("n_i >= 1 required for the radical bound");
}

}  // namespace

AbcBoundParams params_with_epsilon(const EquationInstance& inst, double epsilon) {
  inst.require_zero_roots();
  if (!(epsilon >= 0)) throw PreconditionError("epsilon must be non-negative");
  AbcBoundParams p;
  p.epsilon = epsilon;
  p.epsilon_exponent = 0;
  for (std::size_t i = 0; i < inst.r(); ++i) {
    const auto& split = inst.splits()[i];
    AbcTerm t;
    t.multiplicity = split.multiplicity;
    t.cofactor_degree = static_cast<unsigned>(split.cofactor.degree());
    t.coefficient_sum = 0;
    for (const auto& c : split.cofactor.coefficients()) t.coefficient_sum += abs(c);
    p.terms.push_back(t);
    p.radical_of_a *= arith::radical(inst.a()[i]);
  }
  return p;
}

AbcBoundParams select_epsilon(const EquationInstance& inst) {
  AbcBoundParams p = params_with_epsilon(inst, 0.5);
  for (unsigned k = 1; k <= 20; ++k) {
    // l - d/2^k > 9/10  <=>  10 l 2^k - 10 d > 9 2^k
    const long long scale = 1LL << k;
    bool ok = true;
    for (const auto& t : p.terms)
      if (!(10LL * t.multiplicity * scale - 10LL * t.cofactor_degree > 9LL * scale)) ok = false;
    if (ok) {
      p.epsilon_exponent = k;
      p.epsilon = std::ldexp(1.0, -static_cast<int>(k));
      return p;
    }
  }
  throw InvariantError("no epsilon = 2^-k with k <= 20 satisfies l_i - d_i eps > 9/10");
}

double radical_bound_log(const EquationInstance& inst, const NTuple& n, const AbcBoundParams& params) {
  require_positive(n, inst.r());
  double acc = arith::log_abs(params.radical_of_a);
  for (std::size_t i = 0; i < inst.r(); ++i)
    acc += static_cast<double>(n[i]) * kLog4 + log_cofactor(inst, i, n[i], log_argument(inst, i, n[i]));
  return acc;
}

double lhs_log(const EquationInstance& inst, const NTuple& n) {
  require_positive(n, inst.r());
  double acc = 0;
  for (std::size_t i = 0; i < inst.r(); ++i) {
    const double lx = log_argument(inst, i, n[i]);
    acc += inst.splits()[i].multiplicity * lx + log_cofactor(inst, i, n[i], lx);
  }
  return acc;
}

double abc_log_ratio(const EquationInstance& inst, const NTuple& n, const AbcBoundParams& params) {
  return (1.0 + params.epsilon) * radical_bound_log(inst, n, params) - lhs_log(inst, n);
}

double relaxed_ratio_log(const EquationInstance& inst, const NTuple& n, const AbcBoundParams& params) {
  require_positive(n, inst.r());
  const double eps = params.epsilon;
  double acc = (1.0 + eps) * arith::log_abs(params.radical_of_a);
  for (std::size_t i = 0; i < inst.r(); ++i) {
    const auto& t = params.terms[i];
    acc += eps * arith::log_abs(t.coefficient_sum);
    acc += (1.0 + eps) * static_cast<double>(n[i]) * kLog4;
    acc += (t.cofactor_degree * eps - t.multiplicity) * log_argument(inst, i, n[i]);
  }
  return acc;
}

BigInt exact_radical_small(const EquationInstance& inst, const NTuple& n, const arith::FactorBudget& budget) {
  require_positive(n, inst.r());
  const BigInt f = inst.lhs_value(n);
  if (sgn(f) == 0) throw PreconditionError("F vanishes at this tuple");
  BigInt rad = arith::radical(f, budget);
  const AbcBoundParams params = params_with_epsilon(inst, 0.0);
  const double bound = radical_bound_log(inst, n, params);
  if (arith::log_abs(rad) > bound + std::log1p(1e-9))
    throw InvariantError("radical " + rad.get_str() + " exceeds the radical bound");
  return rad;
}

std::vector<AbcGridRow> abc_grid(const EquationInstance& inst, std::uint64_t n_max, const AbcBoundParams& params,
                                 unsigned jobs) {
  std::vector<NTuple> tuples;
  NTuple t(inst.r(), 1);
  if (n_max >= 1) {
    while (true) {
      tuples.push_back(t);
      std::size_t k = t.size();
      while (k > 0 && t[k - 1] == n_max) t[--k] = 1;
      if (k == 0) break;
      ++t[k - 1];
    }
  }
  auto chunks = parallel_map_chunks(tuples.size(), jobs, [&](std::size_t b, std::size_t e) {
    std::vector<AbcGridRow> rows;
    for (std::size_t i = b; i < e; ++i) {
      AbcGridRow row;
      row.n = tuples[i];
      row.log_f = lhs_log(inst, row.n);
      row.log_radical_bound = radical_bound_log(inst, row.n, params);
      row.log_ratio = (1.0 + params.epsilon) * row.log_radical_bound - row.log_f;
      rows.push_back(std::move(row));
    }
    return rows;
  });
  std::vector<AbcGridRow> out;
  for (auto& c : chunks)
    for (auto& r : c) out.push_back(std::move(r));
  return out;
}

std::string abc_grid_csv(const std::vector<AbcGridRow>& rows, std::size_t r) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < r; ++i) os << "n_" << i + 1 << ',';
  os << "log_F,log_radical_bound,log_ratio\n";
  for (const auto& row : rows) {
    for (auto v : row.n) os << v << ',';
    os << row.log_f << ',' << row.log_radical_bound << ',' << row.log_ratio << '\n';
  }
  return os.str();
}

}  // namespace facdio
