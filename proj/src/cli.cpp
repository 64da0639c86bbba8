#include "facdio/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "facdio/error.hpp"

namespace facdio::cli {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw PreconditionError("field " + path + ": " + what);
}

BigInt parse_big(const Json& v, const std::string& path) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return arith::from_u64(v.get<std::uint64_t>());
    return BigInt(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    BigInt out;
    const bool digits = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(), ::isdigit) &&
                        s != "-";
    if (!digits || out.set_str(s, 10) != 0) field_error(path, "expected an integer, got \"" + s + "\"");
    return out;
  }
  field_error(path, "expected an integer");
}

std::vector<BigInt> parse_coeffs(const Json& v, const std::string& path) {
  if (!v.is_array()) field_error(path, "expected an array of integers");
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_big(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

BinaryForm parse_form(const Json& v, const std::string& path) {
  auto c = parse_coeffs(v, path);
  if (c.empty()) field_error(path, "empty coefficient list");
  if (std::all_of(c.begin(), c.end(), [](const BigInt& x) { return sgn(x) == 0; }))
    field_error(path, "zero form");
  return BinaryForm(std::move(c));
}

unsigned parse_unsigned(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    field_error(path, "expected a non-negative integer");
  const auto x = v.get<std::uint64_t>();
  if (x > 1000000) field_error(path, "value too large");
  return static_cast<unsigned>(x);
}

Rhs parse_rhs(const Json& v) {
  const std::string kind_path = "rhs.kind";
  const Json& kind_v = require(v, "kind", "rhs");
  if (!kind_v.is_string()) field_error(kind_path, "expected a string");
  const auto kind = kind_v.get<std::string>();
  if (kind == "binary_form") {
    BinaryForm f = parse_form(require(v, "coeffs", "rhs"), "rhs.coeffs");
    return FormRhs{FormFactorization::single(f), f, false};
  }
  if (kind == "factored_form") {
    const Json& fs = require(v, "factors", "rhs");
    if (!fs.is_array() || fs.empty()) field_error("rhs.factors", "expected a non-empty array");
    FormFactorization fact;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string p = "rhs.factors[" + std::to_string(i) + "]";
      BinaryForm f = parse_form(require(fs[i], "coeffs", p), p + ".coeffs");
      unsigned e = 1;
      if (fs[i].contains("exponent")) e = parse_unsigned(fs[i]["exponent"], p + ".exponent");
      if (e == 0) field_error(p + ".exponent", "must be >= 1");
      fact.factors.emplace_back(std::move(f), e);
    }
    BinaryForm composite = v.contains("composite") ? parse_form(v["composite"], "rhs.composite") : fact.expand();
    return FormRhs{std::move(fact), std::move(composite), true};
  }
  if (kind == "univariate") {
    IntegerPolynomial p(parse_coeffs(require(v, "coeffs", "rhs"), "rhs.coeffs"));
    if (p.degree() < 1) field_error("rhs.coeffs", "univariate rhs needs degree >= 1");
    return UnivariateRhs{std::move(p)};
  }
  if (kind == "monomial_power") {
    return MonomialRhs{parse_unsigned(require(v, "d", "rhs"), "rhs.d")};
  }
  field_error(kind_path, "unknown kind \"" + kind + "\" (binary_form, factored_form, univariate, monomial_power)");
}

std::string location(const std::string& doc, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < doc.size(); ++i) {
    if (doc[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json tuple_json(const NTuple& n) { return Json(n); }

Json form_json(const BinaryForm& f) {
  auto a = Json::array();
  for (const auto& c : f.coefficients_desc()) a.push_back(bigint_json(c));
  return a;
}

struct Settings {
  std::string instance_path;
  std::string form;
  std::uint64_t limit = 100;
  std::optional<std::uint64_t> n_max;
  std::uint64_t xy_box = 0;
  bool prune = false;
  std::optional<double> epsilon;
  std::string out_dir;
  unsigned jobs = 0;
};

class Emitter {
 public:
  Emitter(const Settings& s, std::ostream& out) : s_(s), out_(out) {
    if (!s_.out_dir.empty()) std::filesystem::create_directories(s_.out_dir);
  }
  void json(const std::string& name, const Json& j) {
    out_ << j.dump(2) << '\n';
    write(name + ".json", j.dump(2) + "\n");
  }
  void write(const std::string& file, const std::string& text) {
    if (s_.out_dir.empty()) return;
    std::ofstream f(std::filesystem::path(s_.out_dir) / file);
    if (!f) throw PreconditionError("cannot write " + (std::filesystem::path(s_.out_dir) / file).string());
    f << text;
  }

 private:
  const Settings& s_;
  std::ostream& out_;
};

EquationInstance load_instance(const Settings& s) {
  if (s.instance_path.empty()) throw PreconditionError("--instance <path> is required");
  return parse_instance(read_file(s.instance_path));
}

BinaryForm parse_form_flag(const std::string& text) {
  std::vector<BigInt> c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    BigInt v;
    if (tok.empty() || v.set_str(tok, 10) != 0) throw PreconditionError("--form: bad coefficient \"" + tok + "\"");
    c.push_back(v);
  }
  if (c.empty()) throw PreconditionError("--form: no coefficients");
  return BinaryForm(std::move(c));
}

void cmd_analyze(const Settings& s, Emitter& emit) {
  FormFactorization form;
  bool assumed = false;
  if (!s.form.empty()) {
    form = FormFactorization::single(parse_form_flag(s.form));
  } else {
    const auto inst = load_instance(s);
    auto f = inst.rhs_form();
    if (!f) throw PreconditionError("analyze-form needs a binary form, factored form or univariate rhs");
    form = *f;
    assumed = inst.flags().assume_irreducible;
  }
  emit.json("analyze-form", analyze_form_json(form, s.limit, s.jobs, assumed));
}

void cmd_certify(const Settings& s, Emitter& emit) {
  const EquationInstance inst = load_instance(s);
  auto form = inst.rhs_form();
  if (!form) throw PreconditionError("certify needs a form or univariate rhs; use decide-monomial for x^d");
  inst.require_zero_roots();
  const unsigned d = form->total_degree();
  if (!(inst.sum_l() < d))
    throw PreconditionError("sum of l_i < d fails (sum_l = " + std::to_string(inst.sum_l()) +
                            ", d = " + std::to_string(d) + ")");
  const auto certs = certificates_up_to(inst, s.limit, s.jobs);
  Json j;
  j["limit"] = s.limit;
  j["sum_l"] = inst.sum_l();
  j["d"] = d;
  auto arr = Json::array();
  for (const auto& c : certs) {
    Json cj = certificate_to_json(c);
    if (s.xy_box > 0) cj["replay"] = {{"xy_box", s.xy_box}, {"passed", verify_certificate(c, inst, s.xy_box, s.jobs)}};
    arr.push_back(std::move(cj));
  }
  j["certificates"] = std::move(arr);
  emit.json("certify", j);
}

void cmd_monomial(const Settings& s, Emitter& emit) {
  emit.json("decide-monomial", monomial_decision_to_json(monomial_solve_complete(load_instance(s))));
}

void run_search(const EquationInstance& inst, const Settings& s, std::uint64_t default_n, const std::string& name,
                Emitter& emit) {
  SearchOptions opts;
  opts.n_bound = s.n_max.value_or(default_n);
  opts.xy_box = s.xy_box;
  opts.jobs = s.jobs;
  std::vector<std::string> notes;
  if (s.prune) {
    try {
      opts.certificates = certificates_up_to(inst, opts.n_bound, s.jobs);
      opts.prune = true;
    } catch (const PreconditionError& e) {
      notes.push_back(std::string("pruning disabled: ") + e.what());
    }
  }
  SearchReport rep = solve_instance(inst, opts);
  rep.warnings.insert(rep.warnings.end(), notes.begin(), notes.end());
  emit.json(name, search_report_to_json(rep));
  emit.write(name + ".csv", search_report_csv(rep, inst.r()));
}

void cmd_abc(const Settings& s, Emitter& emit, std::ostream& out, std::ostream& err) {
  const EquationInstance inst = load_instance(s);
  const AbcBoundParams params = s.epsilon ? params_with_epsilon(inst, *s.epsilon) : select_epsilon(inst);
  const auto rows = abc_grid(inst, s.n_max.value_or(10), params, s.jobs);
  const std::string csv = abc_grid_csv(rows, inst.r());
  out << csv;
  emit.write("abc-ratio.csv", csv);

  Json meta;
  meta["note"] = kAbcConditionalNote;
  meta["epsilon"] = params.epsilon;
  if (!s.epsilon) meta["epsilon_exponent"] = params.epsilon_exponent;
  meta["radical_of_a"] = bigint_json(params.radical_of_a);
  auto terms = Json::array();
  double log_c2 = (1.0 + params.epsilon) * arith::log_abs(params.radical_of_a);
  for (const auto& t : params.terms) {
    terms.push_back({{"l", t.multiplicity}, {"d", t.cofactor_degree}, {"D", bigint_json(t.coefficient_sum)}});
    log_c2 += params.epsilon * arith::log_abs(t.coefficient_sum);
  }
  meta["terms"] = std::move(terms);
  meta["constant_formula"] = "C'' = (prod N(A_i))^(1+eps) * (prod D_i)^eps";
  meta["log_C2"] = log_c2;
  emit.write("abc-ratio.json", meta.dump(2) + "\n");
  err << "# " << kAbcConditionalNote << "; epsilon = " << params.epsilon << "; " << meta["constant_formula"].get<std::string>()
      << '\n';
}

}  // namespace

nlohmann::ordered_json bigint_json(const BigInt& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

EquationInstance parse_instance(const std::string& doc) {
  Json root;
  try {
    root = Json::parse(doc);
  } catch (const nlohmann::json::parse_error& e) {
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    throw PreconditionError(location(doc, e.byte) + ": malformed JSON (" +
                            (pos == std::string::npos ? what : what.substr(pos)) + ")");
  }
  if (!root.is_object()) throw PreconditionError("line 1, column 1: instance must be a JSON object");

  const Json& qv = require(root, "Q", "");
  if (!qv.is_array()) field_error("Q", "expected an array of coefficient lists");
  if (qv.empty()) field_error("Q", "Q list is empty");
  std::vector<IntegerPolynomial> q;
  for (std::size_t i = 0; i < qv.size(); ++i) {
    const std::string p = "Q[" + std::to_string(i) + "]";
    IntegerPolynomial poly(parse_coeffs(qv[i], p));
    if (poly.is_zero()) field_error(p, "zero polynomial");
    q.push_back(std::move(poly));
  }
  const std::vector<BigInt> a = parse_coeffs(require(root, "A", ""), "A");
  if (a.size() != q.size())
    field_error("A", "Q/A length mismatch (" + std::to_string(q.size()) + " vs " + std::to_string(a.size()) + ")");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 1) field_error("A[" + std::to_string(i) + "]", "A_i must be >= 1");

  Rhs rhs = parse_rhs(require(root, "rhs", ""));

  InstanceFlags flags;
  if (root.contains("flags")) {
    const Json& f = root["flags"];
    if (!f.is_object()) field_error("flags", "expected an object");
    for (auto it = f.begin(); it != f.end(); ++it) {
      if (!it.value().is_boolean()) field_error("flags." + it.key(), "expected a boolean");
      if (it.key() == "assume_irreducible") flags.assume_irreducible = it.value().get<bool>();
      else if (it.key() == "allow_zero_n") flags.allow_zero_n = it.value().get<bool>();
      else field_error("flags." + it.key(), "unknown flag");
    }
  }
  return EquationInstance(std::move(q), a, std::move(rhs), flags);
}

nlohmann::ordered_json search_report_to_json(const SearchReport& rep) {
  Json j;
  j["n_min"] = rep.n_min;
  j["n_bound"] = rep.n_bound;
  j["xy_box"] = rep.xy_box;
  j["automatic_box"] = rep.automatic_box;
  auto sols = Json::array();
  for (const auto& s : rep.solutions) {
    Json sj;
    sj["n"] = tuple_json(s.n);
    sj["x"] = bigint_json(s.x);
    if (s.y) sj["y"] = bigint_json(*s.y);
    sj["lhs"] = bigint_json(s.lhs);
    sols.push_back(std::move(sj));
  }
  j["solution_count"] = rep.solutions.size();
  j["solutions"] = std::move(sols);
  auto pruned = Json::array();
  for (const auto& c : rep.pruned) pruned.push_back(certificate_to_json(c));
  j["pruned"] = std::move(pruned);
  j["brute_forced_nr"] = rep.brute_forced_nr;
  j["tuples_total"] = rep.tuples_total;
  j["tuples_pruned"] = rep.tuples_pruned;
  j["tuples_tested"] = rep.tuples_tested;
  j["warnings"] = rep.warnings;
  j["wall_seconds"] = rep.wall_seconds;
  return j;
}

std::string search_report_csv(const SearchReport& rep, std::size_t r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r; ++i) os << "n_" << i + 1 << ',';
  os << "x,y,lhs\n";
  for (const auto& s : rep.solutions) {
    for (auto v : s.n) os << v << ',';
    os << s.x << ',' << (s.y ? s.y->get_str() : std::string{}) << ',' << s.lhs << '\n';
  }
  return os.str();
}

nlohmann::ordered_json monomial_decision_to_json(const MonomialDecision& dec) {
  Json j;
  j["bound"] = dec.bound;
  j["complete"] = dec.complete;
  auto sols = Json::array();
  for (const auto& s : dec.solutions) sols.push_back({{"n", tuple_json(s.n)}, {"x", bigint_json(s.x)}});
  j["solutions"] = std::move(sols);
  j["proof_note"] = dec.proof_note;
  j["coefficient_reading"] = dec.coefficient_reading;
  return j;
}

nlohmann::ordered_json analyze_form_json(const FormFactorization& form, std::uint64_t limit, unsigned jobs,
                                         bool assume_irreducible) {
  const BinaryForm f = form.expand();
  Json j;
  j["form"] = f.to_string();
  j["coeffs"] = form_json(f);
  j["degree"] = f.degree();
  j["content"] = bigint_json(f.content());
  const auto md = modified_discriminant(f);
  j["discriminant"] = bigint_json(md.discriminant);
  j["modified_discriminant"] = bigint_json(md.value);
  auto factors = Json::array();
  for (const auto& [g, e] : form.factors) {
    Json fj;
    fj["coeffs"] = form_json(g);
    fj["exponent"] = e;
    fj["degree"] = g.degree();
    const auto w = irreducibility_witness(g.dehomogenize(), 1000);
    fj["irreducibility_witness"] = w ? Json(*w) : Json(nullptr);
    fj["irreducible"] = w ? "witnessed" : assume_irreducible ? "assumed" : "unproven";
    factors.push_back(std::move(fj));
  }
  j["factors"] = std::move(factors);
  const auto guards = UsefulPrimeGuards::of(form);
  j["guards"] = {{"a_d", bigint_json(guards.a_d)},
                 {"a_0", bigint_json(guards.a_0)},
                 {"content", bigint_json(guards.content)},
                 {"delta_mod", bigint_json(guards.delta_mod)}};
  const auto scan = scan_useful_primes(form, limit, jobs);
  j["limit"] = limit;
  j["primes_scanned"] = scan.primes_scanned;
  std::vector<std::uint64_t> qs;
  auto evidence = Json::array();
  for (const auto& ev : scan.primes) {
    qs.push_back(ev.q);
    auto pats = Json::array();
    for (const auto& p : ev.patterns) pats.push_back(p.parts);
    evidence.push_back({{"q", ev.q}, {"patterns", pats}});
  }
  j["useful_count"] = qs.size();
  j["useful_primes"] = qs;
  j["density"] = scan.density;
  j["inconclusive"] = scan.inconclusive;
  j["evidence"] = std::move(evidence);
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for prod Q_i(A_i^n_i n_i!) = f(x, y)", "facdio"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Settings s;
  app.add_option("--instance", s.instance_path, "instance JSON file");
  app.add_option("--form", s.form, "binary form a_d,...,a_0 (analyze-form only)");
  app.add_option("--limit", s.limit, "prime limit for scans and certificates")->capture_default_str();
  app.add_option("--n-max", s.n_max, "largest n_i to enumerate");
  app.add_option("--xy-box", s.xy_box, "|x|, |y| bound; 0 derives one for definite forms")->capture_default_str();
  app.add_flag("--prune", s.prune, "skip intervals covered by certificates");
  app.add_option("--epsilon", s.epsilon, "fixed epsilon for abc-ratio");
  app.add_option("--out", s.out_dir, "directory for report files");
  app.add_option("--jobs", s.jobs, "worker threads (0 = all cores)")->envname("FACDIO_JOBS");

  auto* analyze = app.add_subcommand("analyze-form", "discriminants and useful primes of the rhs form");
  auto* certify = app.add_subcommand("certify", "interval certificates for every useful prime <= limit");
  auto* monomial = app.add_subcommand("decide-monomial", "complete solution set for rhs x^d");
  auto* search = app.add_subcommand("search", "bounded exhaustive search");
  auto* abc = app.add_subcommand("abc-ratio", "log-ratio grid for the radical bound (CSV)");
  auto* brocard = app.add_subcommand("brocard", "n! + 1 = x^2");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Emitter emit(s, out);
    if (analyze->parsed()) cmd_analyze(s, emit);
    else if (certify->parsed()) cmd_certify(s, emit);
    else if (monomial->parsed()) cmd_monomial(s, emit);
    else if (search->parsed()) run_search(load_instance(s), s, 10, "search", emit);
    else if (abc->parsed()) cmd_abc(s, emit, out, err);
    else if (brocard->parsed()) {
      auto inst = EquationInstance::with_univariate({IntegerPolynomial::from_ints({1, 1})}, {BigInt(1)},
                                                    IntegerPolynomial::from_ints({0, 0, 1}));
      run_search(inst, s, 25, "brocard", emit);
    }
    return 0;
  } catch (const InvariantError& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return 2;
  } catch (const UnfactoredError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace facdio::cli
