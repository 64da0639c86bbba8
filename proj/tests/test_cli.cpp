#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "facdio/cli.hpp"
#include "facdio/error.hpp"

using namespace facdio;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("facdio_cli_" + std::to_string(std::rand()) + "_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

const char* kSquares = R"({"Q": [[0, 1]], "A": [1], "rhs": {"kind": "binary_form", "coeffs": [1, 0, 1]}})";

}  // namespace

TEST_CASE("parse_instance accepts every rhs kind") {
  auto inst = cli::parse_instance(kSquares);
  CHECK(inst.r() == 1);
  CHECK(inst.rhs_form()->expand().coefficients_desc() == std::vector<BigInt>{1, 0, 1});

  inst = cli::parse_instance(R"({"Q": [[0, 1], [0, 0, 1, 1]], "A": [1, "2"],
    "rhs": {"kind": "factored_form", "factors": [{"coeffs": [1, 0, 1], "exponent": 2}]}})");
  CHECK(inst.r() == 2);
  CHECK(inst.sum_l() == 3);
  CHECK(inst.rhs_form()->total_degree() == 4);

  inst = cli::parse_instance(R"({"Q": [[1, 1]], "A": [1], "rhs": {"kind": "univariate", "coeffs": [0, 0, 1]},
    "flags": {"allow_zero_n": true}})");
  CHECK(inst.min_n() == 0);
  CHECK(std::holds_alternative<UnivariateRhs>(inst.rhs()));

  inst = cli::parse_instance(R"({"Q": [["123456789012345678901234567890", 1]], "A": [1],
    "rhs": {"kind": "monomial_power", "d": 3}})");
  CHECK(std::get<MonomialRhs>(inst.rhs()).d == 3);
  CHECK(inst.q()[0].coeff(0) == BigInt("123456789012345678901234567890"));
}

TEST_CASE("parse_instance diagnostics") {
  CHECK_THROWS_WITH_AS(cli::parse_instance("{\"Q\": [[0, 1]],\n  \"A\": [1,]}"), doctest::Contains("line 2, column"),
                       PreconditionError);
  CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"Q": [[0, 1]], "A": [1, 2], "rhs": {"kind": "monomial_power", "d": 2}})"),
                       doctest::Contains("Q/A length mismatch (1 vs 2)"), PreconditionError);
  CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"Q": [], "A": [], "rhs": {"kind": "monomial_power", "d": 2}})"),
                       doctest::Contains("Q list is empty"), PreconditionError);
  CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"Q": [[0, 0]], "A": [1], "rhs": {"kind": "monomial_power", "d": 2}})"),
                       doctest::Contains("Q[0]"), PreconditionError);
  CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"Q": [[0, 1]], "A": [0], "rhs": {"kind": "monomial_power", "d": 2}})"),
                       doctest::Contains("A[0]"), PreconditionError);
  CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"Q": [[0, 1]], "A": [1], "rhs": {"kind": "circle"}})"),
                       doctest::Contains("rhs.kind"), PreconditionError);
  CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"Q": [[0, 1]], "A": [1], "rhs": {"kind": "factored_form",
    "factors": [{"coeffs": [1, 0, 1], "exponent": 1}], "composite": [1, 0, 2]}})"),
                       doctest::Contains("declared factors expand to"), PreconditionError);
  CHECK_THROWS_AS(cli::parse_instance(R"({"Q": [[0, 1]], "A": [1], "rhs": {"kind": "monomial_power", "d": 2},
    "flags": {"fast": true}})"),
                  PreconditionError);
}

TEST_CASE("bigint_json switches to strings past 64 bits") {
  CHECK(cli::bigint_json(BigInt(-42)) == Json(-42));
  const BigInt big("340282366920938463463374607431768211456");
  CHECK(cli::bigint_json(big) == Json("340282366920938463463374607431768211456"));
}

TEST_CASE("brocard subcommand") {
  const auto r = run({"brocard", "--n-max", "12", "--jobs", "1"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["solution_count"] == 6);
  std::set<std::uint64_t> ns;
  for (const auto& s : j["solutions"]) ns.insert(s["n"][0].get<std::uint64_t>());
  CHECK(ns == std::set<std::uint64_t>{4, 5, 7});
}

TEST_CASE("analyze-form and decide-monomial") {
  auto r = run({"analyze-form", "--form", "1,0,1", "--limit", "100"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["useful_count"] == 13);
  CHECK(j["modified_discriminant"] == -4);
  CHECK(j["useful_primes"][0] == 3);
  CHECK(j["factors"][0]["irreducible"] == "witnessed");

  r = run({"analyze-form", "--form", "1,0,0,0,1", "--limit", "50"});
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["factors"][0]["irreducibility_witness"].is_null());
  CHECK(j["factors"][0]["irreducible"] == "unproven");
  // reducible mod every q, yet rootless (hence useful) unless q = 1 mod 8
  std::vector<std::uint64_t> want;
  for (std::uint64_t q : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
    if (q % 8 != 1) want.push_back(q);
  CHECK(j["useful_primes"] == Json(want));

  TempDir dir;
  const auto quartic = dir.file("quartic.json", R"({"Q": [[0, 1]], "A": [1],
    "rhs": {"kind": "binary_form", "coeffs": [1, 0, 0, 0, 1]}, "flags": {"assume_irreducible": true}})");
  r = run({"analyze-form", "--instance", quartic, "--limit", "50"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["factors"][0]["irreducible"] == "assumed");

  const auto path =
      dir.file("mono.json", R"({"Q": [[0, 1]], "A": [1], "rhs": {"kind": "monomial_power", "d": 2}})");
  r = run({"decide-monomial", "--instance", path});
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["bound"] == 8);
  CHECK(j["complete"] == true);
  CHECK(j["solutions"].size() == 2);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"search"}).code == 1);  // no --instance
  CHECK(run({"search", "--instance", "/nonexistent/x.json"}).code == 1);
  TempDir dir;
  const auto shifted =
      dir.file("shift.json", R"({"Q": [[1, 1]], "A": [1], "rhs": {"kind": "binary_form", "coeffs": [1, 0, 1]}})");
  const auto r = run({"certify", "--instance", shifted});
  CHECK(r.code == 1);
  CHECK(r.err.find("l_1 = 0") != std::string::npos);
  const auto broken = dir.file("broken.json", "{\"Q\": [[0, 1]]");
  CHECK(run({"certify", "--instance", broken}).code == 1);
  CHECK(run({"analyze-form", "--form", "1,x,1"}).code == 1);
}

TEST_CASE("certify output re-verifies after a JSON round trip") {
  TempDir dir;
  const auto path = dir.file("sq.json", kSquares);
  const auto r = run({"certify", "--instance", path, "--limit", "30", "--xy-box", "200"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  const auto inst = cli::parse_instance(kSquares);
  std::vector<std::uint64_t> qs;
  for (const auto& cj : j["certificates"]) {
    CHECK(cj["replay"]["passed"] == true);
    auto stripped = cj;
    stripped.erase("replay");
    const auto c = certificate_from_json(stripped);
    CHECK(certificate_is_valid(c, inst));
    qs.push_back(c.q);
  }
  CHECK(qs == std::vector<std::uint64_t>{3, 7, 11, 19, 23});
}

TEST_CASE("search writes report files and honours FACDIO_JOBS") {
  TempDir dir;
  const auto path = dir.file("sq.json", kSquares);
  const auto out_dir = (dir.path / "out").string();
  const auto a = run({"search", "--instance", path, "--n-max", "25", "--prune", "--out", out_dir});
  REQUIRE(a.code == 0);
  const auto j = Json::parse(a.out);
  CHECK(j["solution_count"] == 16);
  CHECK(j["brute_forced_nr"] == Json::array({1, 2, 3, 6, 7}));
  REQUIRE(fs::exists(fs::path(out_dir) / "search.json"));
  REQUIRE(fs::exists(fs::path(out_dir) / "search.csv"));
  std::ifstream in(fs::path(out_dir) / "search.json");
  const auto from_file = Json::parse(in);
  CHECK(from_file["solutions"] == j["solutions"]);

  ::setenv("FACDIO_JOBS", "3", 1);
  const auto b = run({"search", "--instance", path, "--n-max", "25", "--prune"});
  ::unsetenv("FACDIO_JOBS");
  REQUIRE(b.code == 0);
  CHECK(Json::parse(b.out)["solutions"] == j["solutions"]);
  ::setenv("FACDIO_JOBS", "many", 1);
  CHECK(run({"search", "--instance", path, "--n-max", "5"}).code == 1);
  ::unsetenv("FACDIO_JOBS");
}

TEST_CASE("abc-ratio prints CSV and a conditional note") {
  TempDir dir;
  const auto path = dir.file("xy.json", R"({"Q": [[0, 1], [0, 1]], "A": [1, 1], "rhs": {"kind": "monomial_power", "d": 2}})");
  const auto out_dir = (dir.path / "abc").string();
  const auto r = run({"abc-ratio", "--instance", path, "--n-max", "5", "--out", out_dir});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n_1,n_2,log_F,log_radical_bound,log_ratio\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 26);
  CHECK(r.err.find("conditional on abc") != std::string::npos);
  std::ifstream in(fs::path(out_dir) / "abc-ratio.json");
  const auto meta = Json::parse(in);
  CHECK(meta["note"] == "conditional on abc");
  CHECK(meta["epsilon"] == 0.5);
}
