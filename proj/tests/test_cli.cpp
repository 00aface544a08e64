#include <doctest.h>

#include <fstream>
#include <sstream>

#include "bccs/cli.hpp"
#include "bccs/obstructions.hpp"
#include "bccs/proofs.hpp"

using namespace bccs;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check command exit codes") {
  Result r = run_cli({"check", "--rel", "if-pre", "a.(a.0+a.a.0)+a.a.a.a.0",
                      "a.(a.0+a.a.a.0)+a.a.a.0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("holds") != std::string::npos);

  Result r2 = run_cli({"check", "--rel", "wif-pre", "tau.0", "0"});
  CHECK(r2.code == 1);
  CHECK(r2.out.find("fails") != std::string::npos);

  Result r3 = run_cli({"check", "--rel", "nonsense", "0", "0"});
  CHECK(r3.code == 2);

  Result r4 = run_cli({"check", "--rel", "if-pre", "a.(((0", "0"});
  CHECK(r4.code == 2);
  CHECK(r4.err.find("error") != std::string::npos);
}

TEST_CASE("oracle and obs") {
  Result r = run_cli({"oracle", "--rel", "if-pre", "a.(b.0+c.0)", "a.b.0+a.c.0"});
  CHECK(r.code == 0);

  Result r2 = run_cli({"obs", "--kind", "wct", "tau.(a.0 + a.a.0)"});
  CHECK(r2.code == 0);
  CHECK(r2.out == "a\na a\n");
}

TEST_CASE("prove commands emit re-checkable derivations") {
  Result r = run_cli({"prove-if", "a.(b.0 + c.0)", "a.b.0 + a.c.0"});
  CHECK(r.code == 0);
  Derivation d = parse_derivation(r.out);
  check_derivation(catalog("IF-gc", Alphabet::unbounded()), d);

  Result refused = run_cli({"prove-if", "a.0 + b.0", "a.0"});
  CHECK(refused.code == 1);
  CHECK(refused.err.find("refused") != std::string::npos);

  Result rw = run_cli({"prove-weak", "--rel", "wif-pre", "--axioms", "IF-gc", "tau.a.a.0",
                       "tau.(a.a.0 + a.0)"});
  CHECK(rw.code == 0);
  Derivation dw = parse_derivation(rw.out);
  check_derivation(transform_weak(catalog("IF-gc", Alphabet::unbounded()),
                                  parse_relation("wif-pre")),
                   dw);
}

TEST_CASE("transform and family printing") {
  Result r = run_cli({"transform", "--axioms", "IF-gc", "--rel", "wif-pre"});
  CHECK(r.code == 0);
  CHECK(r.out.find("init-tau(IF1) : tau.(x + y) <= tau.x + tau.y") != std::string::npos);
  CHECK(r.out.find("W1 : x <= tau.x") != std::string::npos);

  Result r2 = run_cli({"family", "--family", "wif-eq", "--m", "1"});
  CHECK(r2.code == 0);
  CHECK(r2.out.find("tau.a.a.0 + tau.(a.0 + a.a.0) == tau.(a.0 + a.a.0)") != std::string::npos);
}

TEST_CASE("obstruct emits a revalidating certificate") {
  Result r = run_cli({"obstruct", "--axioms", "WIF-gc", "--family", "wif-eq"});
  CHECK(r.code == 0);
  CHECK(r.out.find("m 3") != std::string::npos);
  CHECK(r.out.find("verdict non-derivable") != std::string::npos);
  Certificate c = parse_certificate(r.out);
  CHECK(revalidate_certificate(c, Alphabet::finite({"a", "b"})));

  // unsound axiom files are refused
  Result bad = run_cli({"sweep", "--axioms", "WIF-gc", "--rel", "wif-pre", "--count", "50"});
  CHECK(bad.code == 0);
}

TEST_CASE("sweep finds planted counterexamples") {
  std::string file = "/tmp/bccs_bad_axioms.txt";
  {
    std::ostringstream os;
    os << "mode preorder\nalphabet a,b\nBAD : tau.x <= x\n";
    std::ofstream f(file);
    f << os.str();
  }
  Result r = run_cli({"sweep", "--axioms", file, "--rel", "wif-pre", "--count", "100"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL BAD") != std::string::npos);

  // deterministic under a fixed seed
  Result r2 = run_cli({"--seed", "7", "sweep", "--axioms", file, "--rel", "wif-pre"});
  Result r3 = run_cli({"--seed", "7", "sweep", "--axioms", file, "--rel", "wif-pre"});
  CHECK(r2.out == r3.out);

  // nothing besides the core passes trivially for any relation
  Result core = run_cli({"sweep", "--axioms", "A1-4", "--rel", "wct-eq", "--count", "50"});
  CHECK(core.code == 0);
}

TEST_CASE("replay-laws and search") {
  Result r = run_cli({"replay-laws"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("pass D1") != std::string::npos);

  Result r2 = run_cli({"--budget", "3", "search", "--axioms", "IF1'", "tau.a.a.0",
                       "tau.(a.a.0 + a.0)"});
  CHECK(r2.code == 0);

  Result r3 = run_cli({"--budget", "2", "search", "--axioms", "A1-4", "a.0", "b.0"});
  CHECK(r3.code == 1);
  CHECK(r3.out.find("exhausted") != std::string::npos);
}

TEST_CASE("omega-check command") {
  Result r = run_cli({"--alphabet", "unbounded", "omega-check", "--axioms", "IF-gc", "--lhs",
                      "a.(x + y)", "--rhs", "a.x + a.y", "--samples", "40"});
  CHECK(r.code == 0);
  CHECK(r.out.find("requirement 1: satisfied") != std::string::npos);
  CHECK(r.out.find("requirement 2: satisfied") != std::string::npos);
  CHECK(r.out.find("requirement 3: satisfied") != std::string::npos);
}
