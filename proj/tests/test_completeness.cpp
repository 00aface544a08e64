#include <doctest.h>

#include <random>

#include "bccs/completeness.hpp"
#include "bccs/obstructions.hpp"

using namespace bccs;

namespace {
const Alphabet kAB = Alphabet::finite({"a", "b"});
const RelationId kIfPre = parse_relation("if-pre");
const RelationId kIfEq = parse_relation("if-eq");
const RelationId kWifPre = parse_relation("wif-pre");
}  // namespace

TEST_CASE("saturation golden example") {
  // q = a(b(c0+d0)+be0)+af0 gains one merged a-summand
  Term q = parse("a.(b.(c.0 + d.0) + b.e.0) + a.f.0");
  Saturation s = saturate(q);
  Term expected = ac_canonical(Term::sum(
      q, parse("a.(b.(c.0 + d.0) + b.e.0 + f.0 + b.(c.0 + d.0 + e.0))")));
  CHECK(s.saturated == expected);
  Conclusion c = check_derivation(if_gc(), s.derivation);
  CHECK(c.lhs == q);
  CHECK(c.rhs == s.saturated);

  CHECK(saturate(parse("0")).saturated == parse("0"));
  CHECK(saturate(parse("a.0")).saturated == parse("a.0"));  // modulo AC

  CHECK_THROWS_AS(saturate(parse("tau.0")), CompletenessError);
  CHECK_THROWS_AS(saturate(parse("x")), CompletenessError);
}

TEST_CASE("saturation properties") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 60; ++i) {
    Term q = random_closed_term(rng, kAB, 2, 2, false);
    Saturation s = saturate(q);
    CHECK(initials_tokens(s.saturated) == initials_tokens(q));
    CHECK(check_closed(kIfEq, q, s.saturated));
    check_derivation(if_gc(), s.derivation);
  }
}

TEST_CASE("residual saturation") {
  Term q = parse("a.(a.0 + a.a.a.0) + a.a.a.0");
  // q_epsilon = q-bar
  CHECK(residual_saturation(q, {}) == saturate(q).saturated);
  // after "a": saturation of the summed residuals
  Term expected = saturate(parse("(a.0 + a.a.a.0) + a.a.0")).saturated;
  CHECK(residual_saturation(q, {"a"}) == expected);
  CHECK_THROWS_AS(residual_saturation(q, {"b"}), CompletenessError);

  // transition structure: q_sigma -a-> q_sigma.a is realized modulo AC
  Term q0 = residual_saturation(q, {});
  Term q1 = residual_saturation(q, {"a"});
  bool found = false;
  for (auto& [act, r] : transitions(q0))
    if (act == Action::name("a") && ac_canonical(r) == q1) found = true;
  CHECK(found);
}

TEST_CASE("prove_if_ground golden pairs") {
  // the worked pair: p <= q with neither summand individually below
  Term p = parse("a.(a.0 + a.a.0) + a.a.a.a.0");
  Term q = parse("a.(a.0 + a.a.a.0) + a.a.a.0");
  Derivation d = prove_if_ground(p, q);
  Conclusion c = check_derivation(if_gc(), d);
  CHECK(c.lhs == p);
  CHECK(c.rhs == q);

  // degenerate cases
  Derivation d2 = prove_if_ground(parse("a.0"), parse("a.0"));
  check_derivation(if_gc(), d2);

  Derivation d3 = prove_if_ground(parse("a.(b.0 + c.0)"), parse("a.b.0 + a.c.0"));
  Conclusion c3 = check_derivation(if_gc(), d3);
  CHECK(c3.lhs == parse("a.(b.0 + c.0)"));

  // refusal reports a distinguishing impossible future
  CHECK_THROWS_WITH_AS(prove_if_ground(parse("a.0 + b.0"), parse("a.0")),
                       doctest::Contains("distinguishing"), CompletenessError);
}

TEST_CASE("prove_if_ground sampled sweep") {
  EnumOptions opts{2, 2, false};
  std::vector<Term> terms = enumerate_closed_terms(kAB, opts);
  int proved = 0;
  for (std::size_t i = 0; i < terms.size(); i += 2)
    for (std::size_t j = 0; j < terms.size(); j += 2) {
      if (!check_closed(kIfPre, terms[i], terms[j])) continue;
      Derivation d = prove_if_ground(terms[i], terms[j]);
      Conclusion c = check_derivation(if_gc(), d);
      CHECK(c.lhs == terms[i]);
      CHECK(c.rhs == terms[j]);
      ++proved;
    }
  CHECK(proved > 20);
}

TEST_CASE("prove_weak_from_concrete cases") {
  Axiomatization ifgc = if_gc();
  Axiomatization ae = transform_weak(ifgc, kWifPre);

  // case 3: a.0 <= tau.a.0 uses W1
  Derivation d3 = prove_weak_from_concrete(ifgc, prove_if_ground, parse("a.0"), parse("tau.a.0"),
                                           kWifPre, kAB);
  Conclusion c3 = check_derivation(ae, d3);
  CHECK(c3.lhs == parse("a.0"));
  CHECK(c3.rhs == parse("tau.a.0"));

  // case 2: tau.a.a.0 <= tau.(a.a.0 + a.0), the m = 1 family relation
  Derivation d2 = prove_weak_from_concrete(ifgc, prove_if_ground, parse("tau.a.a.0"),
                                           parse("tau.(a.a.0 + a.0)"), kWifPre, kAB);
  Conclusion c2 = check_derivation(ae, d2);
  CHECK(c2.lhs == parse("tau.a.a.0"));
  CHECK(c2.rhs == parse("tau.(a.a.0 + a.0)"));

  // case 1: tau-free pairs delegate to the concrete prover
  Derivation d1 = prove_weak_from_concrete(ifgc, prove_if_ground, parse("a.(b.0 + c.0)"),
                                           parse("a.b.0 + a.c.0"), kWifPre, kAB);
  check_derivation(ae, d1);

  // unrelated pairs are refused
  CHECK_THROWS_AS(prove_weak_from_concrete(ifgc, prove_if_ground, parse("tau.0"), parse("0"),
                                           kWifPre, kAB),
                  CompletenessError);
}

TEST_CASE("both directions of the equationally unreachable families prove as preorders") {
  // the equivalence families have no finite equational basis, yet each
  // direction is derivable from the preorder sets
  for (int m : {1, 2}) {
    Axiom fam = family(FamilyId::IfEq, m, kAB);
    for (bool fwd : {true, false}) {
      Term p = fwd ? fam.lhs : fam.rhs;
      Term q = fwd ? fam.rhs : fam.lhs;
      Conclusion c = check_derivation(if_gc(), prove_if_ground(p, q));
      CHECK(c.lhs == p);
      CHECK(c.rhs == q);
    }
  }
  Axiomatization ae = transform_weak(if_gc(), kWifPre);
  Axiom wfam = family(FamilyId::WifEq, 1, kAB);
  for (bool fwd : {true, false}) {
    Term p = fwd ? wfam.lhs : wfam.rhs;
    Term q = fwd ? wfam.rhs : wfam.lhs;
    Derivation d = prove_weak_from_concrete(if_gc(), prove_if_ground, p, q, kWifPre, kAB);
    Conclusion c = check_derivation(ae, d);
    CHECK(c.lhs == p);
    CHECK(c.rhs == q);
  }
}

TEST_CASE("prove_weak_from_concrete sampled sweep") {
  Axiomatization ifgc = if_gc();
  Axiomatization ae = transform_weak(ifgc, kWifPre);
  std::mt19937_64 rng(131);
  int proved = 0;
  for (int i = 0; i < 250; ++i) {
    Term p = random_closed_term(rng, kAB, 2, 2, true);
    Term q = random_closed_term(rng, kAB, 2, 2, true);
    if (!check_closed(kWifPre, p, q)) continue;
    Derivation d = prove_weak_from_concrete(ifgc, prove_if_ground, p, q, kWifPre, kAB);
    Conclusion c = check_derivation(ae, d);
    CHECK(c.lhs == p);
    CHECK(c.rhs == q);
    ++proved;
  }
  CHECK(proved > 20);
}
