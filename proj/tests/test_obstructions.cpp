#include <doctest.h>

#include <random>

#include "bccs/obstructions.hpp"
#include "bccs/proofs.hpp"

using namespace bccs;

namespace {
const Alphabet kAB = Alphabet::finite({"a", "b"});
const Alphabet kA = Alphabet::finite({"a"});
}  // namespace

TEST_CASE("family members") {
  CHECK(family(FamilyId::WifEq, 1, kAB).str() ==
        "wif-eq[1] : tau.a.a.0 + tau.(a.0 + a.a.0) == tau.(a.0 + a.a.0)");
  CHECK(family(FamilyId::Singleton, 2, kA).str() == "singleton[2] : a.a.x <= a.a.x + x");
  // the m = 0 edge keeps the literal shape
  CHECK(family(FamilyId::IfEq, 0, kAB).str() == "if-eq[0] : a.0 + a.(0 + 0) == a.(0 + 0)");

  Axiom phi = family(FamilyId::WifPre, 1, kAB);
  CHECK(phi.rhs == parse("tau.(a.x + x) + tau.(a.x + a.a.0) + tau.(a.x + a.b.0)"));
  CHECK(phi.lhs == Term::sum(parse("tau.a.x"), phi.rhs));

  Axiom psi = family(FamilyId::IfPre, 1, kAB);
  CHECK(psi.rhs == parse("a.(a.x + x) + a.(a.x + a.a.0) + a.(a.x + a.b.0)"));
  CHECK(psi.lhs == Term::sum(parse("a.a.x"), psi.rhs));

  // alphabet-cardinality requirements
  CHECK_THROWS_AS(family(FamilyId::WifPre, 1, kA), ObstructionError);
  CHECK_THROWS_AS(family(FamilyId::Singleton, 1, kAB), ObstructionError);
  CHECK_THROWS_AS(family(FamilyId::WifPre, 1, Alphabet::unbounded()), ObstructionError);
}

TEST_CASE("family soundness") {
  for (int m : {1, 2, 3}) {
    CHECK(check_family_sound(FamilyId::WifEq, m, kAB, 2).exact);
    CHECK(check_family_sound(FamilyId::WifEq, m, kAB, 2).sound);
    CHECK(check_family_sound(FamilyId::IfEq, m, kAB, 2).exact);
    CHECK(check_family_sound(FamilyId::IfEq, m, kAB, 2).sound);
  }
  CHECK(check_family_sound(FamilyId::WifPre, 1, kAB, 2).sound);
  CHECK(check_family_sound(FamilyId::IfPre, 1, kAB, 2).sound);
  CHECK(check_family_sound(FamilyId::Singleton, 2, kA, 3).sound);

  // a deliberately broken variant: drop the summed part of Phi_1
  Term broken_rhs = parse("tau.(a.x + x)");
  Term broken_lhs = Term::sum(parse("tau.a.x"), broken_rhs);
  auto rep = refute_open(parse_relation("wif-pre"), broken_lhs, broken_rhs, kAB, 2);
  CHECK(rep.counterexample.has_value());
}

TEST_CASE("witness predicates") {
  // wct-tau on the wif-eq member: lhs has the tau-residual a^2m 0, rhs has none
  for (int m : {1, 2}) {
    Axiom fam = family(FamilyId::WifEq, m, kAB);
    WitnessResult lhs = witness(WitnessKind::WctTau, fam.lhs, m, kAB);
    REQUIRE(lhs.found);
    CHECK(*lhs.term == power(Action::name("a"), 2 * m, Term::nil()));
    CHECK_FALSE(witness(WitnessKind::WctTau, fam.rhs, m, kAB).found);
  }

  // notrace-tau on the wif-pre member
  Axiom phi = family(FamilyId::WifPre, 2, kAB);
  WitnessResult l = witness(WitnessKind::NotraceTau, phi.lhs, 2, kAB);
  REQUIRE(l.found);
  CHECK(*l.term == parse("a.a.x"));
  CHECK_FALSE(witness(WitnessKind::NotraceTau, phi.rhs, 2, kAB).found);

  // wtv-short on the singleton member: rhs yes, lhs no
  Axiom sing = family(FamilyId::Singleton, 2, kA);
  CHECK(witness(WitnessKind::WtvShort, sing.rhs, 2, kA).found);
  CHECK_FALSE(witness(WitnessKind::WtvShort, sing.lhs, 2, kA).found);
}

TEST_CASE("obstruction certificates") {
  // WIF-gc against the wif-eq family: depth 2 forces m = 3
  Certificate c1 = obstruction_certificate(catalog("WIF-gc", kAB), FamilyId::WifEq, kAB);
  CHECK(c1.e_depth == 2);
  CHECK(c1.m == 3);
  CHECK(c1.verdict == "non-derivable");
  CHECK(c1.lhs_witness.found);
  CHECK_FALSE(c1.rhs_witness.found);

  // bare core against the if-eq family
  Certificate c2 = obstruction_certificate(catalog("A1-4", kAB), FamilyId::IfEq, kAB);
  CHECK(c2.e_depth == 0);
  CHECK(c2.m == 1);
  CHECK(c2.verdict == "non-derivable");

  // a sound family member inside E forces a fresh m beyond its own depth
  Axiomatization e3("A1-4+wif-eq[1]", Mode::Preorder);
  for (const Axiom& a : core_axioms()) e3.add(a);
  e3.add(family(FamilyId::WifEq, 1, kAB));
  Certificate c3 = obstruction_certificate(e3, FamilyId::WifEq, kAB);
  CHECK(c3.e_depth == 3);
  CHECK(c3.m == 4);
  CHECK(c3.verdict == "non-derivable");

  // singleton family over a one-letter alphabet
  Certificate c4 = obstruction_certificate(catalog("WIF-gc", kA), FamilyId::Singleton, kA);
  CHECK(c4.verdict == "non-derivable");
  CHECK(c4.rhs_witness.found);
  CHECK_FALSE(c4.lhs_witness.found);

  // an unsound axiomatization is refused by the sweep
  Axiomatization bad("bad", Mode::Preorder);
  for (const Axiom& a : core_axioms()) bad.add(a);
  bad.add(Axiom{"BAD", parse("tau.x"), parse("x"), AxiomShape::Inequation, false});
  CHECK_THROWS_WITH_AS(obstruction_certificate(bad, FamilyId::WifEq, kAB),
                       doctest::Contains("counterexample"), ObstructionError);
}

TEST_CASE("certificate serialization and revalidation") {
  Certificate c = obstruction_certificate(catalog("WIF-gc", kAB), FamilyId::WifEq, kAB);
  std::string text = serialize_certificate(c, kAB);
  CHECK(text.find("verdict non-derivable") != std::string::npos);
  Certificate back = parse_certificate(text);
  CHECK(back.m == c.m);
  CHECK(back.family_id == c.family_id);
  CHECK(revalidate_certificate(back, kAB));

  // tampering with m invalidates the certificate
  Certificate tampered = back;
  tampered.e_depth = 5;
  CHECK_FALSE(revalidate_certificate(tampered, kAB));
}

TEST_CASE("search fails on certified goals") {
  SearchOptions opts;
  opts.budget = 6;
  opts.max_expansions = 20000;

  Certificate c1 = obstruction_certificate(catalog("WIF-gc", kAB), FamilyId::WifEq, kAB);
  Axiomatization wifgc = catalog("WIF-gc", kAB);
  SearchResult fwd = search_derivation(wifgc, c1.instance.lhs, c1.instance.rhs, opts);
  SearchResult bwd = search_derivation(wifgc, c1.instance.rhs, c1.instance.lhs, opts);
  bool both_found = fwd.derivation.has_value() && bwd.derivation.has_value();
  CHECK_FALSE(both_found);

  Certificate c2 = obstruction_certificate(catalog("A1-4", kAB), FamilyId::IfEq, kAB);
  Axiomatization core = catalog("A1-4", kAB);
  SearchResult fwd2 = search_derivation(core, c2.instance.lhs, c2.instance.rhs, opts);
  CHECK_FALSE(fwd2.derivation.has_value());
  CHECK(fwd2.exhausted_completely);  // core axioms cannot move canonical states
}

namespace {

// random <=-respecting derivation chains for the transfer-property tests
struct RandomChain {
  Term start, end;
  Derivation derivation;
};

std::optional<RandomChain> random_chain(const Axiomatization& e, std::mt19937_64& rng, Term start,
                                        int steps) {
  Term cur = ac_canonical(start);
  std::vector<Derivation> pieces{Derivation::refl(cur)};
  for (int i = 0; i < steps; ++i) {
    // collect applicable moves
    struct Move {
      const Axiom* ax;
      bool reversed;
      Path pos;
      Substitution s;
    };
    std::vector<Move> moves;
    std::vector<Path> paths;
    std::function<void(const Term&, Path&)> walk = [&](const Term& t, Path& p) {
      paths.push_back(p);
      if (t.is_prefix()) {
        p.push_back(0);
        walk(t.body(), p);
        p.pop_back();
      } else if (t.is_sum()) {
        p.push_back(0);
        walk(t.left(), p);
        p.back() = 1;
        walk(t.right(), p);
        p.pop_back();
      }
    };
    Path root;
    walk(cur, root);
    for (const Axiom& ax : e.axioms()) {
      if (ax.name[0] == 'A' && ax.name.size() == 2) continue;  // core: identity moves
      for (bool rev : {false, true}) {
        if (rev && !ax.is_equation()) continue;
        for (const Path& p : paths) {
          Term sub = cur;
          for (int sel : p) sub = sub.is_prefix() ? sub.body() : (sel == 0 ? sub.left() : sub.right());
          for (Substitution& s : ac_match(rev ? ax.rhs : ax.lhs, sub)) {
            bool closed_rhs = true;
            for (const auto& v : variables(rev ? ax.lhs : ax.rhs))
              if (!s.lookup_var(v)) closed_rhs = false;
            if (closed_rhs) moves.push_back(Move{&ax, rev, p, s});
          }
        }
      }
    }
    if (moves.empty()) break;
    const Move& mv = moves[rng() % moves.size()];
    // build the step on the canonical state
    Term from = substitute(mv.reversed ? mv.ax->rhs : mv.ax->lhs, mv.s);
    std::function<Term(const Term&, const Path&, std::size_t)> repl =
        [&](const Term& t, const Path& p, std::size_t i) -> Term {
      if (i == p.size()) return from;
      if (t.is_prefix()) return Term::prefix(t.action(), repl(t.body(), p, i + 1));
      if (p[i] == 0) return Term::sum(repl(t.left(), p, i + 1), t.right());
      return Term::sum(t.left(), repl(t.right(), p, i + 1));
    };
    Term positioned = repl(cur, mv.pos, 0);
    pieces.push_back(by_ac(cur, positioned));
    RewriteStep step = apply_axiom_at(positioned, *mv.ax, mv.reversed, mv.pos, mv.s);
    pieces.push_back(step.derivation);
    cur = ac_canonical(step.term);
    pieces.push_back(by_ac(step.term, cur));
  }
  if (pieces.size() <= 1) return std::nullopt;
  RandomChain out{ac_canonical(start), cur, chain_ac(std::move(pieces))};
  return out;
}

}  // namespace

TEST_CASE("witness transfer across random checked derivations") {
  std::mt19937_64 rng(171);

  SUBCASE("wct-tau transfers along equational WIF derivations") {
    // equational, WIF-sound premises
    Axiomatization e("A1-4+WIF1-2", Mode::Preorder);
    for (const Axiom& a : core_axioms()) e.add(a);
    for (const Axiom& a : axiom_by_name("WIF1", kAB)) e.add(a);
    for (const Axiom& a : axiom_by_name("WIF2", kAB)) e.add(a);
    int m = 2;  // exceeds the premise depth
    int produced = 0;
    while (produced < 200) {
      // seed terms whose WCT lies inside {a^m, a^2m}
      Term base = rng() % 2 == 0
                      ? Term::prefix(Action::tau(),
                                     Term::sum(power(Action::name("a"), m, Term::nil()),
                                               power(Action::name("a"), 2 * m, Term::nil())))
                      : Term::prefix(Action::tau(), power(Action::name("a"), 2 * m, Term::nil()));
      if (rng() % 2 == 0)
        base = Term::sum(base, Term::prefix(Action::tau(),
                                            power(Action::name("a"), 2 * m, Term::nil())));
      auto chain = random_chain(e, rng, base, 1 + (int)(rng() % 3));
      if (!chain) continue;
      Conclusion c = check_derivation(e, chain->derivation);
      ++produced;
      TraceSet wct = weak_completed_traces(c.rhs);
      TraceSet allowed{Trace(m, "a"), Trace(2 * m, "a")};
      if (!std::includes(allowed.begin(), allowed.end(), wct.begin(), wct.end())) continue;
      if (witness(WitnessKind::WctTau, c.lhs, m, kAB).found)
        CHECK(witness(WitnessKind::WctTau, c.rhs, m, kAB).found);
    }
  }

  SUBCASE("notrace-tau transfers along WIF-gc derivations") {
    Axiomatization e = catalog("WIF-gc", kAB);
    int m = 3;
    int produced = 0;
    while (produced < 200) {
      Axiom phi = family(FamilyId::WifPre, m, kAB);
      Term base = rng() % 2 == 0 ? phi.lhs : phi.rhs;
      Substitution inst;
      inst.map_var("x", random_closed_term(rng, kAB, 1, 1, true));
      base = substitute(base, inst);
      auto chain = random_chain(e, rng, base, 1 + (int)(rng() % 2));
      if (!chain) continue;
      Conclusion c = check_derivation(e, chain->derivation);
      ++produced;
      if (witness(WitnessKind::NotraceTau, c.lhs, m, kAB).found)
        CHECK(witness(WitnessKind::NotraceTau, c.rhs, m, kAB).found);
    }
  }

  SUBCASE("wtv-short transfers right to left over a singleton alphabet") {
    Axiomatization e = catalog("WIF-gc", kA);
    int m = 3;
    int produced = 0;
    while (produced < 200) {
      Term base = rng() % 2 == 0 ? Term::sum(power(Action::name("a"), m, Term::var("x")),
                                             Term::var("x"))
                                 : power(Action::name("a"), m, Term::var("x"));
      auto chain = random_chain(e, rng, base, 1 + (int)(rng() % 2));
      if (!chain) continue;
      Conclusion c = check_derivation(e, chain->derivation);
      ++produced;
      if (witness(WitnessKind::WtvShort, c.rhs, m, kA).found)
        CHECK(witness(WitnessKind::WtvShort, c.lhs, m, kA).found);
    }
  }
}
