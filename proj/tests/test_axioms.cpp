#include <doctest.h>

#include "bccs/axioms.hpp"
#include "bccs/cli.hpp"

using namespace bccs;

namespace {
const Alphabet kAB = Alphabet::finite({"a", "b"});
const Alphabet kInf = Alphabet::unbounded();

std::vector<std::string> names_of(const Axiomatization& e) {
  std::vector<std::string> out;
  for (const Axiom& a : e.axioms()) out.push_back(a.name);
  return out;
}
}  // namespace

TEST_CASE("catalog composition") {
  Axiomatization ifgc = catalog("IF-gc", kInf);
  CHECK(names_of(ifgc) == std::vector<std::string>{"A1", "A2", "A3", "A4", "IF1", "IF2"});
  CHECK(ifgc.mode() == Mode::Preorder);

  Axiomatization wifgc = catalog("WIF-gc", kInf);
  CHECK(names_of(wifgc) ==
        std::vector<std::string>{"A1", "A2", "A3", "A4", "WIF1", "WIF2'", "W1"});

  Axiomatization wfgc = catalog("WF-gc", kInf);
  CHECK(names_of(wfgc) == std::vector<std::string>{"A1", "A2", "A3", "A4", "WIF1", "WIF2'", "W1'"});

  Axiomatization wfegc = catalog("WFE-gc", kInf);
  CHECK(names_of(wfegc) ==
        std::vector<std::string>{"A1", "A2", "A3", "A4", "WIF1", "WIF2", "WFE"});
  CHECK(wfegc.mode() == Mode::Equivalence);

  CHECK_THROWS_AS(catalog("nope", kInf), AxiomError);
  // alphabet-indexed axioms need a finite session
  CHECK_THROWS_AS(catalog("F2", kInf), AxiomError);
  Axiomatization f2 = catalog("F2", kAB);
  CHECK(f2.by_name("F2").lhs == parse("a.x1 + b.x2"));
  CHECK(f2.by_name("F2").rhs == parse("a.x1 + b.x2 + y"));

  // D1-2 ship flagged as derived laws
  CHECK(catalog("D1", kInf).by_name("D1").derived);
  CHECK(catalog("D2", kInf).by_name("D2").derived);
  CHECK_FALSE(catalog("IF-gc", kInf).by_name("IF1").derived);
}

TEST_CASE("axiom statements match the catalog") {
  Alphabet inf = kInf;
  CHECK(axiom_by_name("IF1", inf)[0].str() == "IF1 : @a.(x + y) <= @a.x + @a.y");
  CHECK(axiom_by_name("IF2", inf)[0].str() ==
        "IF2 : @a.x + @a.(y + z) == @a.(x + y) + @a.x + @a.(y + z)");
  CHECK(axiom_by_name("WIF1", inf)[0].str() == "WIF1 : @@a.(tau.x + tau.y) == @@a.x + @@a.y");
  CHECK(axiom_by_name("WIF2", inf)[0].str() == "WIF2 : tau.x + y == tau.x + tau.(x + y)");
  CHECK(axiom_by_name("WIF2'", inf)[0].str() == "WIF2' : tau.(x + y) <= tau.x + y");
  CHECK(axiom_by_name("W1", inf)[0].str() == "W1 : x <= tau.x");
  CHECK(axiom_by_name("WE", inf)[0].str() == "WE : x == tau.x");
  CHECK(axiom_by_name("WFE", inf)[0].str() == "WFE : @a.x + tau.(@a.y + z) == tau.(@a.x + @a.y + z)");
  CHECK(axiom_by_name("CTE", inf)[0].str() ==
        "CTE : @a.(@b.w + @c.x + y + z) == @a.(@b.w + y) + @a.(@c.x + z)");
  // primed forms materialize as the {@-schematic, tau} pair
  auto f1p = axiom_by_name("F1'", inf);
  REQUIRE(f1p.size() == 2);
  CHECK(f1p[0].str() == "F1' : @a.(x + y) <= @a.x + @a.(y + z)");
  CHECK(f1p[1].str() == "F1'tau : tau.(x + y) <= tau.x + tau.(y + z)");
}

TEST_CASE("init-tau of axiomatizations") {
  Axiomatization f1 = catalog("F1", kInf);
  Axiomatization lifted = init_tau_axiomatization(f1);
  CHECK(lifted.by_name("init-tau(F1)").str() ==
        "init-tau(F1) : tau.(x + y) <= tau.x + tau.(y + z)");
  // A1-4 have no prefixes, so init-tau keeps them (and their names)
  CHECK(lifted.contains("A1"));

  Axiomatization cte = catalog("CTE", kInf);
  CHECK(init_tau_axiomatization(cte).by_name("init-tau(CTE)").str() ==
        "init-tau(CTE) : tau.(@b.w + @c.x + y + z) == tau.(@b.w + y) + tau.(@c.x + z)");

  // unsafe or tau-containing axioms are rejected
  Axiomatization bad("bad", Mode::Preorder);
  for (const Axiom& a : core_axioms()) bad.add(a);
  bad.add(Axiom{"U", parse("x"), parse("@a.x"), AxiomShape::Inequation, false});
  CHECK_THROWS_AS(init_tau_axiomatization(bad), AxiomError);
  CHECK_THROWS_AS(init_tau_axiomatization(catalog("WIF2", kInf)), AxiomError);
}

TEST_CASE("transform_weak composition and clause decisions") {
  RelationId wif = parse_relation("wif-pre");
  Axiomatization ae = transform_weak(catalog("IF-gc", kInf), wif);
  // E, init-tau(E), WIF1-2 and W1 (clause 4 holds for WIF); no W2 (clause 5 fails)
  CHECK(names_of(ae) == std::vector<std::string>{"A1", "A2", "A3", "A4", "IF1", "IF2",
                                                 "init-tau(IF1)", "init-tau(IF2)", "WIF1",
                                                 "WIF2", "W1"});
  CHECK(ae.by_name("init-tau(IF1)").str() == "init-tau(IF1) : tau.(x + y) <= tau.x + tau.y");

  // WF transform includes F1 and its tau-initial instance
  Axiomatization wf = transform_weak(catalog("F1", kInf), parse_relation("wf-pre"));
  CHECK(wf.contains("F1"));
  CHECK(wf.contains("init-tau(F1)"));
  CHECK(wf.contains("W1"));
  CHECK_FALSE(wf.contains("W2"));

  // WT transform includes both W1 and W2 (both witness pairs related)
  Axiomatization te("T-pre", Mode::Preorder);
  for (const Axiom& a : core_axioms()) te.add(a);
  for (const Axiom& a : axiom_by_name("TE", kInf)) te.add(a);
  for (const Axiom& a : axiom_by_name("T1", kInf)) te.add(a);
  for (const Axiom& a : axiom_by_name("T2", kInf)) te.add(a);
  Axiomatization wt = transform_weak(te, parse_relation("wt-pre"));
  CHECK(wt.contains("W1"));
  CHECK(wt.contains("W2"));

  // equivalence mode: WE appears exactly for weak trace equivalence
  Axiomatization tee("TE-eq", Mode::Equivalence);
  for (const Axiom& a : core_axioms()) tee.add(a);
  for (const Axiom& a : axiom_by_name("TE", kInf)) tee.add(a);
  CHECK(transform_weak(tee, parse_relation("wt-eq")).contains("WE"));
  Axiomatization ctee("CTE-eq", Mode::Equivalence);
  for (const Axiom& a : core_axioms()) ctee.add(a);
  for (const Axiom& a : axiom_by_name("CTE", kInf)) ctee.add(a);
  CHECK_FALSE(transform_weak(ctee, parse_relation("wct-eq")).contains("WE"));

  // overrides force the clauses
  TransformOverrides ov;
  ov.w2 = true;
  CHECK(transform_weak(catalog("IF-gc", kInf), wif, ov).contains("W2"));

  // unsafe input is rejected
  Axiomatization unsafe("unsafe", Mode::Preorder);
  for (const Axiom& a : core_axioms()) unsafe.add(a);
  unsafe.add(Axiom{"U", parse("x"), parse("@a.x"), AxiomShape::Inequation, false});
  CHECK_THROWS_AS(transform_weak(unsafe, wif), AxiomError);
  // strong targets are rejected
  CHECK_THROWS_AS(transform_weak(catalog("IF-gc", kInf), parse_relation("if-pre")), AxiomError);
}

TEST_CASE("transform output passes bounded soundness sweeps") {
  // transform(IF-gc, wif-pre) swept against wif-pre
  Axiomatization ae = transform_weak(catalog("IF-gc", kInf), parse_relation("wif-pre"));
  SweepReport rep = sweep_soundness(ae, parse_relation("wif-pre"), kAB, 60, 2, 7);
  for (const auto& l : rep.lines) {
    INFO(l.axiom << ": " << l.detail);
    CHECK(l.pass);
  }
  // transform(F-gc, wf-pre) against wf-pre
  Axiomatization wf = transform_weak(catalog("F1", kInf), parse_relation("wf-pre"));
  SweepReport rep2 = sweep_soundness(wf, parse_relation("wf-pre"), kAB, 60, 2, 7);
  for (const auto& l : rep2.lines) {
    INFO(l.axiom << ": " << l.detail);
    CHECK(l.pass);
  }
  // completed-trace and trace transforms against their weak relations
  Axiomatization ct("CT-pre", Mode::Preorder);
  for (const Axiom& a : core_axioms()) ct.add(a);
  for (const Axiom& a : axiom_by_name("CT1", kInf)) ct.add(a);
  for (const Axiom& a : axiom_by_name("CT2", kInf)) ct.add(a);
  SweepReport rep3 = sweep_soundness(transform_weak(ct, parse_relation("wct-pre")),
                                     parse_relation("wct-pre"), kAB, 60, 2, 7);
  for (const auto& l : rep3.lines) {
    INFO(l.axiom << ": " << l.detail);
    CHECK(l.pass);
  }
  Axiomatization tp("T-pre", Mode::Preorder);
  for (const Axiom& a : core_axioms()) tp.add(a);
  for (const Axiom& a : axiom_by_name("T1", kInf)) tp.add(a);
  for (const Axiom& a : axiom_by_name("T2", kInf)) tp.add(a);
  SweepReport rep4 = sweep_soundness(transform_weak(tp, parse_relation("wt-pre")),
                                     parse_relation("wt-pre"), kAB, 60, 2, 7);
  for (const auto& l : rep4.lines) {
    INFO(l.axiom << ": " << l.detail);
    CHECK(l.pass);
  }
}

TEST_CASE("catalog sweep matches the documented run") {
  // 500 samples at bound 2 under seed 7: every WIF-gc axiom passes
  SweepReport rep = sweep_soundness(catalog("WIF-gc", kInf), parse_relation("wif-pre"), kAB,
                                    500, 2, 7);
  CHECK(rep.all_pass());
}

TEST_CASE("schematic instantiation counts") {
  Alphabet abc = Alphabet::finite({"a", "b", "c"});
  // one @-metavariable: |A| instances
  auto if1 = instantiate_schematics(axiom_by_name("IF1", kInf)[0], abc);
  CHECK(if1.size() == 3);
  // one @@-metavariable: |A|+1 instances
  auto wif1 = instantiate_schematics(axiom_by_name("WIF1", kInf)[0], abc);
  CHECK(wif1.size() == 4);
  // three @-metavariables: |A|^3
  auto cte = instantiate_schematics(axiom_by_name("CTE", kInf)[0], abc);
  CHECK(cte.size() == 27);
  // instance naming records the chosen actions
  CHECK(if1[0].name.find("IF1[") == 0);
}

TEST_CASE("axiom file round trip") {
  std::string text =
      "mode preorder\n"
      "alphabet a,b\n"
      "# a comment\n"
      "MYAX : a.x + a.y <= a.(x + y)\n"
      "MYEQ : b.x + b.(x + y) == b.(x + y)\n";
  AxiomFile f = parse_axiom_file(text);
  CHECK_FALSE(f.alphabet.is_unbounded());
  CHECK(f.axioms.contains("A1"));  // the core joins every set
  CHECK(f.axioms.by_name("MYAX").shape == AxiomShape::Inequation);
  CHECK(f.axioms.by_name("MYEQ").shape == AxiomShape::Equation);

  std::string out = serialize_axiom_file(f.axioms, f.alphabet);
  AxiomFile again = parse_axiom_file(out);
  CHECK(serialize_axiom_file(again.axioms, again.alphabet) == out);

  // catalog sets round-trip through the file format, metavariables included
  for (const char* key : {"WIF-gc", "IF-gc", "WFE-gc"}) {
    Axiomatization e = catalog(key, kAB);
    std::string text = serialize_axiom_file(e, kAB);
    AxiomFile back = parse_axiom_file(text);
    CHECK(serialize_axiom_file(back.axioms, back.alphabet) == text);
  }
  {
    Axiomatization ae = transform_weak(catalog("IF-gc", kInf), parse_relation("wif-pre"));
    std::string text = serialize_axiom_file(ae, kAB);
    AxiomFile back = parse_axiom_file(text);
    CHECK(serialize_axiom_file(back.axioms, back.alphabet) == text);
  }

  CHECK_THROWS_WITH_AS(parse_axiom_file("mode preorder\nBROKEN a.0\n"),
                       doctest::Contains("line 2"), AxiomError);
}

TEST_CASE("axiomatization invariants") {
  Axiomatization eq("eq", Mode::Equivalence);
  for (const Axiom& a : core_axioms()) eq.add(a);
  CHECK_THROWS_AS(eq.add(Axiom{"W1", parse("x"), parse("tau.x"), AxiomShape::Inequation, false}),
                  AxiomError);
  CHECK_THROWS_AS(eq.add(Axiom{"A1", parse("x"), parse("x + 0"), AxiomShape::Equation, false}),
                  AxiomError);  // duplicate name
  // structural duplicates are dropped silently
  Axiomatization dup("dup", Mode::Preorder);
  for (const Axiom& a : core_axioms()) dup.add(a);
  dup.add(Axiom{"A1-copy", parse("x + y"), parse("y + x"), AxiomShape::Equation, false});
  CHECK(dup.axioms().size() == 4);

  CHECK(catalog("WIF-gc", kInf).max_depth() == 2);
  CHECK(catalog("WIF-gc", kInf).max_weak_depth() == 1);
}
