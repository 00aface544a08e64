#include <functional>

#include "bccs/proofs.hpp"

// Stored derivations for the laws that follow from smaller axiom sets; each
// script is checked against its stated premise set by the replay suite.

namespace bccs {

namespace {

Term V(const std::string& n) { return Term::var(n); }
Term S(const Term& a, const Term& b) { return Term::sum(a, b); }
Term P(const Action& a, const Term& t) { return Term::prefix(a, t); }
Term TAU(const Term& t) { return P(Action::tau(), t); }
Action meta_a() { return Action::meta_any("a"); }

struct SubstBuilder {
  Substitution s;
  SubstBuilder& v(const std::string& k, const Term& t) {
    s.map_var(k, t);
    return *this;
  }
  SubstBuilder& a(const std::string& k, const Action& act) {
    s.map_action(k, act);
    return *this;
  }
  operator Substitution() const { return s; }
};

Derivation ax(const Axiomatization& e, const std::string& name, const Substitution& s,
              bool reversed = false) {
  return Derivation::axiom_instance(e.by_name(name), reversed, s);
}

Axiomatization premises(const std::string& name, const std::vector<std::string>& keys,
                        const Alphabet& alphabet) {
  Axiomatization e(name, Mode::Preorder);
  for (const Axiom& a : core_axioms()) e.add(a);
  for (const auto& k : keys)
    for (const Axiom& a : axiom_by_name(k, alphabet)) e.add(a);
  return e;
}

// tau.X + Y == tau.X when X + Y =AC X  (WIF2 and A3)
Derivation absorb_partial(const Axiomatization& e, const Term& x, const Term& y) {
  Derivation step = ax(e, "WIF2", SubstBuilder{}.v("x", x).v("y", y));
  return chain_ac({Derivation::refl(S(TAU(x), y)), std::move(step), Derivation::refl(TAU(x))});
}

// alpha.(tau.B) == alpha.B  (WIF1 with x = y = B, A3 inside)
Derivation collapse_tau_under(const Axiomatization& e, const Action& alpha, const Term& b) {
  Derivation step = ax(e, "WIF1", SubstBuilder{}.a("@@a", alpha).v("x", b).v("y", b));
  return chain_ac({Derivation::refl(P(alpha, TAU(b))), std::move(step),
                   Derivation::refl(P(alpha, b))});
}

// x <= tau.x from W1'  (y := 0, then A4)
Derivation w1_inline(const Axiomatization& e, const Term& t) {
  return chain_ac({Derivation::refl(t), ax(e, "W1'", SubstBuilder{}.v("x", t).v("y", Term::nil())),
                   Derivation::refl(TAU(t))});
}

DerivedLaw law_d1(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "D1";
  law.premises = premises("A1-4+WIF1-2", {"WIF1", "WIF2"}, alphabet);
  Term x = V("x"), y = V("y");
  Derivation d = chain_ac({
      Derivation::prefix_cong(Action::tau(), ax(law.premises, "WIF2", SubstBuilder{}.v("x", x).v("y", y))),
      ax(law.premises, "WIF1", SubstBuilder{}.a("@@a", Action::tau()).v("x", x).v("y", S(x, y))),
      ax(law.premises, "WIF2", SubstBuilder{}.v("x", x).v("y", y), true),
  });
  law.derivations = {d, reverse_equational(d)};
  return law;
}

DerivedLaw law_d2(int n, const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "D2-" + std::to_string(n);
  law.premises = premises("A1-4+WIF1-2", {"WIF1", "WIF2"}, alphabet);
  std::vector<Term> bodies;
  for (int i = 1; i <= n; ++i) bodies.push_back(V("x" + std::to_string(i)));
  Derivation d = d2_instance(meta_a(), bodies, V("y"), law.premises);
  law.derivations = {d, reverse_equational(d)};
  return law;
}

DerivedLaw law_w1(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "W1-from-W1'";
  law.premises = premises("A1-4+W1'", {"W1'"}, alphabet);
  law.derivations = {w1_inline(law.premises, V("x"))};
  return law;
}

DerivedLaw law_wif2(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "WIF2-from-WIF2'+W1";
  law.premises = premises("A1-4+WIF2'+W1", {"WIF2'", "W1"}, alphabet);
  const Axiomatization& e = law.premises;
  Term x = V("x"), y = V("y");
  Term lhs = S(TAU(x), y);
  Term rhs = S(TAU(x), TAU(S(x, y)));
  // forward: tau.x + y <= tau.x + tau.(x+y)
  Derivation fwd = chain_ac({
      Derivation::refl(lhs),
      // tau.x + y =AC tau.x + tau.(x+x) + y, then WIF2' on the middle
      Derivation::sum_cong(
          Derivation::sum_cong(Derivation::refl(TAU(x)),
                               ax(e, "WIF2'", SubstBuilder{}.v("x", x).v("y", x))),
          Derivation::refl(y)),
      // tau.x + x + y, fold x+y under a fresh tau by W1
      Derivation::sum_cong(Derivation::refl(TAU(x)), ax(e, "W1", SubstBuilder{}.v("x", S(x, y)))),
      Derivation::refl(rhs),
  });
  // backward: tau.x + tau.(x+y) <= tau.x + y
  Derivation bwd = chain_ac({
      Derivation::refl(rhs),
      Derivation::sum_cong(ax(e, "WIF2'", SubstBuilder{}.v("x", x).v("y", y)),
                           Derivation::refl(TAU(x))),
      Derivation::refl(lhs),
  });
  law.derivations = {fwd, bwd};
  return law;
}

DerivedLaw law_f1p(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "F1'-from-W1'+WIF1";
  law.premises = premises("A1-4+W1'+WIF1", {"W1'", "WIF1"}, alphabet);
  const Axiomatization& e = law.premises;
  Term x = V("x"), y = V("y"), z = V("z");
  Derivation body = chain_ac({
      Derivation::refl(S(x, y)),
      Derivation::sum_cong(ax(e, "W1'", SubstBuilder{}.v("x", x).v("y", z)), Derivation::refl(y)),
      Derivation::sum_cong(Derivation::refl(TAU(x)), w1_inline(e, S(y, z))),
      Derivation::refl(S(TAU(x), TAU(S(y, z)))),
  });
  Derivation d = chain_ac({
      Derivation::prefix_cong(meta_a(), std::move(body)),
      ax(e, "WIF1", SubstBuilder{}.a("@@a", meta_a()).v("x", x).v("y", S(y, z))),
  });
  law.derivations = {d};
  return law;
}

DerivedLaw law_inittau_f2(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "inittauF2-from-W1'+WIF1";
  law.premises = premises("A1-4+W1'+WIF1", {"W1'", "WIF1"}, alphabet);
  const Axiomatization& e = law.premises;
  if (alphabet.is_unbounded()) throw ProofError(law.key + " needs a finite alphabet");
  int n = static_cast<int>(alphabet.size());

  // G(1): tau.x1 <= tau.x1 + y
  std::function<Derivation(int)> g = [&](int k) -> Derivation {
    Term xk = V("x" + std::to_string(n - k + 1));
    std::vector<Term> taus;
    for (int i = n - k + 1; i <= n; ++i) taus.push_back(TAU(V("x" + std::to_string(i))));
    Term lhs = Term::sum_of(taus);
    std::vector<Term> with_y = taus;
    with_y.push_back(V("y"));
    Term rhs = Term::sum_of(with_y);
    if (k == 1) {
      return chain_ac({
          Derivation::refl(lhs),
          ax(e, "W1'", SubstBuilder{}.v("x", TAU(xk)).v("y", V("y"))),
          Derivation::sum_cong(
              ax(e, "WIF1", SubstBuilder{}.a("@@a", Action::tau()).v("x", xk).v("y", xk)),
              Derivation::refl(V("y"))),
          Derivation::refl(rhs),
      });
    }
    return chain_ac({
        Derivation::refl(lhs),
        Derivation::sum_cong(Derivation::refl(TAU(xk)), g(k - 1)),
        Derivation::refl(rhs),
    });
  };
  law.derivations = {g(n)};
  return law;
}

DerivedLaw law_wfe(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "WFE-from-WIF2+FE2'";
  law.premises = premises("A1-4+WIF2+FE2'", {"WIF2", "FE2'"}, alphabet);
  const Axiomatization& e = law.premises;
  Action a = Action::meta_visible("a");
  Term x = V("x"), y = V("y"), z = V("z");
  Term lhs = S(P(a, x), TAU(S(P(a, y), z)));
  Term rhs = TAU(S(S(P(a, x), P(a, y)), z));
  Derivation d = chain_ac({
      Derivation::refl(lhs),
      ax(e, "WIF2", SubstBuilder{}.v("x", S(P(a, y), z)).v("y", P(a, x))),
      ax(e, "FE2'tau", SubstBuilder{}.a("@b", a).v("x", z).v("y", y).v("z", x)),
      Derivation::refl(rhs),
  });
  law.derivations = {d, reverse_equational(d)};
  return law;
}

DerivedLaw law_fe1p_tau(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "FE1'tau-from-WIF2";
  law.premises = premises("A1-4+WIF2", {"WIF2"}, alphabet);
  const Axiomatization& e = law.premises;
  Term x = V("x"), y = V("y"), z = V("z");
  Term lhs = S(TAU(x), TAU(S(y, z)));
  Term rhs = Term::sum_of({TAU(x), TAU(S(x, y)), TAU(S(y, z))});
  // rhs -> lhs, then reverse for the stated orientation
  Derivation r2l = chain_ac({
      Derivation::refl(rhs),
      // tau.x + tau.(x+y) == tau.x + y  (WIF2 reversed)
      Derivation::sum_cong(ax(e, "WIF2", SubstBuilder{}.v("x", x).v("y", y), true),
                           Derivation::refl(TAU(S(y, z)))),
      // y + tau.(y+z) == tau.(y+z)  (absorb)
      Derivation::sum_cong(Derivation::refl(TAU(x)), absorb_partial(e, S(y, z), y)),
      Derivation::refl(lhs),
  });
  law.derivations = {reverse_equational(r2l), r2l};
  return law;
}

DerivedLaw law_fe2p_tau(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "FE2'tau-from-WIF2+WFE";
  law.premises = premises("A1-4+WIF2+WFE", {"WIF2", "WFE"}, alphabet);
  const Axiomatization& e = law.premises;
  Action b = Action::meta_visible("b");
  Term x = V("x"), y = V("y"), z = V("z");
  Term small = S(x, P(b, y));
  Term big = S(S(x, P(b, y)), P(b, z));
  Term lhs = S(TAU(small), TAU(big));
  Term rhs = TAU(big);
  Derivation d = chain_ac({
      Derivation::refl(lhs),
      // tau.(x+by) + tau.(x+by+bz) == tau.(x+by) + bz   (WIF2 reversed)
      ax(e, "WIF2", SubstBuilder{}.v("x", small).v("y", P(b, z)), true),
      // bz + tau.(by+x) == tau.(bz+by+x)   (WFE)
      ax(e, "WFE", SubstBuilder{}.a("@a", b).v("x", z).v("y", y).v("z", x)),
      Derivation::refl(rhs),
  });
  law.derivations = {d, reverse_equational(d)};
  return law;
}

DerivedLaw law_fe3(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "FE3-from-FE3'+WIF1";
  law.premises = premises("A1-4+FE3'+WIF1", {"FE3'", "WIF1"}, alphabet);
  const Axiomatization& e = law.premises;
  Axiom fe3 = axiom_by_name("FE3", alphabet).front();
  Action a = Action::meta_visible("a");
  Term small = fe3.lhs.left().body();  // x + sum b.z_b
  Term big = fe3.rhs.body();           // x + y + sum b.z_b
  Derivation d = chain_ac({
      Derivation::refl(fe3.lhs),
      ax(e, "WIF1", SubstBuilder{}.a("@@a", a).v("x", small).v("y", big), true),
      Derivation::prefix_cong(a, ax(e, "FE3'", Substitution{})),
      collapse_tau_under(e, a, big),
      Derivation::refl(fe3.rhs),
  });
  law.derivations = {d, reverse_equational(d)};
  return law;
}

DerivedLaw law_ctep(const Alphabet& alphabet) {
  // Only the visible-alpha instance of CTE' is derivable here; the tau
  // instance is supplied by the transformation as init-tau(CTE).
  DerivedLaw law;
  law.key = "CTE'-from-CTE+WIF1";
  law.premises = premises("A1-4+CTE+WIF1", {"CTE", "WIF1"}, alphabet);
  Derivation d = ax(law.premises, "CTE", Substitution{});
  law.derivations = {d, reverse_equational(d)};
  return law;
}

DerivedLaw law_ct2p(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "CT2'-from-W1+WIF1";
  law.premises = premises("A1-4+W1+WIF1", {"W1", "WIF1"}, alphabet);
  const Axiomatization& e = law.premises;
  Action b = Action::meta_visible("b"), c = Action::meta_visible("c");
  Term w = V("w"), x = V("x"), y = V("y"), z = V("z");
  Term p = S(P(b, w), y), q = S(P(c, x), z);
  Term body = Term::sum_of({P(b, w), P(c, x), y, z});
  Derivation body_step = chain_ac({
      Derivation::refl(body),
      Derivation::sum_cong(ax(e, "W1", SubstBuilder{}.v("x", p)),
                           ax(e, "W1", SubstBuilder{}.v("x", q))),
      Derivation::refl(S(TAU(p), TAU(q))),
  });
  Derivation d = chain_ac({
      Derivation::prefix_cong(meta_a(), std::move(body_step)),
      ax(e, "WIF1", SubstBuilder{}.a("@@a", meta_a()).v("x", p).v("y", q)),
  });
  law.derivations = {d};
  return law;
}

DerivedLaw law_if1p(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "IF1'-from-W1+WIF1";
  law.premises = premises("A1-4+W1+WIF1", {"W1", "WIF1"}, alphabet);
  const Axiomatization& e = law.premises;
  Term x = V("x"), y = V("y");
  Derivation body = Derivation::sum_cong(ax(e, "W1", SubstBuilder{}.v("x", x)),
                                         ax(e, "W1", SubstBuilder{}.v("x", y)));
  Derivation d = chain_ac({
      Derivation::prefix_cong(meta_a(), std::move(body)),
      ax(e, "WIF1", SubstBuilder{}.a("@@a", meta_a()).v("x", x).v("y", y)),
  });
  law.derivations = {d};
  return law;
}

DerivedLaw law_if2p(const Alphabet& alphabet) {
  DerivedLaw law;
  law.key = "IF2'-from-WIF1+WIF2";
  law.premises = premises("A1-4+WIF1+WIF2", {"WIF1", "WIF2"}, alphabet);
  const Axiomatization& e = law.premises;
  Action al = meta_a();
  Term x = V("x"), y = V("y"), z = V("z");
  Term yz = S(y, z), xy = S(x, y);
  Term stated_lhs = S(P(al, x), P(al, yz));
  Term stated_rhs = Term::sum_of({P(al, xy), P(al, x), P(al, yz)});

  // body: tau.x + tau.(y+z) == tau.(x+y) + tau.(tau.x + tau.(y+z))
  Term inner = S(TAU(x), TAU(yz));
  Derivation body = chain_ac({
      Derivation::refl(inner),
      // grow a tau.(y+y+z) copy: AC (A3 inside the body)
      Derivation::refl(Term::sum_of({TAU(x), TAU(S(S(y, y), z)), TAU(yz)})),
      // tau.(y+z) + tau.(y+z+y) == tau.(y+z) + y   (WIF2 reversed)
      Derivation::sum_cong(Derivation::refl(TAU(x)),
                           ax(e, "WIF2", SubstBuilder{}.v("x", yz).v("y", y), true)),
      // tau.x + y == tau.x + tau.(x+y)
      Derivation::sum_cong(ax(e, "WIF2", SubstBuilder{}.v("x", x).v("y", y)),
                           Derivation::refl(TAU(yz))),
      Derivation::refl(Term::sum_of({TAU(xy), TAU(x), TAU(yz)})),
      // fold everything after tau.(x+y) under one tau   (WIF2 forward)
      Derivation::sum_cong(Derivation::refl(TAU(xy)),
                           ax(e, "WIF2", SubstBuilder{}.v("x", xy).v("y", inner))),
      // inside the fresh tau: absorb x into tau.x and y into tau.(y+z)
      Derivation::sum_cong(
          Derivation::refl(TAU(xy)),
          Derivation::sum_cong(
              Derivation::refl(TAU(xy)),
              Derivation::prefix_cong(
                  Action::tau(),
                  chain_ac({Derivation::refl(S(xy, inner)),
                            Derivation::sum_cong(absorb_partial(e, x, x),
                                                 absorb_partial(e, yz, y)),
                            Derivation::refl(inner)})))),
      Derivation::refl(S(TAU(xy), TAU(inner))),
  });

  Derivation d = chain_ac({
      Derivation::refl(stated_lhs),
      ax(e, "WIF1", SubstBuilder{}.a("@@a", al).v("x", x).v("y", yz), true),
      Derivation::prefix_cong(al, std::move(body)),
      ax(e, "WIF1", SubstBuilder{}.a("@@a", al).v("x", xy).v("y", inner)),
      Derivation::sum_cong(Derivation::refl(P(al, xy)),
                           ax(e, "WIF1", SubstBuilder{}.a("@@a", al).v("x", x).v("y", yz))),
      Derivation::refl(stated_rhs),
  });
  law.derivations = {d, reverse_equational(d)};
  return law;
}

}  // namespace

Derivation d2_instance(const Action& alpha, const std::vector<Term>& bodies, const Term& rest,
                       const Axiomatization& e) {
  if (bodies.empty()) return Derivation::refl(P(alpha, rest));
  std::vector<Term> taus;
  for (const Term& b : bodies) taus.push_back(TAU(b));
  std::vector<Term> lhs_list = taus;
  lhs_list.push_back(rest);
  Term stated_lhs = P(alpha, Term::sum_of(lhs_list));

  std::vector<Term> rhs_list;
  for (const Term& b : bodies) rhs_list.push_back(P(alpha, b));
  std::vector<Term> flat = bodies;
  flat.push_back(rest);
  rhs_list.push_back(P(alpha, Term::sum_of(flat)));
  Term stated_rhs = Term::sum_of(rhs_list);

  const Term& b1 = bodies.front();
  std::vector<Term> tail_taus(taus.begin() + 1, taus.end());
  tail_taus.push_back(rest);
  Term r = Term::sum_of(tail_taus);

  Derivation step1 = Derivation::prefix_cong(
      alpha, Derivation::axiom_instance(e.by_name("WIF2"), false,
                                        SubstBuilder{}.v("x", b1).v("y", r)));
  Derivation step2 = Derivation::axiom_instance(
      e.by_name("WIF1"), false, SubstBuilder{}.a("@@a", alpha).v("x", b1).v("y", S(b1, r)));

  std::vector<Term> tail_bodies(bodies.begin() + 1, bodies.end());
  Derivation inner = d2_instance(alpha, tail_bodies, S(b1, rest), e);
  Derivation step3 = Derivation::sum_cong(Derivation::refl(P(alpha, b1)), std::move(inner));

  return chain_ac({Derivation::refl(stated_lhs), std::move(step1), std::move(step2),
                   std::move(step3), Derivation::refl(stated_rhs)});
}

const Axiomatization& wif_core() {
  static const Axiomatization e = [] {
    Alphabet any = Alphabet::unbounded();
    return premises("A1-4+WIF1-2", {"WIF1", "WIF2"}, any);
  }();
  return e;
}

DerivedLaw derived_law(const std::string& key, const Alphabet& alphabet) {
  if (key == "D1") return law_d1(alphabet);
  if (key == "D2-1") return law_d2(1, alphabet);
  if (key == "D2-2") return law_d2(2, alphabet);
  if (key == "D2-3") return law_d2(3, alphabet);
  if (key == "D2") return law_d2(3, alphabet);
  if (key == "W1-from-W1'") return law_w1(alphabet);
  if (key == "WIF2-from-WIF2'+W1") return law_wif2(alphabet);
  if (key == "F1'-from-W1'+WIF1") return law_f1p(alphabet);
  if (key == "inittauF2-from-W1'+WIF1") return law_inittau_f2(alphabet);
  if (key == "WFE-from-WIF2+FE2'") return law_wfe(alphabet);
  if (key == "FE1'tau-from-WIF2") return law_fe1p_tau(alphabet);
  if (key == "FE2'tau-from-WIF2+WFE") return law_fe2p_tau(alphabet);
  if (key == "FE3-from-FE3'+WIF1") return law_fe3(alphabet);
  if (key == "CTE'-from-CTE+WIF1") return law_ctep(alphabet);
  if (key == "CT2'-from-W1+WIF1") return law_ct2p(alphabet);
  if (key == "IF1'-from-W1+WIF1") return law_if1p(alphabet);
  if (key == "IF2'-from-WIF1+WIF2") return law_if2p(alphabet);
  throw ProofError("unknown derived-law key: " + key);
}

std::vector<std::string> derived_law_keys() {
  return {"D1",
          "D2-1",
          "D2-2",
          "D2-3",
          "W1-from-W1'",
          "WIF2-from-WIF2'+W1",
          "F1'-from-W1'+WIF1",
          "inittauF2-from-W1'+WIF1",
          "WFE-from-WIF2+FE2'",
          "FE1'tau-from-WIF2",
          "FE2'tau-from-WIF2+WFE",
          "FE3-from-FE3'+WIF1",
          "CTE'-from-CTE+WIF1",
          "CT2'-from-W1+WIF1",
          "IF1'-from-W1+WIF1",
          "IF2'-from-WIF1+WIF2"};
}

}  // namespace bccs
