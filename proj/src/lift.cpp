#include "bccs/proofs.hpp"

// Rebuilds a derivation over a safe tau-free axiomatization into one relating
// the init-tau images. Axiom instances are re-instantiated with the
// substitution that applies init-tau exactly to the variables with initial
// occurrences in the axiom; prefix-congruence steps become tau-congruence
// steps over the original subderivation.

namespace bccs {

namespace {

Axiom init_tau_axiom(const Axiom& a) {
  Axiom b;
  b.name = "init-tau(" + a.name + ")";
  b.lhs = init_tau_term(a.lhs);
  b.rhs = init_tau_term(a.rhs);
  b.shape = a.shape;
  if (b.lhs == a.lhs && b.rhs == a.rhs) b.name = a.name;
  return b;
}

Derivation lift_node(const Axiomatization& e, const Derivation& d) {
  switch (d.kind()) {
    case Derivation::Kind::Refl:
      return Derivation::refl(init_tau_term(d.lhs()));
    case Derivation::Kind::Trans:
      return Derivation::trans(lift_node(e, d.child(0)), lift_node(e, d.child(1)));
    case Derivation::Kind::SumCong:
      return Derivation::sum_cong(lift_node(e, d.child(0)), lift_node(e, d.child(1)));
    case Derivation::Kind::Sym:
      return Derivation::sym(lift_node(e, d.child(0)));
    case Derivation::Kind::PrefixCong: {
      // init-tau(alpha t <= alpha u) = tau t <= tau u with the original
      // subderivation intact; E itself remains available in the target set.
      if (d.action().is_tau())
        throw ProofError("lift of a derivation containing a tau prefix step");
      if (d.action().kind() == Action::Kind::MetaAny)
        throw ProofError("lift of a derivation with an @@-prefix step");
      return Derivation::prefix_cong(Action::tau(), d.child(0));
    }
    case Derivation::Kind::AxiomInstance: {
      const Axiom& ax = e.by_name(d.axiom_name());
      if (!ax.safe()) throw ProofError("lift over unsafe axiom " + ax.name);
      if (!ax.tau_free()) throw ProofError("lift over tau-containing axiom " + ax.name);
      // sigma'(x) = init-tau(sigma(x)) for x with an initial occurrence in
      // lhs+rhs, sigma(x) otherwise
      Term combined = Term::sum(ax.lhs, ax.rhs);
      std::set<std::string> initial = initial_variables(combined);
      Substitution lifted;
      for (const auto& [k, v] : d.subst().var_map()) {
        if (initial.count(k)) {
          lifted.map_var(k, init_tau_term(v));
        } else {
          lifted.map_var(k, v);
        }
      }
      for (const auto& [k, v] : d.subst().action_map()) lifted.map_action(k, v);
      // unmapped variables stay identical, which is right: init-tau(x) = x
      return Derivation::axiom_instance(init_tau_axiom(ax), d.reversed(), std::move(lifted));
    }
  }
  throw ProofError("unreachable");
}

}  // namespace

Axiomatization with_init_tau(const Axiomatization& e) {
  Axiomatization out(e.name() + "+init-tau", e.mode());
  for (const Axiom& a : e.axioms()) out.add(a);
  Axiomatization lifted = init_tau_axiomatization(e);
  for (const Axiom& a : lifted.axioms()) out.add(a);
  return out;
}

Derivation lift_init_tau_derivation(const Axiomatization& e, const Derivation& d) {
  if (!e.safe()) throw ProofError("lift requires a safe axiomatization");
  if (!e.tau_free()) throw ProofError("lift requires a tau-free axiomatization");
  return lift_node(e, d);
}

}  // namespace bccs
