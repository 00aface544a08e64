#include <functional>

#include "bccs/proofs.hpp"

// Constructive tau elimination: every BCCS term is provably equal, from
// A1-4+WIF1-2, to a BCCSP term (when it has no initial tau) or to a nonempty
// sum of tau-prefixed BCCSP terms. D1 flattens nested initial taus, D2
// distributes taus under a visible prefix, WIF2 folds the residual visible
// summands under a fresh tau.

namespace bccs {

namespace {

Derivation ax(const std::string& name, const Substitution& s, bool reversed = false) {
  return Derivation::axiom_instance(wif_core().by_name(name), reversed, s);
}

Substitution sub_xy(const Term& x, const Term& y) {
  Substitution s;
  s.map_var("x", x);
  s.map_var("y", y);
  return s;
}

bool tau_initial(const Term& t) {
  for (const Term& s : summands(t))
    if (s.is_prefix() && s.action().is_tau()) return true;
  return false;
}

// D1 split: tau.(sum of tau-prefixed summands) == that sum, by iterated D1
// (each D1 use is itself the three-step WIF1-2 chain).
Derivation d1_chain(const Term& x, const Term& y) {
  // tau.(tau.x + y) == tau.x + y
  Term lhs = Term::prefix(Action::tau(), Term::sum(Term::prefix(Action::tau(), x), y));
  Derivation d = chain_ac({
      Derivation::refl(lhs),
      Derivation::prefix_cong(Action::tau(), ax("WIF2", sub_xy(x, y))),
      [&] {
        Substitution s;
        s.map_action("@@a", Action::tau());
        s.map_var("x", x);
        s.map_var("y", Term::sum(x, y));
        return ax("WIF1", s);
      }(),
      ax("WIF2", sub_xy(x, y), true),
  });
  return d;
}

// tau.(sum_of taus) == sum_of taus for a nonempty list of tau-prefixed
// BCCSP-bodied summands.
Derivation split_taus(const std::vector<Term>& bodies) {
  Term inner = Term::sum_of([&] {
    std::vector<Term> xs;
    for (const Term& b : bodies) xs.push_back(Term::prefix(Action::tau(), b));
    return xs;
  }());
  if (bodies.size() == 1) {
    // tau.(tau.b) == tau.b + 0 shape via D1 with y = 0
    Term b = bodies.front();
    return chain_ac({
        Derivation::refl(Term::prefix(Action::tau(), inner)),
        d1_chain(b, Term::nil()),
        Derivation::refl(inner),
    });
  }
  std::vector<Term> rest(bodies.begin() + 1, bodies.end());
  Term rest_sum = Term::sum_of([&] {
    std::vector<Term> xs;
    for (const Term& b : rest) xs.push_back(Term::prefix(Action::tau(), b));
    return xs;
  }());
  return chain_ac({
      Derivation::refl(Term::prefix(Action::tau(), inner)),
      d1_chain(bodies.front(), rest_sum),
      Derivation::refl(inner),
  });
}

}  // namespace

TauElimination eliminate_tau(const Term& t) {
  if (has_metavariables(t))
    throw ProofError("eliminate_tau on a term with action metavariables");
  if (!contains_tau(t)) return {t, Derivation::refl(t)};
  Term c = ac_canonical(t);
  if (c.is_nil() || c.is_var()) return {c, by_ac(t, c)};

  std::vector<Term> tau_bodies;                       // bodies of tau summands
  std::vector<std::pair<Action, Term>> visible;       // visible-prefixed summands
  std::vector<Term> var_summands;

  for (const Term& s : summands(c)) {
    if (s.is_var()) {
      var_summands.push_back(s);
    } else if (s.action().is_tau()) {
      tau_bodies.push_back(s.body());
    } else if (s.action().is_meta()) {
      throw ProofError("eliminate_tau on a term with action metavariables");
    } else {
      visible.emplace_back(s.action(), s.body());
    }
  }

  // Process the pieces; collect (new summand list, per-summand derivations).
  std::vector<Term> out_summands;
  std::vector<Derivation> steps;  // each concludes old summand (or group) == new

  // current working term assembled as we go; use by_ac gluing at the end
  std::vector<Term> work_old;
  std::vector<Derivation> work_steps;

  std::vector<Term> processed_tau_bodies;  // BCCSP bodies of tau summands
  std::vector<Term> processed_other;       // BCCSP non-tau summands

  for (const Term& body : tau_bodies) {
    TauElimination inner = eliminate_tau(body);
    Term tau_summand = Term::prefix(Action::tau(), body);
    Derivation d = Derivation::prefix_cong(Action::tau(), inner.derivation);
    if (tau_initial(inner.normal)) {
      // D1 split into several tau summands
      std::vector<Term> bodies;
      for (const Term& s : summands(inner.normal)) bodies.push_back(s.body());
      d = trans_ac(std::move(d), split_taus(bodies));
      for (const Term& b : bodies) processed_tau_bodies.push_back(b);
    } else {
      processed_tau_bodies.push_back(inner.normal);
    }
    work_old.push_back(tau_summand);
    work_steps.push_back(std::move(d));
  }

  for (const auto& [a, body] : visible) {
    TauElimination inner = eliminate_tau(body);
    Term summand = Term::prefix(a, body);
    Derivation d = Derivation::prefix_cong(a, inner.derivation);
    if (tau_initial(inner.normal)) {
      // a.(sum tau.b_i) == sum a.b_i + a.(sum b_i)  (D2 with empty rest)
      std::vector<Term> bodies;
      for (const Term& s : summands(inner.normal)) bodies.push_back(s.body());
      Derivation d2 = d2_instance(a, bodies, Term::nil(), wif_core());
      // align a.(sum taus) with d2's stated lhs a.(sum taus + 0)
      d = trans_ac(std::move(d), std::move(d2));
      for (const Term& b : bodies) processed_other.push_back(Term::prefix(a, b));
      processed_other.push_back(Term::prefix(a, Term::sum_of(bodies)));
    } else {
      processed_other.push_back(Term::prefix(a, inner.normal));
    }
    work_old.push_back(summand);
    work_steps.push_back(std::move(d));
  }

  for (const Term& v : var_summands) {
    work_old.push_back(v);
    work_steps.push_back(Derivation::refl(v));
    processed_other.push_back(v);
  }

  // assemble: c == sum of processed summands
  Derivation assembled = work_steps.front();
  for (std::size_t i = 1; i < work_steps.size(); ++i)
    assembled = Derivation::sum_cong(std::move(assembled), std::move(work_steps[i]));
  Derivation intro = by_ac(t, assembled.lhs());
  Derivation d = trans_ac(std::move(intro), std::move(assembled));

  if (processed_tau_bodies.empty()) {
    Term normal = ac_canonical(d.rhs());
    Derivation outro = by_ac(d.rhs(), normal);
    d = trans_ac(std::move(d), std::move(outro));
    return {normal, std::move(d)};
  }

  if (!processed_other.empty()) {
    // fold the visible/variable summands under a fresh tau: WIF2 forward with
    // x = first tau body, y = sum of the others
    Term t0 = processed_tau_bodies.front();
    Term n = Term::sum_of(processed_other);
    std::vector<Term> rest_taus;
    for (std::size_t i = 1; i < processed_tau_bodies.size(); ++i)
      rest_taus.push_back(Term::prefix(Action::tau(), processed_tau_bodies[i]));
    Derivation fold = ax("WIF2", sub_xy(t0, n));  // tau.t0 + n == tau.t0 + tau.(t0+n)
    Derivation step =
        rest_taus.empty()
            ? fold
            : Derivation::sum_cong(Derivation::refl(Term::sum_of(rest_taus)), std::move(fold));
    d = trans_ac(std::move(d), std::move(step));
    processed_tau_bodies.push_back(ac_canonical(Term::sum(t0, n)));
  }

  std::vector<Term> final_taus;
  for (const Term& b : processed_tau_bodies)
    final_taus.push_back(Term::prefix(Action::tau(), ac_canonical(b)));
  Term normal = ac_canonical(Term::sum_of(final_taus));
  Derivation outro = by_ac(d.rhs(), normal);
  d = trans_ac(std::move(d), std::move(outro));
  return {normal, std::move(d)};
}

}  // namespace bccs
