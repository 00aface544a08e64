#include <sstream>

#include "bccs/omega.hpp"

namespace bccs {

bool InvertedMapping::is_fresh(const Action& a) const {
  if (!a.is_name()) return false;
  for (const auto& [v, n] : fresh)
    if (n == a.id()) return true;
  return false;
}

std::string InvertedMapping::variable_for(const Action& a) const {
  for (const auto& [v, n] : fresh)
    if (n == a.id()) return v;
  throw OmegaError("not a fresh action: " + a.str());
}

Substitution InvertedMapping::rho() const {
  Substitution s;
  for (const auto& [v, n] : fresh) s.map_var(v, Term::prefix(Action::name(n), Term::nil()));
  return s;
}

Term InvertedMapping::apply_r(const Term& p) const {
  switch (p.kind()) {
    case Term::Kind::Nil:
      return p;
    case Term::Kind::Var:
      throw OmegaError("R applies to closed terms");
    case Term::Kind::Prefix: {
      const Action& a = p.action();
      if (a.is_tau() || a.is_meta())
        throw OmegaError("R applies to concrete visible-prefixed terms");
      if (is_fresh(a)) return Term::var(variable_for(a));
      return Term::prefix(a, apply_r(p.body()));
    }
    case Term::Kind::Sum:
      return Term::sum(apply_r(p.left()), apply_r(p.right()));
  }
  return p;
}

InvertedMapping groote_mapping(const Term& t, const Term& u, const Alphabet& alphabet,
                               const Axiomatization* e) {
  if (!alphabet.is_unbounded())
    throw OmegaError("inverted substitutions model an infinite alphabet; "
                     "declare the session alphabet unbounded");
  std::set<std::string> avoid = action_names(t);
  for (const auto& n : action_names(u)) avoid.insert(n);
  if (e) {
    for (const Axiom& ax : e->axioms()) {
      for (const auto& n : action_names(ax.lhs)) avoid.insert(n);
      for (const auto& n : action_names(ax.rhs)) avoid.insert(n);
    }
  }
  InvertedMapping m;
  m.goal_lhs = t;
  m.goal_rhs = u;
  std::set<std::string> vars = variables(t);
  for (const auto& v : variables(u)) vars.insert(v);
  for (const auto& v : vars) {
    std::string name = alphabet.mint(avoid);
    avoid.insert(name);
    m.fresh[v] = name;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Requirement checking

namespace {

// closed random term over base actions plus the fresh ones
Term random_extended_term(std::mt19937_64& rng, const std::vector<Action>& acts, int depth) {
  if (depth == 0) return Term::nil();
  std::size_t k = rng() % 3;
  std::vector<Term> xs;
  for (std::size_t i = 0; i < k; ++i)
    xs.push_back(Term::prefix(acts[rng() % acts.size()], random_extended_term(rng, acts, depth - 1)));
  return Term::sum_of(xs);
}

// The deterministic discharge for the R-image of one axiom instance:
// when no pattern action was instantiated by a fresh name, R commutes with
// the instance, giving the same axiom under v -> R(sigma(v)); when a fresh
// name was chosen the image collapses and A1-4 close it. Bounded search is
// the fallback.
std::optional<Derivation> discharge_r_image(const Axiomatization& e, const Axiom& ax,
                                            const Substitution& sigma, const InvertedMapping& m,
                                            int search_budget, bool reversed) {
  Term rl = m.apply_r(substitute(reversed ? ax.rhs : ax.lhs, sigma));
  Term rr = m.apply_r(substitute(reversed ? ax.lhs : ax.rhs, sigma));

  bool fresh_meta = false;
  for (const auto& [k, a] : sigma.action_map())
    if (m.is_fresh(a)) fresh_meta = true;

  if (!fresh_meta) {
    Substitution mapped;
    for (const auto& [k, v] : sigma.var_map()) mapped.map_var(k, m.apply_r(v));
    for (const auto& [k, a] : sigma.action_map()) mapped.map_action(k, a);
    Term il = substitute(reversed ? ax.rhs : ax.lhs, mapped);
    Term ir = substitute(reversed ? ax.lhs : ax.rhs, mapped);
    if (il == rl && ir == rr && e.contains(ax.name))
      return Derivation::axiom_instance(ax, reversed, mapped);
  }
  if (ac_equal(rl, rr)) return by_ac(rl, rr);
  SearchOptions opts;
  opts.budget = search_budget;
  SearchResult sr = search_derivation(e, rl, rr, opts);
  return sr.derivation;
}

}  // namespace

OmegaReport check_omega_requirements(const Axiomatization& e, const Term& t, const Term& u,
                                     const Alphabet& alphabet, std::size_t samples,
                                     std::uint64_t seed, int search_budget,
                                     const Axiomatization* obligations) {
  OmegaReport report;
  const Axiomatization& obl = obligations ? *obligations : e;
  InvertedMapping m = groote_mapping(t, u, alphabet, &obl);
  Substitution rho = m.rho();

  // requirement (1): R(rho(t)) = t and R(rho(u)) = u, structurally
  {
    Term rt = m.apply_r(substitute(t, rho));
    Term ru = m.apply_r(substitute(u, rho));
    report.requirement1 = rt == t && ru == u;
    if (!report.requirement1)
      report.failures.push_back({"1", "R(rho(side)) differs from the side"});
  }

  // sampling pool: base actions seen anywhere plus the fresh actions
  std::vector<Action> acts;
  {
    std::set<std::string> names = action_names(t);
    for (const auto& n : action_names(u)) names.insert(n);
    for (const Axiom& ax : obl.axioms()) {
      for (const auto& n : action_names(ax.lhs)) names.insert(n);
      for (const auto& n : action_names(ax.rhs)) names.insert(n);
    }
    if (names.empty()) names.insert(alphabet.mint({}));
    for (const auto& n : names) acts.push_back(Action::name(n));
    for (const auto& [v, n] : m.fresh) acts.push_back(Action::name(n));
  }

  std::mt19937_64 rng(seed);
  SearchOptions opts;
  opts.budget = search_budget;

  // requirement (2): E |- R(sigma(v)) <= R(sigma(w)) for sampled closed sigma
  report.requirement2 = true;
  for (const Axiom& ax : obl.axioms()) {
    std::set<std::string> vars = variables(ax.lhs);
    for (const auto& v : variables(ax.rhs)) vars.insert(v);
    std::set<std::string> metas;
    for (const Term* side : {&ax.lhs, &ax.rhs}) {
      std::function<void(const Term&)> rec = [&](const Term& x) {
        if (x.is_prefix()) {
          if (x.action().is_meta()) metas.insert(x.action().str());
          rec(x.body());
        } else if (x.is_sum()) {
          rec(x.left());
          rec(x.right());
        }
      };
      rec(*side);
    }
    for (std::size_t i = 0; i < samples; ++i) {
      Substitution sigma;
      for (const auto& v : vars) sigma.map_var(v, random_extended_term(rng, acts, 2));
      for (const auto& k : metas) sigma.map_action(k, acts[rng() % acts.size()]);
      Term lhs = substitute(ax.lhs, sigma);
      Term rhs = substitute(ax.rhs, sigma);
      if (contains_tau(lhs) || contains_tau(rhs)) continue;  // concrete axioms only
      auto fwd = discharge_r_image(e, ax, sigma, m, search_budget, false);
      bool ok = fwd.has_value();
      if (ok) check_derivation(e, *fwd);
      if (ok && ax.is_equation()) {
        auto bwd = discharge_r_image(e, ax, sigma, m, search_budget, true);
        ok = bwd.has_value();
        if (ok) check_derivation(e, *bwd);
      }
      ++report.samples_checked;
      if (!ok) {
        report.requirement2 = false;
        report.failures.push_back(
            {"2", ax.name + " instance: no derivation of " + render(m.apply_r(lhs)) + " <= " +
                      render(m.apply_r(rhs)) + " within budget"});
      }
    }
  }

  // requirement (3): choice and prefixing. From the hypotheses
  // R(p_i) <= R(q_i) one congruence rule application must conclude
  // R(f(p...)) <= R(f(q...)); for + and non-fresh prefixes that is a
  // structural identity, for fresh prefixes both images collapse to the
  // same variable.
  report.requirement3 = true;
  for (std::size_t i = 0; i < samples; ++i) {
    Term p1 = random_extended_term(rng, acts, 2), q1 = random_extended_term(rng, acts, 2);
    Term p2 = random_extended_term(rng, acts, 2), q2 = random_extended_term(rng, acts, 2);
    bool plus_ok = Term::sum(m.apply_r(p1), m.apply_r(p2)) == m.apply_r(Term::sum(p1, p2)) &&
                   Term::sum(m.apply_r(q1), m.apply_r(q2)) == m.apply_r(Term::sum(q1, q2));
    if (!plus_ok) {
      report.requirement3 = false;
      report.failures.push_back({"3", "choice case failed"});
    }
    const Action& a = acts[rng() % acts.size()];
    bool prefix_ok;
    if (m.is_fresh(a)) {
      prefix_ok = m.apply_r(Term::prefix(a, p1)) == m.apply_r(Term::prefix(a, q1));
    } else {
      prefix_ok = Term::prefix(a, m.apply_r(p1)) == m.apply_r(Term::prefix(a, p1)) &&
                  Term::prefix(a, m.apply_r(q1)) == m.apply_r(Term::prefix(a, q1));
    }
    if (!prefix_ok) {
      report.requirement3 = false;
      report.failures.push_back({"3", "prefix case failed"});
    }
    ++report.samples_checked;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Instance-level inversion of a closed derivation

Derivation invert_derivation(const Axiomatization& e, const InvertedMapping& m,
                             const Derivation& d, int search_budget) {
  switch (d.kind()) {
    case Derivation::Kind::Refl:
      return Derivation::refl(m.apply_r(d.lhs()));
    case Derivation::Kind::Trans:
      return Derivation::trans(invert_derivation(e, m, d.child(0), search_budget),
                               invert_derivation(e, m, d.child(1), search_budget));
    case Derivation::Kind::SumCong:
      return Derivation::sum_cong(invert_derivation(e, m, d.child(0), search_budget),
                                  invert_derivation(e, m, d.child(1), search_budget));
    case Derivation::Kind::Sym:
      return Derivation::sym(invert_derivation(e, m, d.child(0), search_budget));
    case Derivation::Kind::PrefixCong: {
      const Action& a = d.action();
      if (m.is_fresh(a)) {
        // R(a_y p) = y on both sides
        return Derivation::refl(Term::var(m.variable_for(a)));
      }
      return Derivation::prefix_cong(a, invert_derivation(e, m, d.child(0), search_budget));
    }
    case Derivation::Kind::AxiomInstance: {
      const Axiom& ax = e.by_name(d.axiom_name());
      auto discharged = discharge_r_image(e, ax, d.subst(), m, search_budget, d.reversed());
      if (!discharged)
        throw OmegaError("no discharge derivation for the R-image of " + d.axiom_name());
      return *discharged;
    }
  }
  throw OmegaError("unreachable");
}

}  // namespace bccs
