#include <algorithm>
#include <map>
#include <sstream>

#include "bccs/completeness.hpp"

namespace bccs {

namespace {

Derivation ifax(const std::string& name, const Substitution& s, bool reversed = false) {
  return Derivation::axiom_instance(if_gc().by_name(name), reversed, s);
}

Substitution if2_subst(const Action& a, const Term& x, const Term& y, const Term& z) {
  Substitution s;
  s.map_action("@a", a);
  s.map_var("x", x);
  s.map_var("y", y);
  s.map_var("z", z);
  return s;
}

Substitution if1_subst(const Action& a, const Term& x, const Term& y) {
  Substitution s;
  s.map_action("@a", a);
  s.map_var("x", x);
  s.map_var("y", y);
  return s;
}

// Sorted distinct canonical residuals of q after one action.
std::vector<Term> action_residuals(const Term& q, const Action& a) {
  TermSet set;
  for (auto& [act, r] : transitions(q))
    if (act == a) set.insert(ac_canonical(r));
  return std::vector<Term>(set.begin(), set.end());
}

std::vector<Action> visible_initial_actions(const Term& q) {
  std::vector<Action> out;
  std::set<std::string> names;
  for (auto& [act, r] : transitions(q))
    if (act.is_name()) names.insert(act.id());
  for (const auto& n : names) out.push_back(Action::name(n));
  return out;
}

// right-nested merge term r_i + (r_{i+1} + ...)
Term nested_sum(const std::vector<Term>& rs, std::size_t i) {
  if (i + 1 == rs.size()) return rs[i];
  return Term::sum(rs[i], nested_sum(rs, i + 1));
}

// Extends the summand list with a.(r_1+...+r_k) derivably (IF2 builds the
// suffix merges, reversed IF2 removes the intermediate ones). Every a.r_i
// must already occur in the list modulo AC. Returns the updated list and the
// derivation sum(list) == sum(new list).
std::pair<std::vector<Term>, Derivation> add_merged_summand(const std::vector<Term>& list,
                                                            const Action& a,
                                                            const std::vector<Term>& rs) {
  std::vector<Term> cur = list;
  std::vector<Derivation> pieces{Derivation::refl(Term::sum_of(cur))};
  if (rs.size() == 1) {
    cur.push_back(Term::prefix(a, rs[0]));
    pieces.push_back(Derivation::refl(Term::sum_of(cur)));  // duplicate modulo A3
    return {cur, chain_ac(std::move(pieces))};
  }

  // phase 1: build a.(suffix merge) for i = k-2 .. 0
  for (std::size_t i = rs.size() - 1; i-- > 0;) {
    Term suffix = nested_sum(rs, i + 1);
    Derivation inst = ifax("IF2", if2_subst(a, rs[i], suffix, Term::nil()));
    pieces.push_back(Derivation::sum_cong(Derivation::refl(Term::sum_of(cur)), inst));
    cur.push_back(Term::prefix(a, nested_sum(rs, i)));
  }

  // phase 2: remove the intermediates a.(r_{i}+...) for i = 1 .. k-2
  for (std::size_t i = 1; i + 1 < rs.size(); ++i) {
    Term target = Term::prefix(a, nested_sum(rs, i));
    auto it = std::find(cur.begin(), cur.end(), target);
    if (it == cur.end()) throw CompletenessError("internal: merge intermediate missing");
    std::vector<Term> rest(cur.begin(), it);
    rest.insert(rest.end(), it + 1, cur.end());
    Derivation inst = ifax("IF2", if2_subst(a, rs[i], nested_sum(rs, i + 1), Term::nil()), true);
    pieces.push_back(Derivation::sum_cong(Derivation::refl(Term::sum_of(rest)), inst));
    cur = std::move(rest);
  }
  return {cur, chain_ac(std::move(pieces))};
}

// Replaces one exact occurrence of `from` in the list by `to`, justified by
// the given derivation of from ==/<= to.
std::pair<std::vector<Term>, Derivation> rewrite_summand(const std::vector<Term>& list,
                                                         const Term& from, Derivation step) {
  auto it = std::find(list.begin(), list.end(), from);
  if (it == list.end()) throw CompletenessError("internal: summand to rewrite missing");
  std::vector<Term> rest(list.begin(), it);
  rest.insert(rest.end(), it + 1, list.end());
  std::vector<Term> next = rest;
  next.push_back(step.rhs());
  Derivation d = Derivation::sum_cong(Derivation::refl(Term::sum_of(rest)), std::move(step));
  return {next, std::move(d)};
}

}  // namespace

const Axiomatization& if_gc() {
  static const Axiomatization e = catalog("IF-gc", Alphabet::unbounded());
  return e;
}

// ---------------------------------------------------------------------------
// Saturation

Saturation saturate(const Term& q) {
  if (!is_closed(q)) throw CompletenessError("saturate requires a closed term");
  if (contains_tau(q)) throw CompletenessError("saturate requires a tau-free term");

  static std::map<Term, Saturation, TermLess> memo;
  Term cq = ac_canonical(q);
  auto hit = memo.find(cq);
  if (hit != memo.end()) {
    Saturation s = hit->second;
    if (!(q == cq)) s.derivation = trans_ac(by_ac(q, cq), s.derivation);
    return s;
  }

  std::vector<Term> list = summands(cq);
  std::vector<Derivation> pieces{Derivation::refl(cq)};

  for (const Action& a : visible_initial_actions(cq)) {
    std::vector<Term> rs = action_residuals(cq, a);
    auto [with_merge, d_merge] = add_merged_summand(list, a, rs);
    pieces.push_back(std::move(d_merge));
    list = std::move(with_merge);

    Term merged_body = nested_sum(rs, 0);
    Term merged = Term::prefix(a, merged_body);
    Term residual_sum = ac_canonical(merged_body);
    Saturation inner = saturate(residual_sum);
    Derivation body_step = trans_ac(by_ac(merged_body, residual_sum), inner.derivation);
    auto [next, d_rw] =
        rewrite_summand(list, merged, Derivation::prefix_cong(a, std::move(body_step)));
    pieces.push_back(std::move(d_rw));
    list = std::move(next);
  }

  Term saturated = ac_canonical(Term::sum_of(list));
  pieces.push_back(Derivation::refl(saturated));
  Saturation out{saturated, chain_ac(std::move(pieces))};
  memo.emplace(cq, out);
  if (!(q == cq)) out.derivation = trans_ac(by_ac(q, cq), out.derivation);
  return out;
}

Term residual_saturation(const Term& q, const Trace& trace) {
  if (contains_tau(q)) throw CompletenessError("residual saturation is tau-free only");
  std::vector<Term> rs = residuals(q, trace, Flavor::Strong);
  if (rs.empty() && !trace.empty())
    throw CompletenessError("residual saturation of an unrealizable trace");
  TermSet set;
  for (const Term& r : rs) set.insert(ac_canonical(r));
  std::vector<Term> sorted(set.begin(), set.end());
  return saturate(ac_canonical(Term::sum_of(sorted))).saturated;
}

// ---------------------------------------------------------------------------
// prove_if_ground

namespace {

struct PathStep {
  Action action;
  Term residual;  // canonical
};
using CompletedPath = std::vector<PathStep>;

void completed_paths_rec(const Term& t, CompletedPath& cur, std::vector<CompletedPath>& out) {
  auto trs = transitions(t);
  if (trs.empty()) {
    if (!cur.empty()) out.push_back(cur);
    return;
  }
  for (auto& [a, r] : trs) {
    cur.push_back({a, ac_canonical(r)});
    completed_paths_rec(cur.back().residual, cur, out);
    cur.pop_back();
  }
}

std::vector<CompletedPath> completed_paths(const Term& t) {
  std::vector<CompletedPath> out;
  CompletedPath cur;
  completed_paths_rec(ac_canonical(t), cur, out);
  return out;
}

struct PsiTable {
  // psi[l] for 1 <= l <= d, stored at index l-1; witnesses q^pi_l for l < d.
  std::vector<Term> psi;
  std::vector<Term> witness;
};

const RelationId if_pre{RelBase::IF, false, false};

PsiTable build_psi(const CompletedPath& pi, const Term& q) {
  std::size_t d = pi.size();
  PsiTable table;
  table.psi.assign(d, Term::nil());
  table.witness.assign(d, Term::nil());
  table.psi[d - 1] = Term::nil();
  for (std::size_t l = d - 1; l-- > 0;) {
    Trace sigma;
    for (std::size_t i = 0; i <= l; ++i) sigma.push_back(pi[i].action.id());
    TraceSet tp = traces(pi[l].residual);
    TermSet candidates;
    for (const Term& r : residuals(q, sigma, Flavor::Strong)) candidates.insert(ac_canonical(r));
    std::optional<Term> chosen;
    for (const Term& r : candidates) {
      TraceSet tr = traces(r);
      if (std::includes(tp.begin(), tp.end(), tr.begin(), tr.end())) {
        chosen = r;  // candidates iterate in AC order; first hit is least
        break;
      }
    }
    if (!chosen)
      throw CompletenessError("internal: no trace-dominated residual for " +
                              render(pi[l].residual));
    table.witness[l] = *chosen;
    table.psi[l] = Term::sum(*chosen, Term::prefix(pi[l + 1].action, table.psi[l + 1]));
    TraceSet tpsi = traces(table.psi[l]);
    if (!std::includes(tp.begin(), tp.end(), tpsi.begin(), tpsi.end()))
      throw CompletenessError("internal: psi trace invariant violated");
  }
  return table;
}

// Equation (1): a_l psi_l + q_{sigma,l-1} == q_{sigma,l-1}, downward induction.
Derivation eq1(const Term& q, const CompletedPath& pi, const PsiTable& table, std::size_t l) {
  std::size_t d = pi.size();
  Trace sigma_prev;
  for (std::size_t i = 0; i + 1 < l; ++i) sigma_prev.push_back(pi[i].action.id());
  Term q_prev = residual_saturation(q, sigma_prev);
  const Action& a = pi[l - 1].action;
  Term lhs = Term::sum(Term::prefix(a, table.psi[l - 1]), q_prev);

  if (l == d) {
    // psi_d = 0 and a_d.0 is a summand of q_prev modulo AC
    return by_ac(lhs, q_prev);
  }

  Trace sigma_cur = sigma_prev;
  sigma_cur.push_back(a.id());
  Term q_cur = residual_saturation(q, sigma_cur);
  Term witness = table.witness[l - 1];
  Term next_prefix = Term::prefix(pi[l].action, table.psi[l]);

  Derivation ih = eq1(q, pi, table, l + 1);  // a_{l+1} psi_{l+1} + q_cur == q_cur

  std::vector<Term> list = summands(q_prev);
  list.push_back(Term::prefix(a, table.psi[l - 1]));
  std::vector<Derivation> pieces{Derivation::refl(lhs)};
  pieces.push_back(Derivation::refl(Term::sum_of(list)));

  // expose copies of a.witness and a.q_cur (both occur in q_prev modulo AC)
  list.push_back(Term::prefix(a, witness));
  list.push_back(Term::prefix(a, q_cur));
  pieces.push_back(Derivation::refl(Term::sum_of(list)));

  // grow the q_cur copy into a.(a_{l+1} psi_{l+1} + q_cur) by reversed IH
  {
    Derivation grow = Derivation::prefix_cong(a, reverse_equational(ih));
    auto [next, d_rw] = rewrite_summand(list, Term::prefix(a, q_cur), std::move(grow));
    pieces.push_back(std::move(d_rw));
    list = std::move(next);
  }

  // drop a.psi_l by reversed IF2: a(x+y) + a.x + a(y+z) == a.x + a(y+z)
  {
    Term target = Term::prefix(a, table.psi[l - 1]);
    auto it = std::find(list.begin(), list.end(), target);
    if (it == list.end()) throw CompletenessError("internal: eq1 target missing");
    std::vector<Term> rest(list.begin(), it);
    rest.insert(rest.end(), it + 1, list.end());
    Derivation inst = ifax("IF2", if2_subst(a, witness, next_prefix, q_cur), true);
    pieces.push_back(Derivation::sum_cong(Derivation::refl(Term::sum_of(rest)), inst));
    list = std::move(rest);
    // the reversed instance also rebuilt a.witness + a.(a psi + q_cur); the
    // summand list already contains them modulo AC
  }

  // shrink a.(a_{l+1} psi_{l+1} + q_cur) back to a.q_cur by the IH
  {
    Term grown = Term::prefix(a, Term::sum(next_prefix, q_cur));
    auto [next, d_rw] = rewrite_summand(list, grown, Derivation::prefix_cong(a, ih));
    pieces.push_back(std::move(d_rw));
    list = std::move(next);
  }

  pieces.push_back(Derivation::refl(q_prev));
  return chain_ac(std::move(pieces));
}

// a.(x_1+...+x_n) <= a.x_1 + ... + a.x_n by iterated IF1.
Derivation if1_split(const Action& a, const std::vector<Term>& xs) {
  if (xs.size() == 1) return Derivation::refl(Term::prefix(a, xs[0]));
  std::vector<Term> tail(xs.begin() + 1, xs.end());
  Term head = xs.front();
  Term tail_sum = nested_sum(tail, 0);
  Derivation split = ifax("IF1", if1_subst(a, head, tail_sum));
  Derivation rest = if1_split(a, tail);
  Derivation step =
      Derivation::sum_cong(Derivation::refl(Term::prefix(a, head)), std::move(rest));
  Term stated = Term::prefix(a, nested_sum(xs, 0));
  std::vector<Term> out;
  for (const Term& x : xs) out.push_back(Term::prefix(a, x));
  return chain_ac({Derivation::refl(stated), std::move(split), std::move(step),
                   Derivation::refl(Term::sum_of(out))});
}

std::string describe_distinguishing_future(const Term& p, const Term& q) {
  for (const Trace& sigma : traces(p)) {
    for (const Term& pr : residuals(p, sigma, Flavor::Strong)) {
      TraceSet tp = traces(pr);
      bool matched = false;
      for (const Term& qr : residuals(q, sigma, Flavor::Strong)) {
        TraceSet tq = traces(qr);
        if (std::includes(tp.begin(), tp.end(), tq.begin(), tq.end())) matched = true;
      }
      if (!matched) {
        std::ostringstream os;
        os << "distinguishing impossible future: trace \"";
        for (std::size_t i = 0; i < sigma.size(); ++i) os << (i ? " " : "") << sigma[i];
        os << "\" with residual " << render(pr)
           << "; no residual of the right side has traces inside T(" << render(pr) << ")";
        return os.str();
      }
    }
  }
  return "right side is not above the left in the impossible-futures preorder";
}

}  // namespace

Derivation prove_if_ground(const Term& p, const Term& q) {
  if (!is_closed(p) || !is_closed(q))
    throw CompletenessError("prove_if_ground requires closed terms");
  if (contains_tau(p) || contains_tau(q))
    throw CompletenessError("prove_if_ground requires tau-free terms");
  if (!check_closed(if_pre, p, q))
    throw CompletenessError("precondition failed: " + describe_distinguishing_future(p, q));

  Term cp = ac_canonical(p);
  Term cq = ac_canonical(q);
  if (cp.is_nil()) {
    // q must be 0 modulo AC
    return by_ac(p, q);
  }

  Saturation sat = saturate(cq);

  // completed paths of p with psi tables
  std::vector<CompletedPath> paths = completed_paths(cp);
  std::vector<PsiTable> tables;
  tables.reserve(paths.size());
  for (const CompletedPath& pi : paths) tables.push_back(build_psi(pi, cq));

  // ---- equation (3): p <= p + q -------------------------------------------
  std::vector<Term> list3 = summands(cp);
  std::vector<Derivation> pieces3{Derivation::refl(cp)};
  std::vector<Action> acts = visible_initial_actions(cp);
  {
    std::vector<Action> acts_q = visible_initial_actions(cq);
    auto names = [](const std::vector<Action>& v) {
      std::vector<std::string> out;
      for (const Action& a : v) out.push_back(a.id());
      return out;
    };
    if (names(acts) != names(acts_q)) throw CompletenessError("internal: initials differ");
  }
  for (const Action& a : acts) {
    // p == p + a.(sum of p's a-residuals)
    std::vector<Term> rp = action_residuals(cp, a);
    auto [with_merge, d_merge] = add_merged_summand(list3, a, rp);
    pieces3.push_back(std::move(d_merge));
    list3 = std::move(with_merge);

    // recursive step: sum of p-residuals <= sum of q-residuals
    Term rp_term = nested_sum(rp, 0);
    std::vector<Term> rq = action_residuals(cq, a);
    Term rq_term = nested_sum(rq, 0);
    Derivation rec = prove_if_ground(ac_canonical(rp_term), ac_canonical(rq_term));
    Derivation body = chain_ac(
        {Derivation::refl(rp_term), std::move(rec), Derivation::refl(rq_term)});
    auto [next, d_rw] = rewrite_summand(list3, Term::prefix(a, rp_term),
                                        Derivation::prefix_cong(a, std::move(body)));
    pieces3.push_back(std::move(d_rw));
    list3 = std::move(next);

    // split a.(sum q-residuals) into q's own summands
    auto [next2, d_split] =
        rewrite_summand(list3, Term::prefix(a, rq_term), if1_split(a, rq));
    pieces3.push_back(std::move(d_split));
    list3.clear();
    for (const Term& t : next2)
      if (t.is_sum()) {
        for (const Term& s : summands(t)) list3.push_back(s);
      } else {
        list3.push_back(t);
      }
  }
  pieces3.push_back(Derivation::refl(Term::sum(cp, cq)));
  Derivation eq3 = chain_ac(std::move(pieces3));  // cp <= cp + cq

  // ---- equation (2): p <= sum over paths of a_1.psi_1 ----------------------
  // grouped per summand a.p' of p, recursing on p'
  std::vector<Derivation> per_summand;
  std::vector<Term> eq2_rhs_summands;
  for (const Term& s : summands(cp)) {
    const Action& a = s.action();
    Term pprime = s.body();  // canonical (cp is canonical)
    // paths of a.p' = paths of p with first step (a, p')
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < paths.size(); ++i)
      if (paths[i][0].action == a && paths[i][0].residual == pprime) indices.push_back(i);
    if (indices.empty()) throw CompletenessError("internal: summand without completed path");

    std::vector<Term> psis;
    for (std::size_t i : indices) psis.push_back(tables[i].psi[0]);
    Term psi_sum = nested_sum(psis, 0);

    Derivation rec = prove_if_ground(pprime, ac_canonical(psi_sum));
    Derivation body =
        chain_ac({Derivation::refl(pprime), std::move(rec), Derivation::refl(psi_sum)});
    Derivation d_s = Derivation::prefix_cong(a, std::move(body));  // a.p' <= a.(sum psi)
    d_s = trans_ac(std::move(d_s), if1_split(a, psis));
    for (const Term& x : psis) eq2_rhs_summands.push_back(Term::prefix(a, x));
    per_summand.push_back(std::move(d_s));
  }
  Derivation eq2 = per_summand.front();
  for (std::size_t i = 1; i < per_summand.size(); ++i)
    eq2 = Derivation::sum_cong(std::move(eq2), std::move(per_summand[i]));

  // ---- assembly ------------------------------------------------------------
  std::vector<Derivation> final_pieces;
  final_pieces.push_back(Derivation::refl(p));
  final_pieces.push_back(std::move(eq3));  // p <= p + q
  final_pieces.push_back(
      Derivation::sum_cong(Derivation::refl(cp), sat.derivation));  // p + q == p + q-bar
  final_pieces.push_back(
      Derivation::sum_cong(std::move(eq2), Derivation::refl(sat.saturated)));

  // absorb the a_1.psi_1 summands into q-bar, one path at a time
  std::vector<std::pair<Term, Derivation>> absorders;
  for (const Term& s : summands(cp)) {
    const Action& a = s.action();
    Term pprime = s.body();
    for (std::size_t i = 0; i < paths.size(); ++i)
      if (paths[i][0].action == a && paths[i][0].residual == pprime)
        absorders.emplace_back(Term::prefix(a, tables[i].psi[0]), eq1(cq, paths[i], tables[i], 1));
  }
  std::vector<Term> remaining = eq2_rhs_summands;
  for (auto& [summand, d_eq1] : absorders) {
    auto it = std::find(remaining.begin(), remaining.end(), summand);
    if (it == remaining.end()) throw CompletenessError("internal: absorb target missing");
    std::vector<Term> rest(remaining.begin(), it);
    rest.insert(rest.end(), it + 1, remaining.end());
    // d_eq1 : a.psi + q-bar == q-bar ; embed under the remaining summands
    Derivation piece = rest.empty()
                           ? std::move(d_eq1)
                           : Derivation::sum_cong(Derivation::refl(Term::sum_of(rest)),
                                                  std::move(d_eq1));
    final_pieces.push_back(std::move(piece));
    remaining = std::move(rest);
  }

  final_pieces.push_back(reverse_equational(sat.derivation));  // q-bar == q (canonical)
  final_pieces.push_back(Derivation::refl(q));
  return chain_ac(std::move(final_pieces));
}

// ---------------------------------------------------------------------------
// prove_weak_from_concrete

namespace {

bool tau_initial_term(const Term& t) {
  for (auto& [a, r] : transitions(t))
    if (a.is_tau()) return true;
  return false;
}

std::vector<Term> tau_bodies(const Term& normal) {
  std::vector<Term> out;
  for (const Term& s : summands(normal)) {
    if (!s.is_prefix() || !s.action().is_tau())
      throw CompletenessError("internal: tau-normal form expected");
    out.push_back(s.body());
  }
  return out;
}

// sum tau.t_i <= sum tau.u_j via the concrete prover on the a-prefixed sums
// and init-tau lifting.
Derivation case_tau_sums(const Axiomatization& e, const ConcreteProver& prover,
                         const std::vector<Term>& ts, const std::vector<Term>& us,
                         const Action& a) {
  std::vector<Term> ats, aus;
  for (const Term& t : ts) ats.push_back(Term::prefix(a, t));
  for (const Term& u : us) aus.push_back(Term::prefix(a, u));
  Term lhs_c = Term::sum_of(ats), rhs_c = Term::sum_of(aus);
  Derivation concrete = prover(lhs_c, rhs_c);
  Derivation lifted = lift_init_tau_derivation(e, concrete);
  // conclusion: init-tau of both sides, i.e. the tau-prefixed sums
  return lifted;
}

}  // namespace

Derivation prove_weak_from_concrete(const Axiomatization& e, const ConcreteProver& prover,
                                    const Term& p, const Term& q, const RelationId& rel,
                                    const Alphabet& alphabet) {
  if (!rel.weak) throw CompletenessError("prove_weak_from_concrete needs a weak relation");
  if (rel.equivalence)
    throw CompletenessError("prove_weak_from_concrete handles preorder relations");
  if (!is_closed(p) || !is_closed(q))
    throw CompletenessError("prove_weak_from_concrete requires closed terms");
  if (!check_closed(rel, p, q))
    throw CompletenessError("precondition failed: terms are not related under " + rel.str());

  Axiomatization ae = transform_weak(e, rel);
  Action a = alphabet.is_unbounded() ? alphabet.least() : Action::name(alphabet.names().front());

  TauElimination ep = eliminate_tau(p);
  TauElimination eq = eliminate_tau(q);
  bool pt = tau_initial_term(ep.normal);
  bool qt = tau_initial_term(eq.normal);

  auto finish = [&](std::vector<Derivation> pieces) {
    std::vector<Derivation> all;
    all.push_back(Derivation::refl(p));
    for (auto& d : pieces) all.push_back(std::move(d));
    all.push_back(Derivation::refl(q));
    return chain_ac(std::move(all));
  };

  if (!pt && !qt) {
    // case 1: both tau-free normal forms; delegate directly
    Derivation mid = prover(ep.normal, eq.normal);
    return finish({ep.derivation, std::move(mid), reverse_equational(eq.derivation)});
  }
  if (pt && qt) {
    // case 2
    Derivation mid = case_tau_sums(e, prover, tau_bodies(ep.normal), tau_bodies(eq.normal), a);
    return finish({ep.derivation, std::move(mid), reverse_equational(eq.derivation)});
  }
  if (!pt && qt) {
    // case 3: p <= tau.p (W1), then both-tau on {normal(p)} vs bodies of q
    if (!ae.contains("W1"))
      throw CompletenessError("transformed axiomatization lacks W1 for case 3");
    Substitution s;
    s.map_var("x", p);
    Derivation w1 = Derivation::axiom_instance(ae.by_name("W1"), false, s);
    Derivation tau_p = Derivation::prefix_cong(Action::tau(), ep.derivation);
    Derivation mid = case_tau_sums(e, prover, {ep.normal}, tau_bodies(eq.normal), a);
    return finish({std::move(w1), std::move(tau_p), std::move(mid),
                   reverse_equational(eq.derivation)});
  }
  // case 4: tau.q <= q (W2)
  if (!ae.contains("W2"))
    throw CompletenessError("transformed axiomatization lacks W2 for case 4");
  Substitution s;
  s.map_var("x", q);
  Derivation w2 = Derivation::axiom_instance(ae.by_name("W2"), false, s);
  Derivation mid = case_tau_sums(e, prover, tau_bodies(ep.normal), {eq.normal}, a);
  Derivation tau_q = Derivation::prefix_cong(Action::tau(), reverse_equational(eq.derivation));
  return finish({ep.derivation, std::move(mid), std::move(tau_q), std::move(w2)});
}

}  // namespace bccs
