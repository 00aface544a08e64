#include "bccs/semantics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace bccs {

std::string RelationId::str() const {
  std::string s = weak ? "w" : "";
  switch (base) {
    case RelBase::T: s += "t"; break;
    case RelBase::CT: s += "ct"; break;
    case RelBase::F: s += "f"; break;
    case RelBase::IF: s += "if"; break;
  }
  s += equivalence ? "-eq" : "-pre";
  return s;
}

RelationId parse_relation(const std::string& in) {
  RelationId r;
  std::string s = in;
  if (s.size() > 4 && s.substr(s.size() - 4) == "-pre") {
    s = s.substr(0, s.size() - 4);
  } else if (s.size() > 3 && s.substr(s.size() - 3) == "-eq") {
    r.equivalence = true;
    s = s.substr(0, s.size() - 3);
  }
  if (!s.empty() && s[0] == 'w') {
    r.weak = true;
    s = s.substr(1);
  }
  if (s == "t") r.base = RelBase::T;
  else if (s == "ct") r.base = RelBase::CT;
  else if (s == "f") r.base = RelBase::F;
  else if (s == "if") r.base = RelBase::IF;
  else throw SemanticsError("unknown relation: " + in);
  return r;
}

// ---------------------------------------------------------------------------
// Transitions

std::vector<std::pair<Action, Term>> transitions(const Term& t) {
  std::vector<std::pair<Action, Term>> out;
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      break;
    case Term::Kind::Prefix:
      if (t.action().is_meta())
        throw SemanticsError("transitions of a term with action metavariable " +
                             t.action().str());
      out.emplace_back(t.action(), t.body());
      break;
    case Term::Kind::Sum: {
      for (auto side : {t.left(), t.right()})
        for (auto& tr : transitions(side)) out.push_back(tr);
      break;
    }
  }
  // set semantics: drop structural duplicates
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int c = compare(a.first, b.first);
    if (c != 0) return c < 0;
    return compare(a.second, b.second) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& a, const auto& b) {
                          return a.first == b.first && a.second == b.second;
                        }),
            out.end());
  return out;
}

namespace {

void insert_term(std::vector<Term>& v, const Term& t) {
  for (const Term& u : v)
    if (u == t) return;
  v.push_back(t);
}

}  // namespace

std::vector<Term> tau_closure(const Term& t) {
  std::vector<Term> out{t};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto& [a, u] : transitions(out[i]))
      if (a.is_tau()) insert_term(out, u);
  return out;
}

std::vector<Term> tau_step_residuals(const Term& t) {
  std::vector<Term> out;
  for (const Term& s : tau_closure(t))
    for (auto& [a, u] : transitions(s))
      if (a.is_tau()) insert_term(out, u);
  return out;
}

// ---------------------------------------------------------------------------
// Observations

ObservationKind parse_observation_kind(const std::string& s) {
  if (s == "initials") return ObservationKind::Initials;
  if (s == "traces" || s == "t") return ObservationKind::Traces;
  if (s == "ct") return ObservationKind::CompletedTraces;
  if (s == "wt") return ObservationKind::WeakTraces;
  if (s == "wct") return ObservationKind::WeakCompletedTraces;
  if (s == "wtv") return ObservationKind::WeakTracesEndingInVariable;
  throw SemanticsError("unknown observation kind: " + s);
}

namespace {

void require_tau_free(const Term& t, const char* who) {
  if (contains_tau(t))
    throw SemanticsError(std::string(who) + " is defined on tau-free terms only");
}

// Strong traces; completed-only keeps traces ending in a transition-free state.
void strong_traces(const Term& t, Trace& prefix, bool completed_only, TraceSet& out) {
  auto trs = transitions(t);
  if (!completed_only || trs.empty()) out.insert(prefix);
  for (auto& [a, u] : trs) {
    prefix.push_back(a.str());
    strong_traces(u, prefix, completed_only, out);
    prefix.pop_back();
  }
}

// Weak traces. When vars_as_actions, a variable occurrence x is read as the
// subterm x.0 with x a concrete action: it fires its name and stops.
void weak_traces_rec(const Term& t, Trace& prefix, bool completed_only, bool vars_as_actions,
                     TraceSet& out) {
  for (const Term& s : tau_closure(t)) {
    if (completed_only) {
      if (transitions(s).empty() && (!vars_as_actions || initial_variables(s).empty()))
        out.insert(prefix);
    } else {
      out.insert(prefix);
    }
    for (auto& [a, u] : transitions(s)) {
      if (a.is_tau()) continue;
      prefix.push_back(a.str());
      weak_traces_rec(u, prefix, completed_only, vars_as_actions, out);
      prefix.pop_back();
    }
    if (vars_as_actions) {
      for (const auto& x : initial_variables(s)) {
        prefix.push_back(x);
        out.insert(prefix);  // after x the pseudo-subterm x.0 is spent
        prefix.pop_back();
      }
    }
  }
}

}  // namespace

TraceSet traces(const Term& t) {
  require_tau_free(t, "Traces");
  TraceSet out;
  Trace p;
  strong_traces(t, p, false, out);
  return out;
}

TraceSet completed_traces(const Term& t) {
  require_tau_free(t, "CompletedTraces");
  TraceSet out;
  Trace p;
  strong_traces(t, p, true, out);
  return out;
}

TraceSet weak_traces(const Term& t) {
  TraceSet out;
  Trace p;
  weak_traces_rec(t, p, false, false, out);
  return out;
}

TraceSet weak_completed_traces(const Term& t) {
  TraceSet out;
  Trace p;
  weak_traces_rec(t, p, true, false, out);
  return out;
}

TraceSet extended_weak_traces(const Term& t) {
  TraceSet out;
  Trace p;
  weak_traces_rec(t, p, false, true, out);
  return out;
}

TraceSet weak_traces_ending_in_variable(const Term& t) {
  TraceSet out;
  for (const Trace& tr : extended_weak_traces(t))
    if (!tr.empty() && is_variable_identifier(tr.back())) out.insert(tr);
  return out;
}

std::set<std::string> initials_tokens(const Term& t) {
  std::set<std::string> out;
  for (auto& [a, u] : transitions(t)) out.insert(a.str());
  return out;
}

bool has_tau_step(const Term& t) {
  for (auto& [a, u] : transitions(t))
    if (a.is_tau()) return true;
  return false;
}

TraceSet observe(ObservationKind kind, const Term& t) {
  switch (kind) {
    case ObservationKind::Initials: {
      TraceSet out;
      for (const auto& s : initials_tokens(t)) out.insert(Trace{s});
      return out;
    }
    case ObservationKind::Traces: return traces(t);
    case ObservationKind::CompletedTraces: return completed_traces(t);
    case ObservationKind::WeakTraces: return weak_traces(t);
    case ObservationKind::WeakCompletedTraces: return weak_completed_traces(t);
    case ObservationKind::WeakTracesEndingInVariable:
      return weak_traces_ending_in_variable(t);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Residuals

std::vector<Term> residuals(const Term& t, const Trace& trace, Flavor flavor) {
  std::vector<Term> cur;
  if (flavor == Flavor::Weak) {
    cur = tau_closure(t);
  } else {
    cur = {t};
  }
  for (const std::string& tok : trace) {
    if (tok == "tau" || is_variable_identifier(tok))
      throw SemanticsError("residual traces range over visible actions");
    std::vector<Term> next;
    for (const Term& s : cur)
      for (auto& [a, u] : transitions(s))
        if (a.is_name() && a.id() == tok) {
          if (flavor == Flavor::Weak) {
            for (const Term& v : tau_closure(u)) insert_term(next, v);
          } else {
            insert_term(next, u);
          }
        }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// check_closed

namespace {

std::set<std::string> visible_initials(const Term& t) {
  std::set<std::string> out;
  for (auto& [a, u] : transitions(t))
    if (a.is_name()) out.insert(a.id());
  return out;
}

bool stable(const Term& t) { return !has_tau_step(t); }

// All traces of p in the given flavor (visible tokens only).
TraceSet flavored_traces(const Term& t, Flavor f) {
  return f == Flavor::Weak ? weak_traces(t) : traces(t);
}

bool subset(const TraceSet& a, const TraceSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Failures: for every (stable, in the weak case) p' after s there is a
// (stable) q' after s with I(q') included in I(p').
bool failures_leq(const Term& p, const Term& q, Flavor f) {
  for (const Trace& s : flavored_traces(p, f)) {
    for (const Term& pr : residuals(p, s, f)) {
      if (f == Flavor::Weak && !stable(pr)) continue;
      auto ip = visible_initials(pr);
      bool matched = false;
      for (const Term& qr : residuals(q, s, f)) {
        if (f == Flavor::Weak && !stable(qr)) continue;
        auto iq = visible_initials(qr);
        if (std::includes(ip.begin(), ip.end(), iq.begin(), iq.end())) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
  }
  return true;
}

bool impossible_futures_leq(const Term& p, const Term& q, Flavor f) {
  for (const Trace& s : flavored_traces(p, f)) {
    for (const Term& pr : residuals(p, s, f)) {
      TraceSet tp = flavored_traces(pr, f);
      bool matched = false;
      for (const Term& qr : residuals(q, s, f)) {
        if (subset(flavored_traces(qr, f), tp)) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
  }
  return true;
}

bool check_closed_preorder(const RelationId& rel, const Term& p, const Term& q) {
  Flavor f = rel.weak ? Flavor::Weak : Flavor::Strong;
  switch (rel.base) {
    case RelBase::T:
      return subset(flavored_traces(p, f), flavored_traces(q, f));
    case RelBase::CT:
      if (!rel.weak) return subset(completed_traces(p), completed_traces(q));
      if (has_tau_step(p) && !has_tau_step(q)) return false;
      return subset(weak_completed_traces(p), weak_completed_traces(q));
    case RelBase::F:
      if (rel.weak && has_tau_step(p) && !has_tau_step(q)) return false;
      return failures_leq(p, q, f);
    case RelBase::IF:
      if (rel.weak) {
        if (has_tau_step(p) && !has_tau_step(q)) return false;
        if (weak_traces(p) != weak_traces(q)) return false;
      }
      return impossible_futures_leq(p, q, f);
  }
  return false;
}

}  // namespace

bool check_closed(const RelationId& rel, const Term& p, const Term& q) {
  if (!is_closed(p) || !is_closed(q))
    throw SemanticsError("check_closed requires closed terms");
  if (has_metavariables(p) || has_metavariables(q))
    throw SemanticsError("check_closed requires metavariable-free terms");
  if (!rel.weak && (contains_tau(p) || contains_tau(q)))
    throw SemanticsError("strong relation " + rel.str() + " rejects terms containing tau");
  if (!check_closed_preorder(rel, p, q)) return false;
  if (rel.equivalence) return check_closed_preorder(rel, q, p);
  return true;
}

// ---------------------------------------------------------------------------
// check_oracle

namespace {

std::size_t node_count(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      return 1;
    case Term::Kind::Prefix:
      return 1 + node_count(t.body());
    case Term::Kind::Sum:
      return 1 + node_count(t.left()) + node_count(t.right());
  }
  return 1;
}

// Literal failure-pair inclusion with B ranging over subsets of A.
bool oracle_failures_leq(const Term& p, const Term& q, Flavor f,
                         const std::vector<std::string>& alphabet) {
  TraceSet all = flavored_traces(p, f);
  std::size_t n = alphabet.size();
  if (n > 20) throw SemanticsError("oracle alphabet too large");
  for (const Trace& s : all) {
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      std::set<std::string> refused;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1ull << i)) refused.insert(alphabet[i]);
      auto is_failure_pair = [&](const Term& t) {
        for (const Term& r : residuals(t, s, f)) {
          if (f == Flavor::Weak && !stable(r)) continue;
          bool disjoint = true;
          for (const auto& a : visible_initials(r))
            if (refused.count(a)) disjoint = false;
          if (disjoint) return true;
        }
        return false;
      };
      if (is_failure_pair(p) && !is_failure_pair(q)) return false;
    }
  }
  return true;
}

// Literal impossible-futures inclusion; B ranges over all subsets of the
// union of the residual trace sets of p and q after each trace.
bool oracle_if_leq(const Term& p, const Term& q, Flavor f) {
  TraceSet all = flavored_traces(p, f);
  for (const Trace& s : all) {
    std::vector<TraceSet> tps, tqs;
    for (const Term& r : residuals(p, s, f)) tps.push_back(flavored_traces(r, f));
    for (const Term& r : residuals(q, s, f)) tqs.push_back(flavored_traces(r, f));
    std::vector<Trace> universe;
    {
      TraceSet u;
      for (auto& ts : tps) u.insert(ts.begin(), ts.end());
      for (auto& ts : tqs) u.insert(ts.begin(), ts.end());
      universe.assign(u.begin(), u.end());
    }
    if (universe.size() > 24) throw SemanticsError("oracle trace universe too large");
    for (std::uint64_t mask = 0; mask < (1ull << universe.size()); ++mask) {
      std::set<Trace> b;
      for (std::size_t i = 0; i < universe.size(); ++i)
        if (mask & (1ull << i)) b.insert(universe[i]);
      auto admits = [&](const std::vector<TraceSet>& sets) {
        for (const auto& ts : sets) {
          bool disjoint = true;
          for (const Trace& x : ts)
            if (b.count(x)) {
              disjoint = false;
              break;
            }
          if (disjoint) return true;
        }
        return false;
      };
      if (admits(tps) && !admits(tqs)) return false;
    }
  }
  return true;
}

bool oracle_preorder(const RelationId& rel, const Term& p, const Term& q,
                     const Alphabet& alphabet) {
  Flavor f = rel.weak ? Flavor::Weak : Flavor::Strong;
  switch (rel.base) {
    case RelBase::T:
      return subset(flavored_traces(p, f), flavored_traces(q, f));
    case RelBase::CT:
      if (!rel.weak) return subset(completed_traces(p), completed_traces(q));
      if (has_tau_step(p) && !has_tau_step(q)) return false;
      return subset(weak_completed_traces(p), weak_completed_traces(q));
    case RelBase::F: {
      if (rel.weak && has_tau_step(p) && !has_tau_step(q)) return false;
      std::vector<std::string> names = alphabet.names();
      return oracle_failures_leq(p, q, f, names);
    }
    case RelBase::IF:
      if (rel.weak) {
        if (has_tau_step(p) && !has_tau_step(q)) return false;
        if (weak_traces(p) != weak_traces(q)) return false;
      }
      return oracle_if_leq(p, q, f);
  }
  return false;
}

}  // namespace

bool check_oracle(const RelationId& rel, const Term& p, const Term& q,
                  const Alphabet& alphabet, std::size_t node_budget) {
  if (!is_closed(p) || !is_closed(q))
    throw SemanticsError("check_oracle requires closed terms");
  if (node_count(p) + node_count(q) > node_budget)
    throw SemanticsError("check_oracle node budget exceeded");
  if (!rel.weak && (contains_tau(p) || contains_tau(q)))
    throw SemanticsError("strong relation " + rel.str() + " rejects terms containing tau");
  if (!oracle_preorder(rel, p, q, alphabet)) return false;
  if (rel.equivalence) return oracle_preorder(rel, q, p, alphabet);
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Term> enumerate_closed_terms(const Alphabet& alphabet, const EnumOptions& opts) {
  if (alphabet.is_unbounded())
    throw SemanticsError("enumeration requires a finite alphabet");
  std::vector<Action> acts;
  for (const auto& n : alphabet.names()) acts.push_back(Action::name(n));
  if (opts.include_tau) acts.push_back(Action::tau());

  // terms[d] = all canonical terms of depth <= d
  std::vector<Term> cur{Term::nil()};
  for (int d = 1; d <= opts.max_depth; ++d) {
    std::vector<Term> summand_pool;
    for (const Action& a : acts)
      for (const Term& body : cur) summand_pool.push_back(Term::prefix(a, body));
    std::sort(summand_pool.begin(), summand_pool.end(), TermLess{});
    std::vector<Term> next{Term::nil()};
    // all subsets of the pool of size <= max_branching
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (!idx.empty()) {
        std::vector<Term> xs;
        for (auto i : idx) xs.push_back(summand_pool[i]);
        next.push_back(Term::sum_of(xs));
      }
      if ((int)idx.size() == opts.max_branching) return;
      for (std::size_t i = start; i < summand_pool.size(); ++i) {
        idx.push_back(i);
        rec(i + 1);
        idx.pop_back();
      }
    };
    rec(0);
    cur = std::move(next);
    std::sort(cur.begin(), cur.end(), TermLess{});
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  }
  return cur;
}

// ---------------------------------------------------------------------------
// refute_open

RefutationReport refute_open(const RelationId& rel, const Term& t, const Term& u,
                             const Alphabet& alphabet, int bound,
                             std::uint64_t sample_cap, std::uint64_t seed) {
  Alphabet alpha = alphabet;
  if (alphabet.is_unbounded()) {
    // occurring names plus one fresh one
    std::set<std::string> names = action_names(t);
    for (const auto& n : action_names(u)) names.insert(n);
    std::vector<std::string> v(names.begin(), names.end());
    v.push_back(alphabet.mint(names));
    alpha = Alphabet::finite(v);
  }

  std::set<std::string> vars = variables(t);
  for (const auto& v : variables(u)) vars.insert(v);
  std::vector<std::string> var_list(vars.begin(), vars.end());

  // action metavariables to instantiate over the alphabet
  std::set<std::string> metas;
  for (const Term* side : {&t, &u}) {
    std::function<void(const Term&)> rec = [&](const Term& x) {
      switch (x.kind()) {
        case Term::Kind::Prefix:
          if (x.action().is_meta()) metas.insert(x.action().str());
          rec(x.body());
          break;
        case Term::Kind::Sum:
          rec(x.left());
          rec(x.right());
          break;
        default:
          break;
      }
    };
    rec(*side);
  }
  std::vector<std::string> meta_list(metas.begin(), metas.end());

  EnumOptions opts;
  opts.max_depth = bound;
  opts.max_branching = 2;
  opts.include_tau = rel.weak;
  std::vector<Term> candidates = enumerate_closed_terms(alpha, opts);

  std::vector<Action> meta_candidates;
  for (const auto& n : alpha.names()) meta_candidates.push_back(Action::name(n));
  // @@-metas may also be instantiated by tau in weak sessions
  std::vector<Action> meta_any_candidates = meta_candidates;
  if (rel.weak) meta_any_candidates.push_back(Action::tau());

  auto meta_options = [&](const std::string& key) -> const std::vector<Action>& {
    return key.rfind("@@", 0) == 0 ? meta_any_candidates : meta_candidates;
  };

  // total assignment count
  long double total_ld = 1.0L;
  for (std::size_t i = 0; i < var_list.size(); ++i) total_ld *= candidates.size();
  for (const auto& m : meta_list) total_ld *= meta_options(m).size();
  bool exhaustive = total_ld <= (long double)sample_cap;

  RefutationReport report;
  report.exhaustive = exhaustive;

  auto run_one = [&](const Substitution& s) -> bool {
    Term pt = substitute(t, s);
    Term qu = substitute(u, s);
    if (!check_closed(rel, pt, qu)) {
      Counterexample ce;
      ce.subst = s;
      ce.detail = render(pt) + " is not related to " + render(qu);
      report.counterexample = ce;
      return true;
    }
    return false;
  };

  if (exhaustive) {
    std::uint64_t total = (std::uint64_t)total_ld;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      Substitution s;
      for (const auto& v : var_list) {
        s.map_var(v, candidates[c % candidates.size()]);
        c /= candidates.size();
      }
      for (const auto& m : meta_list) {
        const auto& opts_m = meta_options(m);
        s.map_action(m, opts_m[c % opts_m.size()]);
        c /= opts_m.size();
      }
      ++report.checked;
      if (run_one(s)) return report;
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < sample_cap; ++i) {
    Substitution s;
    for (const auto& v : var_list) s.map_var(v, candidates[rng() % candidates.size()]);
    for (const auto& m : meta_list) {
      const auto& opts_m = meta_options(m);
      s.map_action(m, opts_m[rng() % opts_m.size()]);
    }
    ++report.checked;
    if (run_one(s)) return report;
  }
  return report;
}

Term random_closed_term(std::mt19937_64& rng, const Alphabet& alphabet, int max_depth,
                        int max_branching, bool include_tau) {
  std::vector<Action> acts;
  for (const auto& n : alphabet.names()) acts.push_back(Action::name(n));
  if (include_tau) acts.push_back(Action::tau());
  std::function<Term(int)> gen = [&](int d) -> Term {
    if (d == 0) return Term::nil();
    std::size_t k = rng() % (max_branching + 1);
    std::vector<Term> xs;
    for (std::size_t i = 0; i < k; ++i) {
      const Action& a = acts[rng() % acts.size()];
      xs.push_back(Term::prefix(a, gen(d - 1)));
    }
    return Term::sum_of(xs);
  };
  return gen(max_depth);
}

}  // namespace bccs
