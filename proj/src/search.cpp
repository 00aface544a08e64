#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "bccs/proofs.hpp"

namespace bccs {

// ---------------------------------------------------------------------------
// AC matching: find substitutions s with ac_canonical(s(pattern)) == subject.
// The subject must be canonical. Bare pattern variables at sum level absorb
// the uncovered summands; non-variable pattern summands may share a subject
// summand (matching modulo A3), and A4 lets variables absorb nothing.

namespace {

void match_rec(const Term& pattern, const Term& subject, Substitution s,
               std::vector<Substitution>& out);

void match_action(const Action& pa, const Action& ua, const Substitution& s,
                  std::vector<Substitution>& next) {
  if (pa.is_meta()) {
    if (auto bound = s.lookup_action(pa.str())) {
      if (*bound == ua) next.push_back(s);
      return;
    }
    if (pa.kind() == Action::Kind::MetaVisible && !ua.is_visible_name()) return;
    Substitution s2 = s;
    s2.map_action(pa.str(), ua);
    next.push_back(std::move(s2));
    return;
  }
  if (pa == ua) next.push_back(s);
}

void match_var(const std::string& name, const Term& value, const Substitution& s,
               std::vector<Substitution>& out) {
  if (auto bound = s.lookup_var(name)) {
    if (ac_canonical(*bound) == ac_canonical(value)) out.push_back(s);
    return;
  }
  Substitution s2 = s;
  s2.map_var(name, value);
  out.push_back(std::move(s2));
}

// Assign each non-variable pattern summand to some subject summand and each
// uncovered subject summand to one of the bare pattern variables.
void match_sum(const std::vector<Term>& ps, const std::vector<Term>& us, const Substitution& s,
               std::vector<Substitution>& out) {
  std::vector<Term> nonvars, vars;
  for (const Term& p : ps) (p.is_var() ? vars : nonvars).push_back(p);

  // choice[i] = subject index for nonvars[i]
  std::vector<std::size_t> choice(nonvars.size(), 0);
  std::function<void(std::size_t, const Substitution&)> assign = [&](std::size_t i,
                                                                     const Substitution& cur) {
    if (i == nonvars.size()) {
      std::vector<bool> covered(us.size(), false);
      for (std::size_t k = 0; k < nonvars.size(); ++k) covered[choice[k]] = true;
      std::vector<std::size_t> uncovered;
      for (std::size_t k = 0; k < us.size(); ++k)
        if (!covered[k]) uncovered.push_back(k);

      if (vars.empty()) {
        if (uncovered.empty()) out.push_back(cur);
        return;
      }
      // distribute uncovered summands over the variable summands
      std::vector<std::size_t> owner(uncovered.size(), 0);
      std::function<void(std::size_t)> distribute = [&](std::size_t j) {
        if (j == uncovered.size()) {
          Substitution s2 = cur;
          bool ok = true;
          for (std::size_t v = 0; v < vars.size() && ok; ++v) {
            std::vector<Term> pieces;
            for (std::size_t u = 0; u < uncovered.size(); ++u)
              if (owner[u] == v) pieces.push_back(us[uncovered[u]]);
            Term val = ac_canonical(Term::sum_of(pieces));
            const std::string& name = vars[v].var_name();
            if (auto bound = s2.lookup_var(name)) {
              if (ac_canonical(*bound) != val) ok = false;
            } else {
              s2.map_var(name, val);
            }
          }
          if (ok) out.push_back(std::move(s2));
          return;
        }
        for (std::size_t v = 0; v < vars.size(); ++v) {
          owner[j] = v;
          distribute(j + 1);
        }
      };
      distribute(0);
      return;
    }
    for (std::size_t k = 0; k < us.size(); ++k) {
      choice[i] = k;
      std::vector<Substitution> next;
      match_rec(nonvars[i], us[k], cur, next);
      for (Substitution& s2 : next) assign(i + 1, s2);
    }
  };
  assign(0, s);
}

void match_rec(const Term& pattern, const Term& subject, Substitution s,
               std::vector<Substitution>& out) {
  switch (pattern.kind()) {
    case Term::Kind::Var:
      match_var(pattern.var_name(), subject, s, out);
      return;
    case Term::Kind::Nil:
      if (subject.is_nil()) out.push_back(std::move(s));
      return;
    case Term::Kind::Prefix: {
      if (!subject.is_prefix()) return;
      std::vector<Substitution> next;
      match_action(pattern.action(), subject.action(), s, next);
      for (Substitution& s2 : next) match_rec(pattern.body(), subject.body(), std::move(s2), out);
      return;
    }
    case Term::Kind::Sum: {
      std::vector<Term> ps = summands(pattern);
      std::vector<Term> us = summands(subject);
      match_sum(ps, us, s, out);
      return;
    }
  }
}

}  // namespace

std::vector<Substitution> ac_match(const Term& pattern, const Term& subject) {
  std::vector<Substitution> raw;
  match_rec(pattern, subject, Substitution{}, raw);
  // verify and deduplicate
  std::vector<Substitution> out;
  for (const Substitution& s : raw) {
    if (ac_canonical(substitute(pattern, s)) != subject) continue;
    bool dup = false;
    for (const Substitution& t : out)
      if (t == s) dup = true;
    if (!dup) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounded BFS

namespace {

std::size_t term_size(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      return 1;
    case Term::Kind::Prefix:
      return 1 + term_size(t.body());
    case Term::Kind::Sum:
      return 1 + term_size(t.left()) + term_size(t.right());
  }
  return 1;
}

void all_paths(const Term& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  switch (t.kind()) {
    case Term::Kind::Prefix:
      cur.push_back(0);
      all_paths(t.body(), cur, out);
      cur.pop_back();
      break;
    case Term::Kind::Sum:
      cur.push_back(0);
      all_paths(t.left(), cur, out);
      cur.back() = 1;
      all_paths(t.right(), cur, out);
      cur.pop_back();
      break;
    default:
      break;
  }
}

Term subterm(const Term& t, const Path& path) {
  Term cur = t;
  for (int sel : path) {
    if (cur.is_prefix()) cur = cur.body();
    else if (cur.is_sum()) cur = sel == 0 ? cur.left() : cur.right();
    else throw ProofError("bad path");
  }
  return cur;
}

Term replace(const Term& t, const Path& path, std::size_t i, const Term& repl) {
  if (i == path.size()) return repl;
  if (t.is_prefix()) return Term::prefix(t.action(), replace(t.body(), path, i + 1, repl));
  if (t.is_sum()) {
    if (path[i] == 0) return Term::sum(replace(t.left(), path, i + 1, repl), t.right());
    return Term::sum(t.left(), replace(t.right(), path, i + 1, repl));
  }
  throw ProofError("bad path");
}

struct Move {
  std::size_t parent;
  std::string axiom;
  bool reversed;
  Path position;
  Substitution subst;
};

bool is_core_name(const std::string& n) {
  return n == "A1" || n == "A2" || n == "A3" || n == "A4";
}

// Subterms of the goal side used to instantiate variables that occur only in
// the oriented right-hand side (e.g. the y of CT1 or W1').
std::vector<Term> rhs_candidates(const Term& goal_rhs) {
  std::vector<Term> out{Term::nil()};
  std::function<void(const Term&)> rec = [&](const Term& t) {
    bool seen = false;
    for (const Term& u : out)
      if (u == t) seen = true;
    if (!seen) out.push_back(t);
    switch (t.kind()) {
      case Term::Kind::Prefix:
        rec(t.body());
        break;
      case Term::Kind::Sum:
        rec(t.left());
        rec(t.right());
        break;
      default:
        break;
    }
  };
  rec(ac_canonical(goal_rhs));
  return out;
}

}  // namespace

SearchResult search_derivation(const Axiomatization& e, const Term& goal_lhs,
                               const Term& goal_rhs, const SearchOptions& options) {
  SearchResult result;
  Term start = ac_canonical(goal_lhs);
  Term target = ac_canonical(goal_rhs);

  if (start == target) {
    result.derivation = by_ac(goal_lhs, goal_rhs);
    result.exhausted_completely = true;
    return result;
  }

  std::size_t size_cap =
      std::max(term_size(start), term_size(target)) + static_cast<std::size_t>(options.size_slack);
  std::vector<Term> extra_bindings = rhs_candidates(goal_rhs);

  std::vector<Term> states{start};
  std::vector<std::optional<Move>> moves{std::nullopt};
  std::vector<int> depth_of{0};
  std::map<Term, std::size_t, TermLess> visited{{start, 0}};
  std::deque<std::size_t> queue{0};
  bool truncated = false;

  std::optional<std::size_t> found;
  while (!queue.empty() && !found) {
    std::size_t cur = queue.front();
    queue.pop_front();
    if (depth_of[cur] >= options.budget) continue;
    if (states.size() > options.max_expansions) {
      truncated = true;
      break;
    }
    const Term state = states[cur];
    std::vector<Path> paths;
    Path tmp;
    all_paths(state, tmp, paths);

    for (const Axiom& ax : e.axioms()) {
      if (is_core_name(ax.name)) continue;  // identities on canonical states
      for (bool reversed : {false, true}) {
        if (reversed && !ax.is_equation()) continue;
        const Term& from_side = reversed ? ax.rhs : ax.lhs;
        const Term& to_side = reversed ? ax.lhs : ax.rhs;
        for (const Path& pos : paths) {
          Term sub = subterm(state, pos);
          for (Substitution s : ac_match(from_side, sub)) {
            // bind variables that occur only in the target side
            std::set<std::string> missing;
            for (const std::string& v : variables(to_side))
              if (!s.lookup_var(v)) missing.insert(v);
            std::vector<Substitution> candidates;
            if (missing.empty()) {
              candidates.push_back(std::move(s));
            } else {
              std::vector<std::string> mv(missing.begin(), missing.end());
              std::vector<std::size_t> idx(mv.size(), 0);
              for (;;) {
                Substitution s2 = s;
                for (std::size_t i = 0; i < mv.size(); ++i)
                  s2.map_var(mv[i], extra_bindings[idx[i]]);
                candidates.push_back(std::move(s2));
                std::size_t i = 0;
                for (; i < mv.size(); ++i) {
                  if (++idx[i] < extra_bindings.size()) break;
                  idx[i] = 0;
                }
                if (i == mv.size()) break;
              }
            }
            for (Substitution& s2 : candidates) {
              Term raw = replace(state, pos, 0, substitute(to_side, s2));
              Term next = ac_canonical(raw);
              if (term_size(next) > size_cap) {
                truncated = true;
                continue;
              }
              if (visited.count(next)) continue;
              states.push_back(next);
              moves.push_back(Move{cur, ax.name, reversed, pos, s2});
              depth_of.push_back(depth_of[cur] + 1);
              visited[next] = states.size() - 1;
              if (next == target) {
                found = states.size() - 1;
                break;
              }
              queue.push_back(states.size() - 1);
            }
            if (found) break;
          }
          if (found) break;
        }
        if (found) break;
      }
      if (found) break;
    }
  }

  result.expanded = states.size();
  result.exhausted_completely = !found && !truncated && queue.empty();
  if (!found) return result;

  // reconstruct: chain of (by_ac to positioned redex) + axiom step per move
  std::vector<std::size_t> chain_idx;
  for (std::size_t i = *found; moves[i]; i = moves[i]->parent) chain_idx.push_back(i);
  std::reverse(chain_idx.begin(), chain_idx.end());

  std::vector<Derivation> pieces;
  pieces.push_back(by_ac(goal_lhs, start));
  Term cur = start;
  for (std::size_t i : chain_idx) {
    const Move& m = *moves[i];
    const Axiom& ax = e.by_name(m.axiom);
    Term from = substitute(m.reversed ? ax.rhs : ax.lhs, m.subst);
    Term positioned = replace(cur, m.position, 0, from);
    pieces.push_back(by_ac(cur, positioned));
    RewriteStep step = apply_axiom_at(positioned, ax, m.reversed, m.position, m.subst);
    pieces.push_back(step.derivation);
    pieces.push_back(by_ac(step.term, states[i]));
    cur = states[i];
  }
  pieces.push_back(by_ac(cur, goal_rhs));
  result.derivation = chain_ac(std::move(pieces));
  return result;
}

}  // namespace bccs
