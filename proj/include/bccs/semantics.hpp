#ifndef BCCS_SEMANTICS_HPP
#define BCCS_SEMANTICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bccs/syntax.hpp"

// Operational semantics, observation sets and decision procedures for the
// trace, completed-trace, failures and impossible-futures preorders and
// equivalences, strong and weak.

namespace bccs {

struct SemanticsError : std::runtime_error {
  explicit SemanticsError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Relations

enum class RelBase { T, CT, F, IF };

struct RelationId {
  RelBase base = RelBase::T;
  bool weak = false;
  bool equivalence = false;  // false: preorder

  std::string str() const;
};

// Parses "t", "ct", "f", "if", "wt", "wct", "wf", "wif" with optional
// "-pre" / "-eq" suffix (preorder by default).
RelationId parse_relation(const std::string& s);

// ---------------------------------------------------------------------------
// Transitions and observations

// A trace is a sequence of tokens; tokens are action names, "tau" only for
// initials, and variable names when variables are read as pseudo-actions.
using Trace = std::vector<std::string>;
using TraceSet = std::set<Trace>;

// The SOS rules: prefixes fire, sums inherit, 0 and variables are inert.
// Rejects terms with action metavariables.
std::vector<std::pair<Action, Term>> transitions(const Term& t);

// tau*-closure of {t}.
std::vector<Term> tau_closure(const Term& t);
// All t'' with t => t' -tau-> t''.
std::vector<Term> tau_step_residuals(const Term& t);

enum class ObservationKind {
  Initials,
  Traces,
  CompletedTraces,
  WeakTraces,
  WeakCompletedTraces,
  WeakTracesEndingInVariable,
};

ObservationKind parse_observation_kind(const std::string& s);

// The literal finite observation sets. The first three require tau-free
// input; WeakTracesEndingInVariable reads variables as pseudo-actions.
TraceSet observe(ObservationKind kind, const Term& t);

// Convenience wrappers.
TraceSet traces(const Term& t);
TraceSet completed_traces(const Term& t);
TraceSet weak_traces(const Term& t);
TraceSet weak_completed_traces(const Term& t);
TraceSet weak_traces_ending_in_variable(const Term& t);
// Weak traces over A union V, variables as pseudo-actions (both kinds mixed).
TraceSet extended_weak_traces(const Term& t);
std::set<std::string> initials_tokens(const Term& t);  // action tokens incl "tau"
bool has_tau_step(const Term& t);

enum class Flavor { Strong, Weak };

// Strong: all t' with t -a1..ak-> t'. Weak: tau-closure before, between and
// after the visible steps. Empty set if the trace is unrealizable.
std::vector<Term> residuals(const Term& t, const Trace& trace, Flavor flavor);

// ---------------------------------------------------------------------------
// Decision procedures

// Decides the relation on closed terms via residual characterizations:
//   IF:  p <=_IF q iff for every trace s and p' in res(p,s) there is
//        q' in res(q,s) with T(q') included in T(p'); weak analogously with
//        WT(p) = WT(q) and the tau-initiality clause.
//   F:   initials-refusal form; weak restricts to stable residuals.
// Strong flavors reject terms containing tau.
bool check_closed(const RelationId& rel, const Term& p, const Term& q);

// Definition-level brute force; for IF the second components B range over all
// subsets of the union of residual trace sets (membership only depends on the
// intersection with that universe). Guarded by a node budget.
bool check_oracle(const RelationId& rel, const Term& p, const Term& q,
                  const Alphabet& alphabet, std::size_t node_budget = 4096);

// ---------------------------------------------------------------------------
// Term enumeration and open-term refutation

struct EnumOptions {
  int max_depth = 2;
  int max_branching = 2;  // distinct summands per level
  bool include_tau = false;
};

// All AC-canonical closed terms over the alphabet within the bounds,
// sorted by the structural order.
std::vector<Term> enumerate_closed_terms(const Alphabet& alphabet, const EnumOptions& opts);

struct Counterexample {
  Substitution subst;
  std::string detail;
};

struct RefutationReport {
  std::optional<Counterexample> counterexample;
  bool exhaustive = true;  // false when the candidate space was subsampled
  std::uint64_t checked = 0;
};

// Enumerates closed substitutions (terms of depth <= bound over the session
// alphabet, tau-prefixed forms included for weak relations) and returns the
// first falsifying one, or none-found-up-to-bound. Very large candidate
// spaces are subsampled deterministically and reported as non-exhaustive.
RefutationReport refute_open(const RelationId& rel, const Term& t, const Term& u,
                             const Alphabet& alphabet, int bound,
                             std::uint64_t sample_cap = 20000, std::uint64_t seed = 1);

// One seeded random closed term; used by the sweep machinery.
Term random_closed_term(std::mt19937_64& rng, const Alphabet& alphabet, int max_depth,
                        int max_branching, bool include_tau);

}  // namespace bccs

#endif
