#ifndef BCCS_PROOFS_HPP
#define BCCS_PROOFS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bccs/axioms.hpp"
#include "bccs/syntax.hpp"

// Tree-shaped proof objects for (in)equational logic, their checker, bounded
// derivation search modulo AC, the derived-law replay scripts, tau-elimination
// with proof, and init-tau derivation lifting.

namespace bccs {

struct ProofError : std::runtime_error {
  explicit ProofError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Derivations

class Derivation {
public:
  enum class Kind { Refl, AxiomInstance, Trans, SumCong, PrefixCong, Sym };

  Derivation() : Derivation(refl(Term::nil())) {}

  static Derivation refl(Term t);
  // Conclusion is the substituted axiom; reversed swaps the sides.
  static Derivation axiom_instance(const Axiom& ax, bool reversed, Substitution s);
  // Trusts the caller for the concluded sides; check_derivation revalidates
  // against the real axiomatization. Used by the parser and by reversal.
  static Derivation axiom_instance_raw(std::string name, AxiomShape shape, bool reversed,
                                       Substitution s, Term lhs, Term rhs);
  // Children must share the middle term structurally.
  static Derivation trans(Derivation left, Derivation right);
  static Derivation sum_cong(Derivation left, Derivation right);
  static Derivation prefix_cong(Action a, Derivation child);
  static Derivation sym(Derivation child);

  Kind kind() const;
  const Term& lhs() const;
  const Term& rhs() const;

  const std::string& axiom_name() const;  // AxiomInstance
  AxiomShape axiom_shape() const;         // AxiomInstance
  bool reversed() const;                  // AxiomInstance
  const Substitution& subst() const;      // AxiomInstance
  const Action& action() const;           // PrefixCong

  std::size_t child_count() const;
  const Derivation& child(std::size_t i) const;

private:
  struct Node;
  explicit Derivation(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Conclusion {
  Term lhs, rhs;
  bool equational = false;  // judgment shape: == under equivalence mode, <= otherwise
  std::string str() const { return render(lhs) + (equational ? " == " : " <= ") + render(rhs); }
};

// Verifies every node against E; axiom instances must match structurally
// (A1-4 steps are explicit nodes). Sym is rejected in preorder mode, as is
// reverse use of inequations. Errors carry the offending node path.
Conclusion check_derivation(const Axiomatization& e, const Derivation& d);

// Number of axiom-instance nodes, A1-4 instances free; the budget unit.
std::size_t axiom_step_count(const Derivation& d);

// Flips an all-equation derivation without Sym (A1-4 and other equations
// reverse orientation; Sym nodes unwrap). Inequation instances are an error.
Derivation reverse_equational(const Derivation& d);

// ---------------------------------------------------------------------------
// Rewriting with proof

// Child selectors: 0 = prefix body / sum left, 1 = sum right.
using Path = std::vector<int>;

struct RewriteStep {
  Term term;  // rewritten
  Derivation derivation;
};

// Requires the subterm at the position to equal the oriented axiom side
// under s, structurally; wraps the instance in congruence nodes.
RewriteStep apply_axiom_at(const Term& t, const Axiom& ax, bool reversed, const Path& position,
                           const Substitution& s);

// Derivation of t == ac_canonical(t) built solely from A1-4 instances.
Derivation canonical_proof(const Term& t);

// Derivation of t == u from A1-4 alone; requires equal canonical forms.
Derivation by_ac(const Term& t, const Term& u);

// trans with an A1-4 bridge when the middle terms differ only modulo AC.
Derivation trans_ac(Derivation left, Derivation right);
Derivation chain_ac(std::vector<Derivation> steps);

// ---------------------------------------------------------------------------
// Serialization (structured text; bit-exact round trip)

std::string serialize_derivation(const Derivation& d);
Derivation parse_derivation(const std::string& text);

// ---------------------------------------------------------------------------
// Bounded search

struct SearchOptions {
  int budget = 4;                     // axiom-instance steps (A1-4 free)
  std::size_t max_expansions = 50000; // hard cap on visited states
  int size_slack = 6;                 // node-count headroom over the goal sides
};

struct SearchResult {
  std::optional<Derivation> derivation;
  bool exhausted_completely = false;  // search space fully explored within budget
  std::size_t expanded = 0;
};

// Bounded BFS over AC-canonical forms, one axiom instance per step, A1-4
// jumps justified by synthesized scripts. Finds a derivation of
// goal_lhs <= goal_rhs (or == in equivalence mode); exhaustion is reported
// distinctly from disproof, which this utility never claims.
SearchResult search_derivation(const Axiomatization& e, const Term& goal_lhs,
                               const Term& goal_rhs, const SearchOptions& options = {});

// All AC-matches of an axiom side against a canonical subject.
std::vector<Substitution> ac_match(const Term& pattern, const Term& subject);

// ---------------------------------------------------------------------------
// Derived laws

struct DerivedLaw {
  std::string key;
  Axiomatization premises;
  // One derivation per direction for equation-shaped laws proved in a
  // preorder premise set; otherwise a single derivation.
  std::vector<Derivation> derivations;
};

// Keys: D1, D2-1, D2-2, D2-3, W1-from-W1', WIF2-from-WIF2'+W1,
// F1'-from-W1'+WIF1, inittauF2-from-W1'+WIF1, WFE-from-WIF2+FE2',
// FE1'tau-from-WIF2, FE2'tau-from-WIF2+WFE, FE3-from-FE3'+WIF1,
// CTE'-from-CTE+WIF1, CT2'-from-W1+WIF1, IF1'-from-W1+WIF1,
// IF2'-from-WIF1+WIF2.
DerivedLaw derived_law(const std::string& key, const Alphabet& alphabet);
std::vector<std::string> derived_law_keys();

// The D2 instance for concrete bodies: alpha(sum tau.x_i + y) == the
// distributed form, from A1-4+WIF1-2, following the inductive construction.
Derivation d2_instance(const Action& alpha, const std::vector<Term>& bodies, const Term& rest,
                       const Axiomatization& premises);

// ---------------------------------------------------------------------------
// tau elimination (constructive normal forms)

struct TauElimination {
  Term normal;
  Derivation derivation;  // t == normal from A1-4+WIF1-2
};

// If t has no initial tau the normal form is a BCCSP term; otherwise a
// nonempty sum of tau-prefixed BCCSP terms. Open terms allowed.
TauElimination eliminate_tau(const Term& t);

// The premise set A1-4+WIF1-2 used by eliminate_tau and the D2 synthesizer.
const Axiomatization& wif_core();

// ---------------------------------------------------------------------------
// init-tau lifting

// Rebuilds d (a derivation from safe, tau-free E) into a derivation of
// init-tau(t) <= init-tau(u). Axiom nodes are re-instantiated with the
// initial-occurrence-adjusted substitution; prefix-congruence nodes keep
// their original subderivations, so the result checks against
// E union init-tau(E) (and against init-tau(E) alone when d has no
// prefix-congruence node).
Derivation lift_init_tau_derivation(const Axiomatization& e, const Derivation& d);

// E union init-tau(E), the checking target for lifted derivations.
Axiomatization with_init_tau(const Axiomatization& e);

}  // namespace bccs

#endif
