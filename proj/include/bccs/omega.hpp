#ifndef BCCS_OMEGA_HPP
#define BCCS_OMEGA_HPP

#include <cstdint>
#include <map>
#include <string>

#include "bccs/proofs.hpp"
#include "bccs/semantics.hpp"

// The inverted-substitutions harness: the fresh-action table, the closed
// substitution rho with rho(y) = a_y.0, the term map R, and a mechanized
// checker for the technique's three requirements.

namespace bccs {

struct OmegaError : std::runtime_error {
  explicit OmegaError(const std::string& what) : std::runtime_error(what) {}
};

struct InvertedMapping {
  std::map<std::string, std::string> fresh;  // variable -> fresh action name
  Term goal_lhs, goal_rhs;

  bool is_fresh(const Action& a) const;
  std::string variable_for(const Action& a) const;
  Substitution rho() const;     // y -> a_y.0
  Term apply_r(const Term& p) const;  // R: closed terms over the extended alphabet -> open terms
};

// Mints one fresh action per variable of t + u; requires an unbounded
// alphabet session. Freshness is checked against the actions of t, u and
// (when given) the axiomatization.
InvertedMapping groote_mapping(const Term& t, const Term& u, const Alphabet& alphabet,
                               const Axiomatization* e = nullptr);

struct OmegaFailure {
  std::string requirement;
  std::string detail;
};

struct OmegaReport {
  bool requirement1 = false;
  bool requirement2 = false;
  bool requirement3 = false;
  std::vector<OmegaFailure> failures;
  std::size_t samples_checked = 0;

  bool all() const { return requirement1 && requirement2 && requirement3; }
};

// Requirement (1) is verified exactly (structural identities); (2) for each
// axiom and sampled closed substitution via bounded search on the R-images;
// (3) for choice and sampled prefixes over sampled closed operand pairs.
// `obligations` names the axioms whose images must be discharged (defaults
// to e itself); passing a larger set with a smaller e shows requirement-2
// failures, e.g. IF1 images against the bare core.
OmegaReport check_omega_requirements(const Axiomatization& e, const Term& t, const Term& u,
                                     const Alphabet& alphabet, std::size_t samples,
                                     std::uint64_t seed, int search_budget = 2,
                                     const Axiomatization* obligations = nullptr);

// Maps a closed derivation p <= q (from e) to a derivation R(p) <= R(q):
// the instance-level content of the technique. Requires the discharge steps
// found by check_omega_requirements to exist for the axioms involved.
Derivation invert_derivation(const Axiomatization& e, const InvertedMapping& mapping,
                             const Derivation& d, int search_budget = 2);

}  // namespace bccs

#endif
