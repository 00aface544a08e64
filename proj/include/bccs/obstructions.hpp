#ifndef BCCS_OBSTRUCTIONS_HPP
#define BCCS_OBSTRUCTIONS_HPP

#include <optional>
#include <string>

#include "bccs/axioms.hpp"
#include "bccs/semantics.hpp"

// The negative results: the five infinite (in)equation families, bounded
// soundness checks, the witness predicates of the non-derivability
// propositions, and certificate generation.

namespace bccs {

struct ObstructionError : std::runtime_error {
  explicit ObstructionError(const std::string& what) : std::runtime_error(what) {}
};

enum class FamilyId { WifEq, IfEq, WifPre, IfPre, Singleton };

FamilyId parse_family(const std::string& s);
std::string family_name(FamilyId id);

// The relation each family is sound for.
RelationId family_relation(FamilyId id);

// The literal m-th family member. wif-pre and if-pre sum over the declared
// finite alphabet (at least two actions); singleton needs a one-action
// alphabet.
Axiom family(FamilyId id, int m, const Alphabet& alphabet);

struct FamilySoundness {
  bool exact = false;        // closed families decided exactly
  bool sound = false;        // no counterexample (exact or up to the bound)
  std::string detail;
};

FamilySoundness check_family_sound(FamilyId id, int m, const Alphabet& alphabet, int bound);

// ---------------------------------------------------------------------------
// Witness predicates

enum class WitnessKind {
  WctTau,      // some t' with t =>-tau-> t' and WCT(t') = {a^2m}
  CtHead,      // strong analogue: t -a-> t' with CT(t') = {a^2m}
  NotraceTau,  // some t-hat with t =>-tau-> t-hat lacking weak traces x and a^m b
  NotraceHead, // strong analogue after one a-step
  WtvShort,    // x in WT_V(t) and a^k x not in WT_V(t) for 1 <= k < m
};

struct WitnessResult {
  bool found = false;
  std::optional<Term> term;
};

WitnessResult witness(WitnessKind kind, const Term& t, int m, const Alphabet& alphabet,
                      const std::string& var = "x");

// ---------------------------------------------------------------------------
// Certificates

struct SideCondition {
  std::string description;
  bool verified = false;
};

struct Certificate {
  FamilyId family_id = FamilyId::WifEq;
  int m = 0;
  int e_depth = 0;
  std::string axioms_name;
  RelationId relation;
  Axiom instance;
  std::string soundness_sweep;   // recorded result of the bounded sweep of E
  std::vector<SideCondition> side_conditions;
  WitnessResult lhs_witness, rhs_witness;
  std::string witness_kind;
  std::string verdict;  // "non-derivable" on success
  std::string rule;     // which side must carry the witness, per the proposition
};

// Computes the depth bound from E, instantiates the family at m = depth+1,
// evaluates the matching witness predicate on both sides plus the side
// conditions, and issues the non-derivability verdict when the transfer
// property is violated. Refuses when the bounded soundness sweep of E finds
// a counterexample or when a family member with m <= 3 fails its own
// soundness check.
Certificate obstruction_certificate(const Axiomatization& e, FamilyId id,
                                    const Alphabet& alphabet, int sweep_bound = 2);

std::string serialize_certificate(const Certificate& c, const Alphabet& alphabet);
Certificate parse_certificate(const std::string& text);
// Re-evaluates every predicate recorded in the certificate from its fields.
bool revalidate_certificate(const Certificate& c, const Alphabet& alphabet);

}  // namespace bccs

#endif
