#ifndef BCCS_COMPLETENESS_HPP
#define BCCS_COMPLETENESS_HPP

#include <functional>

#include "bccs/proofs.hpp"
#include "bccs/semantics.hpp"

// The constructive positive results: saturation with proof, residual
// saturation, a ground-completeness prover for the impossible-futures
// preorder, and the concrete-to-weak proving pipeline.

namespace bccs {

struct CompletenessError : std::runtime_error {
  explicit CompletenessError(const std::string& what) : std::runtime_error(what) {}
};

struct Saturation {
  Term saturated;       // q-bar
  Derivation derivation;  // q == q-bar from A1-4+IF1-2
};

// q-bar = q + sum over a in I(q) of a.(saturation of the summed a-residuals),
// recursively on depth; the derivation follows the IF2-then-induction proof.
// Memoizes on canonical forms.
Saturation saturate(const Term& q);

// Saturation applied to the sum of all strong residuals of q after the trace;
// the trace must be realizable.
Term residual_saturation(const Term& q, const Trace& trace);

// A derivation of p <= q from catalog("IF-gc") whenever p is below q in the
// impossible-futures preorder; refuses otherwise, reporting a distinguishing
// impossible future.
Derivation prove_if_ground(const Term& p, const Term& q);

// The axiomatization every prove_if_ground output checks against.
const Axiomatization& if_gc();

using ConcreteProver = std::function<Derivation(const Term&, const Term&)>;

// Derivation of p <= q from transform_weak(e, rel), dispatching on the
// tau-normal forms: tau-free pair via the concrete prover; both tau-initial
// via the prover on a fresh-prefixed pair and init-tau lifting; mixed heads
// via W1 or W2.
Derivation prove_weak_from_concrete(const Axiomatization& e, const ConcreteProver& prover,
                                    const Term& p, const Term& q, const RelationId& rel,
                                    const Alphabet& alphabet);

}  // namespace bccs

#endif
