#ifndef BCCS_AXIOMS_HPP
#define BCCS_AXIOMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bccs/semantics.hpp"
#include "bccs/syntax.hpp"

// Axiom and axiomatization values, the built-in catalog, and the
// concrete-to-weak transformation.

namespace bccs {

struct AxiomError : std::runtime_error {
  explicit AxiomError(const std::string& what) : std::runtime_error(what) {}
};

enum class AxiomShape { Inequation, Equation };
enum class Mode { Preorder, Equivalence };

struct Axiom {
  std::string name;
  Term lhs, rhs;
  AxiomShape shape = AxiomShape::Equation;
  bool derived = false;  // derived law shipped for reference, not a primitive

  bool is_equation() const { return shape == AxiomShape::Equation; }
  bool safe() const { return is_safe(Term::sum(lhs, rhs)); }
  bool tau_free() const;
  std::string str() const;  // NAME : LHS <= RHS  |  NAME : LHS == RHS
};

class Axiomatization {
public:
  Axiomatization() = default;
  Axiomatization(std::string name, Mode mode) : name_(std::move(name)), mode_(mode) {}

  const std::string& name() const { return name_; }
  Mode mode() const { return mode_; }
  const std::vector<Axiom>& axioms() const { return axioms_; }

  // Rejects duplicate names; equivalence mode rejects inequations.
  // Structural duplicates (same sides and shape) are dropped silently.
  void add(Axiom a);
  bool contains(const std::string& axiom_name) const;
  const Axiom& by_name(const std::string& axiom_name) const;

  bool safe() const;
  bool tau_free() const;
  bool has_core() const;  // A1-4 present

  // max over both sides of all axioms; used for obstruction certificates
  int max_depth() const;
  int max_weak_depth() const;

  std::string serialize(const std::optional<Alphabet>& alphabet = std::nullopt) const;

private:
  std::string name_;
  Mode mode_ = Mode::Preorder;
  std::vector<Axiom> axioms_;
};

// ---------------------------------------------------------------------------
// Catalog

// Core axioms A1-4 (always included in every catalog set).
std::vector<Axiom> core_axioms();

// Single named axioms: A1..A4, IF1, IF2, WIF1, WIF2, WIF2', W1, W1', W2, WE,
// F1, F2, FE1, FE2, FE2*, FE3, WFE, CTE, CT1, CT2, TE, T1, T2, D1, D2 and the
// primed alpha-forms (F1', FE1', FE2', FE3', CTE', CT1', CT2', TE', T1', IF1',
// IF2'), which materialize as the pair {@-schematic instance, tau instance}.
// Alphabet-indexed axioms (F2, FE3, FE3') need a finite alphabet.
std::vector<Axiom> axiom_by_name(const std::string& name, const Alphabet& alphabet);

// Named axiom sets. Keys: any single axiom name (giving A1-4 plus that axiom)
// and the composite keys "A1-4", "IF-gc", "WIF-gc", "WF-gc", "WFE-gc".
Axiomatization catalog(const std::string& key, const Alphabet& alphabet);
std::vector<std::string> catalog_keys();

// ---------------------------------------------------------------------------
// init-tau and the transformation

// Applies init_tau_term to both sides of each axiom ("init-tau(NAME)");
// axioms must be tau-free and safe. Renames initial @-metas into tau.
Axiomatization init_tau_axiomatization(const Axiomatization& e);

struct TransformOverrides {
  std::optional<bool> w1, w2, we;
};

// E union init-tau(E) union {WIF1, WIF2} plus, in preorder mode, W1/W2 when
// the canonical witness pairs (0, tau.0) / (tau.0, 0) are related under rel;
// in equivalence mode, WE analogously. rel must be weak; E safe, tau-free,
// containing A1-4. The caller asserts rel is at least as coarse as weak
// impossible futures semantics.
Axiomatization transform_weak(const Axiomatization& e, const RelationId& rel,
                              const TransformOverrides& overrides = {});

// ---------------------------------------------------------------------------
// Axiom files
//
//   mode preorder|equivalence
//   alphabet a,b|unbounded
//   NAME : TERM <= TERM
//   NAME : TERM == TERM
//   # comment

struct AxiomFile {
  Axiomatization axioms;
  Alphabet alphabet = Alphabet::unbounded();
};

AxiomFile parse_axiom_file(const std::string& text);
std::string serialize_axiom_file(const Axiomatization& e, const Alphabet& alphabet);

// Every ground instantiation of the schematic action metavariables over the
// finite session alphabet (@-metas over A, @@-metas over A plus tau).
std::vector<Axiom> instantiate_schematics(const Axiom& a, const Alphabet& alphabet);

}  // namespace bccs

#endif
