#ifndef BCCS_SYNTAX_HPP
#define BCCS_SYNTAX_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Terms of BCCS(A): 0, variables, action prefixes and binary sums.
// Actions are tau, concrete names from the session alphabet, or schematic
// metavariables used inside axioms (@a ranges over A, @@a over A-with-tau).

namespace bccs {

struct SyntaxError : std::runtime_error {
  explicit SyntaxError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Actions

class Action {
public:
  enum class Kind { Name, MetaVisible, MetaAny, Tau };

  static Action tau() { return Action(Kind::Tau, ""); }
  static Action name(std::string id) { return Action(Kind::Name, std::move(id)); }
  static Action meta_visible(std::string id) { return Action(Kind::MetaVisible, std::move(id)); }
  static Action meta_any(std::string id) { return Action(Kind::MetaAny, std::move(id)); }

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }

  bool is_tau() const { return kind_ == Kind::Tau; }
  bool is_name() const { return kind_ == Kind::Name; }
  bool is_meta() const { return kind_ == Kind::MetaVisible || kind_ == Kind::MetaAny; }
  bool is_visible_name() const { return kind_ == Kind::Name; }

  // Rendered form: "tau", "a", "@a", "@@a".
  std::string str() const;

  bool operator==(const Action& o) const { return kind_ == o.kind_ && id_ == o.id_; }
  bool operator!=(const Action& o) const { return !(*this == o); }

private:
  Action(Kind k, std::string id) : kind_(k), id_(std::move(id)) {}
  Kind kind_;
  std::string id_;
};

// Total order: names first (lexicographic), then @-metas, then @@-metas, tau last.
int compare(const Action& a, const Action& b);

// ---------------------------------------------------------------------------
// Terms

class Term {
public:
  enum class Kind { Nil, Var, Prefix, Sum };

  Term() : Term(nil()) {}

  static Term nil();
  static Term var(std::string name);
  static Term prefix(Action a, Term body);
  static Term sum(Term left, Term right);
  // Left-associated sum of a summand list; empty list gives 0.
  static Term sum_of(const std::vector<Term>& summands);

  Kind kind() const;
  bool is_nil() const { return kind() == Kind::Nil; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_prefix() const { return kind() == Kind::Prefix; }
  bool is_sum() const { return kind() == Kind::Sum; }

  const std::string& var_name() const;
  const Action& action() const;  // prefix only
  Term body() const;             // prefix only
  Term left() const;             // sum only
  Term right() const;            // sum only

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Structural total order (Nil < Var < Prefix < Sum; vars by name, prefixes by
// action then body, sums lexicographically). Canonical summand sorting uses it.
int compare(const Term& a, const Term& b);
struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};
using TermSet = std::set<Term, TermLess>;

// ---------------------------------------------------------------------------
// Parsing and printing

// Grammar: term := prefix ("+" prefix)* ; prefix := action "." prefix | atom ;
// atom := "0" | VAR | "(" term ")" ; action := "tau" | NAME | "@"NAME | "@@"NAME.
// Identifiers matching [w-z][0-9]* are variables, "tau" is reserved, any other
// lowercase identifier is an action name.
Term parse(const std::string& text);
std::string render(const Term& t);

bool is_variable_identifier(const std::string& id);
bool is_action_identifier(const std::string& id);

// ---------------------------------------------------------------------------
// Structure helpers

// Summands of a term: in-order non-sum leaves, Nil leaves dropped.
std::vector<Term> summands(const Term& t);

// Flattens, drops Nil summands (A4), deduplicates (A3), sorts (A1-2),
// recursing through prefix bodies; idempotent.
Term ac_canonical(const Term& t);
bool ac_equal(const Term& a, const Term& b);

int depth(const Term& t);
int weak_depth(const Term& t);  // depth_w(tau t) = depth_w(t); metas count as visible

std::set<std::string> variables(const Term& t);
bool is_closed(const Term& t);
bool has_metavariables(const Term& t);
bool contains_tau(const Term& t);      // tau prefix anywhere
bool is_bccsp(const Term& t);          // no tau and no @@-metas (strictly visible prefixes)
std::set<std::string> action_names(const Term& t);

// a^n t
Term power(const Action& a, int n, Term t);

// ---------------------------------------------------------------------------
// Substitution

class Substitution {
public:
  Substitution() = default;

  Substitution& map_var(const std::string& name, Term t);
  // key is the metavariable as written: "@a" or "@@a".
  // @-metas may only be sent to visible actions or @-metas; @@-metas to anything.
  Substitution& map_action(const std::string& key, Action a);

  const std::map<std::string, Term>& var_map() const { return vars_; }
  const std::map<std::string, Action>& action_map() const { return actions_; }

  std::optional<Term> lookup_var(const std::string& name) const;
  std::optional<Action> lookup_action(const std::string& key) const;

  bool operator==(const Substitution& o) const;

private:
  std::map<std::string, Term> vars_;
  std::map<std::string, Action> actions_;
};

// Simultaneous replacement; unmapped variables and metavariables stay put.
Term substitute(const Term& t, const Substitution& s);
Action substitute(const Action& a, const Substitution& s);

// ---------------------------------------------------------------------------
// Safety and the init-tau renaming

std::set<std::string> initial_variables(const Term& t);
std::set<std::string> prefixed_variables(const Term& t);

// True iff no variable occurs both initially and under a prefix.
bool is_safe(const Term& t);

// Renames initial actions into tau: init-tau(at) = tau t, distributes over +,
// fixes 0 and variables. Input must be tau-free (initial @-metas become tau).
Term init_tau_term(const Term& t);

// ---------------------------------------------------------------------------
// Session alphabet

class Alphabet {
public:
  static Alphabet finite(std::vector<std::string> names);
  static Alphabet unbounded();

  bool is_unbounded() const { return unbounded_; }
  // Finite sessions only.
  const std::vector<std::string>& names() const;
  std::size_t size() const;

  // A fresh visible name distinct from every name in `avoid` (and, for finite
  // alphabets, from the declared names). Models |A| = infinity.
  std::string mint(const std::set<std::string>& avoid) const;

  Action least() const;  // first declared (or first minted) action

private:
  bool unbounded_ = false;
  std::vector<std::string> names_;
};

}  // namespace bccs

#endif
