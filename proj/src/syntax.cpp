#include "bccs/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bccs {

// ---------------------------------------------------------------------------
// Action

std::string Action::str() const {
  switch (kind_) {
    case Kind::Tau: return "tau";
    case Kind::Name: return id_;
    case Kind::MetaVisible: return "@" + id_;
    case Kind::MetaAny: return "@@" + id_;
  }
  return "";
}

int compare(const Action& a, const Action& b) {
  auto rank = [](Action::Kind k) {
    switch (k) {
      case Action::Kind::Name: return 0;
      case Action::Kind::MetaVisible: return 1;
      case Action::Kind::MetaAny: return 2;
      case Action::Kind::Tau: return 3;
    }
    return 4;
  };
  if (rank(a.kind()) != rank(b.kind())) return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
  if (a.id() != b.id()) return a.id() < b.id() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  std::string name;                    // Var
  Action act = Action::tau();          // Prefix
  std::shared_ptr<const Node> a, b;    // Prefix body in a; Sum children in a,b
};

Term Term::nil() {
  static const std::shared_ptr<const Node> n = [] {
    auto p = std::make_shared<Node>();
    p->kind = Kind::Nil;
    return p;
  }();
  return Term(n);
}

Term Term::var(std::string name) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Var;
  p->name = std::move(name);
  return Term(p);
}

Term Term::prefix(Action a, Term body) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Prefix;
  p->act = std::move(a);
  p->a = body.node_;
  return Term(p);
}

Term Term::sum(Term l, Term r) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Sum;
  p->a = l.node_;
  p->b = r.node_;
  return Term(p);
}

Term Term::sum_of(const std::vector<Term>& xs) {
  if (xs.empty()) return nil();
  Term acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = sum(acc, xs[i]);
  return acc;
}

Term::Kind Term::kind() const { return node_->kind; }

const std::string& Term::var_name() const {
  if (!is_var()) throw SyntaxError("var_name on non-variable term");
  return node_->name;
}

const Action& Term::action() const {
  if (!is_prefix()) throw SyntaxError("action on non-prefix term");
  return node_->act;
}

Term Term::body() const {
  if (!is_prefix()) throw SyntaxError("body on non-prefix term");
  return Term(node_->a);
}

Term Term::left() const {
  if (!is_sum()) throw SyntaxError("left on non-sum term");
  return Term(node_->a);
}

Term Term::right() const {
  if (!is_sum()) throw SyntaxError("right on non-sum term");
  return Term(node_->b);
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Nil: return true;
    case Kind::Var: return var_name() == o.var_name();
    case Kind::Prefix: return action() == o.action() && body() == o.body();
    case Kind::Sum: return left() == o.left() && right() == o.right();
  }
  return false;
}

int compare(const Term& a, const Term& b) {
  auto rank = [](Term::Kind k) {
    switch (k) {
      case Term::Kind::Nil: return 0;
      case Term::Kind::Var: return 1;
      case Term::Kind::Prefix: return 2;
      case Term::Kind::Sum: return 3;
    }
    return 4;
  };
  if (rank(a.kind()) != rank(b.kind())) return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::Nil: return 0;
    case Term::Kind::Var:
      if (a.var_name() != b.var_name()) return a.var_name() < b.var_name() ? -1 : 1;
      return 0;
    case Term::Kind::Prefix: {
      int c = compare(a.action(), b.action());
      if (c != 0) return c;
      return compare(a.body(), b.body());
    }
    case Term::Kind::Sum: {
      int c = compare(a.left(), b.left());
      if (c != 0) return c;
      return compare(a.right(), b.right());
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Lexing / parsing

bool is_variable_identifier(const std::string& id) {
  if (id.empty()) return false;
  if (id[0] < 'w' || id[0] > 'z') return false;
  for (std::size_t i = 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  return true;
}

bool is_action_identifier(const std::string& id) {
  if (id.empty() || id == "tau") return false;
  if (!std::islower(static_cast<unsigned char>(id[0]))) return false;
  for (char c : id)
    if (!std::islower(static_cast<unsigned char>(c)) && !std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return !is_variable_identifier(id);
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "syntax error at position " << pos << ": " << msg;
    throw SyntaxError(os.str());
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::islower(static_cast<unsigned char>(s[pos])) ||
            std::isdigit(static_cast<unsigned char>(s[pos]))))
      ++pos;
    if (pos == start) fail("expected identifier");
    return s.substr(start, pos - start);
  }

  Term term() {
    Term acc = prefix_term();
    while (eat('+')) acc = Term::sum(acc, prefix_term());
    return acc;
  }

  Term prefix_term() {
    char c = peek();
    if (c == '@') {
      ++pos;
      bool any = pos < s.size() && s[pos] == '@';
      if (any) ++pos;
      std::string id = identifier();
      if (id == "tau") fail("tau cannot be a metavariable name");
      Action a = any ? Action::meta_any(id) : Action::meta_visible(id);
      if (!eat('.')) fail("expected '.' after action " + a.str());
      return Term::prefix(a, prefix_term());
    }
    if (c == '0' || c == '(') return atom();
    if (!std::islower(static_cast<unsigned char>(c))) fail("expected term");
    std::size_t save = pos;
    std::string id = identifier();
    if (is_variable_identifier(id)) return Term::var(id);
    Action a = id == "tau" ? Action::tau() : Action::name(id);
    if (!eat('.')) {
      pos = save;
      if (id == "tau") fail("reserved word tau used as a plain name");
      fail("action name '" + id + "' must be followed by '.'");
    }
    return Term::prefix(a, prefix_term());
  }

  Term atom() {
    if (eat('0')) return Term::nil();
    if (eat('(')) {
      Term t = term();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    fail("expected atom");
  }
};

}  // namespace

Term parse(const std::string& text) {
  Parser p(text);
  Term t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

namespace {

void render_to(const Term& t, std::ostream& os, bool parenthesize_sum) {
  switch (t.kind()) {
    case Term::Kind::Nil:
      os << "0";
      return;
    case Term::Kind::Var:
      os << t.var_name();
      return;
    case Term::Kind::Prefix:
      os << t.action().str() << ".";
      render_to(t.body(), os, true);
      return;
    case Term::Kind::Sum:
      if (parenthesize_sum) os << "(";
      // Left-nested sums print flat; a sum on the right needs parentheses to
      // survive the left-associative parse.
      render_to(t.left(), os, false);
      os << " + ";
      render_to(t.right(), os, true);
      if (parenthesize_sum) os << ")";
      return;
  }
}

}  // namespace

std::string render(const Term& t) {
  std::ostringstream os;
  render_to(t, os, false);
  return os.str();
}

// ---------------------------------------------------------------------------
// Structure helpers

namespace {
void collect_summands(const Term& t, std::vector<Term>& out) {
  if (t.is_sum()) {
    collect_summands(t.left(), out);
    collect_summands(t.right(), out);
  } else if (!t.is_nil()) {
    out.push_back(t);
  }
}
}  // namespace

std::vector<Term> summands(const Term& t) {
  std::vector<Term> out;
  collect_summands(t, out);
  return out;
}

Term ac_canonical(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      return t;
    case Term::Kind::Prefix:
      return Term::prefix(t.action(), ac_canonical(t.body()));
    case Term::Kind::Sum: {
      std::vector<Term> xs;
      for (const Term& s : summands(t)) {
        Term c = ac_canonical(s);
        if (!c.is_nil()) collect_summands(c, xs);  // bodies may collapse to sums? prefixes stay prefixes
      }
      std::sort(xs.begin(), xs.end(), TermLess{});
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      return Term::sum_of(xs);
    }
  }
  return t;
}

bool ac_equal(const Term& a, const Term& b) { return ac_canonical(a) == ac_canonical(b); }

int depth(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      return 0;
    case Term::Kind::Prefix:
      return 1 + depth(t.body());
    case Term::Kind::Sum:
      return std::max(depth(t.left()), depth(t.right()));
  }
  return 0;
}

int weak_depth(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      return 0;
    case Term::Kind::Prefix:
      return (t.action().is_tau() ? 0 : 1) + weak_depth(t.body());
    case Term::Kind::Sum:
      return std::max(weak_depth(t.left()), weak_depth(t.right()));
  }
  return 0;
}

namespace {
template <typename F>
void for_each_node(const Term& t, F&& f) {
  f(t);
  switch (t.kind()) {
    case Term::Kind::Prefix:
      for_each_node(t.body(), f);
      break;
    case Term::Kind::Sum:
      for_each_node(t.left(), f);
      for_each_node(t.right(), f);
      break;
    default:
      break;
  }
}
}  // namespace

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  for_each_node(t, [&](const Term& u) {
    if (u.is_var()) out.insert(u.var_name());
  });
  return out;
}

bool is_closed(const Term& t) { return variables(t).empty(); }

bool has_metavariables(const Term& t) {
  bool found = false;
  for_each_node(t, [&](const Term& u) {
    if (u.is_prefix() && u.action().is_meta()) found = true;
  });
  return found;
}

bool contains_tau(const Term& t) {
  bool found = false;
  for_each_node(t, [&](const Term& u) {
    if (u.is_prefix() && u.action().is_tau()) found = true;
  });
  return found;
}

bool is_bccsp(const Term& t) {
  bool bad = false;
  for_each_node(t, [&](const Term& u) {
    if (u.is_prefix() && (u.action().is_tau() || u.action().kind() == Action::Kind::MetaAny))
      bad = true;
  });
  return !bad;
}

std::set<std::string> action_names(const Term& t) {
  std::set<std::string> out;
  for_each_node(t, [&](const Term& u) {
    if (u.is_prefix() && u.action().is_name()) out.insert(u.action().id());
  });
  return out;
}

Term power(const Action& a, int n, Term t) {
  for (int i = 0; i < n; ++i) t = Term::prefix(a, t);
  return t;
}

// ---------------------------------------------------------------------------
// Substitution

Substitution& Substitution::map_var(const std::string& name, Term t) {
  if (!is_variable_identifier(name)) throw SyntaxError("not a variable name: " + name);
  vars_[name] = std::move(t);
  return *this;
}

Substitution& Substitution::map_action(const std::string& key, Action a) {
  if (key.rfind("@@", 0) == 0) {
    // anything in A-with-tau is allowed
  } else if (key.rfind('@', 0) == 0) {
    if (a.is_tau() || a.kind() == Action::Kind::MetaAny)
      throw SyntaxError("visible metavariable " + key + " mapped to " + a.str());
  } else {
    throw SyntaxError("action mapping key must start with '@': " + key);
  }
  actions_.insert_or_assign(key, std::move(a));
  return *this;
}

std::optional<Term> Substitution::lookup_var(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) return std::nullopt;
  return it->second;
}

std::optional<Action> Substitution::lookup_action(const std::string& key) const {
  auto it = actions_.find(key);
  if (it == actions_.end()) return std::nullopt;
  return it->second;
}

bool Substitution::operator==(const Substitution& o) const {
  return vars_ == o.vars_ && actions_ == o.actions_;
}

Action substitute(const Action& a, const Substitution& s) {
  if (a.is_meta()) {
    if (auto m = s.lookup_action(a.str())) return *m;
  }
  return a;
}

Term substitute(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Nil:
      return t;
    case Term::Kind::Var: {
      if (auto m = s.lookup_var(t.var_name())) return *m;
      return t;
    }
    case Term::Kind::Prefix:
      return Term::prefix(substitute(t.action(), s), substitute(t.body(), s));
    case Term::Kind::Sum:
      return Term::sum(substitute(t.left(), s), substitute(t.right(), s));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Safety and init-tau

namespace {
void collect_vars(const Term& t, bool under_prefix, std::set<std::string>& initial,
                  std::set<std::string>& prefixed) {
  switch (t.kind()) {
    case Term::Kind::Nil:
      return;
    case Term::Kind::Var:
      (under_prefix ? prefixed : initial).insert(t.var_name());
      return;
    case Term::Kind::Prefix:
      collect_vars(t.body(), true, initial, prefixed);
      return;
    case Term::Kind::Sum:
      collect_vars(t.left(), under_prefix, initial, prefixed);
      collect_vars(t.right(), under_prefix, initial, prefixed);
      return;
  }
}
}  // namespace

std::set<std::string> initial_variables(const Term& t) {
  std::set<std::string> i, p;
  collect_vars(t, false, i, p);
  return i;
}

std::set<std::string> prefixed_variables(const Term& t) {
  std::set<std::string> i, p;
  collect_vars(t, false, i, p);
  return p;
}

bool is_safe(const Term& t) {
  std::set<std::string> i, p;
  collect_vars(t, false, i, p);
  for (const auto& v : i)
    if (p.count(v)) return false;
  return true;
}

Term init_tau_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      return t;
    case Term::Kind::Prefix: {
      const Action& a = t.action();
      if (a.is_tau()) throw SyntaxError("init-tau applied to a term containing tau");
      if (a.kind() == Action::Kind::MetaAny)
        throw SyntaxError("init-tau applied to a term with an @@-metavariable");
      if (contains_tau(t.body()))
        throw SyntaxError("init-tau applied to a term containing tau");
      return Term::prefix(Action::tau(), t.body());
    }
    case Term::Kind::Sum:
      return Term::sum(init_tau_term(t.left()), init_tau_term(t.right()));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet Alphabet::finite(std::vector<std::string> names) {
  if (names.empty()) throw SyntaxError("alphabet must be nonempty");
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& n : names)
    if (!is_action_identifier(n)) throw SyntaxError("bad action name in alphabet: " + n);
  Alphabet a;
  a.names_ = std::move(names);
  return a;
}

Alphabet Alphabet::unbounded() {
  Alphabet a;
  a.unbounded_ = true;
  return a;
}

const std::vector<std::string>& Alphabet::names() const {
  if (unbounded_) throw SyntaxError("unbounded alphabet has no name list");
  return names_;
}

std::size_t Alphabet::size() const { return names().size(); }

std::string Alphabet::mint(const std::set<std::string>& avoid) const {
  auto taken = [&](const std::string& n) {
    if (avoid.count(n)) return true;
    if (!unbounded_)
      return std::find(names_.begin(), names_.end(), n) != names_.end();
    return false;
  };
  static const std::string base = "abcdefgh";
  for (char c : base) {
    std::string n(1, c);
    if (is_action_identifier(n) && !taken(n)) return n;
  }
  for (int i = 1;; ++i) {
    std::string n = "k" + std::to_string(i);
    if (!taken(n)) return n;
  }
}

Action Alphabet::least() const {
  if (!unbounded_) return Action::name(names_.front());
  return Action::name(mint({}));
}

}  // namespace bccs
