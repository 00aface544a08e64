#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "bccs/proofs.hpp"

namespace bccs {

// ---------------------------------------------------------------------------
// Nodes

struct Derivation::Node {
  Kind kind;
  Term lhs, rhs;
  std::string axiom_name;
  AxiomShape shape = AxiomShape::Equation;
  bool reversed = false;
  Substitution subst;
  Action act = Action::tau();
  std::vector<Derivation> children;
};

Derivation Derivation::refl(Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Refl;
  n->lhs = t;
  n->rhs = std::move(t);
  return Derivation(n);
}

Derivation Derivation::axiom_instance(const Axiom& ax, bool reversed, Substitution s) {
  if (reversed && ax.shape == AxiomShape::Inequation)
    throw ProofError("inequation " + ax.name + " used right-to-left");
  Term lhs = substitute(reversed ? ax.rhs : ax.lhs, s);
  Term rhs = substitute(reversed ? ax.lhs : ax.rhs, s);
  return axiom_instance_raw(ax.name, ax.shape, reversed, std::move(s), std::move(lhs),
                            std::move(rhs));
}

Derivation Derivation::axiom_instance_raw(std::string name, AxiomShape shape, bool reversed,
                                          Substitution s, Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::AxiomInstance;
  n->axiom_name = std::move(name);
  n->shape = shape;
  n->reversed = reversed;
  n->subst = std::move(s);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Derivation(n);
}

Derivation Derivation::trans(Derivation l, Derivation r) {
  if (l.rhs() != r.lhs())
    throw ProofError("trans middle mismatch: " + render(l.rhs()) + " vs " + render(r.lhs()));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Trans;
  n->lhs = l.lhs();
  n->rhs = r.rhs();
  n->children = {std::move(l), std::move(r)};
  return Derivation(n);
}

Derivation Derivation::sum_cong(Derivation l, Derivation r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SumCong;
  n->lhs = Term::sum(l.lhs(), r.lhs());
  n->rhs = Term::sum(l.rhs(), r.rhs());
  n->children = {std::move(l), std::move(r)};
  return Derivation(n);
}

Derivation Derivation::prefix_cong(Action a, Derivation c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::PrefixCong;
  n->act = a;
  n->lhs = Term::prefix(a, c.lhs());
  n->rhs = Term::prefix(std::move(a), c.rhs());
  n->children = {std::move(c)};
  return Derivation(n);
}

Derivation Derivation::sym(Derivation c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sym;
  n->lhs = c.rhs();
  n->rhs = c.lhs();
  n->children = {std::move(c)};
  return Derivation(n);
}

Derivation::Kind Derivation::kind() const { return node_->kind; }
const Term& Derivation::lhs() const { return node_->lhs; }
const Term& Derivation::rhs() const { return node_->rhs; }
const std::string& Derivation::axiom_name() const { return node_->axiom_name; }
AxiomShape Derivation::axiom_shape() const { return node_->shape; }
bool Derivation::reversed() const { return node_->reversed; }
const Substitution& Derivation::subst() const { return node_->subst; }
const Action& Derivation::action() const { return node_->act; }
std::size_t Derivation::child_count() const { return node_->children.size(); }
const Derivation& Derivation::child(std::size_t i) const { return node_->children.at(i); }

// ---------------------------------------------------------------------------
// Checker

namespace {

void check_node(const Axiomatization& e, const Derivation& d, std::string& path) {
  auto fail = [&](const std::string& msg) {
    throw ProofError("node " + (path.empty() ? std::string("root") : path) + ": " + msg);
  };
  auto descend = [&](std::size_t i, const Derivation& c) {
    std::size_t n = path.size();
    if (!path.empty()) path += ".";
    path += std::to_string(i);
    check_node(e, c, path);
    path.resize(n);
  };

  switch (d.kind()) {
    case Derivation::Kind::Refl:
      if (d.lhs() != d.rhs()) fail("refl with distinct sides");
      return;
    case Derivation::Kind::AxiomInstance: {
      if (!e.contains(d.axiom_name())) fail("unknown axiom " + d.axiom_name());
      const Axiom& ax = e.by_name(d.axiom_name());
      if (d.reversed() && !ax.is_equation())
        fail("inequation " + ax.name + " used right-to-left");
      Term want_lhs = substitute(d.reversed() ? ax.rhs : ax.lhs, d.subst());
      Term want_rhs = substitute(d.reversed() ? ax.lhs : ax.rhs, d.subst());
      if (d.lhs() != want_lhs || d.rhs() != want_rhs)
        fail("instance of " + ax.name + " concludes " + render(want_lhs) + " |- " +
             render(want_rhs) + ", node stores " + render(d.lhs()) + " |- " + render(d.rhs()));
      return;
    }
    case Derivation::Kind::Trans: {
      if (d.child_count() != 2) fail("trans arity");
      descend(0, d.child(0));
      descend(1, d.child(1));
      if (d.child(0).rhs() != d.child(1).lhs()) fail("trans middle mismatch");
      if (d.lhs() != d.child(0).lhs() || d.rhs() != d.child(1).rhs())
        fail("trans conclusion mismatch");
      return;
    }
    case Derivation::Kind::SumCong: {
      if (d.child_count() != 2) fail("sum arity");
      descend(0, d.child(0));
      descend(1, d.child(1));
      if (d.lhs() != Term::sum(d.child(0).lhs(), d.child(1).lhs()) ||
          d.rhs() != Term::sum(d.child(0).rhs(), d.child(1).rhs()))
        fail("sum congruence conclusion mismatch");
      return;
    }
    case Derivation::Kind::PrefixCong: {
      if (d.child_count() != 1) fail("prefix arity");
      descend(0, d.child(0));
      if (d.lhs() != Term::prefix(d.action(), d.child(0).lhs()) ||
          d.rhs() != Term::prefix(d.action(), d.child(0).rhs()))
        fail("prefix congruence conclusion mismatch");
      return;
    }
    case Derivation::Kind::Sym: {
      if (e.mode() == Mode::Preorder) fail("sym in preorder mode");
      if (d.child_count() != 1) fail("sym arity");
      descend(0, d.child(0));
      if (d.lhs() != d.child(0).rhs() || d.rhs() != d.child(0).lhs())
        fail("sym conclusion mismatch");
      return;
    }
  }
}

}  // namespace

Conclusion check_derivation(const Axiomatization& e, const Derivation& d) {
  std::string path;
  check_node(e, d, path);
  return Conclusion{d.lhs(), d.rhs(), e.mode() == Mode::Equivalence};
}

std::size_t axiom_step_count(const Derivation& d) {
  std::size_t n = 0;
  if (d.kind() == Derivation::Kind::AxiomInstance) {
    const std::string& a = d.axiom_name();
    if (a != "A1" && a != "A2" && a != "A3" && a != "A4") n = 1;
  }
  for (std::size_t i = 0; i < d.child_count(); ++i) n += axiom_step_count(d.child(i));
  return n;
}

Derivation reverse_equational(const Derivation& d) {
  switch (d.kind()) {
    case Derivation::Kind::Refl:
      return d;
    case Derivation::Kind::AxiomInstance:
      if (d.axiom_shape() != AxiomShape::Equation)
        throw ProofError("cannot reverse inequation instance " + d.axiom_name());
      return Derivation::axiom_instance_raw(d.axiom_name(), d.axiom_shape(), !d.reversed(),
                                            d.subst(), d.rhs(), d.lhs());
    case Derivation::Kind::Trans:
      return Derivation::trans(reverse_equational(d.child(1)), reverse_equational(d.child(0)));
    case Derivation::Kind::SumCong:
      return Derivation::sum_cong(reverse_equational(d.child(0)), reverse_equational(d.child(1)));
    case Derivation::Kind::PrefixCong:
      return Derivation::prefix_cong(d.action(), reverse_equational(d.child(0)));
    case Derivation::Kind::Sym:
      return d.child(0);
  }
  throw ProofError("unreachable");
}

// ---------------------------------------------------------------------------
// apply_axiom_at

namespace {

Term replace_at(const Term& t, const Path& path, std::size_t i, const Term& repl) {
  if (i == path.size()) return repl;
  int sel = path[i];
  switch (t.kind()) {
    case Term::Kind::Prefix:
      if (sel != 0) throw ProofError("bad path under prefix");
      return Term::prefix(t.action(), replace_at(t.body(), path, i + 1, repl));
    case Term::Kind::Sum:
      if (sel == 0) return Term::sum(replace_at(t.left(), path, i + 1, repl), t.right());
      if (sel == 1) return Term::sum(t.left(), replace_at(t.right(), path, i + 1, repl));
      throw ProofError("bad path under sum");
    default:
      throw ProofError("path descends into a leaf");
  }
}

Term subterm_at(const Term& t, const Path& path, std::size_t i) {
  if (i == path.size()) return t;
  int sel = path[i];
  switch (t.kind()) {
    case Term::Kind::Prefix:
      if (sel != 0) throw ProofError("bad path under prefix");
      return subterm_at(t.body(), path, i + 1);
    case Term::Kind::Sum:
      return subterm_at(sel == 0 ? t.left() : t.right(), path, i + 1);
    default:
      throw ProofError("path descends into a leaf");
  }
}

Derivation wrap_context(const Term& t, const Path& path, std::size_t i, Derivation core) {
  if (i == path.size()) return core;
  int sel = path[i];
  switch (t.kind()) {
    case Term::Kind::Prefix:
      return Derivation::prefix_cong(t.action(), wrap_context(t.body(), path, i + 1, std::move(core)));
    case Term::Kind::Sum:
      if (sel == 0)
        return Derivation::sum_cong(wrap_context(t.left(), path, i + 1, std::move(core)),
                                    Derivation::refl(t.right()));
      return Derivation::sum_cong(Derivation::refl(t.left()),
                                  wrap_context(t.right(), path, i + 1, std::move(core)));
    default:
      throw ProofError("path descends into a leaf");
  }
}

}  // namespace

RewriteStep apply_axiom_at(const Term& t, const Axiom& ax, bool reversed, const Path& position,
                           const Substitution& s) {
  Term from = substitute(reversed ? ax.rhs : ax.lhs, s);
  Term to = substitute(reversed ? ax.lhs : ax.rhs, s);
  if (subterm_at(t, position, 0) != from)
    throw ProofError("no match for " + ax.name + " at position: expected " + render(from) +
                     ", found " + render(subterm_at(t, position, 0)));
  Derivation core = Derivation::axiom_instance(ax, reversed, s);
  return RewriteStep{replace_at(t, position, 0, to), wrap_context(t, position, 0, std::move(core))};
}

// ---------------------------------------------------------------------------
// canonical_proof / by_ac

namespace {

const Axiom& core_axiom(const std::string& name) {
  static const std::vector<Axiom> core = core_axioms();
  for (const Axiom& a : core)
    if (a.name == name) return a;
  throw ProofError("not a core axiom: " + name);
}

Derivation core_instance(const std::string& name, const Substitution& s, bool reversed = false) {
  return Derivation::axiom_instance(core_axiom(name), reversed, s);
}

Substitution subst_xyz(std::optional<Term> x, std::optional<Term> y = std::nullopt,
                       std::optional<Term> z = std::nullopt) {
  Substitution s;
  if (x) s.map_var("x", *x);
  if (y) s.map_var("y", *y);
  if (z) s.map_var("z", *z);
  return s;
}

Derivation chain2(Derivation a, Derivation b) {
  if (a.kind() == Derivation::Kind::Refl) return b;
  if (b.kind() == Derivation::Kind::Refl) return a;
  return Derivation::trans(std::move(a), std::move(b));
}

// Sum(foldl(xs), foldl(ys)) == foldl(xs ++ ys) for nonempty xs, ys; A2 only.
Derivation concat_proof(const std::vector<Term>& xs, std::vector<Term> ys) {
  Term a = Term::sum_of(xs);
  if (ys.size() == 1) return Derivation::refl(Term::sum(a, ys[0]));
  Term yk = ys.back();
  ys.pop_back();
  Term b_rest = Term::sum_of(ys);
  // A + (B' + yk) == (A + B') + yk
  Derivation d1 = core_instance("A2", subst_xyz(a, b_rest, yk), /*reversed=*/true);
  Derivation d2 = Derivation::sum_cong(concat_proof(xs, std::move(ys)), Derivation::refl(yk));
  return chain2(std::move(d1), std::move(d2));
}

}  // namespace

Derivation canonical_proof(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      return Derivation::refl(t);
    case Term::Kind::Prefix: {
      Derivation db = canonical_proof(t.body());
      if (db.kind() == Derivation::Kind::Refl)
        return Derivation::refl(t);
      return Derivation::prefix_cong(t.action(), std::move(db));
    }
    case Term::Kind::Sum:
      break;
  }

  Derivation dl = canonical_proof(t.left());
  Derivation dr = canonical_proof(t.right());
  Term cl = dl.rhs(), cr = dr.rhs();
  Derivation d = Derivation::sum_cong(std::move(dl), std::move(dr));

  if (cl.is_nil()) {
    d = chain2(std::move(d), core_instance("A1", subst_xyz(Term::nil(), cr)));
    d = chain2(std::move(d), core_instance("A4", subst_xyz(cr)));
  } else if (cr.is_nil()) {
    d = chain2(std::move(d), core_instance("A4", subst_xyz(cl)));
  } else {
    std::vector<Term> xs = summands(cl);
    std::vector<Term> ys = summands(cr);
    d = chain2(std::move(d), concat_proof(xs, ys));
    xs.insert(xs.end(), ys.begin(), ys.end());

    // bubble sort by adjacent transpositions, embedded under the fold spine
    auto embed = [&](const std::vector<Term>& list, std::size_t from, Derivation core) {
      for (std::size_t j = from; j < list.size(); ++j)
        core = Derivation::sum_cong(std::move(core), Derivation::refl(list[j]));
      return core;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (compare(xs[i], xs[i + 1]) > 0) {
          Derivation core = Derivation::refl(Term::nil());
          if (i == 0) {
            core = core_instance("A1", subst_xyz(xs[0], xs[1]));
          } else {
            Term p = Term::sum_of(std::vector<Term>(xs.begin(), xs.begin() + i));
            core = chain2(core_instance("A2", subst_xyz(p, xs[i], xs[i + 1])),
                          Derivation::sum_cong(Derivation::refl(p),
                                               core_instance("A1", subst_xyz(xs[i], xs[i + 1]))));
            core = chain2(std::move(core),
                          core_instance("A2", subst_xyz(p, xs[i + 1], xs[i]), true));
          }
          std::swap(xs[i], xs[i + 1]);
          d = chain2(std::move(d), embed(xs, i + 2, std::move(core)));
          changed = true;
        }
      }
    }

    // adjacent dedup (sorted, so duplicates are adjacent)
    for (std::size_t i = 0; i + 1 < xs.size();) {
      if (xs[i] == xs[i + 1]) {
        Derivation core = Derivation::refl(Term::nil());
        if (i == 0) {
          core = core_instance("A3", subst_xyz(xs[0]));
        } else {
          Term p = Term::sum_of(std::vector<Term>(xs.begin(), xs.begin() + i));
          core = chain2(core_instance("A2", subst_xyz(p, xs[i], xs[i])),
                        Derivation::sum_cong(Derivation::refl(p),
                                             core_instance("A3", subst_xyz(xs[i]))));
        }
        Derivation step = core;
        for (std::size_t j = i + 2; j < xs.size(); ++j)
          step = Derivation::sum_cong(std::move(step), Derivation::refl(xs[j]));
        d = chain2(std::move(d), std::move(step));
        xs.erase(xs.begin() + i + 1);
      } else {
        ++i;
      }
    }
  }

  if (d.rhs() != ac_canonical(t))
    throw ProofError("canonical_proof internal mismatch for " + render(t) + ": built " +
                     render(d.rhs()) + ", expected " + render(ac_canonical(t)));
  return d;
}

Derivation by_ac(const Term& t, const Term& u) {
  if (t == u) return Derivation::refl(t);
  Derivation dt = canonical_proof(t);
  Derivation du = canonical_proof(u);
  if (dt.rhs() != du.rhs())
    throw ProofError("by_ac on non-AC-equal terms: " + render(t) + " vs " + render(u));
  return chain2(std::move(dt), reverse_equational(du));
}

Derivation trans_ac(Derivation l, Derivation r) {
  if (l.rhs() == r.lhs()) return chain2(std::move(l), std::move(r));
  Derivation bridge = by_ac(l.rhs(), r.lhs());
  return chain2(chain2(std::move(l), std::move(bridge)), std::move(r));
}

Derivation chain_ac(std::vector<Derivation> steps) {
  if (steps.empty()) throw ProofError("empty chain");
  Derivation d = std::move(steps.front());
  for (std::size_t i = 1; i < steps.size(); ++i) d = trans_ac(std::move(d), std::move(steps[i]));
  return d;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string subst_str(const Substitution& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : s.var_map()) {
    if (!first) os << ", ";
    first = false;
    os << k << " -> " << render(v);
  }
  for (const auto& [k, v] : s.action_map()) {
    if (!first) os << ", ";
    first = false;
    os << k << " -> " << v.str();
  }
  os << "}";
  return os.str();
}

void serialize_node(const Derivation& d, int indent, std::ostream& os) {
  std::string pad(2 * indent, ' ');
  switch (d.kind()) {
    case Derivation::Kind::Refl:
      os << pad << "refl : " << render(d.lhs()) << "\n";
      return;
    case Derivation::Kind::AxiomInstance:
      os << pad << "ax " << d.axiom_name() << " " << (d.reversed() ? "rev" : "fwd") << " "
         << (d.axiom_shape() == AxiomShape::Equation ? "eq" : "ineq") << " " << subst_str(d.subst())
         << " : " << render(d.lhs()) << " |- " << render(d.rhs()) << "\n";
      return;
    case Derivation::Kind::Trans:
      os << pad << "trans : " << render(d.lhs()) << " |- " << render(d.rhs()) << "\n";
      break;
    case Derivation::Kind::SumCong:
      os << pad << "sum : " << render(d.lhs()) << " |- " << render(d.rhs()) << "\n";
      break;
    case Derivation::Kind::PrefixCong:
      os << pad << "prefix " << d.action().str() << " : " << render(d.lhs()) << " |- "
         << render(d.rhs()) << "\n";
      break;
    case Derivation::Kind::Sym:
      os << pad << "sym : " << render(d.lhs()) << " |- " << render(d.rhs()) << "\n";
      break;
  }
  for (std::size_t i = 0; i < d.child_count(); ++i) serialize_node(d.child(i), indent + 1, os);
}

Action parse_action_token(const std::string& tok) {
  if (tok == "tau") return Action::tau();
  if (tok.rfind("@@", 0) == 0) return Action::meta_any(tok.substr(2));
  if (tok.rfind('@', 0) == 0) return Action::meta_visible(tok.substr(1));
  return Action::name(tok);
}

struct DerivationParser {
  std::vector<std::pair<int, std::string>> lines;
  std::size_t pos = 0;

  explicit DerivationParser(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
      if (line.find_first_not_of(' ') == std::string::npos) continue;
      int indent = 0;
      std::size_t i = 0;
      while (i + 1 < line.size() && line[i] == ' ' && line[i + 1] == ' ') {
        ++indent;
        i += 2;
      }
      lines.emplace_back(indent, line.substr(i));
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ProofError("derivation parse error near line " + std::to_string(pos) + ": " + msg);
  }

  Substitution parse_subst(const std::string& s) const {
    Substitution out;
    std::size_t open = s.find('{');
    std::size_t close = s.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
      fail("missing substitution braces");
    std::string body = s.substr(open + 1, close - open - 1);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : body + ",") {
      if (c == ',') {
        if (cur.find_first_not_of(' ') != std::string::npos) parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    auto strip = [](std::string x) {
      while (!x.empty() && std::isspace((unsigned char)x.front())) x.erase(x.begin());
      while (!x.empty() && std::isspace((unsigned char)x.back())) x.pop_back();
      return x;
    };
    for (const std::string& p : parts) {
      std::size_t arrow = p.find("->");
      if (arrow == std::string::npos) fail("bad binding: " + p);
      std::string key = strip(p.substr(0, arrow));
      std::string val = strip(p.substr(arrow + 2));
      if (!key.empty() && key[0] == '@') {
        out.map_action(key, parse_action_token(val));
      } else {
        out.map_var(key, parse(val));
      }
    }
    return out;
  }

  std::pair<Term, Term> conclusion(const std::string& s) const {
    std::size_t colon = s.find(" : ");
    if (colon == std::string::npos) fail("missing conclusion");
    std::string rest = s.substr(colon + 3);
    std::size_t sep = rest.find(" |- ");
    if (sep == std::string::npos) fail("missing |- separator");
    return {parse(rest.substr(0, sep)), parse(rest.substr(sep + 4))};
  }

  Derivation node(int expected_indent) {
    if (pos >= lines.size()) fail("unexpected end of input");
    auto [indent, content] = lines[pos];
    if (indent != expected_indent) fail("bad indentation: " + content);
    ++pos;

    if (content.rfind("refl", 0) == 0) {
      std::size_t colon = content.find(" : ");
      if (colon == std::string::npos) fail("missing refl term");
      return Derivation::refl(parse(content.substr(colon + 3)));
    }
    if (content.rfind("ax ", 0) == 0) {
      std::istringstream is(content);
      std::string kw, name, orient, shape;
      is >> kw >> name >> orient >> shape;
      if (orient != "fwd" && orient != "rev") fail("bad orientation " + orient);
      if (shape != "eq" && shape != "ineq") fail("bad shape " + shape);
      auto [lhs, rhs] = conclusion(content);
      Substitution subst = parse_subst(content.substr(0, content.find(" : ")));
      return Derivation::axiom_instance_raw(
          name, shape == "eq" ? AxiomShape::Equation : AxiomShape::Inequation, orient == "rev",
          std::move(subst), std::move(lhs), std::move(rhs));
    }
    if (content.rfind("trans", 0) == 0) {
      auto [lhs, rhs] = conclusion(content);
      Derivation l = node(expected_indent + 1);
      Derivation r = node(expected_indent + 1);
      Derivation d = Derivation::trans(std::move(l), std::move(r));
      if (d.lhs() != lhs || d.rhs() != rhs) fail("trans conclusion mismatch");
      return d;
    }
    if (content.rfind("sum", 0) == 0) {
      auto [lhs, rhs] = conclusion(content);
      Derivation l = node(expected_indent + 1);
      Derivation r = node(expected_indent + 1);
      Derivation d = Derivation::sum_cong(std::move(l), std::move(r));
      if (d.lhs() != lhs || d.rhs() != rhs) fail("sum conclusion mismatch");
      return d;
    }
    if (content.rfind("prefix ", 0) == 0) {
      std::istringstream is(content);
      std::string kw, act;
      is >> kw >> act;
      auto [lhs, rhs] = conclusion(content);
      Derivation c = node(expected_indent + 1);
      Derivation d = Derivation::prefix_cong(parse_action_token(act), std::move(c));
      if (d.lhs() != lhs || d.rhs() != rhs) fail("prefix conclusion mismatch");
      return d;
    }
    if (content.rfind("sym", 0) == 0) {
      auto [lhs, rhs] = conclusion(content);
      Derivation c = node(expected_indent + 1);
      Derivation d = Derivation::sym(std::move(c));
      if (d.lhs() != lhs || d.rhs() != rhs) fail("sym conclusion mismatch");
      return d;
    }
    fail("unknown node kind: " + content);
  }
};

}  // namespace

std::string serialize_derivation(const Derivation& d) {
  std::ostringstream os;
  serialize_node(d, 0, os);
  return os.str();
}

Derivation parse_derivation(const std::string& text) {
  DerivationParser p(text);
  Derivation d = p.node(0);
  if (p.pos != p.lines.size()) p.fail("trailing lines");
  return d;
}

}  // namespace bccs
