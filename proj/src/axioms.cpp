#include "bccs/axioms.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace bccs {

namespace {

bool has_meta_any(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Nil:
    case Term::Kind::Var:
      return false;
    case Term::Kind::Prefix:
      return t.action().kind() == Action::Kind::MetaAny || has_meta_any(t.body());
    case Term::Kind::Sum:
      return has_meta_any(t.left()) || has_meta_any(t.right());
  }
  return false;
}

}  // namespace

bool Axiom::tau_free() const {
  return !contains_tau(lhs) && !contains_tau(rhs) && !has_meta_any(lhs) && !has_meta_any(rhs);
}

std::string Axiom::str() const {
  return name + " : " + render(lhs) + (is_equation() ? " == " : " <= ") + render(rhs);
}

void Axiomatization::add(Axiom a) {
  if (mode_ == Mode::Equivalence && a.shape == AxiomShape::Inequation)
    throw AxiomError("inequation " + a.name + " in equivalence-mode axiomatization");
  for (const Axiom& b : axioms_) {
    if (b.lhs == a.lhs && b.rhs == a.rhs && b.shape == a.shape) return;
    if (b.name == a.name)
      throw AxiomError("duplicate axiom name: " + a.name);
  }
  axioms_.push_back(std::move(a));
}

bool Axiomatization::contains(const std::string& n) const {
  for (const Axiom& a : axioms_)
    if (a.name == n) return true;
  return false;
}

const Axiom& Axiomatization::by_name(const std::string& n) const {
  for (const Axiom& a : axioms_)
    if (a.name == n) return a;
  throw AxiomError("unknown axiom: " + n + " in " + name_);
}

bool Axiomatization::safe() const {
  for (const Axiom& a : axioms_)
    if (!a.safe()) return false;
  return true;
}

bool Axiomatization::tau_free() const {
  for (const Axiom& a : axioms_)
    if (!a.tau_free()) return false;
  return true;
}

bool Axiomatization::has_core() const {
  return contains("A1") && contains("A2") && contains("A3") && contains("A4");
}

int Axiomatization::max_depth() const {
  int d = 0;
  for (const Axiom& a : axioms_) d = std::max({d, depth(a.lhs), depth(a.rhs)});
  return d;
}

int Axiomatization::max_weak_depth() const {
  int d = 0;
  for (const Axiom& a : axioms_) d = std::max({d, weak_depth(a.lhs), weak_depth(a.rhs)});
  return d;
}

std::string Axiomatization::serialize(const std::optional<Alphabet>& alphabet) const {
  std::ostringstream os;
  os << "mode " << (mode_ == Mode::Preorder ? "preorder" : "equivalence") << "\n";
  if (alphabet) {
    if (alphabet->is_unbounded()) {
      os << "alphabet unbounded\n";
    } else {
      os << "alphabet ";
      const auto& ns = alphabet->names();
      for (std::size_t i = 0; i < ns.size(); ++i) os << (i ? "," : "") << ns[i];
      os << "\n";
    }
  }
  for (const Axiom& a : axioms_) os << a.str() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

Axiom eq(const std::string& name, const std::string& lhs, const std::string& rhs) {
  return Axiom{name, parse(lhs), parse(rhs), AxiomShape::Equation, false};
}

Axiom ineq(const std::string& name, const std::string& lhs, const std::string& rhs) {
  return Axiom{name, parse(lhs), parse(rhs), AxiomShape::Inequation, false};
}

// a1.x1 + ... + an.xn over the alphabet order
Term alphabet_fan(const Alphabet& alphabet, const std::string& var_stem) {
  std::vector<Term> xs;
  int i = 1;
  for (const auto& n : alphabet.names()) {
    xs.push_back(Term::prefix(Action::name(n), Term::var(var_stem + std::to_string(i))));
    ++i;
  }
  return Term::sum_of(xs);
}

void require_finite(const Alphabet& alphabet, const std::string& who) {
  if (alphabet.is_unbounded())
    throw AxiomError(who + " needs a declared finite alphabet");
}

}  // namespace

std::vector<Axiom> core_axioms() {
  return {
      eq("A1", "x + y", "y + x"),
      eq("A2", "(x + y) + z", "x + (y + z)"),
      eq("A3", "x + x", "x"),
      eq("A4", "x + 0", "x"),
  };
}

std::vector<Axiom> axiom_by_name(const std::string& name, const Alphabet& alphabet) {
  // single axioms
  if (name == "A1" || name == "A2" || name == "A3" || name == "A4") {
    for (Axiom a : core_axioms())
      if (a.name == name) return {a};
  }
  if (name == "IF1") return {ineq("IF1", "@a.(x + y)", "@a.x + @a.y")};
  if (name == "IF2") return {eq("IF2", "@a.x + @a.(y + z)", "@a.(x + y) + @a.x + @a.(y + z)")};
  if (name == "WIF1") return {eq("WIF1", "@@a.(tau.x + tau.y)", "@@a.x + @@a.y")};
  if (name == "WIF2") return {eq("WIF2", "tau.x + y", "tau.x + tau.(x + y)")};
  if (name == "WIF2'") return {ineq("WIF2'", "tau.(x + y)", "tau.x + y")};
  if (name == "W1") return {ineq("W1", "x", "tau.x")};
  if (name == "W1'") return {ineq("W1'", "x", "tau.x + y")};
  if (name == "W2") return {ineq("W2", "tau.x", "x")};
  if (name == "WE") return {eq("WE", "x", "tau.x")};
  if (name == "F1") return {ineq("F1", "@a.(x + y)", "@a.x + @a.(y + z)")};
  if (name == "F2") {
    require_finite(alphabet, "F2");
    Term fan = alphabet_fan(alphabet, "x");
    return {Axiom{"F2", fan, Term::sum(fan, Term::var("y")), AxiomShape::Inequation, false}};
  }
  if (name == "FE1")
    return {eq("FE1", "@a.x + @a.(y + z)", "@a.x + @a.(x + y) + @a.(y + z)")};
  if (name == "FE2")
    return {eq("FE2", "@a.(x + @b.y) + @a.(x + @b.y + @b.z)", "@a.(x + @b.y + @b.z)")};
  if (name == "FE2*")
    return {eq("FE2*", "@a.(@b.x + w) + @a.(@b.y + z)", "@a.(@b.x + @b.y + w) + @a.(@b.y + z)")};
  if (name == "FE3" || name == "FE3'") {
    require_finite(alphabet, name);
    Term fan = alphabet_fan(alphabet, "z");
    Term x = Term::var("x"), y = Term::var("y");
    Term small = Term::sum(x, fan);
    Term big = Term::sum(Term::sum(x, y), fan);
    if (name == "FE3") {
      Action a = Action::meta_visible("a");
      return {Axiom{"FE3", Term::sum(Term::prefix(a, small), Term::prefix(a, big)),
                    Term::prefix(a, big), AxiomShape::Equation, false}};
    }
    Action t = Action::tau();
    return {Axiom{"FE3'", Term::sum(Term::prefix(t, small), Term::prefix(t, big)),
                  Term::prefix(t, big), AxiomShape::Equation, false}};
  }
  if (name == "WFE") return {eq("WFE", "@a.x + tau.(@a.y + z)", "tau.(@a.x + @a.y + z)")};
  if (name == "CTE")
    return {eq("CTE", "@a.(@b.w + @c.x + y + z)", "@a.(@b.w + y) + @a.(@c.x + z)")};
  if (name == "CT1") return {ineq("CT1", "@a.x", "@a.x + y")};
  if (name == "CT2")
    return {ineq("CT2", "@a.(@b.w + @c.x + y + z)", "@a.(@b.w + y) + @a.(@c.x + z)")};
  if (name == "TE") return {eq("TE", "@a.x + @a.y", "@a.(x + y)")};
  if (name == "T1") return {ineq("T1", "@a.(x + y)", "@a.x + @a.y")};
  if (name == "T2") return {ineq("T2", "x", "x + y")};
  if (name == "D1") {
    Axiom a = eq("D1", "tau.(tau.x + y)", "tau.x + y");
    a.derived = true;
    return {a};
  }
  if (name == "D2") {
    Axiom a = eq("D2", "@@a.(tau.x1 + tau.x2 + y)", "@@a.x1 + @@a.x2 + @@a.(x1 + x2 + y)");
    a.derived = true;
    return {a};
  }

  // primed alpha-forms: pair {@-schematic instance, tau instance}
  auto pair = [](const Axiom& vis, const Axiom& tau_form) {
    return std::vector<Axiom>{vis, tau_form};
  };
  if (name == "IF1'")
    return pair(ineq("IF1'", "@a.(x + y)", "@a.x + @a.y"),
                ineq("IF1'tau", "tau.(x + y)", "tau.x + tau.y"));
  if (name == "IF2'")
    return pair(eq("IF2'", "@a.x + @a.(y + z)", "@a.(x + y) + @a.x + @a.(y + z)"),
                eq("IF2'tau", "tau.x + tau.(y + z)", "tau.(x + y) + tau.x + tau.(y + z)"));
  if (name == "F1'")
    return pair(ineq("F1'", "@a.(x + y)", "@a.x + @a.(y + z)"),
                ineq("F1'tau", "tau.(x + y)", "tau.x + tau.(y + z)"));
  if (name == "FE1'")
    return pair(eq("FE1'", "@a.x + @a.(y + z)", "@a.x + @a.(x + y) + @a.(y + z)"),
                eq("FE1'tau", "tau.x + tau.(y + z)", "tau.x + tau.(x + y) + tau.(y + z)"));
  if (name == "FE2'")
    return pair(eq("FE2'", "@a.(x + @b.y) + @a.(x + @b.y + @b.z)", "@a.(x + @b.y + @b.z)"),
                eq("FE2'tau", "tau.(x + @b.y) + tau.(x + @b.y + @b.z)", "tau.(x + @b.y + @b.z)"));
  if (name == "CTE'")
    return pair(eq("CTE'", "@a.(@b.w + @c.x + y + z)", "@a.(@b.w + y) + @a.(@c.x + z)"),
                eq("CTE'tau", "tau.(@b.w + @c.x + y + z)", "tau.(@b.w + y) + tau.(@c.x + z)"));
  if (name == "CT1'")
    return pair(ineq("CT1'", "@a.x", "@a.x + y"), ineq("CT1'tau", "tau.x", "tau.x + y"));
  if (name == "CT2'")
    return pair(ineq("CT2'", "@a.(@b.w + @c.x + y + z)", "@a.(@b.w + y) + @a.(@c.x + z)"),
                ineq("CT2'tau", "tau.(@b.w + @c.x + y + z)", "tau.(@b.w + y) + tau.(@c.x + z)"));
  if (name == "TE'")
    return pair(eq("TE'", "@a.x + @a.y", "@a.(x + y)"),
                eq("TE'tau", "tau.x + tau.y", "tau.(x + y)"));
  if (name == "T1'")
    return pair(ineq("T1'", "@a.(x + y)", "@a.x + @a.y"),
                ineq("T1'tau", "tau.(x + y)", "tau.x + tau.y"));

  throw AxiomError("unknown axiom name: " + name);
}

namespace {

Axiomatization make_set(const std::string& key, Mode mode, const std::vector<std::string>& names,
                        const Alphabet& alphabet) {
  Axiomatization e(key, mode);
  for (const Axiom& a : core_axioms()) e.add(a);
  for (const auto& n : names)
    for (const Axiom& a : axiom_by_name(n, alphabet)) e.add(a);
  return e;
}

}  // namespace

Axiomatization catalog(const std::string& key, const Alphabet& alphabet) {
  if (key == "A1-4") return make_set(key, Mode::Preorder, {}, alphabet);
  if (key == "IF-gc") return make_set(key, Mode::Preorder, {"IF1", "IF2"}, alphabet);
  if (key == "WIF-gc") return make_set(key, Mode::Preorder, {"WIF1", "WIF2'", "W1"}, alphabet);
  if (key == "WF-gc") return make_set(key, Mode::Preorder, {"WIF1", "WIF2'", "W1'"}, alphabet);
  if (key == "WFE-gc")
    return make_set(key, Mode::Equivalence, {"WIF1", "WIF2", "WFE"}, alphabet);
  // single-axiom keys give A1-4 plus the named axiom(s)
  return make_set(key, Mode::Preorder, {key}, alphabet);
}

std::vector<std::string> catalog_keys() {
  return {"A1-4",  "IF-gc", "WIF-gc", "WF-gc", "WFE-gc", "IF1",  "IF2",  "WIF1", "WIF2",
          "WIF2'", "W1",    "W1'",    "W2",    "WE",     "F1",   "F1'",  "F2",   "FE1",
          "FE1'",  "FE2",   "FE2*",   "FE2'",  "FE3",    "FE3'", "WFE",  "CTE",  "CTE'",
          "CT1",   "CT1'",  "CT2",    "CT2'",  "TE",     "TE'",  "T1",   "T1'",  "T2",
          "IF1'",  "IF2'",  "D1",     "D2"};
}

// ---------------------------------------------------------------------------
// init-tau and transform

Axiomatization init_tau_axiomatization(const Axiomatization& e) {
  Axiomatization out("init-tau(" + e.name() + ")", e.mode());
  for (const Axiom& a : e.axioms()) {
    if (!a.tau_free())
      throw AxiomError("init-tau of a tau-containing axiom: " + a.name);
    if (!a.safe()) throw AxiomError("init-tau of an unsafe axiom: " + a.name);
    Axiom b;
    b.name = "init-tau(" + a.name + ")";
    b.lhs = init_tau_term(a.lhs);
    b.rhs = init_tau_term(a.rhs);
    b.shape = a.shape;
    // init-tau is the identity on prefix-free axioms (A1-4); keep the original
    // name so the result reads naturally.
    if (b.lhs == a.lhs && b.rhs == a.rhs) b.name = a.name;
    out.add(std::move(b));
  }
  return out;
}

Axiomatization transform_weak(const Axiomatization& e, const RelationId& rel,
                              const TransformOverrides& overrides) {
  if (!rel.weak) throw AxiomError("transform_weak target relation must be weak");
  if (!e.has_core()) throw AxiomError("transform_weak input must contain A1-4");
  if (!e.safe()) throw AxiomError("transform_weak input must be safe");
  if (!e.tau_free()) throw AxiomError("transform_weak input must be tau-free");
  if (rel.equivalence) {
    for (const Axiom& a : e.axioms())
      if (!a.is_equation())
        throw AxiomError("equivalence-mode transform needs an equational input");
  }

  Mode mode = rel.equivalence ? Mode::Equivalence : Mode::Preorder;
  Axiomatization out("transform(" + e.name() + "," + rel.str() + ")", mode);
  for (const Axiom& a : e.axioms()) out.add(a);
  Axiomatization lifted = init_tau_axiomatization(e);
  for (const Axiom& a : lifted.axioms()) out.add(a);
  Alphabet any = Alphabet::unbounded();
  for (const Axiom& a : axiom_by_name("WIF1", any)) out.add(a);
  for (const Axiom& a : axiom_by_name("WIF2", any)) out.add(a);

  Term zero = Term::nil();
  Term tau_zero = Term::prefix(Action::tau(), Term::nil());
  if (rel.equivalence) {
    bool we = overrides.we ? *overrides.we : check_closed(rel, tau_zero, zero);
    if (we)
      for (const Axiom& a : axiom_by_name("WE", any)) out.add(a);
  } else {
    bool w1 = overrides.w1 ? *overrides.w1 : check_closed(rel, zero, tau_zero);
    bool w2 = overrides.w2 ? *overrides.w2 : check_closed(rel, tau_zero, zero);
    if (w1)
      for (const Axiom& a : axiom_by_name("W1", any)) out.add(a);
    if (w2)
      for (const Axiom& a : axiom_by_name("W2", any)) out.add(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axiom files

AxiomFile parse_axiom_file(const std::string& text) {
  AxiomFile out;
  Mode mode = Mode::Preorder;
  bool saw_mode = false;
  std::vector<Axiom> axioms;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto fail = [&](const std::string& msg) {
      throw AxiomError("line " + std::to_string(lineno) + ": " + msg);
    };
    std::string s = line;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace((unsigned char)s[start])) ++start;
    s = s.substr(start);
    if (s.empty()) continue;

    if (s.rfind("mode ", 0) == 0) {
      std::string m = s.substr(5);
      if (m == "preorder") mode = Mode::Preorder;
      else if (m == "equivalence") mode = Mode::Equivalence;
      else fail("unknown mode: " + m);
      saw_mode = true;
      continue;
    }
    if (s.rfind("alphabet ", 0) == 0) {
      std::string a = s.substr(9);
      if (a == "unbounded") {
        out.alphabet = Alphabet::unbounded();
      } else {
        std::vector<std::string> names;
        std::string cur;
        for (char c : a + ",") {
          if (c == ',') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
          } else if (!std::isspace((unsigned char)c)) {
            cur += c;
          }
        }
        try {
          out.alphabet = Alphabet::finite(names);
        } catch (const SyntaxError& ex) {
          fail(ex.what());
        }
      }
      continue;
    }

    auto colon = s.find(':');
    if (colon == std::string::npos) fail("expected NAME : TERM <= TERM");
    std::string name = s.substr(0, colon);
    while (!name.empty() && std::isspace((unsigned char)name.back())) name.pop_back();
    if (name.empty()) fail("empty axiom name");
    std::string rest = s.substr(colon + 1);
    AxiomShape shape;
    std::size_t op = rest.find("<=");
    if (op != std::string::npos) {
      shape = AxiomShape::Inequation;
    } else {
      op = rest.find("==");
      if (op == std::string::npos) fail("expected <= or == in axiom " + name);
      shape = AxiomShape::Equation;
    }
    Axiom ax;
    ax.name = name;
    ax.shape = shape;
    try {
      ax.lhs = parse(rest.substr(0, op));
      ax.rhs = parse(rest.substr(op + 2));
    } catch (const SyntaxError& ex) {
      fail(ex.what());
    }
    axioms.push_back(std::move(ax));
  }
  (void)saw_mode;
  out.axioms = Axiomatization("file", mode);
  for (const Axiom& a : core_axioms()) out.axioms.add(a);
  for (Axiom& a : axioms) out.axioms.add(std::move(a));
  return out;
}

std::string serialize_axiom_file(const Axiomatization& e, const Alphabet& alphabet) {
  return e.serialize(alphabet);
}

std::vector<Axiom> instantiate_schematics(const Axiom& a, const Alphabet& alphabet) {
  std::set<std::string> metas;
  for (const Term* side : {&a.lhs, &a.rhs}) {
    std::function<void(const Term&)> rec = [&](const Term& t) {
      switch (t.kind()) {
        case Term::Kind::Prefix:
          if (t.action().is_meta()) metas.insert(t.action().str());
          rec(t.body());
          return;
        case Term::Kind::Sum:
          rec(t.left());
          rec(t.right());
          return;
        default:
          return;
      }
    };
    rec(*side);
  }
  if (metas.empty()) return {a};
  require_finite(alphabet, "schematic instantiation");

  std::vector<std::string> keys(metas.begin(), metas.end());
  std::vector<std::vector<Action>> options;
  for (const auto& k : keys) {
    std::vector<Action> acts;
    for (const auto& n : alphabet.names()) acts.push_back(Action::name(n));
    if (k.rfind("@@", 0) == 0) acts.push_back(Action::tau());
    options.push_back(std::move(acts));
  }

  std::vector<Axiom> out;
  std::vector<std::size_t> idx(keys.size(), 0);
  for (;;) {
    Substitution s;
    std::string suffix;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      s.map_action(keys[i], options[i][idx[i]]);
      suffix += (i ? "," : "") + options[i][idx[i]].str();
    }
    Axiom inst;
    inst.name = a.name + "[" + suffix + "]";
    inst.lhs = substitute(a.lhs, s);
    inst.rhs = substitute(a.rhs, s);
    inst.shape = a.shape;
    inst.derived = a.derived;
    out.push_back(std::move(inst));
    std::size_t i = 0;
    for (; i < keys.size(); ++i) {
      if (++idx[i] < options[i].size()) break;
      idx[i] = 0;
    }
    if (i == keys.size()) break;
  }
  return out;
}

}  // namespace bccs
