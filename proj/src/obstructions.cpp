#include <algorithm>
#include <sstream>

#include "bccs/obstructions.hpp"

namespace bccs {

FamilyId parse_family(const std::string& s) {
  if (s == "wif-eq") return FamilyId::WifEq;
  if (s == "if-eq") return FamilyId::IfEq;
  if (s == "wif-pre") return FamilyId::WifPre;
  if (s == "if-pre") return FamilyId::IfPre;
  if (s == "singleton") return FamilyId::Singleton;
  throw ObstructionError("unknown family: " + s);
}

std::string family_name(FamilyId id) {
  switch (id) {
    case FamilyId::WifEq: return "wif-eq";
    case FamilyId::IfEq: return "if-eq";
    case FamilyId::WifPre: return "wif-pre";
    case FamilyId::IfPre: return "if-pre";
    case FamilyId::Singleton: return "singleton";
  }
  return "";
}

RelationId family_relation(FamilyId id) {
  switch (id) {
    case FamilyId::WifEq: return {RelBase::IF, true, true};
    case FamilyId::IfEq: return {RelBase::IF, false, true};
    case FamilyId::WifPre: return {RelBase::IF, true, false};
    case FamilyId::IfPre: return {RelBase::IF, false, false};
    case FamilyId::Singleton: return {RelBase::IF, true, false};
  }
  return {};
}

namespace {

Action base_action(const Alphabet& alphabet) { return alphabet.least(); }

void require_size(FamilyId id, const Alphabet& alphabet) {
  if ((id == FamilyId::WifPre || id == FamilyId::IfPre)) {
    if (alphabet.is_unbounded() || alphabet.size() < 2)
      throw ObstructionError(family_name(id) + " needs a declared finite alphabet with |A| >= 2");
  }
  if (id == FamilyId::Singleton) {
    if (alphabet.is_unbounded() || alphabet.size() != 1)
      throw ObstructionError("singleton family needs |A| = 1");
  }
}

// Phi_m = tau.(a^m x + x) + sum over b in A of tau.(a^m x + a^m b 0)
// (a-prefixed instead of tau-prefixed for the concrete Psi_m family)
Term fan_family_rhs(const Action& head, const Action& a, int m, const Alphabet& alphabet) {
  Term amx = power(a, m, Term::var("x"));
  std::vector<Term> xs;
  xs.push_back(Term::prefix(head, Term::sum(amx, Term::var("x"))));
  for (const auto& bn : alphabet.names()) {
    Term amb = power(a, m, Term::prefix(Action::name(bn), Term::nil()));
    xs.push_back(Term::prefix(head, Term::sum(amx, amb)));
  }
  return Term::sum_of(xs);
}

}  // namespace

Axiom family(FamilyId id, int m, const Alphabet& alphabet) {
  if (m < 0) throw ObstructionError("family index must be nonnegative");
  require_size(id, alphabet);
  Action a = base_action(alphabet);
  Axiom ax;
  switch (id) {
    case FamilyId::WifEq: {
      // tau.a^2m.0 + tau.(a^m 0 + a^2m 0) == tau.(a^m 0 + a^2m 0)
      Term am = power(a, m, Term::nil());
      Term a2m = power(a, 2 * m, Term::nil());
      Term rhs = Term::prefix(Action::tau(), Term::sum(am, a2m));
      ax.name = "wif-eq[" + std::to_string(m) + "]";
      ax.lhs = Term::sum(Term::prefix(Action::tau(), a2m), rhs);
      ax.rhs = rhs;
      ax.shape = AxiomShape::Equation;
      return ax;
    }
    case FamilyId::IfEq: {
      // a^{2m+1} 0 + a.(a^m 0 + a^2m 0) == a.(a^m 0 + a^2m 0)
      Term am = power(a, m, Term::nil());
      Term a2m = power(a, 2 * m, Term::nil());
      Term rhs = Term::prefix(a, Term::sum(am, a2m));
      ax.name = "if-eq[" + std::to_string(m) + "]";
      ax.lhs = Term::sum(power(a, 2 * m + 1, Term::nil()), rhs);
      ax.rhs = rhs;
      ax.shape = AxiomShape::Equation;
      return ax;
    }
    case FamilyId::WifPre: {
      Term phi = fan_family_rhs(Action::tau(), a, m, alphabet);
      ax.name = "wif-pre[" + std::to_string(m) + "]";
      ax.lhs = Term::sum(Term::prefix(Action::tau(), power(a, m, Term::var("x"))), phi);
      ax.rhs = phi;
      ax.shape = AxiomShape::Inequation;
      return ax;
    }
    case FamilyId::IfPre: {
      Term psi = fan_family_rhs(a, a, m, alphabet);
      ax.name = "if-pre[" + std::to_string(m) + "]";
      ax.lhs = Term::sum(power(a, m + 1, Term::var("x")), psi);
      ax.rhs = psi;
      ax.shape = AxiomShape::Inequation;
      return ax;
    }
    case FamilyId::Singleton: {
      Term amx = power(a, m, Term::var("x"));
      ax.name = "singleton[" + std::to_string(m) + "]";
      ax.lhs = amx;
      ax.rhs = Term::sum(amx, Term::var("x"));
      ax.shape = AxiomShape::Inequation;
      return ax;
    }
  }
  throw ObstructionError("unreachable");
}

FamilySoundness check_family_sound(FamilyId id, int m, const Alphabet& alphabet, int bound) {
  Axiom ax = family(id, m, alphabet);
  RelationId rel = family_relation(id);
  FamilySoundness out;
  if (is_closed(ax.lhs) && is_closed(ax.rhs)) {
    out.exact = true;
    out.sound = check_closed(rel, ax.lhs, ax.rhs) &&
                (!ax.is_equation() || check_closed(rel, ax.rhs, ax.lhs));
    out.detail = out.sound ? "exact-sound" : "unsound";
    return out;
  }
  RefutationReport rep = refute_open(rel, ax.lhs, ax.rhs, alphabet, bound);
  if (rep.counterexample) {
    out.sound = false;
    out.detail = "counterexample: " + rep.counterexample->detail;
  } else {
    out.sound = true;
    out.detail = (rep.exhaustive ? std::string("no counterexample up to bound ")
                                 : std::string("no counterexample in sampled space, bound ")) +
                 std::to_string(bound);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness predicates

namespace {

Trace power_trace(const std::string& a, int n, const std::string& tail = "") {
  Trace t;
  for (int i = 0; i < n; ++i) t.push_back(a);
  if (!tail.empty()) t.push_back(tail);
  return t;
}

bool lacks_x_and_amb(const Term& t, int m, const Action& a, const Alphabet& alphabet,
                     const std::string& var) {
  TraceSet wt = extended_weak_traces(t);
  if (wt.count(Trace{var})) return false;
  for (const auto& bn : alphabet.names())
    if (wt.count(power_trace(a.id(), m, bn))) return false;
  return true;
}

}  // namespace

WitnessResult witness(WitnessKind kind, const Term& t, int m, const Alphabet& alphabet,
                      const std::string& var) {
  Action a = base_action(alphabet);
  WitnessResult out;
  switch (kind) {
    case WitnessKind::WctTau: {
      if (!is_closed(t)) throw ObstructionError("wct-tau witness needs a closed term");
      TraceSet want{power_trace(a.id(), 2 * m)};
      for (const Term& r : tau_step_residuals(t))
        if (weak_completed_traces(r) == want) {
          out.found = true;
          out.term = ac_canonical(r);
          return out;
        }
      return out;
    }
    case WitnessKind::CtHead: {
      if (!is_closed(t)) throw ObstructionError("ct-head witness needs a closed term");
      TraceSet want{power_trace(a.id(), 2 * m)};
      for (const Term& r : residuals(t, Trace{a.id()}, Flavor::Strong))
        if (completed_traces(r) == want) {
          out.found = true;
          out.term = ac_canonical(r);
          return out;
        }
      return out;
    }
    case WitnessKind::NotraceTau: {
      for (const Term& r : tau_step_residuals(t))
        if (lacks_x_and_amb(r, m, a, alphabet, var)) {
          out.found = true;
          out.term = ac_canonical(r);
          return out;
        }
      return out;
    }
    case WitnessKind::NotraceHead: {
      for (const Term& r : residuals(t, Trace{a.id()}, Flavor::Strong))
        if (lacks_x_and_amb(r, m, a, alphabet, var)) {
          out.found = true;
          out.term = ac_canonical(r);
          return out;
        }
      return out;
    }
    case WitnessKind::WtvShort: {
      TraceSet wtv = weak_traces_ending_in_variable(t);
      if (!wtv.count(Trace{var})) return out;
      for (int k = 1; k < m; ++k)
        if (wtv.count(power_trace(a.id(), k, var))) return out;
      out.found = true;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

WitnessKind kind_for(FamilyId id) {
  switch (id) {
    case FamilyId::WifEq: return WitnessKind::WctTau;
    case FamilyId::IfEq: return WitnessKind::CtHead;
    case FamilyId::WifPre: return WitnessKind::NotraceTau;
    case FamilyId::IfPre: return WitnessKind::NotraceHead;
    case FamilyId::Singleton: return WitnessKind::WtvShort;
  }
  return WitnessKind::WctTau;
}

std::string kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::WctTau: return "wct-tau";
    case WitnessKind::CtHead: return "ct-head";
    case WitnessKind::NotraceTau: return "notrace-tau";
    case WitnessKind::NotraceHead: return "notrace-head";
    case WitnessKind::WtvShort: return "wtv-short";
  }
  return "";
}

WitnessKind kind_from_name(const std::string& s) {
  if (s == "wct-tau") return WitnessKind::WctTau;
  if (s == "ct-head") return WitnessKind::CtHead;
  if (s == "notrace-tau") return WitnessKind::NotraceTau;
  if (s == "notrace-head") return WitnessKind::NotraceHead;
  if (s == "wtv-short") return WitnessKind::WtvShort;
  throw ObstructionError("unknown witness kind: " + s);
}

}  // namespace

Certificate obstruction_certificate(const Axiomatization& e, FamilyId id,
                                    const Alphabet& alphabet, int sweep_bound) {
  require_size(id, alphabet);
  RelationId rel = family_relation(id);
  RelationId sweep_rel{rel.base, rel.weak, false};  // axioms checked in their own shape

  Certificate cert;
  cert.family_id = id;
  cert.axioms_name = e.name();
  cert.relation = rel;
  cert.witness_kind = kind_name(kind_for(id));

  // bounded soundness sweep of E against the base preorder
  constexpr std::uint64_t kSweepSamples = 4000;
  for (const Axiom& ax : e.axioms()) {
    RefutationReport fwd =
        refute_open(sweep_rel, ax.lhs, ax.rhs, alphabet, sweep_bound, kSweepSamples, 9);
    if (fwd.counterexample)
      throw ObstructionError("soundness sweep found a counterexample for " + ax.name + ": " +
                             fwd.counterexample->detail);
    if (ax.is_equation()) {
      RefutationReport bwd =
          refute_open(sweep_rel, ax.rhs, ax.lhs, alphabet, sweep_bound, kSweepSamples, 9);
      if (bwd.counterexample)
        throw ObstructionError("soundness sweep found a counterexample for " + ax.name +
                               " (reversed): " + bwd.counterexample->detail);
    }
  }
  cert.soundness_sweep =
      "pass (" + std::to_string(e.axioms().size()) + " axioms, bound " +
      std::to_string(sweep_bound) + ")";

  // family members up to 3 must be sound before a certificate is issued
  for (int k = 0; k <= 3; ++k) {
    FamilySoundness fs = check_family_sound(id, k, alphabet, sweep_bound);
    if (!fs.sound)
      throw ObstructionError("family member m=" + std::to_string(k) + " failed soundness: " +
                             fs.detail);
  }

  cert.e_depth = e.max_depth();
  cert.m = cert.e_depth + 1;
  cert.instance = family(id, cert.m, alphabet);
  int m = cert.m;
  Action a = base_action(alphabet);

  WitnessKind kind = kind_for(id);
  cert.lhs_witness = witness(kind, cert.instance.lhs, m, alphabet);
  cert.rhs_witness = witness(kind, cert.instance.rhs, m, alphabet);

  bool violated = false;
  switch (id) {
    case FamilyId::WifEq:
    case FamilyId::IfEq: {
      // side condition: (W)CT(rhs) inside {a^m, a^2m}
      TraceSet cts = id == FamilyId::WifEq ? weak_completed_traces(cert.instance.rhs)
                                           : completed_traces(cert.instance.rhs);
      TraceSet allowed;
      if (id == FamilyId::WifEq) {
        allowed.insert(power_trace(a.id(), m));
        allowed.insert(power_trace(a.id(), 2 * m));
      } else {
        allowed.insert(power_trace(a.id(), m + 1));
        allowed.insert(power_trace(a.id(), 2 * m + 1));
      }
      bool inside = std::includes(allowed.begin(), allowed.end(), cts.begin(), cts.end());
      cert.side_conditions.push_back(
          {"completed traces of the right side lie inside the {a^m, a^2m} pattern", inside});
      cert.rule = "lhs witness present, rhs witness absent";
      violated = inside && cert.lhs_witness.found && !cert.rhs_witness.found;
      break;
    }
    case FamilyId::WifPre:
    case FamilyId::IfPre: {
      cert.rule = "lhs witness present, rhs witness absent";
      violated = cert.lhs_witness.found && !cert.rhs_witness.found;
      break;
    }
    case FamilyId::Singleton: {
      cert.rule = "rhs witness present, lhs witness absent (transfer runs right to left)";
      violated = cert.rhs_witness.found && !cert.lhs_witness.found;
      break;
    }
  }
  cert.side_conditions.push_back({"m exceeds the axiomatization depth", cert.m > cert.e_depth});

  if (!violated)
    throw ObstructionError("witness predicates do not certify non-derivability");
  cert.verdict = "non-derivable";
  return cert;
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_certificate(const Certificate& c, const Alphabet& alphabet) {
  std::ostringstream os;
  os << "certificate\n";
  os << "  family " << family_name(c.family_id) << "\n";
  os << "  relation " << c.relation.str() << "\n";
  os << "  axioms " << c.axioms_name << "\n";
  os << "  e-depth " << c.e_depth << "\n";
  os << "  m " << c.m << "\n";
  if (alphabet.is_unbounded()) {
    os << "  alphabet unbounded\n";
  } else {
    os << "  alphabet ";
    const auto& ns = alphabet.names();
    for (std::size_t i = 0; i < ns.size(); ++i) os << (i ? "," : "") << ns[i];
    os << "\n";
  }
  os << "  instance " << c.instance.str() << "\n";
  os << "  soundness-sweep " << c.soundness_sweep << "\n";
  for (const auto& sc : c.side_conditions)
    os << "  side-condition " << (sc.verified ? "verified" : "FAILED") << " : " << sc.description
       << "\n";
  os << "  witness-kind " << c.witness_kind << "\n";
  os << "  lhs-witness " << (c.lhs_witness.found ? "present" : "absent");
  if (c.lhs_witness.term) os << " term = " << render(*c.lhs_witness.term);
  os << "\n";
  os << "  rhs-witness " << (c.rhs_witness.found ? "present" : "absent");
  if (c.rhs_witness.term) os << " term = " << render(*c.rhs_witness.term);
  os << "\n";
  os << "  rule " << c.rule << "\n";
  os << "  verdict " << c.verdict << "\n";
  return os.str();
}

Certificate parse_certificate(const std::string& text) {
  Certificate c;
  std::istringstream is(text);
  std::string line;
  bool saw_header = false;
  while (std::getline(is, line)) {
    std::string s = line;
    while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
    while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
    if (s.empty()) continue;
    if (s == "certificate") {
      saw_header = true;
      continue;
    }
    auto space = s.find(' ');
    std::string key = s.substr(0, space);
    std::string rest = space == std::string::npos ? "" : s.substr(space + 1);
    if (key == "family") c.family_id = parse_family(rest);
    else if (key == "relation") c.relation = parse_relation(rest);
    else if (key == "axioms") c.axioms_name = rest;
    else if (key == "e-depth") c.e_depth = std::stoi(rest);
    else if (key == "m") c.m = std::stoi(rest);
    else if (key == "alphabet") { /* recorded for the reader; revalidation passes it */ }
    else if (key == "instance") {
      auto colon = rest.find(" : ");
      if (colon == std::string::npos) throw ObstructionError("bad instance line");
      c.instance.name = rest.substr(0, colon);
      std::string sides = rest.substr(colon + 3);
      auto op = sides.find("==");
      c.instance.shape = AxiomShape::Equation;
      if (op == std::string::npos) {
        op = sides.find("<=");
        c.instance.shape = AxiomShape::Inequation;
      }
      if (op == std::string::npos) throw ObstructionError("bad instance sides");
      c.instance.lhs = parse(sides.substr(0, op));
      c.instance.rhs = parse(sides.substr(op + 2));
    } else if (key == "soundness-sweep") {
      c.soundness_sweep = rest;
    } else if (key == "side-condition") {
      SideCondition sc;
      sc.verified = rest.rfind("verified", 0) == 0;
      auto colon = rest.find(" : ");
      sc.description = colon == std::string::npos ? rest : rest.substr(colon + 3);
      c.side_conditions.push_back(sc);
    } else if (key == "witness-kind") {
      c.witness_kind = rest;
    } else if (key == "lhs-witness" || key == "rhs-witness") {
      WitnessResult w;
      w.found = rest.rfind("present", 0) == 0;
      auto eq = rest.find("term = ");
      if (eq != std::string::npos) w.term = parse(rest.substr(eq + 7));
      (key == "lhs-witness" ? c.lhs_witness : c.rhs_witness) = w;
    } else if (key == "rule") {
      c.rule = rest;
    } else if (key == "verdict") {
      c.verdict = rest;
    }
  }
  if (!saw_header) throw ObstructionError("missing certificate header");
  return c;
}

bool revalidate_certificate(const Certificate& c, const Alphabet& alphabet) {
  if (c.verdict != "non-derivable") return false;
  if (c.m <= c.e_depth) return false;
  Axiom inst = family(c.family_id, c.m, alphabet);
  if (!(ac_canonical(inst.lhs) == ac_canonical(c.instance.lhs)) ||
      !(ac_canonical(inst.rhs) == ac_canonical(c.instance.rhs)))
    return false;
  WitnessKind kind = kind_from_name(c.witness_kind);
  WitnessResult lhs = witness(kind, inst.lhs, c.m, alphabet);
  WitnessResult rhs = witness(kind, inst.rhs, c.m, alphabet);
  if (lhs.found != c.lhs_witness.found || rhs.found != c.rhs_witness.found) return false;
  if (c.family_id == FamilyId::Singleton) return rhs.found && !lhs.found;
  return lhs.found && !rhs.found;
}

}  // namespace bccs
