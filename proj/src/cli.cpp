#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bccs/cli.hpp"
#include "bccs/completeness.hpp"
#include "bccs/obstructions.hpp"
#include "bccs/omega.hpp"
#include "bccs/proofs.hpp"

namespace bccs {

namespace {

Alphabet parse_alphabet_flag(const std::string& s) {
  if (s == "unbounded") return Alphabet::unbounded();
  std::vector<std::string> names;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) names.push_back(cur);
      cur.clear();
    } else if (!std::isspace((unsigned char)c)) {
      cur += c;
    }
  }
  return Alphabet::finite(names);
}

struct AxiomSource {
  Axiomatization axioms;
  Alphabet alphabet = Alphabet::unbounded();
  bool file_alphabet = false;
};

AxiomSource load_axioms(const std::string& key_or_file, const Alphabet& session) {
  auto lower = [](std::string s) {
    for (char& c : s) c = (char)std::tolower((unsigned char)c);
    return s;
  };
  for (const std::string& key : catalog_keys()) {
    if (key_or_file == key || lower(key_or_file) == lower(key))
      return {catalog(key, session), session, false};
  }
  std::ifstream in(key_or_file);
  if (!in) throw AxiomError("not a catalog key and not a readable file: " + key_or_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  AxiomFile f = parse_axiom_file(buf.str());
  return {f.axioms, f.alphabet, true};
}

void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_file);
  if (!f) throw std::runtime_error("cannot write " + out_file);
  f << text;
}

}  // namespace

SweepReport sweep_soundness(const Axiomatization& e, const RelationId& rel,
                            const Alphabet& alphabet, std::size_t count, int bound,
                            std::uint64_t seed) {
  SweepReport report;
  std::mt19937_64 rng(seed);
  std::vector<Action> meta_pool;
  Alphabet alpha = alphabet;
  if (alphabet.is_unbounded()) alpha = Alphabet::finite({alphabet.mint({}), "b"});
  for (const auto& n : alpha.names()) meta_pool.push_back(Action::name(n));

  for (const Axiom& ax : e.axioms()) {
    SweepLine line;
    line.axiom = ax.name;
    line.pass = true;
    std::set<std::string> vars = variables(ax.lhs);
    for (const auto& v : variables(ax.rhs)) vars.insert(v);
    std::set<std::string> metas;
    for (const Term* side : {&ax.lhs, &ax.rhs}) {
      std::function<void(const Term&)> rec = [&](const Term& t) {
        if (t.is_prefix()) {
          if (t.action().is_meta()) metas.insert(t.action().str());
          rec(t.body());
        } else if (t.is_sum()) {
          rec(t.left());
          rec(t.right());
        }
      };
      rec(*side);
    }
    for (std::size_t i = 0; i < count && line.pass; ++i) {
      Substitution s;
      for (const auto& v : vars)
        s.map_var(v, random_closed_term(rng, alpha, bound, 2, rel.weak));
      for (const auto& k : metas) {
        if (k.rfind("@@", 0) == 0 && rel.weak && rng() % (meta_pool.size() + 1) == 0) {
          s.map_action(k, Action::tau());
        } else {
          s.map_action(k, meta_pool[rng() % meta_pool.size()]);
        }
      }
      Term lhs = substitute(ax.lhs, s);
      Term rhs = substitute(ax.rhs, s);
      if (!check_closed(rel, lhs, rhs)) {
        line.pass = false;
        line.detail = "counterexample: " + render(lhs) + " vs " + render(rhs);
      } else if (ax.is_equation() && !check_closed(rel, rhs, lhs)) {
        line.pass = false;
        line.detail = "counterexample (reversed): " + render(rhs) + " vs " + render(lhs);
      }
    }
    if (line.pass)
      line.detail = "pass (" + std::to_string(count) + " samples, bound " +
                    std::to_string(bound) + ")";
    report.lines.push_back(std::move(line));
  }
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"workbench for BCCS/BCCSP process terms: behavioral preorders, "
               "equational derivations, axiomatization transforms, certificates"};
  app.require_subcommand(1);

  std::string alphabet_flag = "a,b";
  std::uint64_t seed = 1;
  int bound = 2;
  int budget = 4;
  std::string out_file;
  app.add_option("--alphabet", alphabet_flag, "finite list a,b,... or 'unbounded'")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized sweeps")->capture_default_str();
  app.add_option("--bound", bound, "depth budget for sweeps")->capture_default_str();
  app.add_option("--budget", budget, "axiom-step budget for search")->capture_default_str();
  app.add_option("--out", out_file, "write the main artifact to a file");

  // fmt
  auto* fmt = app.add_subcommand("fmt", "parse a term and print it with metrics");
  std::string fmt_term;
  fmt->add_option("term", fmt_term)->required();

  // obs
  auto* obs = app.add_subcommand("obs", "print an observation set");
  std::string obs_kind = "traces", obs_term;
  obs->add_option("--kind", obs_kind, "initials|traces|ct|wt|wct|wtv");
  obs->add_option("term", obs_term)->required();

  // check / oracle
  std::string rel_flag = "if-pre", term_p, term_q;
  auto* check = app.add_subcommand("check", "decide a behavioral relation on closed terms");
  check->add_option("--rel", rel_flag)->required();
  check->add_option("p", term_p)->required();
  check->add_option("q", term_q)->required();
  auto* oracle = app.add_subcommand("oracle", "definition-level brute-force decision");
  oracle->add_option("--rel", rel_flag)->required();
  oracle->add_option("p", term_p)->required();
  oracle->add_option("q", term_q)->required();

  // prove-if
  auto* prove_if = app.add_subcommand("prove-if", "derive p <= q from IF-gc");
  prove_if->add_option("p", term_p)->required();
  prove_if->add_option("q", term_q)->required();

  // prove-weak
  std::string axioms_flag = "IF-gc";
  auto* prove_weak = app.add_subcommand("prove-weak", "derive p <= q from the transformed set");
  prove_weak->add_option("--rel", rel_flag);
  prove_weak->add_option("--axioms", axioms_flag);
  prove_weak->add_option("p", term_p)->required();
  prove_weak->add_option("q", term_q)->required();

  // transform
  auto* transform = app.add_subcommand("transform", "concrete-to-weak axiomatization transform");
  transform->add_option("--axioms", axioms_flag)->required();
  transform->add_option("--rel", rel_flag)->required();

  // saturate
  auto* saturate_cmd = app.add_subcommand("saturate", "saturated form with proof");
  bool saturate_proof = false;
  saturate_cmd->add_option("term", term_p)->required();
  saturate_cmd->add_flag("--derivation", saturate_proof, "also print the derivation");

  // family
  auto* family_cmd = app.add_subcommand("family", "print a family member");
  std::string family_flag = "wif-eq";
  int family_m = 1;
  family_cmd->add_option("--family", family_flag)->required();
  family_cmd->add_option("--m", family_m)->required();

  // obstruct
  auto* obstruct = app.add_subcommand("obstruct", "non-derivability certificate");
  obstruct->add_option("--axioms", axioms_flag)->required();
  obstruct->add_option("--family", family_flag)->required();

  // omega-check
  auto* omega = app.add_subcommand("omega-check", "inverted-substitutions requirements");
  std::size_t omega_samples = 100;
  omega->add_option("--axioms", axioms_flag)->required();
  omega->add_option("--lhs", term_p)->required();
  omega->add_option("--rhs", term_q)->required();
  omega->add_option("--samples", omega_samples);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "bounded soundness sweep of an axiom set");
  std::size_t sweep_count = 100;
  sweep->add_option("--axioms", axioms_flag)->required();
  sweep->add_option("--rel", rel_flag)->required();
  sweep->add_option("--count", sweep_count);

  // replay-laws
  auto* replay_laws = app.add_subcommand("replay-laws", "check every derived-law script");

  // replay
  auto* replay = app.add_subcommand("replay", "re-check a serialized derivation");
  std::string replay_file;
  replay->add_option("--in", replay_file)->required();
  replay->add_option("--axioms", axioms_flag)->required();

  // search
  auto* search_cmd = app.add_subcommand("search", "bounded derivation search");
  search_cmd->add_option("--axioms", axioms_flag)->required();
  search_cmd->add_option("lhs", term_p)->required();
  search_cmd->add_option("rhs", term_q)->required();

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(std::vector<std::string>(argv));  // CLI11 consumes reversed argv
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << ex.what() << "\n";
    return 2;
  }

  try {
    Alphabet alphabet = parse_alphabet_flag(alphabet_flag);

    if (*fmt) {
      Term t = parse(fmt_term);
      out << "parsed    " << render(t) << "\n";
      out << "canonical " << render(ac_canonical(t)) << "\n";
      out << "depth " << depth(t) << "  weak-depth " << weak_depth(t) << "\n";
      return 0;
    }
    if (*obs) {
      Term t = parse(obs_term);
      TraceSet set = observe(parse_observation_kind(obs_kind), t);
      for (const Trace& tr : set) {
        if (tr.empty()) {
          out << "(empty)\n";
          continue;
        }
        for (std::size_t i = 0; i < tr.size(); ++i) out << (i ? " " : "") << tr[i];
        out << "\n";
      }
      return 0;
    }
    if (*check || *oracle) {
      RelationId rel = parse_relation(rel_flag);
      Term p = parse(term_p), q = parse(term_q);
      bool holds = *check ? check_closed(rel, p, q) : check_oracle(rel, p, q, alphabet);
      out << rel.str() << " " << render(p) << "  vs  " << render(q) << " : "
          << (holds ? "holds" : "fails") << "\n";
      return holds ? 0 : 1;
    }
    if (*prove_if) {
      Term p = parse(term_p), q = parse(term_q);
      Derivation d;
      try {
        d = prove_if_ground(p, q);
      } catch (const CompletenessError& ex) {
        err << "refused: " << ex.what() << "\n";
        return 1;
      }
      check_derivation(if_gc(), d);
      emit(serialize_derivation(d), out_file, out);
      if (!out_file.empty())
        out << "derivation checked (" << axiom_step_count(d) << " axiom steps)\n";
      return 0;
    }
    if (*prove_weak) {
      RelationId rel = parse_relation(rel_flag);
      AxiomSource src = load_axioms(axioms_flag, alphabet);
      Term p = parse(term_p), q = parse(term_q);
      Derivation d;
      try {
        d = prove_weak_from_concrete(src.axioms, prove_if_ground, p, q, rel, alphabet);
      } catch (const CompletenessError& ex) {
        err << "refused: " << ex.what() << "\n";
        return 1;
      }
      check_derivation(transform_weak(src.axioms, rel), d);
      emit(serialize_derivation(d), out_file, out);
      if (!out_file.empty())
        out << "derivation checked (" << axiom_step_count(d) << " axiom steps)\n";
      return 0;
    }
    if (*transform) {
      RelationId rel = parse_relation(rel_flag);
      AxiomSource src = load_axioms(axioms_flag, alphabet);
      Axiomatization ae = transform_weak(src.axioms, rel);
      emit(ae.serialize(alphabet), out_file, out);
      return 0;
    }
    if (*saturate_cmd) {
      Term t = parse(term_p);
      Saturation s = saturate(t);
      out << render(s.saturated) << "\n";
      if (saturate_proof) emit(serialize_derivation(s.derivation), out_file, out);
      return 0;
    }
    if (*family_cmd) {
      Axiom ax = family(parse_family(family_flag), family_m, alphabet);
      out << ax.str() << "\n";
      return 0;
    }
    if (*obstruct) {
      AxiomSource src = load_axioms(axioms_flag, alphabet);
      Certificate cert;
      try {
        cert = obstruction_certificate(src.axioms, parse_family(family_flag), alphabet, bound);
      } catch (const ObstructionError& ex) {
        err << "refused: " << ex.what() << "\n";
        return 1;
      }
      emit(serialize_certificate(cert, alphabet), out_file, out);
      return 0;
    }
    if (*omega) {
      AxiomSource src = load_axioms(axioms_flag, alphabet);
      Term t = parse(term_p), u = parse(term_q);
      OmegaReport rep =
          check_omega_requirements(src.axioms, t, u, alphabet, omega_samples, seed, budget);
      out << "seed " << seed << "\n";
      out << "requirement 1: " << (rep.requirement1 ? "satisfied" : "failed") << "\n";
      out << "requirement 2: " << (rep.requirement2 ? "satisfied" : "failed") << "\n";
      out << "requirement 3: " << (rep.requirement3 ? "satisfied" : "failed") << "\n";
      for (const auto& f : rep.failures)
        out << "  requirement " << f.requirement << ": " << f.detail << "\n";
      return rep.all() ? 0 : 1;
    }
    if (*sweep) {
      RelationId rel = parse_relation(rel_flag);
      AxiomSource src = load_axioms(axioms_flag, alphabet);
      Alphabet sweep_alpha = src.file_alphabet && !src.alphabet.is_unbounded() ? src.alphabet
                                                                               : alphabet;
      SweepReport rep = sweep_soundness(src.axioms, rel, sweep_alpha, sweep_count, bound, seed);
      out << "seed " << seed << "\n";
      for (const auto& l : rep.lines)
        out << (l.pass ? "pass " : "FAIL ") << l.axiom << ": " << l.detail << "\n";
      return rep.all_pass() ? 0 : 1;
    }
    if (*replay_laws) {
      bool all = true;
      for (const std::string& key : derived_law_keys()) {
        Alphabet law_alpha = alphabet.is_unbounded() ? Alphabet::finite({"a", "b"}) : alphabet;
        DerivedLaw law = derived_law(key, law_alpha);
        bool ok = true;
        std::string note;
        try {
          for (const Derivation& d : law.derivations) check_derivation(law.premises, d);
        } catch (const ProofError& ex) {
          ok = false;
          note = ex.what();
        }
        all = all && ok;
        out << (ok ? "pass " : "FAIL ") << key << " [" << law.premises.name() << "]"
            << (note.empty() ? "" : ": " + note) << "\n";
      }
      return all ? 0 : 1;
    }
    if (*replay) {
      std::ifstream in(replay_file);
      if (!in) throw std::runtime_error("cannot read " + replay_file);
      std::ostringstream buf;
      buf << in.rdbuf();
      AxiomSource src = load_axioms(axioms_flag, alphabet);
      Derivation d = parse_derivation(buf.str());
      Conclusion c = check_derivation(src.axioms, d);
      out << "checked: " << c.str() << "\n";
      return 0;
    }
    if (*search_cmd) {
      AxiomSource src = load_axioms(axioms_flag, alphabet);
      SearchOptions opts;
      opts.budget = budget;
      SearchResult sr = search_derivation(src.axioms, parse(term_p), parse(term_q), opts);
      if (sr.derivation) {
        check_derivation(src.axioms, *sr.derivation);
        emit(serialize_derivation(*sr.derivation), out_file, out);
        if (!out_file.empty()) out << "found\n";
        return 0;
      }
      out << (sr.exhausted_completely ? "exhausted (search space explored within budget)\n"
                                      : "not found (budget or caps reached)\n");
      return 1;
    }
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace bccs
