#ifndef BCCS_CLI_HPP
#define BCCS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bccs/axioms.hpp"
#include "bccs/semantics.hpp"

namespace bccs {

struct SessionConfig {
  Alphabet alphabet = Alphabet::finite({"a", "b"});
  int bound = 2;
  Mode mode = Mode::Preorder;
  std::uint64_t seed = 1;
};

struct SweepLine {
  std::string axiom;
  bool pass = false;
  std::string detail;
};

struct SweepReport {
  std::vector<SweepLine> lines;
  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};

// Per-axiom bounded soundness regression over random closed substitutions;
// deterministic under a fixed seed. Equations are checked in both directions.
SweepReport sweep_soundness(const Axiomatization& e, const RelationId& rel,
                            const Alphabet& alphabet, std::size_t count, int bound,
                            std::uint64_t seed);

// Command-line driver. Exit codes: 0 success / relation holds, 1 relation
// fails or proof/certificate refused, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bccs

#endif
