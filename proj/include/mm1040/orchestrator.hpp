#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mm1040/generator.hpp"
#include "mm1040/lex_tree.hpp"
#include "mm1040/report.hpp"
#include "mm1040/tax_engine.hpp"

namespace mm1040 {

// Which implementation answers the SUT calls.
//   "builtin"            the reference engine
//   "mutant:M3"          the reference engine with one seeded fault
//   "external:CMD..."    a subprocess speaking the line protocol
struct SutSelector {
  enum class Kind { Builtin, Mutant, External };
  Kind kind = Kind::Builtin;
  std::optional<MutantId> mutant;
  std::string external_command;

  static SutSelector parse(const std::string& text);  // throws std::invalid_argument
  std::string display() const;
};

struct RunOptions {
  std::vector<int> relation_ids;  // subset of 1..16
  SutSelector sut;
  GeneratorConfig gen;
  TaxConfig tax = TaxConfig::year2020();
  TreeParams tree;
  std::string out_dir;  // empty: write nothing
  int jobs = 0;         // 0: one worker per hardware thread
  double sut_call_timeout = 5.0;
};

struct RunOutput {
  std::vector<RunResult> results;         // same order as relation_ids
  std::vector<RelationReport> reports;
  std::vector<std::optional<LexTree>> trees;  // present for mixed suites
  int exit_code = 0;  // 0 all passed, 1 falsified, 2 inconclusive
};

// Full pipeline: generate per relation (in parallel), fit a tree on every
// mixed suite, write suites/trees/summaries under out_dir, log one line per
// relation. May throw SutProtocolError or UnsatisfiablePremise.
RunOutput run_relations(const RunOptions& opt, std::ostream& log);

// Refit the classifier for a stored suite; writes tree artifacts next to
// the suite. Single-label suites are explained by the premise instead.
int explain_suite(const std::string& suite_path, const TreeParams& params,
                  std::ostream& log);

}  // namespace mm1040
