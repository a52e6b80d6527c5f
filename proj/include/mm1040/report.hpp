#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mm1040/generator.hpp"

namespace mm1040 {

// Per-relation summary row, optionally extended with classifier metrics
// when a mixed suite admitted one.
struct RelationReport {
  int relation_id = 0;
  std::string domain;
  std::string verdict;
  std::uint64_t n_pass = 0;
  std::uint64_t n_fail = 0;
  Cents max_deviance = 0;
  std::optional<double> first_failure_seconds;
  double elapsed_seconds = 0.0;
  std::uint64_t sources_retired = 0;
  std::string explanation;  // "tree", "premise", or "-"
  std::optional<double> tree_accuracy;
  std::optional<int> tree_height;
  std::optional<int> tree_leaves;
};

RelationReport summarize(const RunResult& result, const std::string& domain);

std::string report_table(const std::vector<RelationReport>& rows);
std::string report_json(const std::vector<RelationReport>& rows,
                        const GeneratorConfig& config, const std::string& sut);

}  // namespace mm1040
