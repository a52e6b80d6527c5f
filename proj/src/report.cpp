#include "mm1040/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace mm1040 {
namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

RelationReport summarize(const RunResult& result, const std::string& domain) {
  RelationReport row;
  row.relation_id = result.relation_id;
  row.domain = domain;
  row.verdict = to_string(result.verdict);
  row.n_pass = result.n_pass;
  row.n_fail = result.n_fail;
  row.max_deviance = result.max_deviance;
  row.first_failure_seconds = result.first_failure_seconds;
  row.elapsed_seconds = result.elapsed_seconds;
  row.sources_retired = result.sources_retired;
  row.explanation = "-";
  return row;
}

std::string report_table(const std::vector<RelationReport>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%3s  %-10s  %-20s  %9s  %7s  %12s  %9s  %8s  %s\n",
                "rel", "domain", "verdict", "pass", "fail", "max_dev", "first_f", "tree_acc",
                "explained_by");
  out << line;
  for (const RelationReport& r : rows) {
    std::snprintf(line, sizeof line, "%3d  %-10s  %-20s  %9llu  %7llu  %12s  %9s  %8s  %s\n",
                  r.relation_id, r.domain.c_str(), r.verdict.c_str(),
                  static_cast<unsigned long long>(r.n_pass),
                  static_cast<unsigned long long>(r.n_fail),
                  format_dollars(r.max_deviance).c_str(),
                  r.first_failure_seconds ? fixed(*r.first_failure_seconds, 2).c_str() : "-",
                  r.tree_accuracy ? fixed(*r.tree_accuracy, 3).c_str() : "-",
                  r.explanation.c_str());
    out << line;
  }
  return out.str();
}

std::string report_json(const std::vector<RelationReport>& rows,
                        const GeneratorConfig& config, const std::string& sut) {
  nlohmann::json j;
  j["schema"] = "mm1040-summary/1";
  j["sut"] = sut;
  nlohmann::json cfg;
  cfg["bayes_factor"] = config.bayes_factor;
  cfg["delta"] = config.delta;
  cfg["max_cases"] = config.max_cases;
  cfg["seed"] = config.seed;
  cfg["theta"] = config.theta;
  cfg["timeout_seconds"] = config.timeout_seconds;
  j["config"] = cfg;
  nlohmann::json rels = nlohmann::json::array();
  for (const RelationReport& r : rows) {
    nlohmann::json e;
    e["relation"] = r.relation_id;
    e["domain"] = r.domain;
    e["verdict"] = r.verdict;
    e["n_pass"] = r.n_pass;
    e["n_fail"] = r.n_fail;
    e["max_deviance"] = r.max_deviance;
    if (r.first_failure_seconds) e["first_failure_seconds"] = *r.first_failure_seconds;
    e["elapsed_seconds"] = r.elapsed_seconds;
    e["sources_retired"] = r.sources_retired;
    e["explained_by"] = r.explanation;
    if (r.tree_accuracy) e["tree_accuracy"] = *r.tree_accuracy;
    if (r.tree_height) e["tree_height"] = *r.tree_height;
    if (r.tree_leaves) e["tree_leaves"] = *r.tree_leaves;
    rels.push_back(e);
  }
  j["relations"] = rels;
  return j.dump(2) + "\n";
}

}  // namespace mm1040
