#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mm1040/orchestrator.hpp"
#include "mm1040/suite_io.hpp"

namespace {

using namespace mm1040;

// sysexits-style process results, plus the suite verdicts on 1/2.
constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitBadData = 65;
constexpr int kExitSutFailure = 70;
constexpr int kExitInternal = 71;

std::vector<int> parse_relation_ids(const std::string& text) {
  if (text == "all") {
    std::vector<int> ids;
    for (const MetamorphicRelation& rel : catalog()) ids.push_back(rel.id);
    return ids;
  }
  std::vector<int> ids;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (token.empty()) throw std::invalid_argument("empty relation id in '" + text + "'");
    const std::size_t dash = token.find('-');
    try {
      if (dash == std::string::npos) {
        ids.push_back(std::stoi(token));
      } else {
        const int lo = std::stoi(token.substr(0, dash));
        const int hi = std::stoi(token.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("inverted range");
        for (int i = lo; i <= hi; ++i) ids.push_back(i);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad relation selector '" + token + "'");
    }
  }
  return ids;
}

struct CliOptions {
  std::string relations = "all";
  std::string sut = "builtin";
  std::string out_dir = "mm1040-out";
  std::string tax_config_path;
  double delta_dollars = 0.95;
  double sut_call_timeout = 5.0;
  GeneratorConfig gen;
  TreeParams tree;
  int jobs = 0;
};

void add_tree_flags(CLI::App* cmd, TreeParams& tree) {
  cmd->add_option("--max-depth", tree.max_depth, "Maximum tree depth")
      ->envname("MM1040_MAX_DEPTH")
      ->capture_default_str();
  cmd->add_option("--min-leaf", tree.min_samples_leaf, "Minimum samples per leaf")
      ->envname("MM1040_MIN_LEAF")
      ->capture_default_str();
  cmd->add_option("--rho", tree.association_threshold,
                  "Association gate for follow-up features")
      ->envname("MM1040_RHO")
      ->capture_default_str();
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Metamorphic testing and fault-localization harness for a "
               "2020 Form 1040 tax engine"};
  app.require_subcommand(1);
  CliOptions o;

  CLI::App* run = app.add_subcommand("run", "Generate cases, judge relations, explain failures");
  run->add_option("--relations", o.relations, "Relation ids: 'all' or e.g. '1,3-5'")
      ->envname("MM1040_RELATIONS")
      ->capture_default_str();
  run->add_option("--sut", o.sut, "builtin | mutant:<id> | external:<command>")
      ->envname("MM1040_SUT")
      ->capture_default_str();
  run->add_option("--seed", o.gen.seed, "Root RNG seed")
      ->envname("MM1040_SEED")
      ->capture_default_str();
  run->add_option("--timeout", o.gen.timeout_seconds, "Per-relation budget, seconds")
      ->envname("MM1040_TIMEOUT")
      ->capture_default_str();
  run->add_option("--bayes-factor", o.gen.bayes_factor, "Evidence threshold B (>= 1)")
      ->envname("MM1040_BAYES_FACTOR")
      ->capture_default_str();
  run->add_option("--theta", o.gen.theta, "Per-case pass probability bound, in (0,1)")
      ->envname("MM1040_THETA")
      ->capture_default_str();
  run->add_option("--delta", o.delta_dollars, "Deviance tolerance, dollars")
      ->envname("MM1040_DELTA")
      ->capture_default_str();
  run->add_option("--max-cases", o.gen.max_cases,
                  "Stop a relation after this many committed cases (0 = unbounded)")
      ->envname("MM1040_MAX_CASES")
      ->capture_default_str();
  run->add_option("--jobs", o.jobs, "Worker threads (0 = hardware threads)")
      ->envname("MM1040_JOBS")
      ->capture_default_str();
  run->add_option("--out", o.out_dir, "Output directory for suites, trees, summaries")
      ->envname("MM1040_OUT")
      ->capture_default_str();
  run->add_option("--tax-config", o.tax_config_path, "Tax-table JSON (default: built-in 2020)")
      ->envname("MM1040_TAX_CONFIG");
  run->add_option("--sut-call-timeout", o.sut_call_timeout,
                  "Per-call timeout for external SUTs, seconds")
      ->envname("MM1040_SUT_CALL_TIMEOUT")
      ->capture_default_str();
  add_tree_flags(run, o.tree);

  std::string suite_path;
  CLI::App* explain = app.add_subcommand("explain", "Refit the failure classifier for a stored suite");
  explain->add_option("suite", suite_path, "Path to a .suite.jsonl file")->required();
  add_tree_flags(explain, o.tree);

  CLI::App* list = app.add_subcommand("list", "Print the relation catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (list->parsed()) {
    std::cout << catalog_listing();
    return kExitOk;
  }

  if (explain->parsed()) {
    try {
      return explain_suite(suite_path, o.tree, std::cout);
    } catch (const SuiteFormatError& e) {
      std::cerr << "mm1040: bad suite file: " << e.what() << "\n";
      return kExitBadData;
    }
  }

  RunOptions opt;
  try {
    opt.relation_ids = parse_relation_ids(o.relations);
    opt.sut = SutSelector::parse(o.sut);
    opt.gen = o.gen;
    opt.gen.delta = static_cast<Cents>(std::llround(o.delta_dollars * 100.0));
    opt.tree = o.tree;
    opt.out_dir = o.out_dir;
    opt.jobs = o.jobs;
    opt.sut_call_timeout = o.sut_call_timeout;
    opt.gen.validate();
    for (int id : opt.relation_ids) relation_by_id(id);
  } catch (const std::logic_error& e) {  // invalid_argument and out_of_range
    std::cerr << "mm1040: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!o.tax_config_path.empty()) {
    try {
      opt.tax = TaxConfig::from_file(o.tax_config_path);
    } catch (const std::exception& e) {
      std::cerr << "mm1040: bad tax config: " << e.what() << "\n";
      return kExitBadData;
    }
  }

  const RunOutput out = run_relations(opt, std::cout);
  if (!opt.out_dir.empty())
    std::cout << "wrote " << opt.out_dir << "/summary.txt and per-relation files\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return cli_main(argc, argv);
  } catch (const mm1040::SutProtocolError& e) {
    std::cerr << "mm1040: SUT failure: " << e.what() << "\n";
    return kExitSutFailure;
  } catch (const mm1040::UnsatisfiablePremise& e) {
    std::cerr << "mm1040: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "mm1040: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
