#include "mm1040/orchestrator.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "mm1040/external_sut.hpp"
#include "mm1040/feature_frame.hpp"
#include "mm1040/suite_io.hpp"

namespace mm1040 {
namespace {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string relation_stem(int id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "rel_%02d", id);
  return buf;
}

// Builds this worker's own SUT instance; external SUTs each get their own
// subprocess so workers never share a pipe.
SutFn make_sut(const RunOptions& opt, std::vector<std::unique_ptr<ExternalSut>>& keep_alive) {
  switch (opt.sut.kind) {
    case SutSelector::Kind::Builtin: {
      TaxEngine engine(opt.tax);
      return [engine](const TaxReturnInput& r) { return engine.federal_tax_return(r); };
    }
    case SutSelector::Kind::Mutant: {
      TaxEngine engine(opt.tax, opt.sut.mutant);
      return [engine](const TaxReturnInput& r) { return engine.federal_tax_return(r); };
    }
    case SutSelector::Kind::External: {
      keep_alive.push_back(std::make_unique<ExternalSut>(opt.sut.external_command,
                                                         opt.sut_call_timeout));
      return keep_alive.back()->as_fn();
    }
  }
  throw std::logic_error("bad SUT kind");
}

void write_tree_artifacts(const fs::path& prefix, const LexTree& tree) {
  write_text_file(prefix.string() + ".tree.dot", to_dot(tree));
  write_text_file(prefix.string() + ".tree.json", tree_to_json(tree));
  std::string paths;
  for (const std::string& line : failure_paths(tree)) paths += line + "\n";
  write_text_file(prefix.string() + ".paths.txt", paths);
}

}  // namespace

SutSelector SutSelector::parse(const std::string& text) {
  SutSelector s;
  if (text == "builtin") {
    s.kind = Kind::Builtin;
    return s;
  }
  if (text.rfind("mutant:", 0) == 0) {
    s.kind = Kind::Mutant;
    s.mutant = mutant_from_string(text.substr(7));
    if (!s.mutant) throw std::invalid_argument("unknown mutant '" + text.substr(7) + "'");
    return s;
  }
  if (text.rfind("external:", 0) == 0) {
    s.kind = Kind::External;
    s.external_command = text.substr(9);
    if (s.external_command.empty()) throw std::invalid_argument("empty external SUT command");
    return s;
  }
  throw std::invalid_argument("bad SUT selector '" + text +
                              "' (want builtin, mutant:<id>, or external:<command>)");
}

std::string SutSelector::display() const {
  switch (kind) {
    case Kind::Builtin: return "builtin";
    case Kind::Mutant: return std::string("mutant:") + to_string(*mutant);
    case Kind::External: return "external:" + external_command;
  }
  throw std::logic_error("bad SUT kind");
}

RunOutput run_relations(const RunOptions& opt, std::ostream& log) {
  opt.gen.validate();
  if (opt.relation_ids.empty()) throw std::invalid_argument("no relations selected");
  for (int id : opt.relation_ids) relation_by_id(id);  // validate up front

  const std::size_t n = opt.relation_ids.size();
  RunOutput out;
  out.results.resize(n);
  out.reports.resize(n);
  out.trees.resize(n);

  unsigned jobs = opt.jobs > 0 ? static_cast<unsigned>(opt.jobs)
                               : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(n));

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto worker = [&] {
    std::vector<std::unique_ptr<ExternalSut>> keep_alive;
    try {
      const SutFn sut = make_sut(opt, keep_alive);
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        const MetamorphicRelation& rel = relation_by_id(opt.relation_ids[i]);
        out.results[i] = run_relation(sut, rel, opt.gen);
        out.reports[i] = summarize(out.results[i], to_string(rel.domain));
        try {
          FeatureFrame frame = flatten(out.results[i].cases);
          LexTree tree = fit_tree(frame, opt.tree);
          out.reports[i].explanation = "tree";
          out.reports[i].tree_accuracy = accuracy(tree, frame);
          out.reports[i].tree_height = tree_height(tree);
          out.reports[i].tree_leaves = leaf_count(tree);
          out.trees[i] = std::move(tree);
        } catch (const DegenerateSuite&) {
          out.reports[i].explanation =
              out.results[i].n_fail > 0 ? "all-failed" : "premise";
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!first_error) first_error = std::current_exception();
      next.store(n);  // drain remaining work
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  if (!opt.out_dir.empty()) {
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < n; ++i) {
      const MetamorphicRelation& rel = relation_by_id(opt.relation_ids[i]);
      SuiteFile suite;
      suite.relation_id = rel.id;
      suite.arity = rel.arity;
      suite.domain = to_string(rel.domain);
      suite.sut = opt.sut.display();
      suite.config = opt.gen;
      suite.cases = out.results[i].cases;
      const std::string stem = relation_stem(rel.id);
      write_suite_file((dir / (stem + ".suite.jsonl")).string(), suite);
      if (out.trees[i]) write_tree_artifacts(dir / stem, *out.trees[i]);
    }
    write_text_file(dir / "summary.txt", report_table(out.reports));
    write_text_file(dir / "summary.json",
                    report_json(out.reports, opt.gen, opt.sut.display()));
  }

  bool any_falsified = false, any_inconclusive = false;
  for (const RunResult& r : out.results) {
    if (r.verdict == Verdict::FALSIFIED) any_falsified = true;
    if (r.verdict == Verdict::INCONCLUSIVE) any_inconclusive = true;
  }
  out.exit_code = any_falsified ? 1 : (any_inconclusive ? 2 : 0);

  for (std::size_t i = 0; i < n; ++i) {
    const RelationReport& r = out.reports[i];
    log << "relation " << r.relation_id << " (" << r.domain << "): " << r.verdict
        << "  pass=" << r.n_pass << " fail=" << r.n_fail
        << " max_deviance=" << format_dollars(r.max_deviance);
    if (r.first_failure_seconds)
      log << " first_failure_s=" << *r.first_failure_seconds;
    if (r.tree_accuracy) log << " tree_accuracy=" << *r.tree_accuracy;
    log << "\n";
  }
  return out;
}

int explain_suite(const std::string& suite_path, const TreeParams& params,
                  std::ostream& log) {
  const SuiteFile suite = read_suite_file(suite_path);
  const MetamorphicRelation& rel = relation_by_id(suite.relation_id);
  log << "suite: relation " << rel.id << " (" << to_string(rel.domain) << "), "
      << suite.cases.size() << " cases, sut " << suite.sut << "\n";

  FeatureFrame frame;
  try {
    frame = flatten(suite.cases);
  } catch (const DegenerateSuite& e) {
    // Nothing for a classifier to separate; the premise is the explanation.
    log << "no classifier fitted (" << e.what() << ")\n";
    log << "premise: " << rel.premise_text << "\n";
    return 0;
  }

  const LexTree tree = fit_tree(frame, params);

  fs::path prefix(suite_path);
  if (prefix.extension() == ".jsonl") prefix.replace_extension();
  if (prefix.extension() == ".suite") prefix.replace_extension();
  write_tree_artifacts(prefix, tree);

  log << "tree: accuracy=" << accuracy(tree, frame) << " height=" << tree_height(tree)
      << " leaves=" << leaf_count(tree) << "\n";
  for (const std::string& line : failure_paths(tree)) log << line << "\n";
  log << "wrote " << prefix.string() << ".tree.dot, .tree.json, .paths.txt\n";
  return 0;
}

}  // namespace mm1040
