#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mm1040/generator.hpp"
#include "mm1040/relations.hpp"

namespace mm1040 {

// Labeled-case suite files are JSON lines: one header object, then one case
// per line. All money is integer cents; serialization is canonical (keys
// sorted), so parse -> re-serialize is byte-identical.
struct SuiteFile {
  std::string schema = "mm1040-suite/1";
  int relation_id = 0;
  int arity = 2;
  std::string domain;
  std::string sut;
  GeneratorConfig config;
  std::vector<CaseTuple> cases;
};

struct SuiteFormatError : std::runtime_error {
  explicit SuiteFormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what) {}
};

std::string record_to_json_line(const TaxReturnInput& r);
TaxReturnInput record_from_json_line(const std::string& line);

void write_suite(std::ostream& out, const SuiteFile& suite);
void write_suite_file(const std::string& path, const SuiteFile& suite);
SuiteFile read_suite(std::istream& in);
SuiteFile read_suite_file(const std::string& path);

}  // namespace mm1040
