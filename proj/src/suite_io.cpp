#include "mm1040/suite_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mm1040 {
namespace {

using nlohmann::json;

json record_to_json(const TaxReturnInput& r) {
  json j;
  for (Field f : all_fields()) {
    if (f == Field::sts) {
      j["sts"] = to_string(r.sts);
    } else if (field_kind(f) == FieldKind::Flag) {
      j[std::string(field_name(f))] = field_value(r, f) != 0;
    } else {
      j[std::string(field_name(f))] = field_value(r, f);
    }
  }
  return j;
}

TaxReturnInput record_from_json(const json& j) {
  TaxReturnInput r;
  if (!j.is_object()) throw SuiteFormatError("record is not an object");
  for (Field f : all_fields()) {
    const std::string key{field_name(f)};
    if (!j.contains(key)) throw SuiteFormatError("record missing field '" + key + "'");
    const json& v = j.at(key);
    try {
      if (f == Field::sts) {
        r.sts = filing_status_from_string(v.get<std::string>());
      } else if (field_kind(f) == FieldKind::Flag) {
        set_field_value(r, f, v.get<bool>() ? 1 : 0);
      } else {
        set_field_value(r, f, v.get<std::int64_t>());
      }
    } catch (const std::exception& e) {
      throw SuiteFormatError("bad value for field '" + key + "': " + e.what());
    }
  }
  return r;
}

Label label_from_name(const std::string& s) {
  if (s == "failed") return Label::failed;
  if (s == "passed") return Label::passed;
  throw SuiteFormatError("unknown label '" + s + "'");
}

json config_to_json(const GeneratorConfig& c) {
  json j;
  j["bayes_factor"] = c.bayes_factor;
  j["delta"] = c.delta;
  j["max_cases"] = c.max_cases;
  j["seed"] = c.seed;
  j["theta"] = c.theta;
  j["timeout_seconds"] = c.timeout_seconds;
  json s;
  s["max_agi"] = c.sampling.max_agi;
  s["max_credit"] = c.sampling.max_credit;
  s["max_itemized"] = c.sampling.max_itemized;
  s["max_mde"] = c.sampling.max_mde;
  s["max_withholding"] = c.sampling.max_withholding;
  s["min_age"] = c.sampling.min_age;
  s["max_age"] = c.sampling.max_age;
  j["sampling"] = s;
  return j;
}

GeneratorConfig config_from_json(const json& j) {
  GeneratorConfig c;
  c.bayes_factor = j.at("bayes_factor").get<double>();
  c.delta = j.at("delta").get<Cents>();
  c.max_cases = j.at("max_cases").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.theta = j.at("theta").get<double>();
  c.timeout_seconds = j.at("timeout_seconds").get<double>();
  const json& s = j.at("sampling");
  c.sampling.max_agi = s.at("max_agi").get<Cents>();
  c.sampling.max_credit = s.at("max_credit").get<Cents>();
  c.sampling.max_itemized = s.at("max_itemized").get<Cents>();
  c.sampling.max_mde = s.at("max_mde").get<Cents>();
  c.sampling.max_withholding = s.at("max_withholding").get<Cents>();
  c.sampling.min_age = s.at("min_age").get<int>();
  c.sampling.max_age = s.at("max_age").get<int>();
  return c;
}

json case_to_json(const CaseTuple& c) {
  json j;
  j["deviance"] = c.deviance;
  j["label"] = to_string(c.label);
  json outs = json::array();
  for (Cents o : c.outputs) outs.push_back(o);
  j["outputs"] = outs;
  json recs = json::array();
  for (const TaxReturnInput& r : c.records) recs.push_back(record_to_json(r));
  j["records"] = recs;
  j["t"] = c.t_seconds;
  return j;
}

CaseTuple case_from_json(const json& j, int relation_id, int arity) {
  CaseTuple c;
  c.relation_id = relation_id;
  c.deviance = j.at("deviance").get<Cents>();
  c.label = label_from_name(j.at("label").get<std::string>());
  for (const json& o : j.at("outputs")) c.outputs.push_back(o.get<Cents>());
  for (const json& r : j.at("records")) c.records.push_back(record_from_json(r));
  c.t_seconds = j.at("t").get<std::int64_t>();
  if (static_cast<int>(c.records.size()) != arity || c.outputs.size() != c.records.size())
    throw SuiteFormatError("case does not match declared arity " + std::to_string(arity));
  return c;
}

}  // namespace

std::string record_to_json_line(const TaxReturnInput& r) { return record_to_json(r).dump(); }

TaxReturnInput record_from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw SuiteFormatError(std::string("bad record json: ") + e.what());
  }
  return record_from_json(j);
}

void write_suite(std::ostream& out, const SuiteFile& suite) {
  json h;
  h["arity"] = suite.arity;
  h["config"] = config_to_json(suite.config);
  h["domain"] = suite.domain;
  h["relation"] = suite.relation_id;
  h["schema"] = suite.schema;
  h["sut"] = suite.sut;
  out << h.dump() << '\n';
  for (const CaseTuple& c : suite.cases) out << case_to_json(c).dump() << '\n';
}

void write_suite_file(const std::string& path, const SuiteFile& suite) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SuiteFormatError("cannot open for writing: " + path);
  write_suite(out, suite);
  out.flush();
  if (!out) throw SuiteFormatError("write failed: " + path);
}

SuiteFile read_suite(std::istream& in) {
  SuiteFile suite;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw SuiteFormatError("empty suite file");
  ++lineno;
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw SuiteFormatError(std::string("bad header json: ") + e.what(), lineno);
  }
  try {
    suite.schema = h.at("schema").get<std::string>();
    if (suite.schema != "mm1040-suite/1")
      throw SuiteFormatError("unsupported schema '" + suite.schema + "'", lineno);
    suite.relation_id = h.at("relation").get<int>();
    suite.arity = h.at("arity").get<int>();
    suite.domain = h.at("domain").get<std::string>();
    suite.sut = h.at("sut").get<std::string>();
    suite.config = config_from_json(h.at("config"));
  } catch (const json::exception& e) {
    throw SuiteFormatError(std::string("bad header: ") + e.what(), lineno);
  }
  if (suite.arity != 2 && suite.arity != 4)
    throw SuiteFormatError("arity must be 2 or 4", lineno);
  try {
    relation_by_id(suite.relation_id);
  } catch (const std::out_of_range&) {
    throw SuiteFormatError("unknown relation id " + std::to_string(suite.relation_id),
                           lineno);
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw SuiteFormatError(std::string("bad case json: ") + e.what(), lineno);
    }
    try {
      suite.cases.push_back(case_from_json(j, suite.relation_id, suite.arity));
    } catch (const json::exception& e) {
      throw SuiteFormatError(std::string("bad case: ") + e.what(), lineno);
    } catch (const SuiteFormatError& e) {
      throw SuiteFormatError(e.what(), lineno);
    }
  }
  return suite;
}

SuiteFile read_suite_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SuiteFormatError("cannot open: " + path);
  return read_suite(in);
}

}  // namespace mm1040
