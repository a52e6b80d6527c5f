#include "mm1040/feature_frame.hpp"

namespace mm1040 {
namespace {

struct PositionPlan {
  const char* suffix;
  int group;
};

// Record order in a tuple is (x, y) for arity 2 and (x, x', y, y') for
// arity 4; suffixes number the grid slots so _1/_3 always mean
// source/follow-up.
const std::vector<PositionPlan>& plan_for_arity(int arity) {
  static const std::vector<PositionPlan> two{{"_1", 1}, {"_3", 2}};
  static const std::vector<PositionPlan> four{{"_1", 1}, {"_2", 1}, {"_3", 2}, {"_4", 2}};
  if (arity == 2) return two;
  if (arity == 4) return four;
  throw std::invalid_argument("arity must be 2 or 4");
}

}  // namespace

FeatureFrame flatten(const std::vector<CaseTuple>& cases) {
  if (cases.empty()) throw DegenerateSuite("empty suite");
  const int arity = static_cast<int>(cases.front().records.size());
  const auto& plan = plan_for_arity(arity);

  FeatureFrame frame;
  for (const PositionPlan& p : plan) {
    for (Field f : all_fields()) {
      frame.names.push_back(std::string(field_name(f)) + p.suffix);
      frame.groups.push_back(p.group);
      frame.kinds.push_back(field_kind(f));
    }
  }

  bool saw_passed = false;
  bool saw_failed = false;
  frame.rows.reserve(cases.size());
  frame.labels.reserve(cases.size());
  for (const CaseTuple& c : cases) {
    if (static_cast<int>(c.records.size()) != arity)
      throw std::invalid_argument("mixed arities in one suite");
    std::vector<std::int64_t> row;
    row.reserve(frame.names.size());
    for (const TaxReturnInput& r : c.records)
      for (Field f : all_fields()) row.push_back(field_value(r, f));
    frame.rows.push_back(std::move(row));
    frame.labels.push_back(c.label);
    (c.label == Label::passed ? saw_passed : saw_failed) = true;
  }
  if (!saw_failed) throw DegenerateSuite("all cases passed");
  if (!saw_passed) throw DegenerateSuite("all cases failed");
  return frame;
}

}  // namespace mm1040
