#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mm1040/relations.hpp"

namespace mm1040 {

// Tabular view of a labeled suite: one row per case, one column per
// (record position, field). Raw integer values only (cents, counts, codes);
// no scaling, so split thresholds stay exact.
//
// Column names carry a position suffix. Arity 2 joins source and follow-up
// as _1/_3; arity 4 uses _1.._4 for (x, x', y, y'). Source positions form
// feature group 1, follow-up positions group 2.
struct FeatureFrame {
  std::vector<std::string> names;
  std::vector<int> groups;
  std::vector<FieldKind> kinds;
  std::vector<std::vector<std::int64_t>> rows;  // row-major, rows[i][col]
  std::vector<Label> labels;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return names.size(); }
};

// A suite that cannot be explained by a classifier: empty, or single-label.
struct DegenerateSuite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FeatureFrame flatten(const std::vector<CaseTuple>& cases);

}  // namespace mm1040
