#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mm1040/feature_frame.hpp"

namespace mm1040 {

struct TreeParams {
  int max_depth = 12;
  int min_samples_leaf = 20;
  double association_threshold = 0.1;  // |Pearson r| gate for follow-up columns
};

// Binary decision node. Thresholds are stored doubled so midpoints between
// integer feature values stay exact: go left when 2*value <= threshold2.
struct TreeNode {
  int feature = -1;  // column index; -1 marks a leaf
  std::int64_t threshold2 = 0;
  std::size_t n_failed = 0;
  std::size_t n_passed = 0;
  Label label = Label::failed;  // leaf decision; ties resolve to failed
  std::unique_ptr<TreeNode> left, right;

  bool is_leaf() const { return feature < 0; }
};

struct LexTree {
  std::vector<std::string> feature_names;
  std::vector<int> feature_groups;
  std::vector<FieldKind> feature_kinds;
  TreeParams params;
  std::unique_ptr<TreeNode> root;
};

// Greedy binary CART on integer features, exact arithmetic throughout.
//
// Split selection maximizes sum over children of (failed^2 + passed^2)/n,
// which is the same ordering as minimizing the weighted Gini impurity but
// compares as a rational with no rounding. Ties go to the earliest column
// and then the smallest threshold, so refitting a permuted frame gives an
// identical tree.
//
// Column eligibility is a hard filter: a group-g column (g > 1) may be
// split on only if the path above already split on some group-(g-1)
// column, or if its node-local |Pearson r| against every not-yet-used
// lower-group column exceeds params.association_threshold.
LexTree fit_tree(const FeatureFrame& frame, const TreeParams& params = {});

Label predict(const LexTree& tree, const std::vector<std::int64_t>& row);
double accuracy(const LexTree& tree, const FeatureFrame& frame);
int tree_height(const LexTree& tree);  // edges on the longest root-to-leaf path
int leaf_count(const LexTree& tree);

// 1 - (f/n)^2 - (p/n)^2; reporting only, never used to pick splits.
double gini(std::size_t n_failed, std::size_t n_passed);

// |Pearson r| of two parallel value vectors; 0 when either is constant.
double association(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

std::string to_dot(const LexTree& tree);
std::string tree_to_json(const LexTree& tree);

// One line per failed leaf, largest failure count first:
//   (agi_1 > 56844.50) and (sts_1 <= 1.5) -> failed [918 failed / 2 passed]
std::vector<std::string> failure_paths(const LexTree& tree);

}  // namespace mm1040
