#include "mm1040/lex_tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace mm1040 {
namespace {

// Child-purity score for one split, kept as an exact rational:
//   (A_L * n_R + A_R * n_L) / (n_L * n_R), where A = failed^2 + passed^2.
// Ordering by this value is ordering by negative weighted Gini. Counts are
// bounded by the suite size, so the cross products below stay far inside
// 128 bits.
struct RationalScore {
  unsigned __int128 num = 0;
  unsigned __int128 den = 1;
};

bool score_greater(const RationalScore& a, const RationalScore& b) {
  return a.num * b.den > b.num * a.den;
}

unsigned __int128 purity(std::uint64_t failed, std::uint64_t passed) {
  return static_cast<unsigned __int128>(failed) * failed +
         static_cast<unsigned __int128>(passed) * passed;
}

struct BestSplit {
  bool found = false;
  int col = -1;
  std::int64_t threshold2 = 0;
  RationalScore score;
};

class Fitter {
 public:
  Fitter(const FeatureFrame& frame, const TreeParams& params)
      : frame_(frame), params_(params) {}

  std::unique_ptr<TreeNode> build(std::vector<std::size_t>& rows, int depth,
                                  std::uint64_t used_mask, std::uint32_t groups_seen) {
    auto node = std::make_unique<TreeNode>();
    for (std::size_t r : rows)
      (frame_.labels[r] == Label::failed ? node->n_failed : node->n_passed)++;
    node->label = node->n_failed >= node->n_passed ? Label::failed : Label::passed;

    const std::size_t n = rows.size();
    const bool pure = node->n_failed == 0 || node->n_passed == 0;
    if (pure || depth >= params_.max_depth ||
        n < 2 * static_cast<std::size_t>(params_.min_samples_leaf))
      return node;

    BestSplit best = find_best_split(rows, used_mask, groups_seen);
    if (!best.found) return node;

    // Require a strict improvement over leaving the node as a leaf.
    const unsigned __int128 parent_purity = purity(node->n_failed, node->n_passed);
    if (!(best.score.num * static_cast<unsigned __int128>(n) >
          parent_purity * best.score.den))
      return node;

    std::vector<std::size_t> left_rows, right_rows;
    left_rows.reserve(n);
    right_rows.reserve(n);
    for (std::size_t r : rows) {
      if (2 * frame_.rows[r][best.col] <= best.threshold2)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    node->feature = best.col;
    node->threshold2 = best.threshold2;
    const std::uint64_t child_used = used_mask | (std::uint64_t{1} << best.col);
    const std::uint32_t child_groups =
        groups_seen | (std::uint32_t{1} << frame_.groups[best.col]);
    node->left = build(left_rows, depth + 1, child_used, child_groups);
    node->right = build(right_rows, depth + 1, child_used, child_groups);
    return node;
  }

 private:
  std::vector<std::int64_t> gather(int col, const std::vector<std::size_t>& rows) const {
    std::vector<std::int64_t> out;
    out.reserve(rows.size());
    for (std::size_t r : rows) out.push_back(frame_.rows[r][col]);
    return out;
  }

  bool eligible(int col, const std::vector<std::size_t>& rows,
                std::uint64_t used_mask, std::uint32_t groups_seen) const {
    const int g = frame_.groups[col];
    if (g <= 1) return true;
    if (groups_seen & (std::uint32_t{1} << (g - 1))) return true;
    // No lower-group split above us: admit the column only when it moves
    // with every lower-group column that is still unused on this path.
    const std::vector<std::int64_t> own = gather(col, rows);
    for (int c = 0; c < static_cast<int>(frame_.n_cols()); ++c) {
      if (frame_.groups[c] >= g) continue;
      if (used_mask & (std::uint64_t{1} << c)) continue;
      if (association(own, gather(c, rows)) <= params_.association_threshold)
        return false;
    }
    return true;
  }

  BestSplit find_best_split(const std::vector<std::size_t>& rows,
                            std::uint64_t used_mask, std::uint32_t groups_seen) const {
    BestSplit best;
    const std::size_t n = rows.size();
    const std::size_t min_leaf = static_cast<std::size_t>(params_.min_samples_leaf);
    std::vector<std::pair<std::int64_t, Label>> vals(n);
    for (int col = 0; col < static_cast<int>(frame_.n_cols()); ++col) {
      if (!eligible(col, rows, used_mask, groups_seen)) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = rows[i];
        vals[i] = {frame_.rows[r][col], frame_.labels[r]};
      }
      std::sort(vals.begin(), vals.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      std::uint64_t lf = 0, lp = 0, tf = 0, tp = 0;
      for (const auto& [v, lab] : vals) (lab == Label::failed ? tf : tp)++;
      for (std::size_t i = 1; i < n; ++i) {
        (vals[i - 1].second == Label::failed ? lf : lp)++;
        if (vals[i].first == vals[i - 1].first) continue;
        const std::size_t n_l = i, n_r = n - i;
        if (n_l < min_leaf || n_r < min_leaf) continue;
        RationalScore s;
        s.num = purity(lf, lp) * n_r + purity(tf - lf, tp - lp) * n_l;
        s.den = static_cast<unsigned __int128>(n_l) * n_r;
        // Strict comparison keeps the first-seen optimum: lower column
        // index, then smaller threshold.
        if (!best.found || score_greater(s, best.score)) {
          best.found = true;
          best.col = col;
          best.threshold2 = vals[i - 1].first + vals[i].first;
          best.score = s;
        }
      }
    }
    return best;
  }

  const FeatureFrame& frame_;
  const TreeParams& params_;
};

std::string threshold_display(const LexTree& tree, int col, std::int64_t t2) {
  char buf[64];
  if (tree.feature_kinds[col] == FieldKind::Money)
    std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(t2) / 200.0);
  else
    std::snprintf(buf, sizeof buf, "%.1f", static_cast<double>(t2) / 2.0);
  return buf;
}

}  // namespace

LexTree fit_tree(const FeatureFrame& frame, const TreeParams& params) {
  if (frame.n_rows() == 0) throw std::invalid_argument("cannot fit an empty frame");
  if (frame.n_cols() > 64) throw std::invalid_argument("too many columns");
  LexTree tree;
  tree.feature_names = frame.names;
  tree.feature_groups = frame.groups;
  tree.feature_kinds = frame.kinds;
  tree.params = params;
  std::vector<std::size_t> rows(frame.n_rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  Fitter fitter(frame, params);
  tree.root = fitter.build(rows, 0, 0, 0);
  return tree;
}

Label predict(const LexTree& tree, const std::vector<std::int64_t>& row) {
  const TreeNode* node = tree.root.get();
  while (!node->is_leaf())
    node = 2 * row[node->feature] <= node->threshold2 ? node->left.get()
                                                      : node->right.get();
  return node->label;
}

double accuracy(const LexTree& tree, const FeatureFrame& frame) {
  if (frame.n_rows() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < frame.n_rows(); ++i)
    if (predict(tree, frame.rows[i]) == frame.labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(frame.n_rows());
}

namespace {
int node_height(const TreeNode* n) {
  if (n->is_leaf()) return 0;
  return 1 + std::max(node_height(n->left.get()), node_height(n->right.get()));
}
int node_leaves(const TreeNode* n) {
  if (n->is_leaf()) return 1;
  return node_leaves(n->left.get()) + node_leaves(n->right.get());
}
}  // namespace

int tree_height(const LexTree& tree) { return node_height(tree.root.get()); }
int leaf_count(const LexTree& tree) { return node_leaves(tree.root.get()); }

double gini(std::size_t n_failed, std::size_t n_passed) {
  const double n = static_cast<double>(n_failed + n_passed);
  if (n == 0.0) return 0.0;
  const double f = static_cast<double>(n_failed) / n;
  const double p = static_cast<double>(n_passed) / n;
  return 1.0 - f * f - p * p;
}

double association(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0) return 0.0;
  long double mean_a = 0.0L, mean_b = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += static_cast<long double>(a[i]);
    mean_b += static_cast<long double>(b[i]);
  }
  mean_a /= static_cast<long double>(n);
  mean_b /= static_cast<long double>(n);
  long double cov = 0.0L, var_a = 0.0L, var_b = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double da = static_cast<long double>(a[i]) - mean_a;
    const long double db = static_cast<long double>(b[i]) - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a <= 0.0L || var_b <= 0.0L) return 0.0;
  return static_cast<double>(std::fabs(cov) / std::sqrt(var_a * var_b));
}

std::string to_dot(const LexTree& tree) {
  std::ostringstream out;
  out << "digraph suite_tree {\n";
  out << "  node [shape=box, style=\"rounded,filled\", fontname=\"Helvetica\"];\n";
  int next_id = 0;
  // Recursive lambda via explicit stack of (node, assigned id).
  struct Item { const TreeNode* node; int id; };
  std::vector<Item> stack{{tree.root.get(), next_id++}};
  std::ostringstream edges;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const TreeNode* n = it.node;
    if (n->is_leaf()) {
      const char* color = n->label == Label::failed ? "orange" : "palegreen";
      out << "  n" << it.id << " [label=\"" << to_string(n->label) << "\\n"
          << n->n_failed << " failed / " << n->n_passed << " passed\", fillcolor=\""
          << color << "\"];\n";
      continue;
    }
    out << "  n" << it.id << " [label=\"" << tree.feature_names[n->feature]
        << " <= " << threshold_display(tree, n->feature, n->threshold2) << "\\n"
        << n->n_failed << " failed / " << n->n_passed
        << " passed\", fillcolor=\"lightblue\"];\n";
    const int left_id = next_id++;
    const int right_id = next_id++;
    edges << "  n" << it.id << " -> n" << left_id << " [label=\"yes\"];\n";
    edges << "  n" << it.id << " -> n" << right_id << " [label=\"no\"];\n";
    // Push right first so the left child pops (and numbers) first.
    stack.push_back({n->right.get(), right_id});
    stack.push_back({n->left.get(), left_id});
  }
  out << edges.str() << "}\n";
  return out.str();
}

namespace {
nlohmann::json node_to_json(const LexTree& tree, const TreeNode* n) {
  nlohmann::json j;
  j["n_failed"] = n->n_failed;
  j["n_passed"] = n->n_passed;
  if (n->is_leaf()) {
    j["label"] = to_string(n->label);
  } else {
    j["feature"] = tree.feature_names[n->feature];
    j["threshold"] = static_cast<double>(n->threshold2) / 2.0;
    j["left"] = node_to_json(tree, n->left.get());
    j["right"] = node_to_json(tree, n->right.get());
  }
  return j;
}
}  // namespace

std::string tree_to_json(const LexTree& tree) {
  nlohmann::json j;
  j["params"]["association_threshold"] = tree.params.association_threshold;
  j["params"]["max_depth"] = tree.params.max_depth;
  j["params"]["min_samples_leaf"] = tree.params.min_samples_leaf;
  j["root"] = node_to_json(tree, tree.root.get());
  return j.dump(2) + "\n";
}

namespace {
struct PathLeaf {
  std::string text;
  std::size_t n_failed;
};

void collect_paths(const LexTree& tree, const TreeNode* n,
                   std::vector<std::string>& conds, std::vector<PathLeaf>& out) {
  if (n->is_leaf()) {
    if (n->label != Label::failed) return;
    std::string line;
    if (conds.empty()) {
      line = "(always)";
    } else {
      for (std::size_t i = 0; i < conds.size(); ++i) {
        if (i) line += " and ";
        line += conds[i];
      }
    }
    line += " -> failed [" + std::to_string(n->n_failed) + " failed / " +
            std::to_string(n->n_passed) + " passed]";
    out.push_back({std::move(line), n->n_failed});
    return;
  }
  const std::string& name = tree.feature_names[n->feature];
  const std::string thr = threshold_display(tree, n->feature, n->threshold2);
  conds.push_back("(" + name + " <= " + thr + ")");
  collect_paths(tree, n->left.get(), conds, out);
  conds.back() = "(" + name + " > " + thr + ")";
  collect_paths(tree, n->right.get(), conds, out);
  conds.pop_back();
}
}  // namespace

std::vector<std::string> failure_paths(const LexTree& tree) {
  std::vector<std::string> conds;
  std::vector<PathLeaf> leaves;
  collect_paths(tree, tree.root.get(), conds, leaves);
  std::stable_sort(leaves.begin(), leaves.end(),
                   [](const PathLeaf& a, const PathLeaf& b) { return a.n_failed > b.n_failed; });
  std::vector<std::string> out;
  out.reserve(leaves.size());
  for (PathLeaf& l : leaves) out.push_back(std::move(l.text));
  return out;
}

}  // namespace mm1040
