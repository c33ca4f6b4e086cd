#ifndef SESSIONTREE_WEIGHTS_HPP
#define SESSIONTREE_WEIGHTS_HPP

#include <string>

#include "sessiontree/tree.hpp"

namespace sessiontree {

enum class WeightMode {
    // W(p) = log_b(2*w(p)) for leaves, log_b(sum w(q)*W(q)) otherwise.
    // Degenerates to log(0) on unit-weight chains of depth >= 3.
    literal,
    // Applies the leaf's factor 2 to internal nodes as well:
    // W(p) = log_b(2 * sum w(q)*W(q)). With base 2 and integer weights
    // >= 1 this keeps W >= 1 everywhere while preserving the ordering
    // of heavier subtrees.
    stabilized,
};

struct WeightConfig {
    WeightMode mode = WeightMode::stabilized;
    double log_base = 2.0;  // must be > 1
};

const char* to_string(WeightMode mode);
WeightMode weight_mode_from_string(const std::string& name);

// Subtree weight of the subtree rooted at `node`. `node.edge_weight` is
// taken as w(p); callers pass the root with its convention weight 1.
// Throws NonPositiveLogArgument when a log argument is <= 0 (reachable in
// literal mode, and in stabilized mode only for bases > 2).
double subtree_weight(const TreeNode& node, const WeightConfig& config);

// Empty tree weighs 0 (identity for the merge fold).
double subtree_weight(const Tree& tree, const WeightConfig& config);

}  // namespace sessiontree

#endif  // SESSIONTREE_WEIGHTS_HPP
