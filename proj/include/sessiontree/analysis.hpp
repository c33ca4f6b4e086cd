#ifndef SESSIONTREE_ANALYSIS_HPP
#define SESSIONTREE_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "sessiontree/tree.hpp"
#include "sessiontree/weights.hpp"

namespace sessiontree {

// Nodes remaining in a combined tree as the edge-weight threshold rises.
struct ThresholdCurve {
    struct Point {
        std::int64_t threshold = 1;
        std::size_t nodes_remaining = 0;
    };
    std::vector<Point> points;  // thresholds 1 .. max edge weight + 1
};

struct TreeMetrics {
    std::size_t node_count = 0;
    std::size_t root_degree = 0;
    std::size_t depth = 0;     // max root distance, in edges
    std::size_t diameter = 0;  // longest undirected path, in edges
    std::vector<std::size_t> per_level_breadth;
    std::size_t leaf_count = 0;
    double root_subtree_weight = 0.0;
    WeightConfig weight_config;  // stamp of the config the weight used
};

// Drops every edge of weight < threshold together with its whole subtree.
// The root always survives; canonical child order is preserved.
TreeNode prune_threshold(const TreeNode& tree, std::int64_t threshold);

ThresholdCurve threshold_curve(const TreeNode& tree);

TreeMetrics tree_metrics(const TreeNode& tree, const WeightConfig& config);
TreeMetrics tree_metrics(const Tree& tree, const WeightConfig& config);  // throws EmptyTree

// Translates a session fraction into an edge-weight threshold:
// ceil(fraction * sessions). Requires 0 < fraction <= 1 and sessions >= 1.
std::int64_t fraction_threshold(double fraction, std::size_t sessions);

}  // namespace sessiontree

#endif  // SESSIONTREE_ANALYSIS_HPP
