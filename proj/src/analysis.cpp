#include "sessiontree/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "sessiontree/errors.hpp"

namespace sessiontree {

TreeNode prune_threshold(const TreeNode& tree, std::int64_t threshold) {
    TreeNode kept;
    kept.label = tree.label;
    kept.edge_weight = tree.edge_weight;
    for (const TreeNode& c : tree.children) {
        if (c.edge_weight >= threshold) {
            kept.children.push_back(prune_threshold(c, threshold));
        }
    }
    return kept;
}

namespace {

std::int64_t max_edge_weight(const TreeNode& node) {
    std::int64_t max = 0;  // root edge does not exist
    for (const TreeNode& c : node.children) {
        max = std::max({max, c.edge_weight, max_edge_weight(c)});
    }
    return max;
}

void level_counts(const TreeNode& node, std::size_t depth, std::vector<std::size_t>& breadth) {
    if (breadth.size() <= depth) breadth.resize(depth + 1, 0);
    ++breadth[depth];
    for (const TreeNode& c : node.children) level_counts(c, depth + 1, breadth);
}

// Height in edges, while accumulating the diameter of paths through each node.
std::size_t height_and_diameter(const TreeNode& node, std::size_t& diameter) {
    std::size_t tallest = 0;
    std::size_t second = 0;
    for (const TreeNode& c : node.children) {
        const std::size_t h = height_and_diameter(c, diameter) + 1;
        if (h > tallest) {
            second = tallest;
            tallest = h;
        } else if (h > second) {
            second = h;
        }
    }
    diameter = std::max(diameter, tallest + second);
    return tallest;
}

}  // namespace

ThresholdCurve threshold_curve(const TreeNode& tree) {
    ThresholdCurve curve;
    const std::int64_t max = max_edge_weight(tree);
    for (std::int64_t t = 1; t <= max + 1; ++t) {
        curve.points.push_back({t, node_count(prune_threshold(tree, t))});
    }
    return curve;
}

TreeMetrics tree_metrics(const TreeNode& tree, const WeightConfig& config) {
    TreeMetrics m;
    m.node_count = node_count(tree);
    m.root_degree = tree.children.size();
    level_counts(tree, 0, m.per_level_breadth);
    m.depth = m.per_level_breadth.size() - 1;
    std::size_t diameter = 0;
    height_and_diameter(tree, diameter);
    m.diameter = diameter;
    m.leaf_count = leaf_count(tree);
    m.root_subtree_weight = subtree_weight(tree, config);
    m.weight_config = config;
    return m;
}

TreeMetrics tree_metrics(const Tree& tree, const WeightConfig& config) {
    if (!tree) throw EmptyTree("tree_metrics");
    return tree_metrics(*tree, config);
}

std::int64_t fraction_threshold(double fraction, std::size_t sessions) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw DataError("fraction must be in (0, 1]");
    }
    if (sessions == 0) {
        throw DataError("fraction threshold needs a session count");
    }
    return static_cast<std::int64_t>(std::ceil(fraction * static_cast<double>(sessions)));
}

}  // namespace sessiontree
