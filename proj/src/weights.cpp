#include "sessiontree/weights.hpp"

#include <cmath>

#include "sessiontree/errors.hpp"

namespace sessiontree {

const char* to_string(WeightMode mode) {
    return mode == WeightMode::literal ? "literal" : "stabilized";
}

WeightMode weight_mode_from_string(const std::string& name) {
    if (name == "literal") return WeightMode::literal;
    if (name == "stabilized") return WeightMode::stabilized;
    throw DataError("unknown weight mode: " + name);
}

namespace {

double weight_at(const TreeNode& node, const WeightConfig& config,
                 const double inv_log_base, std::string& path) {
    double arg;
    if (node.children.empty()) {
        arg = 2.0 * static_cast<double>(node.edge_weight);
    } else {
        double sum = 0.0;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            const TreeNode& child = node.children[i];
            path += '/';
            path += std::to_string(i);
            const double child_weight = weight_at(child, config, inv_log_base, path);
            path.resize(path.rfind('/'));
            sum += static_cast<double>(child.edge_weight) * child_weight;
        }
        arg = config.mode == WeightMode::stabilized ? 2.0 * sum : sum;
    }
    if (arg <= 0.0) {
        throw NonPositiveLogArgument(path.empty() ? "/" : path);
    }
    return std::log(arg) * inv_log_base;
}

}  // namespace

double subtree_weight(const TreeNode& node, const WeightConfig& config) {
    if (!(config.log_base > 1.0)) {
        throw DataError("log base must be greater than 1");
    }
    std::string path;
    return weight_at(node, config, 1.0 / std::log(config.log_base), path);
}

double subtree_weight(const Tree& tree, const WeightConfig& config) {
    return tree ? subtree_weight(*tree, config) : 0.0;
}

}  // namespace sessiontree
