#include "sessiontree/tree.hpp"

#include <algorithm>
#include <tuple>

#include "sessiontree/weights.hpp"

namespace sessiontree {

std::size_t node_count(const TreeNode& node) {
    std::size_t n = 1;
    for (const TreeNode& c : node.children) n += node_count(c);
    return n;
}

std::size_t leaf_count(const TreeNode& node) {
    if (node.children.empty()) return 1;
    std::size_t n = 0;
    for (const TreeNode& c : node.children) n += leaf_count(c);
    return n;
}

std::int64_t total_edge_weight(const TreeNode& root) {
    std::int64_t sum = 0;
    for (const TreeNode& c : root.children) {
        sum += c.edge_weight + total_edge_weight(c);
    }
    return sum;
}

namespace {

void append_serial(const TreeNode& node, std::string& out) {
    out += '(';
    out += std::to_string(node.edge_weight);
    for (const TreeNode& c : node.children) append_serial(c, out);
    out += ')';
}

// Ordering key of a child within its sibling list. The serial is computed
// on the already-canonicalized subtree, so identical keys mean identical
// subtrees and any relative order is the same order.
struct ChildKey {
    std::size_t count;
    double weight;
    std::string serial;
};

// Tie-break weight config, fixed independently of the caller's analysis
// config so canonical form is unique per tree.
constexpr WeightConfig kCanonicalWeights{WeightMode::stabilized, 2.0};

bool key_less(const ChildKey& a, const ChildKey& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.serial < b.serial;
}

}  // namespace

std::string canonical_serial(const TreeNode& node) {
    std::string out;
    out.reserve(node_count(node) * 4);
    append_serial(node, out);
    return out;
}

void canonicalize(TreeNode& node) {
    for (TreeNode& c : node.children) canonicalize(c);
    canonicalize_level(node);
}

void canonicalize_level(TreeNode& node) {
    if (node.children.size() < 2) return;

    std::vector<std::pair<ChildKey, std::size_t>> keyed;
    keyed.reserve(node.children.size());
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        const TreeNode& c = node.children[i];
        keyed.push_back({{node_count(c), subtree_weight(c, kCanonicalWeights),
                          canonical_serial(c)},
                         i});
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return key_less(a.first, b.first); });

    std::vector<TreeNode> sorted;
    sorted.reserve(node.children.size());
    for (const auto& [key, idx] : keyed) sorted.push_back(std::move(node.children[idx]));
    node.children = std::move(sorted);
}

TreeNode canonicalized(TreeNode node) {
    canonicalize(node);
    return node;
}

bool is_canonical(const TreeNode& node) {
    for (std::size_t i = 0; i + 1 < node.children.size(); ++i) {
        const ChildKey a{node_count(node.children[i]),
                         subtree_weight(node.children[i], kCanonicalWeights),
                         canonical_serial(node.children[i])};
        const ChildKey b{node_count(node.children[i + 1]),
                         subtree_weight(node.children[i + 1], kCanonicalWeights),
                         canonical_serial(node.children[i + 1])};
        if (key_less(b, a)) return false;
    }
    for (const TreeNode& c : node.children) {
        if (!is_canonical(c)) return false;
    }
    return true;
}

}  // namespace sessiontree
