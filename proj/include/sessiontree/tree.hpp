#ifndef SESSIONTREE_TREE_HPP
#define SESSIONTREE_TREE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sessiontree {

// One node of a rooted ordered tree. `edge_weight` is the weight of the
// edge leading into the node; the root carries the fixed convention
// weight 1. Labels are kept for debugging and file round-trips only --
// every algorithm in this library ignores them.
struct TreeNode {
    std::string label;
    std::int64_t edge_weight = 1;
    std::vector<TreeNode> children;

    bool operator==(const TreeNode& other) const = default;
};

// A tree is its root node; an empty optional is the empty tree
// (the identity element of merging).
using Tree = std::optional<TreeNode>;

std::size_t node_count(const TreeNode& node);
std::size_t leaf_count(const TreeNode& node);

// Sum of edge weights over all non-root nodes.
std::int64_t total_edge_weight(const TreeNode& root);

// Label-free structural serialization: "(" weight child* ")" with children
// in their current order. On canonical trees this is a total order key:
// two canonical trees are algorithmically identical iff their serials match.
std::string canonical_serial(const TreeNode& node);

// Re-orders every child list into canonical order: descending subtree node
// count, then descending stabilized base-2 subtree weight, then ascending
// canonical serial. Idempotent. The tie-break weight is pinned to
// stabilized/base-2 so that the canonical form never depends on the
// caller's weight configuration.
void canonicalize(TreeNode& node);

// Value-returning convenience over canonicalize().
TreeNode canonicalized(TreeNode node);

// Sorts only the immediate children into canonical order; every child
// subtree must already be canonical.
void canonicalize_level(TreeNode& node);

bool is_canonical(const TreeNode& node);

}  // namespace sessiontree

#endif  // SESSIONTREE_TREE_HPP
