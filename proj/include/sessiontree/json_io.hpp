#ifndef SESSIONTREE_JSON_IO_HPP
#define SESSIONTREE_JSON_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sessiontree/tree.hpp"

namespace sessiontree {

// Optional analysis metadata stamped on the root object under a "meta"
// key. The tree schema itself stays nested {"label","weight","children"}.
struct TreeFileMeta {
    std::optional<std::string> weight_mode;
    std::optional<double> log_base;
    std::optional<std::size_t> sessions;
    std::optional<double> root_subtree_weight;

    bool empty() const {
        return !weight_mode && !log_base && !sessions && !root_subtree_weight;
    }
};

struct LoadedTree {
    TreeNode tree;
    TreeFileMeta meta;
    std::vector<std::string> warnings;  // e.g. weight monotonicity violations
};

// Validates hard invariants (integer weights >= 1, root weight 1) and
// collects soft ones (non-increasing weights along root-to-leaf paths)
// as warnings. Throws ParseError / InvariantViolation.
LoadedTree load_tree(std::istream& in);
LoadedTree load_tree_file(const std::string& path);

void save_tree(std::ostream& out, const TreeNode& tree, const TreeFileMeta& meta = {});
void save_tree_file(const std::string& path, const TreeNode& tree, const TreeFileMeta& meta = {});

}  // namespace sessiontree

#endif  // SESSIONTREE_JSON_IO_HPP
