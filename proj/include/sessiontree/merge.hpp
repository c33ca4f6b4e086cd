#ifndef SESSIONTREE_MERGE_HPP
#define SESSIONTREE_MERGE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sessiontree/tree.hpp"
#include "sessiontree/weights.hpp"

namespace sessiontree {

// One level of a merge: pairs of (index into A's children, index into B's
// children), each index used at most once. Children left unmatched on
// either side are carried over unchanged.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

struct MergeOptions {
    WeightConfig weights{};
    // Upper bound on fully scored candidate matchings across one merge_pair
    // call. Exceeding it throws BudgetExceeded unless greedy_fallback is set.
    std::uint64_t budget = 10'000'000;
    // When the budget runs out, finish the merge by pairing children in
    // descending-subtree-size order instead of searching. Approximate.
    bool greedy_fallback = false;
};

// Optimal merge of two trees. Recursively, at each matched node pair the
// child lists are matched so that (1) the merged subtree has minimal node
// count and (2) among those, maximal subtree weight; exact ties pick the
// lexicographically smallest canonical serial. Matchings are ranked by the
// weight's pre-logarithm argument summed in canonical child order -- the
// same ordering as W itself, without the rounding of the outer log.
// Matched edges sum their weights; the root keeps convention weight 1.
// The result is canonical. Either input may be the empty tree (identity).
Tree merge_pair(const Tree& a, const Tree& b, const MergeOptions& options = {});

// Folds a set of session trees into one combined tree: inputs are sorted
// ascending by root subtree weight (ties by canonical serial) and merged
// pairwise starting from the empty tree. Output is independent of the
// input order.
Tree merge_all(std::vector<TreeNode> trees, const MergeOptions& options = {});

}  // namespace sessiontree

#endif  // SESSIONTREE_MERGE_HPP
