#ifndef SESSIONTREE_DOT_HPP
#define SESSIONTREE_DOT_HPP

#include <string>

#include "sessiontree/tree.hpp"

namespace sessiontree {

struct DotOptions {
    double min_penwidth = 1.0;
    double max_penwidth = 8.0;
    bool show_labels = false;
};

// Graphviz digraph of the tree. Node ids follow pre-order over the given
// (canonical) child order, so equal trees export byte-identically. Edge
// thickness encodes weight: penwidth = min + (max-min)*(w-1)/(w_max-1),
// or min everywhere when w_max = 1.
std::string export_dot(const TreeNode& tree, const DotOptions& options = {});
std::string export_dot(const Tree& tree, const DotOptions& options = {});  // throws EmptyTree

}  // namespace sessiontree

#endif  // SESSIONTREE_DOT_HPP
