#ifndef SESSIONTREE_TESTS_HELPERS_HPP
#define SESSIONTREE_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "sessiontree/session.hpp"
#include "sessiontree/tree.hpp"

namespace helpers {

using sessiontree::SessionRecord;
using sessiontree::TreeNode;

inline TreeNode leaf(std::int64_t weight = 1, std::string label = "") {
    TreeNode n;
    n.label = std::move(label);
    n.edge_weight = weight;
    return n;
}

inline TreeNode node(std::int64_t weight, std::vector<TreeNode> children,
                     std::string label = "") {
    TreeNode n;
    n.label = std::move(label);
    n.edge_weight = weight;
    n.children = std::move(children);
    return n;
}

// Unit-weight chain with `nodes` nodes (root included).
inline TreeNode chain(std::size_t nodes) {
    TreeNode n = leaf();
    for (std::size_t i = 1; i < nodes; ++i) {
        n = node(1, {std::move(n)});
    }
    return n;
}

// Root with k unit-weight leaves.
inline TreeNode star(std::size_t k) {
    std::vector<TreeNode> leaves(k, leaf());
    return node(1, std::move(leaves));
}

// The three walk-through sessions used across the tests.
inline const char* kExampleLog =
    "S01,student: doc_seed -> citation -> doc_1 -> citation -> doc_seed -> search\n"
    "S02,postdoc: doc_seed -> journal -> doc_seed -> author -> doc_1 -> author -> doc_2\n"
    "S03,student: doc_seed -> search -> doc_1 -> search -> doc_2 -> search -> doc_seed -> "
    "journal -> doc_seed -> citation -> doc_3\n";

SessionRecord example_session(int which);  // 1, 2 or 3

struct Rng {
    std::mt19937 gen;
    explicit Rng(std::uint32_t seed) : gen(seed) {}

    std::size_t below(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
    }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
    }
    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
};

// Random token walk: starts at "o0", consecutive tokens always differ.
std::vector<std::string> random_walk(Rng& rng, std::size_t steps, std::size_t alphabet);

SessionRecord random_session(Rng& rng, std::size_t steps, std::size_t alphabet);

// Random canonical unit-weight session tree with bounded size and fan-out.
TreeNode random_session_tree(Rng& rng, std::size_t max_nodes, std::size_t max_fanout);

}  // namespace helpers

#endif  // SESSIONTREE_TESTS_HELPERS_HPP
