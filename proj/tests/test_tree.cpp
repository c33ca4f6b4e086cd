#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "sessiontree/session.hpp"
#include "sessiontree/tree.hpp"

using namespace sessiontree;
using helpers::leaf;
using helpers::node;

TEST_CASE("node and leaf counting") {
    CHECK(node_count(leaf()) == 1);
    CHECK(leaf_count(leaf()) == 1);

    const TreeNode t = node(1, {node(2, {leaf(3)}), leaf(1)});
    CHECK(node_count(t) == 4);
    CHECK(leaf_count(t) == 2);
    CHECK(total_edge_weight(t) == 6);  // 2 + 3 + 1, root edge does not exist
}

TEST_CASE("canonical serial encodes structure and weights, not labels") {
    TreeNode a = node(1, {leaf(2, "x"), leaf(1, "y")});
    TreeNode b = node(1, {leaf(2, "p"), leaf(1, "q")});
    CHECK(canonical_serial(a) == "(1(2)(1))");
    CHECK(canonical_serial(a) == canonical_serial(b));

    TreeNode c = node(1, {leaf(2), leaf(2)});
    CHECK(canonical_serial(a) != canonical_serial(c));
}

TEST_CASE("canonical order puts larger subtrees first") {
    // Session 2: the author subtree (3 nodes) sorts left of the journal leaf
    // even though journal was visited first.
    const TreeNode tree = build_session_tree(helpers::example_session(2));
    REQUIRE(tree.children.size() == 2);
    CHECK(tree.children[0].label == "author");
    CHECK(tree.children[0].children.size() == 2);
    CHECK(tree.children[1].label == "journal");
}

TEST_CASE("canonicalize is idempotent") {
    helpers::Rng rng(517);
    for (int round = 0; round < 50; ++round) {
        TreeNode t = helpers::random_session_tree(rng, 25, 5);
        const TreeNode once = canonicalized(t);
        CHECK(canonicalized(once) == once);
        CHECK(is_canonical(once));
    }
}

TEST_CASE("identical siblings keep a deterministic order via serial tie-break") {
    TreeNode twins = node(1, {node(1, {leaf(1)}), node(1, {leaf(2)})});
    canonicalize(twins);
    // Equal node counts; the heavier leaf makes the second subtree heavier,
    // so it must sort first.
    CHECK(twins.children[0].children[0].edge_weight == 2);
    CHECK(twins.children[1].children[0].edge_weight == 1);

    // Fully identical shapes compare equal on all keys; order is stable.
    TreeNode same = node(1, {node(1, {leaf(1)}, "a"), node(1, {leaf(1)}, "b")});
    canonicalize(same);
    CHECK(same.children[0].label == "a");
}

TEST_CASE("property: canonical form ignores initial child order") {
    helpers::Rng rng(91);
    for (int round = 0; round < 60; ++round) {
        TreeNode t = helpers::random_session_tree(rng, 20, 4);
        TreeNode shuffled = t;
        // shuffle every child list
        struct Shuffler {
            helpers::Rng& rng;
            void apply(TreeNode& n) {
                std::shuffle(n.children.begin(), n.children.end(), rng.gen);
                for (TreeNode& c : n.children) apply(c);
            }
        };
        Shuffler{rng}.apply(shuffled);
        canonicalize(shuffled);
        CHECK(canonical_serial(shuffled) == canonical_serial(t));
        CHECK(node_count(shuffled) == node_count(t));
    }
}
