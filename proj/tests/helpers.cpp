#include "helpers.hpp"

#include <sstream>

namespace helpers {

SessionRecord example_session(int which) {
    std::istringstream in(kExampleLog);
    const std::vector<SessionRecord> records = sessiontree::parse_session_log(in);
    return records.at(static_cast<std::size_t>(which - 1));
}

std::vector<std::string> random_walk(Rng& rng, std::size_t steps, std::size_t alphabet) {
    std::vector<std::string> tokens{"o0"};
    for (std::size_t i = 1; i < steps; ++i) {
        std::string next;
        do {
            next = "o" + std::to_string(rng.below(alphabet));
        } while (next == tokens.back());
        tokens.push_back(std::move(next));
    }
    return tokens;
}

SessionRecord random_session(Rng& rng, std::size_t steps, std::size_t alphabet) {
    SessionRecord r;
    r.session_id = "R" + std::to_string(rng.below(1000000));
    r.group = rng.below(2) == 0 ? "student" : "postdoc";
    r.tokens = random_walk(rng, steps, alphabet);
    return r;
}

TreeNode random_session_tree(Rng& rng, std::size_t max_nodes, std::size_t max_fanout) {
    struct Slot {
        std::vector<std::size_t> children;
    };
    std::vector<Slot> slots(1);
    const std::size_t target = 1 + rng.below(max_nodes);
    while (slots.size() < target) {
        const std::size_t parent = rng.below(slots.size());
        if (slots[parent].children.size() >= max_fanout) continue;
        slots[parent].children.push_back(slots.size());
        slots.emplace_back();
    }
    struct Builder {
        const std::vector<Slot>& slots;
        TreeNode build(std::size_t idx) const {
            TreeNode n = leaf(1, "n" + std::to_string(idx));
            for (const std::size_t c : slots[idx].children) n.children.push_back(build(c));
            return n;
        }
    };
    TreeNode root = Builder{slots}.build(0);
    sessiontree::canonicalize(root);
    return root;
}

}  // namespace helpers
