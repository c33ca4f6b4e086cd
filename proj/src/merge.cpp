#include "sessiontree/merge.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "sessiontree/errors.hpp"

namespace sessiontree {

namespace {

constexpr WeightConfig kCanonicalWeights{WeightMode::stabilized, 2.0};
const std::string kNoLabel{};

bool is_canonical_config(const WeightConfig& c) {
    return c.mode == kCanonicalWeights.mode && c.log_base == kCanonicalWeights.log_base;
}

// Label-aware structural encoding. Memo entries and the fold order must
// distinguish same-shaped trees with different labels, or result labels
// would depend on which pair happened to fill the memo first.
std::string labeled_serial(const TreeNode& node) {
    std::string out = "(" + std::to_string(node.edge_weight) + "#" +
                      std::to_string(node.label.size()) + ":" + node.label;
    for (const TreeNode& c : node.children) out += labeled_serial(c);
    out += ')';
    return out;
}

// Canonical child-ordering key, precomputed so merged levels can be sorted
// without re-walking subtrees.
struct ChildKey {
    std::size_t count = 0;
    double canon_weight = 0.0;
    const std::string* serial = nullptr;

    bool before(const ChildKey& other) const {
        if (count != other.count) return count > other.count;
        if (canon_weight != other.canon_weight) return canon_weight > other.canon_weight;
        return *serial < *other.serial;
    }
};

class Merger {
public:
    explicit Merger(const MergeOptions& options) : options_(options) {}

    // `a` and `b` are canonical roots; result is canonical with root weight 1.
    TreeNode merge_roots(const TreeNode& a, const TreeNode& b) {
        TreeNode result = best(a, b).node;
        result.edge_weight = 1;
        return result;
    }

private:
    // Fully resolved optimal merge of one subtree pair.
    struct Entry {
        TreeNode node;  // canonical; edge_weight = a.w + b.w
        std::string serial;
        std::size_t count = 0;
        double weight = 0.0;        // W(node) under options_.weights
        double canon_weight = 0.0;  // W(node) under the canonical tie-break config
    };

    // What the selection needs to know about one child subtree.
    struct ChildView {
        const TreeNode* node = nullptr;
        std::string serial;
        std::size_t count = 0;
        double weight = 0.0;
        double canon_weight = 0.0;
    };

    // A merged child before materialization: an optimal pair merge or a
    // carried-over single child.
    struct MergedChild {
        const Entry* pair = nullptr;
        const ChildView* carry = nullptr;
        std::int64_t edge_weight() const {
            return pair ? pair->node.edge_weight : carry->node->edge_weight;
        }
        std::size_t count() const { return pair ? pair->count : carry->count; }
        double weight() const { return pair ? pair->weight : carry->weight; }
        ChildKey key() const {
            if (pair) return {pair->count, pair->canon_weight, &pair->serial};
            return {carry->count, carry->canon_weight, &carry->serial};
        }
        const TreeNode& source() const { return pair ? pair->node : *carry->node; }
    };

    const Entry& best(const TreeNode& a, const TreeNode& b);

    // Both return the fully materialized merged node (canonical children).
    TreeNode select_merge(std::int64_t edge_weight, const std::string& label,
                          const std::vector<TreeNode>& small,
                          const std::vector<TreeNode>& large);
    TreeNode greedy_merge(std::int64_t edge_weight, const std::string& label,
                          const std::vector<TreeNode>& small,
                          const std::vector<TreeNode>& large);

    std::vector<ChildView> make_views(const std::vector<TreeNode>& children) const;

    // Sum of w(c)*W(c) over merged children, accumulated in canonical child
    // order so candidate ties resolve exactly as a fresh W evaluation would.
    static double weight_argument(std::vector<MergedChild> children);

    static TreeNode materialize(std::int64_t edge_weight, const std::string& label,
                                std::vector<MergedChild> children);

    void count_evaluation();

    const MergeOptions& options_;
    std::unordered_map<std::string, Entry> memo_;
    std::uint64_t evaluated_ = 0;
    bool greedy_ = false;
};

std::vector<Merger::ChildView> Merger::make_views(const std::vector<TreeNode>& children) const {
    std::vector<ChildView> views(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
        views[i].node = &children[i];
        views[i].serial = canonical_serial(children[i]);
        views[i].count = node_count(children[i]);
        views[i].weight = subtree_weight(children[i], options_.weights);
        views[i].canon_weight = is_canonical_config(options_.weights)
                                    ? views[i].weight
                                    : subtree_weight(children[i], kCanonicalWeights);
    }
    return views;
}

double Merger::weight_argument(std::vector<MergedChild> children) {
    std::sort(children.begin(), children.end(),
              [](const MergedChild& x, const MergedChild& y) { return x.key().before(y.key()); });
    double sum = 0.0;
    for (const MergedChild& c : children) {
        sum += static_cast<double>(c.edge_weight()) * c.weight();
    }
    return sum;
}

TreeNode Merger::materialize(std::int64_t edge_weight, const std::string& label,
                             std::vector<MergedChild> children) {
    std::sort(children.begin(), children.end(),
              [](const MergedChild& x, const MergedChild& y) { return x.key().before(y.key()); });
    TreeNode node;
    node.label = label;
    node.edge_weight = edge_weight;
    node.children.reserve(children.size());
    for (const MergedChild& c : children) node.children.push_back(c.source());
    return node;
}

void Merger::count_evaluation() {
    if (++evaluated_ <= options_.budget) return;
    if (!options_.greedy_fallback) throw BudgetExceeded(options_.budget);
    greedy_ = true;
}

const Merger::Entry& Merger::best(const TreeNode& a, const TreeNode& b) {
    std::string key = labeled_serial(a);
    key += '|';
    key += labeled_serial(b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const bool a_small = a.children.size() <= b.children.size();
    const std::vector<TreeNode>& small = a_small ? a.children : b.children;
    const std::vector<TreeNode>& large = a_small ? b.children : a.children;

    TreeNode merged;
    // A merged node stands for one object per contributing session; it
    // keeps a label only when the two sides name the same object.
    const std::string& label = a.label == b.label ? a.label : kNoLabel;
    const std::int64_t merged_weight = a.edge_weight + b.edge_weight;
    if (small.empty()) {
        // Nothing to match; the other side's children carry over as-is
        // (they are already canonically ordered).
        merged.label = label;
        merged.edge_weight = merged_weight;
        merged.children = large;
    } else if (greedy_) {
        merged = greedy_merge(merged_weight, label, small, large);
    } else {
        merged = select_merge(merged_weight, label, small, large);
    }

    Entry entry;
    entry.serial = canonical_serial(merged);
    entry.count = node_count(merged);
    entry.weight = subtree_weight(merged, options_.weights);
    entry.canon_weight = is_canonical_config(options_.weights)
                             ? entry.weight
                             : subtree_weight(merged, kCanonicalWeights);
    entry.node = std::move(merged);
    return memo_.emplace(std::move(key), std::move(entry)).first->second;
}

// Fallback pairing: i-th child with i-th child, both lists in canonical
// (descending subtree size) order; surplus children carry over.
TreeNode Merger::greedy_merge(std::int64_t edge_weight, const std::string& label,
                              const std::vector<TreeNode>& small,
                              const std::vector<TreeNode>& large) {
    TreeNode merged;
    merged.label = label;
    merged.edge_weight = edge_weight;
    merged.children.reserve(large.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
        merged.children.push_back(best(small[i], large[i]).node);
    }
    for (std::size_t j = small.size(); j < large.size(); ++j) {
        merged.children.push_back(large[j]);
    }
    canonicalize_level(merged);
    return merged;
}

TreeNode Merger::select_merge(std::int64_t edge_weight, const std::string& label,
                              const std::vector<TreeNode>& small,
                              const std::vector<TreeNode>& large) {
    const std::size_t m = small.size();
    const std::size_t n = large.size();

    const std::vector<ChildView> small_views = make_views(small);
    const std::vector<ChildView> large_views = make_views(large);

    // Optimal matchings always have maximum cardinality: pairing any two
    // children shares at least the merged node itself, so an extendable
    // matching can never be count-minimal. Only injections of the smaller
    // child list into the larger one need to be searched.
    std::vector<std::vector<const Entry*>> pair_at(m, std::vector<const Entry*>(n));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            pair_at[i][j] = &best(small[i], large[j]);
        }
    }

    auto assemble = [&](const std::vector<std::size_t>& assign) {
        std::vector<MergedChild> children;
        children.reserve(n);
        std::vector<char> taken(n, 0);
        for (std::size_t i = 0; i < m; ++i) {
            children.push_back({pair_at[i][assign[i]], nullptr});
            taken[assign[i]] = 1;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!taken[j]) children.push_back({nullptr, &large_views[j]});
        }
        return children;
    };

    // Greedy warm start: canonical index order pairing.
    std::vector<std::size_t> incumbent(m);
    for (std::size_t i = 0; i < m; ++i) incumbent[i] = i;

    std::size_t best_count;
    double best_warg;
    {
        std::vector<MergedChild> children = assemble(incumbent);
        best_count = 1;
        for (const MergedChild& c : children) best_count += c.count();
        best_warg = weight_argument(std::move(children));
    }
    count_evaluation();
    std::string incumbent_serial;  // computed lazily on exact value ties

    auto challenge = [&](const std::vector<std::size_t>& candidate) {
        std::vector<MergedChild> children = assemble(candidate);
        std::size_t count = 1;
        for (const MergedChild& c : children) count += c.count();
        if (count > best_count) return;
        const double warg = weight_argument(children);
        if (count == best_count && warg < best_warg) return;
        if (count < best_count || warg > best_warg) {
            best_count = count;
            best_warg = warg;
            incumbent = candidate;
            incumbent_serial.clear();
            return;
        }
        // Exact tie on both criteria: smallest canonical serial wins. The
        // node's own weight is candidate-invariant, so 0 is fine here.
        if (incumbent_serial.empty()) {
            incumbent_serial = canonical_serial(materialize(0, "", assemble(incumbent)));
        }
        std::string serial = canonical_serial(materialize(0, "", std::move(children)));
        if (serial < incumbent_serial) {
            incumbent = candidate;
            incumbent_serial = std::move(serial);
        }
    };

    // Admissible per-row lower bounds on the node-count gain of matching
    // row i anywhere, for pruning.
    std::vector<std::size_t> row_min(m, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            row_min[i] = std::min(row_min[i], pair_at[i][j]->count - large_views[j].count);
        }
    }
    std::vector<std::size_t> suffix_min(m + 1, 0);
    for (std::size_t i = m; i-- > 0;) suffix_min[i] = suffix_min[i + 1] + row_min[i];

    std::size_t base_count = 1;
    for (const ChildView& v : large_views) base_count += v.count;

    std::vector<std::size_t> assign(m, 0);
    std::vector<char> used(n, 0);

    // DFS over injections of the smaller child list into the larger one.
    auto search = [&](auto&& self, std::size_t i, std::size_t gain) -> void {
        if (greedy_) return;
        if (i == m) {
            count_evaluation();
            if (!greedy_) challenge(assign);
            return;
        }
        if (base_count + gain + suffix_min[i] > best_count) {
            return;  // cannot even tie on node count
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            // Identical larger-side children are interchangeable: use them
            // in index order only.
            if (j > 0 && !used[j - 1] && large_views[j].serial == large_views[j - 1].serial) {
                continue;
            }
            // Identical smaller-side children likewise: force ascending
            // column indices across identical adjacent rows.
            if (i > 0 && small_views[i].serial == small_views[i - 1].serial && j < assign[i - 1]) {
                continue;
            }
            used[j] = 1;
            assign[i] = j;
            self(self, i + 1, gain + (pair_at[i][j]->count - large_views[j].count));
            used[j] = 0;
        }
    };
    search(search, 0, 0);

    if (greedy_) {
        for (std::size_t i = 0; i < m; ++i) incumbent[i] = i;
    }
    return materialize(edge_weight, label, assemble(incumbent));
}

}  // namespace

Tree merge_pair(const Tree& a, const Tree& b, const MergeOptions& options) {
    if (!a && !b) return {};
    if (!a) return canonicalized(*b);
    if (!b) return canonicalized(*a);
    Merger merger(options);
    return merger.merge_roots(canonicalized(*a), canonicalized(*b));
}

Tree merge_all(std::vector<TreeNode> trees, const MergeOptions& options) {
    struct Keyed {
        double weight;
        std::string serial;
        std::string labeled;
        std::size_t index;
    };
    std::vector<Keyed> order;
    order.reserve(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) {
        canonicalize(trees[i]);
        order.push_back({subtree_weight(trees[i], options.weights), canonical_serial(trees[i]),
                         labeled_serial(trees[i]), i});
    }
    std::sort(order.begin(), order.end(), [](const Keyed& x, const Keyed& y) {
        if (x.weight != y.weight) return x.weight < y.weight;
        if (x.serial != y.serial) return x.serial < y.serial;
        return x.labeled < y.labeled;
    });

    Tree combined;
    for (const Keyed& k : order) {
        combined = merge_pair(combined, trees[k.index], options);
    }
    return combined;
}

}  // namespace sessiontree
