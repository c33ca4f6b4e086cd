#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "sessiontree/errors.hpp"

namespace oracles {

using sessiontree::Matching;

namespace {

// All partial injective matchings between index sets {0..m-1} and {0..n-1}.
void enumerate_matchings(std::size_t m, std::size_t n, Matching& current,
                         std::vector<char>& used_b, std::vector<Matching>& out,
                         std::size_t i = 0) {
    if (i == m) {
        out.push_back(current);
        return;
    }
    enumerate_matchings(m, n, current, used_b, out, i + 1);  // leave i unmatched
    for (std::size_t j = 0; j < n; ++j) {
        if (used_b[j]) continue;
        used_b[j] = 1;
        current.pairs.emplace_back(i, j);
        enumerate_matchings(m, n, current, used_b, out, i + 1);
        current.pairs.pop_back();
        used_b[j] = 0;
    }
}

// Ranking value of a fully materialized candidate, computed the canonical
// way: node count, then the sum of w(c)*W(c) over the canonicalized
// children, then the canonical serial.
struct Value {
    std::size_t count;
    double warg;
    std::string serial;

    bool better_than(const Value& other) const {
        if (count != other.count) return count < other.count;
        if (warg != other.warg) return warg > other.warg;
        return serial < other.serial;
    }
};

Value value_of(const TreeNode& canonical_node, const WeightConfig& config) {
    double warg = 0.0;
    for (const TreeNode& c : canonical_node.children) {
        warg += static_cast<double>(c.edge_weight) * subtree_weight(c, config);
    }
    return {sessiontree::node_count(canonical_node), warg,
            sessiontree::canonical_serial(canonical_node)};
}

}  // namespace

TreeNode merge(const TreeNode& a, const TreeNode& b, const WeightConfig& config) {
    const std::size_t m = a.children.size();
    const std::size_t n = b.children.size();

    std::vector<Matching> matchings;
    Matching current;
    std::vector<char> used_b(n, 0);
    enumerate_matchings(m, n, current, used_b, matchings);

    bool have_best = false;
    TreeNode best_node;
    Value best_value{0, 0.0, {}};

    for (const Matching& matching : matchings) {
        TreeNode candidate;
        candidate.label = a.label == b.label ? a.label : "";
        candidate.edge_weight = a.edge_weight + b.edge_weight;

        std::vector<char> a_used(m, 0);
        std::vector<char> b_used(n, 0);
        for (const auto& [i, j] : matching.pairs) {
            candidate.children.push_back(merge(a.children[i], b.children[j], config));
            a_used[i] = 1;
            b_used[j] = 1;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (!a_used[i]) candidate.children.push_back(a.children[i]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!b_used[j]) candidate.children.push_back(b.children[j]);
        }
        sessiontree::canonicalize(candidate);

        Value value = value_of(candidate, config);
        if (!have_best || value.better_than(best_value)) {
            have_best = true;
            best_node = std::move(candidate);
            best_value = std::move(value);
        }
    }
    return best_node;
}

TreeNode merge_pair(TreeNode a, TreeNode b, const WeightConfig& config) {
    sessiontree::canonicalize(a);
    sessiontree::canonicalize(b);
    TreeNode merged = merge(a, b, config);
    merged.edge_weight = 1;
    return merged;
}

TreeNode merge_all(std::vector<TreeNode> trees, const WeightConfig& config) {
    struct Keyed {
        double weight;
        std::string serial;
        std::size_t index;
    };
    std::vector<Keyed> order;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        sessiontree::canonicalize(trees[i]);
        order.push_back({subtree_weight(trees[i], config),
                         sessiontree::canonical_serial(trees[i]), i});
    }
    std::sort(order.begin(), order.end(), [](const Keyed& x, const Keyed& y) {
        if (x.weight != y.weight) return x.weight < y.weight;
        return x.serial < y.serial;
    });

    bool have = false;
    TreeNode combined;
    for (const Keyed& k : order) {
        combined = have ? merge_pair(combined, trees[k.index], config) : trees[k.index];
        have = true;
    }
    return combined;
}

TreeNode replay(const std::vector<std::string>& tokens) {
    std::map<std::string, std::vector<std::string>> adjacency;
    std::set<std::string> visited{tokens.front()};
    std::string cursor = tokens.front();
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::string& token = tokens[i];
        if (visited.count(token)) {
            cursor = token;
        } else {
            adjacency[cursor].push_back(token);
            visited.insert(token);
            cursor = token;
        }
    }

    struct Builder {
        const std::map<std::string, std::vector<std::string>>& adjacency;
        TreeNode build(const std::string& token) const {
            TreeNode n;
            n.label = token;
            n.edge_weight = 1;
            if (auto it = adjacency.find(token); it != adjacency.end()) {
                for (const std::string& c : it->second) n.children.push_back(build(c));
            }
            return n;
        }
    };
    TreeNode root = Builder{adjacency}.build(tokens.front());
    sessiontree::canonicalize(root);
    return root;
}

std::size_t diameter_bfs(const TreeNode& tree) {
    // Flatten to an undirected adjacency list.
    std::vector<std::vector<std::size_t>> adj;
    struct Flatten {
        std::vector<std::vector<std::size_t>>& adj;
        std::size_t add(const TreeNode& node) {
            const std::size_t id = adj.size();
            adj.emplace_back();
            for (const TreeNode& c : node.children) {
                const std::size_t child_id = add(c);
                adj[id].push_back(child_id);
                adj[child_id].push_back(id);
            }
            return id;
        }
    };
    Flatten{adj}.add(tree);

    std::size_t diameter = 0;
    for (std::size_t start = 0; start < adj.size(); ++start) {
        std::vector<std::size_t> dist(adj.size(), SIZE_MAX);
        std::deque<std::size_t> queue{start};
        dist[start] = 0;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            diameter = std::max(diameter, dist[u]);
            for (const std::size_t v : adj[u]) {
                if (dist[v] == SIZE_MAX) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return diameter;
}

double pairwise_u(const std::vector<double>& a, const std::vector<double>& b) {
    double u = 0.0;
    for (const double x : a) {
        for (const double y : b) {
            if (x > y) u += 1.0;
            if (x == y) u += 0.5;
        }
    }
    return u;
}

double exact_mwu_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n1 = a.size();
    const std::size_t n = pooled.size();

    const double full = static_cast<double>(n1 * (n - n1));
    const double observed = pairwise_u(a, b);
    const double u_min = std::min(observed, full - observed);

    // Iterate over all n1-subsets as the relabeled first sample.
    std::vector<char> labels(n, 0);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n1), 1);
    std::sort(labels.begin(), labels.end());  // lowest permutation first

    std::size_t total = 0;
    std::size_t at_most = 0;
    do {
        std::vector<double> ra;
        std::vector<double> rb;
        for (std::size_t i = 0; i < n; ++i) {
            (labels[i] ? ra : rb).push_back(pooled[i]);
        }
        const double u = pairwise_u(ra, rb);
        ++total;
        if (u <= u_min + 1e-12) ++at_most;
    } while (std::next_permutation(labels.begin(), labels.end()));

    return std::min(1.0, 2.0 * static_cast<double>(at_most) / static_cast<double>(total));
}

}  // namespace oracles
