#include "sessiontree/json_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "sessiontree/errors.hpp"

namespace sessiontree {

namespace {

nlohmann::json node_to_json(const TreeNode& node) {
    nlohmann::json j;
    j["label"] = node.label;
    j["weight"] = node.edge_weight;
    nlohmann::json children = nlohmann::json::array();
    for (const TreeNode& c : node.children) children.push_back(node_to_json(c));
    j["children"] = std::move(children);
    return j;
}

TreeNode node_from_json(const nlohmann::json& j, const std::string& path,
                        std::vector<std::string>& warnings) {
    if (!j.is_object()) {
        throw ParseError("node " + path + ": expected an object");
    }
    TreeNode node;
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw ParseError("node " + path + ": label must be a string");
        node.label = j["label"].get<std::string>();
    }
    if (!j.contains("weight") || !j["weight"].is_number_integer()) {
        throw ParseError("node " + path + ": weight must be an integer");
    }
    node.edge_weight = j["weight"].get<std::int64_t>();
    if (node.edge_weight < 1) {
        throw InvariantViolation("node " + path + ": weight " +
                                 std::to_string(node.edge_weight) + " is below 1");
    }
    if (j.contains("children")) {
        if (!j["children"].is_array()) {
            throw ParseError("node " + path + ": children must be an array");
        }
        std::size_t i = 0;
        for (const auto& cj : j["children"]) {
            const std::string child_path =
                (path == "/" ? path : path + "/") + std::to_string(i);
            TreeNode child = node_from_json(cj, child_path, warnings);
            // Root weight is a convention, not an edge; only interior
            // edges are expected to be non-increasing.
            if (path != "/" && child.edge_weight > node.edge_weight) {
                warnings.push_back("edge into " + child_path + " outweighs its parent (" +
                                   std::to_string(child.edge_weight) + " > " +
                                   std::to_string(node.edge_weight) + ")");
            }
            node.children.push_back(std::move(child));
            ++i;
        }
    }
    return node;
}

}  // namespace

LoadedTree load_tree(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("tree JSON: ") + e.what());
    }

    LoadedTree loaded;
    loaded.tree = node_from_json(doc, "/", loaded.warnings);
    if (loaded.tree.edge_weight != 1) {
        throw InvariantViolation("root weight must be 1, got " +
                                 std::to_string(loaded.tree.edge_weight));
    }
    if (doc.contains("meta") && doc["meta"].is_object()) {
        const auto& meta = doc["meta"];
        if (meta.contains("weight_mode") && meta["weight_mode"].is_string()) {
            loaded.meta.weight_mode = meta["weight_mode"].get<std::string>();
        }
        if (meta.contains("log_base") && meta["log_base"].is_number()) {
            loaded.meta.log_base = meta["log_base"].get<double>();
        }
        if (meta.contains("sessions") && meta["sessions"].is_number_unsigned()) {
            loaded.meta.sessions = meta["sessions"].get<std::size_t>();
        }
        if (meta.contains("root_subtree_weight") && meta["root_subtree_weight"].is_number()) {
            loaded.meta.root_subtree_weight = meta["root_subtree_weight"].get<double>();
        }
    }
    return loaded;
}

LoadedTree load_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return load_tree(in);
}

void save_tree(std::ostream& out, const TreeNode& tree, const TreeFileMeta& meta) {
    nlohmann::json doc = node_to_json(tree);
    if (!meta.empty()) {
        nlohmann::json m = nlohmann::json::object();
        if (meta.weight_mode) m["weight_mode"] = *meta.weight_mode;
        if (meta.log_base) m["log_base"] = *meta.log_base;
        if (meta.sessions) m["sessions"] = *meta.sessions;
        if (meta.root_subtree_weight) m["root_subtree_weight"] = *meta.root_subtree_weight;
        doc["meta"] = std::move(m);
    }
    out << doc.dump(2) << '\n';
}

void save_tree_file(const std::string& path, const TreeNode& tree, const TreeFileMeta& meta) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    save_tree(out, tree, meta);
    if (!out) throw DataError("failed writing " + path);
}

}  // namespace sessiontree
