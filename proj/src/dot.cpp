#include "sessiontree/dot.hpp"

#include <algorithm>
#include <cstdio>

#include "sessiontree/errors.hpp"

namespace sessiontree {

namespace {

std::int64_t max_edge_weight(const TreeNode& node) {
    std::int64_t max = 0;
    for (const TreeNode& c : node.children) {
        max = std::max({max, c.edge_weight, max_edge_weight(c)});
    }
    return max;
}

std::string quoted(const std::string& label) {
    std::string out = "\"";
    for (const char ch : label) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    out += '"';
    return out;
}

struct DotWriter {
    const DotOptions& options;
    std::int64_t max_weight;
    std::string body;
    std::size_t next_id = 0;

    double penwidth(std::int64_t w) const {
        if (max_weight <= 1) return options.min_penwidth;
        return options.min_penwidth + (options.max_penwidth - options.min_penwidth) *
                                          static_cast<double>(w - 1) /
                                          static_cast<double>(max_weight - 1);
    }

    std::size_t write(const TreeNode& node) {
        const std::size_t id = next_id++;
        body += "  n" + std::to_string(id);
        if (options.show_labels) {
            body += " [label=" + quoted(node.label) + "]";
        }
        body += ";\n";
        for (const TreeNode& c : node.children) {
            const std::size_t child_id = write(c);
            char width[32];
            std::snprintf(width, sizeof(width), "%.9f", penwidth(c.edge_weight));
            body += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) +
                    " [penwidth=" + width + "];\n";
        }
        return id;
    }
};

}  // namespace

std::string export_dot(const TreeNode& tree, const DotOptions& options) {
    if (!(options.min_penwidth > 0.0) || options.min_penwidth > options.max_penwidth) {
        throw DataError("penwidth range must satisfy 0 < min <= max");
    }
    DotWriter writer{options, max_edge_weight(tree), {}, 0};
    writer.body = "digraph session_tree {\n";
    if (!options.show_labels) {
        writer.body += "  node [shape=circle, label=\"\"];\n";
    } else {
        writer.body += "  node [shape=ellipse];\n";
    }
    writer.write(tree);
    writer.body += "}\n";
    return writer.body;
}

std::string export_dot(const Tree& tree, const DotOptions& options) {
    if (!tree) throw EmptyTree("export_dot");
    return export_dot(*tree, options);
}

}  // namespace sessiontree
