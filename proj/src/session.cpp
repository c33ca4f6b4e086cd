#include "sessiontree/session.hpp"

#include <istream>
#include <unordered_map>

#include "sessiontree/errors.hpp"

namespace sessiontree {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

void check_token(const std::string& token, const std::string& line) {
    if (token.empty()) {
        throw MalformedLine("empty token in line: " + line);
    }
    if (token.find("->") != std::string::npos ||
        token.find(',') != std::string::npos ||
        token.find(':') != std::string::npos) {
        throw MalformedLine("token '" + token + "' contains a separator character");
    }
}

}  // namespace

SessionRecord parse_session_line(const std::string& line) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
        throw MalformedLine("missing ',' separator in line: " + line);
    }
    const auto colon = line.find(':', comma + 1);
    if (colon == std::string::npos) {
        throw MalformedLine("missing ':' separator in line: " + line);
    }

    SessionRecord record;
    record.session_id = trim(line.substr(0, comma));
    record.group = trim(line.substr(comma + 1, colon - comma - 1));
    if (record.session_id.empty()) {
        throw MalformedLine("empty session id in line: " + line);
    }
    if (record.group.empty()) {
        throw MalformedLine("empty group label in line: " + line);
    }

    std::string rest = line.substr(colon + 1);
    std::size_t pos = 0;
    while (true) {
        const auto arrow = rest.find("->", pos);
        const std::string token =
            trim(arrow == std::string::npos ? rest.substr(pos) : rest.substr(pos, arrow - pos));
        check_token(token, line);
        if (!record.tokens.empty() && record.tokens.back() == token) {
            throw MalformedLine("consecutive duplicate token '" + token + "' in line: " + line);
        }
        record.tokens.push_back(token);
        if (arrow == std::string::npos) break;
        pos = arrow + 2;
    }
    return record;
}

std::vector<SessionRecord> parse_session_log(std::istream& in) {
    std::vector<SessionRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        try {
            records.push_back(parse_session_line(line));
        } catch (const MalformedLine& e) {
            throw MalformedLine("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

TreeNode build_session_tree(const SessionRecord& record) {
    if (record.tokens.empty()) {
        throw DataError("session " + record.session_id + " has no tokens");
    }

    // Arena build: vectors of TreeNode would invalidate cursor pointers.
    struct Slot {
        std::string label;
        std::vector<std::size_t> children;
    };
    std::vector<Slot> slots;
    std::unordered_map<std::string, std::size_t> by_token;

    slots.push_back({record.tokens.front(), {}});
    by_token.emplace(record.tokens.front(), 0);
    std::size_t cursor = 0;

    for (std::size_t i = 1; i < record.tokens.size(); ++i) {
        const std::string& token = record.tokens[i];
        if (auto it = by_token.find(token); it != by_token.end()) {
            cursor = it->second;  // revisit: navigate, add nothing
        } else {
            const std::size_t fresh = slots.size();
            slots.push_back({token, {}});
            slots[cursor].children.push_back(fresh);
            by_token.emplace(token, fresh);
            cursor = fresh;
        }
    }

    struct Builder {
        const std::vector<Slot>& slots;
        TreeNode build(std::size_t idx) const {
            TreeNode node;
            node.label = slots[idx].label;
            node.edge_weight = 1;
            for (const std::size_t c : slots[idx].children) {
                node.children.push_back(build(c));
            }
            return node;
        }
    };
    TreeNode root = Builder{slots}.build(0);
    canonicalize(root);
    return root;
}

}  // namespace sessiontree
