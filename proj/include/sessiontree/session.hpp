#ifndef SESSIONTREE_SESSION_HPP
#define SESSIONTREE_SESSION_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sessiontree/tree.hpp"

namespace sessiontree {

// One recorded search session: an ordered walk over visited objects.
// The first token is the seed object; consecutive tokens always differ.
struct SessionRecord {
    std::string session_id;
    std::string group;
    std::vector<std::string> tokens;
};

// Parses one log line of the form
//   <id> ',' <group> ':' <token> (' -> ' <token>)*
// Whitespace around separators is ignored. Tokens must be non-empty and
// free of "->", ',' and ':'. Throws MalformedLine.
SessionRecord parse_session_line(const std::string& line);

// Reads a whole session log: one session per line, '#' lines are comments,
// blank lines are skipped. Errors are rethrown with the line number.
std::vector<SessionRecord> parse_session_log(std::istream& in);

// Replays the token walk into a tree. The first token becomes the root;
// a token seen before moves the cursor to its node, a new token attaches
// a fresh unit-weight child to the cursor. Each distinct token maps to
// exactly one node. The result is canonically sorted.
TreeNode build_session_tree(const SessionRecord& record);

}  // namespace sessiontree

#endif  // SESSIONTREE_SESSION_HPP
