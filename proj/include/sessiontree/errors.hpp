#ifndef SESSIONTREE_ERRORS_HPP
#define SESSIONTREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sessiontree {

// Base class for all library errors. The CLI maps these onto exit codes:
// usage errors are handled by the argument parser, DataError descendants
// exit with 2, BudgetExceeded with 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data (log lines, CSV rows, JSON documents, invariant breaches).
struct DataError : Error {
    using Error::Error;
};

// A session log line that does not match the grammar.
struct MalformedLine : DataError {
    using DataError::DataError;
};

// Unparseable JSON or a JSON document with the wrong shape.
struct ParseError : DataError {
    using DataError::DataError;
};

// A loaded tree breaks a hard invariant (weight < 1, root weight != 1).
struct InvariantViolation : DataError {
    using DataError::DataError;
};

// Literal-mode subtree weight hit a log of a non-positive argument.
// Carries the path of the offending node (root-relative child indices).
struct NonPositiveLogArgument : Error {
    explicit NonPositiveLogArgument(const std::string& node_path)
        : Error("subtree weight: non-positive log argument at node " + node_path),
          path(node_path) {}
    std::string path;
};

// Exact merge search evaluated more candidate matchings than allowed.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(unsigned long long budget)
        : Error("merge: matching enumeration exceeded budget of " +
                std::to_string(budget) +
                " evaluated matchings (raise --budget or enable --greedy-fallback)") {}
};

// An operation that needs a non-empty tree received the empty tree.
struct EmptyTree : Error {
    explicit EmptyTree(const std::string& op) : Error(op + ": empty tree") {}
};

// Stable-eye selection called without any fixation samples.
struct NoSamples : Error {
    explicit NoSamples(const std::string& participant)
        : Error("stable eye: no samples for participant " + participant) {}
};

}  // namespace sessiontree

#endif  // SESSIONTREE_ERRORS_HPP
