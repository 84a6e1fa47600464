#pragma once

#include <stdexcept>
#include <string>

namespace cov {

// Text could not be tokenized or does not match the grammar.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::string msg, int line = 0, int col = 0)
        : std::runtime_error(format(msg, line, col)), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    static std::string format(const std::string& msg, int line, int col) {
        if (line <= 0) return msg;
        return std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
    }
    int line_ = 0, col_ = 0;
};

// Structurally well-formed but rejected by the basic type check
// (e.g. `1 + hash(1)`: Bytes operand where Int is required).
class TypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A name that is not bound: unknown transaction label in a scenario,
// unknown script reference, unknown participant in sig(...).
class ReferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Evaluation context points at transactions the resolver cannot produce.
// This is a broken harness, not a ⊥ result.
class CorruptContext : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Ledger query against an OutputRef that does not exist on the chain.
class UnknownRef : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Canonical byte stream is truncated, non-minimal, or carries a bad tag.
class SerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cov
