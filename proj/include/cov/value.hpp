#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <variant>
#include <vector>

#include "cov/bytes.hpp"

namespace cov {

struct ScriptNode;
class Script;

using BigInt = boost::multiprecision::cpp_int;

// A runtime datum: arbitrary-precision integer, byte string, boolean, or a
// script treated as data (scripts stored in arg fields, compared with `=`).
// Equality across kinds is false, never an error; script values compare by
// syntactic script equality.
class Value {
public:
    enum class Kind : uint8_t { Int, Bytes, Bool, Script };

    Value() : rep_(BigInt(0)) {}
    explicit Value(BigInt n) : rep_(std::move(n)) {}
    explicit Value(int64_t n) : rep_(BigInt(n)) {}
    explicit Value(Bytes b) : rep_(std::move(b)) {}
    explicit Value(bool b) : rep_(b) {}
    explicit Value(Script s);

    Kind kind() const { return static_cast<Kind>(rep_.index()); }
    bool is_int() const { return kind() == Kind::Int; }
    bool is_bytes() const { return kind() == Kind::Bytes; }
    bool is_bool() const { return kind() == Kind::Bool; }
    bool is_script() const { return kind() == Kind::Script; }

    const BigInt& as_int() const { return std::get<BigInt>(rep_); }
    const Bytes& as_bytes() const { return std::get<Bytes>(rep_); }
    bool as_bool() const { return std::get<bool>(rep_); }
    Script as_script() const;

    bool operator==(const Value& other) const;
    bool operator!=(const Value& other) const { return !(*this == other); }

private:
    std::variant<BigInt, Bytes, bool, std::shared_ptr<const ScriptNode>> rep_;
};

// Ordered sequence of values: witness slots, arg fields, seqat subjects.
using ValueSeq = std::vector<Value>;

bool seq_eq(const ValueSeq& a, const ValueSeq& b);

}  // namespace cov
