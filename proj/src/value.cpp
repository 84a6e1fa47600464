#include "cov/value.hpp"

#include "cov/script.hpp"

namespace cov {

Value::Value(Script s) : rep_(s.ptr()) {
    if (!s.valid()) throw std::invalid_argument("null script value");
}

Script Value::as_script() const {
    return Script(std::get<std::shared_ptr<const ScriptNode>>(rep_));
}

bool Value::operator==(const Value& other) const {
    if (kind() != other.kind()) return false;
    switch (kind()) {
        case Kind::Int: return as_int() == other.as_int();
        case Kind::Bytes: return as_bytes() == other.as_bytes();
        case Kind::Bool: return as_bool() == other.as_bool();
        case Kind::Script: return script_eq(as_script(), other.as_script());
    }
    return false;
}

bool seq_eq(const ValueSeq& a, const ValueSeq& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

}  // namespace cov
