#include "cov/script.hpp"

#include "cov/errors.hpp"

namespace cov {

static const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Int: return "Int";
        case Kind::Bytes: return "Bytes";
        case Kind::Bool: return "Bool";
        case Kind::Seq: return "Seq";
        case Kind::Script: return "Script";
        case Kind::Any: return "Any";
    }
    return "?";
}

// `Any` is compatible with everything; the slack is re-checked dynamically.
static bool fits(Kind have, Kind want) {
    return have == want || have == Kind::Any;
}

static void require(const Script& s, Kind want, const char* what) {
    if (!s.valid()) throw std::invalid_argument("null script operand");
    if (!fits(s.kind(), want))
        throw TypeError(std::string(what) + " requires " + kind_name(want) +
                        ", got " + kind_name(s.kind()));
}

static Kind join(Kind a, Kind b) { return a == b ? a : Kind::Any; }

bool script_eq(const Script& a, const Script& b) {
    if (a.ptr() == b.ptr()) return true;
    if (!a.valid() || !b.valid()) return false;
    const ScriptNode& x = a.node();
    const ScriptNode& y = b.node();
    if (x.op != y.op || x.field != y.field || x.nkeys != y.nkeys) return false;
    if (x.op == Op::Const && !(x.literal == y.literal)) return false;
    if (x.args.size() != y.args.size()) return false;
    for (size_t i = 0; i < x.args.size(); ++i)
        if (!script_eq(x.args[i], y.args[i])) return false;
    return true;
}

namespace sc {

static Script make(ScriptNode&& n) {
    return Script(std::make_shared<const ScriptNode>(std::move(n)));
}

Script intc(BigInt n) {
    ScriptNode node{.op = Op::Const, .kind = Kind::Int, .literal = Value(std::move(n))};
    return make(std::move(node));
}

Script intc(int64_t n) { return intc(BigInt(n)); }

Script bytec(Bytes b) {
    ScriptNode node{.op = Op::Const, .kind = Kind::Bytes, .literal = Value(std::move(b))};
    return make(std::move(node));
}

Script boolc(bool b) {
    ScriptNode node{.op = Op::Const, .kind = Kind::Bool, .literal = Value(b)};
    return make(std::move(node));
}

Script scriptc(Script quoted) {
    if (!quoted.valid()) throw std::invalid_argument("null quoted script");
    ScriptNode node{.op = Op::Const, .kind = Kind::Script, .literal = Value(quoted)};
    return make(std::move(node));
}

Script vec(std::vector<Script> elems) {
    for (const Script& e : elems)
        if (!e.valid()) throw std::invalid_argument("null vector element");
    ScriptNode node{.op = Op::Vec, .kind = Kind::Seq, .args = std::move(elems)};
    return make(std::move(node));
}

static Script binop(Op op, Kind operand, Kind result, const char* what,
                    Script a, Script b) {
    require(a, operand, what);
    require(b, operand, what);
    ScriptNode node{.op = op, .kind = result, .args = {std::move(a), std::move(b)}};
    return make(std::move(node));
}

Script add(Script a, Script b) { return binop(Op::Add, Kind::Int, Kind::Int, "`+`", std::move(a), std::move(b)); }
Script sub(Script a, Script b) { return binop(Op::Sub, Kind::Int, Kind::Int, "`-`", std::move(a), std::move(b)); }
Script lt(Script a, Script b) { return binop(Op::Lt, Kind::Int, Kind::Bool, "`<`", std::move(a), std::move(b)); }

Script eq(Script a, Script b) {
    // Total: any kinds compare; mismatched kinds evaluate to false.
    if (!a.valid() || !b.valid()) throw std::invalid_argument("null script operand");
    ScriptNode node{.op = Op::Eq, .kind = Kind::Bool, .args = {std::move(a), std::move(b)}};
    return make(std::move(node));
}

Script seqat(Script seq, Script index) {
    require(seq, Kind::Seq, "seqat subject");
    require(index, Kind::Int, "seqat index");
    ScriptNode node{.op = Op::SeqAt, .kind = Kind::Any,
                    .args = {std::move(seq), std::move(index)}};
    return make(std::move(node));
}

Script if_(Script cond, Script then_e, Script else_e) {
    require(cond, Kind::Bool, "if condition");
    if (!then_e.valid() || !else_e.valid())
        throw std::invalid_argument("null if branch");
    Kind k = join(then_e.kind(), else_e.kind());
    ScriptNode node{.op = Op::If, .kind = k,
                    .args = {std::move(cond), std::move(then_e), std::move(else_e)}};
    return make(std::move(node));
}

Script rtx_wit() {
    ScriptNode node{.op = Op::RtxWit, .kind = Kind::Seq};
    return make(std::move(node));
}

Script size(Script e) {
    if (!e.valid()) throw std::invalid_argument("null script operand");
    if (!fits(e.kind(), Kind::Int) && !fits(e.kind(), Kind::Bytes))
        throw TypeError(std::string("size requires Int or Bytes, got ") +
                        kind_name(e.kind()));
    ScriptNode node{.op = Op::Size, .kind = Kind::Int, .args = {std::move(e)}};
    return make(std::move(node));
}

Script hash(Script e) {
    if (!e.valid()) throw std::invalid_argument("null script operand");
    ScriptNode node{.op = Op::Hash, .kind = Kind::Bytes, .args = {std::move(e)}};
    return make(std::move(node));
}

Script versig(std::vector<Script> keys, std::vector<Script> sigs) {
    ScriptNode node{.op = Op::Versig, .kind = Kind::Bool};
    node.nkeys = static_cast<uint32_t>(keys.size());
    node.args = std::move(keys);
    for (Script& s : sigs) node.args.push_back(std::move(s));
    for (const Script& s : node.args)
        if (!s.valid()) throw std::invalid_argument("null versig element");
    return make(std::move(node));
}

static Script timed(Op op, Script time_e, Script body, const char* what) {
    require(time_e, Kind::Int, what);
    if (!body.valid()) throw std::invalid_argument("null timelock body");
    Kind k = body.kind();
    ScriptNode node{.op = op, .kind = k, .args = {std::move(time_e), std::move(body)}};
    return make(std::move(node));
}

Script after(Script time_e, Script body) {
    return timed(Op::After, std::move(time_e), std::move(body), "after time");
}

Script after_rel(Script time_e, Script body) {
    return timed(Op::AfterRel, std::move(time_e), std::move(body), "afterRel time");
}

static Kind field_kind(TxField f) {
    switch (f) {
        case TxField::Arg: return Kind::Seq;
        case TxField::Scr: return Kind::Script;
        case TxField::Val: return Kind::Int;
    }
    return Kind::Any;
}

Script ctxo(TxField f, Script index) {
    require(index, Kind::Int, "ctxo index");
    ScriptNode node{.op = Op::Ctxo, .kind = field_kind(f), .field = f,
                    .args = {std::move(index)}};
    return make(std::move(node));
}

Script rtxo(TxField f, Script index) {
    require(index, Kind::Int, "rtxo index");
    ScriptNode node{.op = Op::Rtxo, .kind = field_kind(f), .field = f,
                    .args = {std::move(index)}};
    return make(std::move(node));
}

Script outidx() {
    ScriptNode node{.op = Op::OutIdx, .kind = Kind::Int};
    return make(std::move(node));
}

Script inidx() {
    ScriptNode node{.op = Op::InIdx, .kind = Kind::Int};
    return make(std::move(node));
}

Script verscr(Script index, Script quoted) {
    require(index, Kind::Int, "verscr index");
    if (!quoted.valid()) throw std::invalid_argument("null quoted script");
    ScriptNode node{.op = Op::Verscr, .kind = Kind::Bool,
                    .args = {std::move(index), std::move(quoted)}};
    return make(std::move(node));
}

Script verrec(Script index) {
    require(index, Kind::Int, "verrec index");
    ScriptNode node{.op = Op::Verrec, .kind = Kind::Bool, .args = {std::move(index)}};
    return make(std::move(node));
}

Script true_() { return eq(intc(1), intc(1)); }
Script false_() { return eq(intc(1), intc(0)); }

Script and_(Script a, Script b) {
    require(b, Kind::Bool, "`and` operand");
    return if_(std::move(a), std::move(b), false_());
}

Script or_(Script a, Script b) {
    require(b, Kind::Bool, "`or` operand");
    return if_(std::move(a), true_(), std::move(b));
}

Script not_(Script a) { return if_(std::move(a), false_(), true_()); }

Script ge(Script a, Script b) { return not_(lt(std::move(a), std::move(b))); }
Script gt(Script a, Script b) { return lt(std::move(b), std::move(a)); }
Script le(Script a, Script b) { return not_(lt(std::move(b), std::move(a))); }
Script ne(Script a, Script b) { return not_(eq(std::move(a), std::move(b))); }

Script and_all(std::vector<Script> xs) {
    if (xs.empty()) return true_();
    Script acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = and_(std::move(acc), std::move(xs[i]));
    return acc;
}

Script or_all(std::vector<Script> xs) {
    if (xs.empty()) return false_();
    Script acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = or_(std::move(acc), std::move(xs[i]));
    return acc;
}

}  // namespace sc
}  // namespace cov
