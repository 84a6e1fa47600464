#pragma once

#include <memory>
#include <vector>

#include "cov/value.hpp"

namespace cov {

// Static result kind assigned by the node factories. `Any` covers positions
// the basic type system cannot pin down (seqat elements, mixed if branches);
// those fall back to dynamic checks during evaluation.
enum class Kind : uint8_t { Int, Bytes, Bool, Seq, Script, Any };

enum class Op : uint8_t {
    Const,     // literal Value
    Vec,       // literal script vector, evaluates to a ValueSeq
    Add, Sub,  // Int x Int -> Int
    Eq,        // total equality -> Bool
    Lt,        // Int x Int -> Bool
    SeqAt,     // 1-based indexing into a sequence
    If,        // condition, then, else
    RtxWit,    // witness sequence of the redeeming input
    Size,      // byte length of an Int encoding or a byte string
    Hash,      // digest of the canonical encoding of the operand
    Versig,    // multisig check: key vector ; sig vector
    After,     // absolute time guard
    AfterRel,  // relative time guard
    Ctxo,      // field of an output of the currently-spent (parent) tx
    Rtxo,      // field of an output of the redeeming tx
    OutIdx,    // index of the redeemed output within its tx
    InIdx,     // index of the redeeming input
    Verscr,    // output script equals a quoted script
    Verrec,    // output script equals the redeemed output's script
};

enum class TxField : uint8_t { Arg, Scr, Val };

class Script;

struct ScriptNode {
    Op op;
    Kind kind = Kind::Any;
    TxField field = TxField::Arg;  // Ctxo / Rtxo only
    uint32_t nkeys = 0;            // Versig: args[0..nkeys) keys, rest sigs
    Value literal;                 // Const only
    std::vector<Script> args;
};

// Immutable handle on an AST node. Copies share structure.
class Script {
public:
    Script() = default;
    explicit Script(std::shared_ptr<const ScriptNode> n) : node_(std::move(n)) {}

    bool valid() const { return node_ != nullptr; }
    const ScriptNode& node() const { return *node_; }
    const std::shared_ptr<const ScriptNode>& ptr() const { return node_; }
    Op op() const { return node_->op; }
    Kind kind() const { return node_->kind; }

private:
    std::shared_ptr<const ScriptNode> node_;
};

// Syntactic equality on desugared ASTs. Literal values compare with Value
// equality (so Const 1 != Const 0x01); quoted scripts compare recursively.
bool script_eq(const Script& a, const Script& b);

// Node factories. Each checks its operands' static kinds and throws
// TypeError on a mismatch, so ill-typed trees cannot be built.
namespace sc {

Script intc(BigInt n);
Script intc(int64_t n);
Script bytec(Bytes b);
Script boolc(bool b);
Script scriptc(Script quoted);  // script-as-data literal, <...> in text
Script vec(std::vector<Script> elems);
Script add(Script a, Script b);
Script sub(Script a, Script b);
Script eq(Script a, Script b);
Script lt(Script a, Script b);
Script seqat(Script seq, Script index);
Script if_(Script cond, Script then_e, Script else_e);
Script rtx_wit();
Script size(Script e);
Script hash(Script e);
Script versig(std::vector<Script> keys, std::vector<Script> sigs);
Script after(Script time_e, Script body);
Script after_rel(Script time_e, Script body);
Script ctxo(TxField f, Script index);
Script rtxo(TxField f, Script index);
Script outidx();
Script inidx();
Script verscr(Script index, Script quoted);
Script verrec(Script index);

// Sugar: desugared immediately, never present in the AST.
Script true_();                 // 1 = 1
Script false_();                // 1 = 0
Script and_(Script a, Script b);  // if a then b else false
Script or_(Script a, Script b);   // if a then true else b
Script not_(Script a);            // if a then false else true
Script ge(Script a, Script b);    // not (a < b)
Script gt(Script a, Script b);    // b < a
Script le(Script a, Script b);    // not (b < a)
Script ne(Script a, Script b);    // not (a = b)
Script and_all(std::vector<Script> xs);  // left fold
Script or_all(std::vector<Script> xs);   // left fold

}  // namespace sc
}  // namespace cov
