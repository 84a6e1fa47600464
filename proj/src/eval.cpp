#include "cov/eval.hpp"

#include "cov/errors.hpp"
#include "cov/render.hpp"
#include "cov/serial.hpp"

namespace cov {

void MapResolver::add(const Transaction& tx) { txs_[tx_id(tx)] = tx; }

const Transaction* MapResolver::find(const TxId& id) const {
    auto it = txs_.find(id);
    return it == txs_.end() ? nullptr : &it->second;
}

bool EvalResult::operator==(const EvalResult& other) const {
    if (is_bot() || other.is_bot()) return is_bot() && other.is_bot();
    if (is_value() != other.is_value()) return false;
    if (is_value()) return value() == other.value();
    return seq_eq(seq(), other.seq());
}

static const Transaction& parent_tx(const EvalContext& ctx) {
    const OutputRef& ref = ctx.rtx.inputs[ctx.input_index - 1];
    const Transaction* parent = ctx.resolver.find(ref.txid);
    if (!parent)
        throw CorruptContext("resolver cannot produce tx " + ref.txid.hex());
    return *parent;
}

const Output& redeemed_output(const EvalContext& ctx) {
    const OutputRef& ref = ctx.rtx.inputs[ctx.input_index - 1];
    const Transaction& parent = parent_tx(ctx);
    if (ref.index == 0 || ref.index > parent.outputs.size())
        throw CorruptContext("input points past the outputs of " + ref.txid.hex());
    return parent.outputs[ref.index - 1];
}

namespace {

// Evaluated output index: Int within [1, n] or nothing (caller yields ⊥).
std::optional<size_t> index_into(const EvalResult& r, size_t n) {
    if (!r.is_value() || !r.value().is_int()) return std::nullopt;
    const BigInt& j = r.value().as_int();
    if (j < 1 || j > n) return std::nullopt;
    return static_cast<size_t>(j);
}

EvalResult output_field(const Output& out, TxField f) {
    switch (f) {
        case TxField::Arg: return EvalResult(out.arg);
        case TxField::Scr: return EvalResult(Value(out.scr));
        case TxField::Val: return EvalResult(Value(BigInt(out.val)));
    }
    throw CorruptContext("unreachable tx field");
}

}  // namespace

EvalResult eval(const Script& s, const EvalContext& ctx) {
    if (!s.valid()) throw std::invalid_argument("eval on null script");
    if (ctx.input_index == 0 || ctx.input_index > ctx.rtx.inputs.size())
        throw std::invalid_argument("eval input_index out of range");
    const ScriptNode& n = s.node();
    switch (n.op) {
        case Op::Const:
            return EvalResult(n.literal);

        case Op::Vec: {
            // Literal vectors splice sequence-valued elements, mirroring the
            // key/sig vectors of versig (a vector of evaluations, flat).
            ValueSeq out;
            for (const Script& e : n.args) {
                EvalResult r = eval(e, ctx);
                if (r.is_bot()) return EvalResult::bot();
                if (r.is_value())
                    out.push_back(r.value());
                else
                    out.insert(out.end(), r.seq().begin(), r.seq().end());
            }
            return EvalResult(std::move(out));
        }

        case Op::Add:
        case Op::Sub: {
            EvalResult a = eval(n.args[0], ctx);
            EvalResult b = eval(n.args[1], ctx);
            if (!a.is_value() || !a.value().is_int()) return EvalResult::bot();
            if (!b.is_value() || !b.value().is_int()) return EvalResult::bot();
            const BigInt& x = a.value().as_int();
            const BigInt& y = b.value().as_int();
            return EvalResult(
                Value(n.op == Op::Add ? BigInt(x + y) : BigInt(x - y)));
        }

        case Op::Lt: {
            EvalResult a = eval(n.args[0], ctx);
            EvalResult b = eval(n.args[1], ctx);
            if (!a.is_value() || !a.value().is_int()) return EvalResult::bot();
            if (!b.is_value() || !b.value().is_int()) return EvalResult::bot();
            return EvalResult(Value(a.value().as_int() < b.value().as_int()));
        }

        case Op::Eq: {
            // Total on defined operands: kind mismatch is false, never ⊥.
            EvalResult a = eval(n.args[0], ctx);
            EvalResult b = eval(n.args[1], ctx);
            if (a.is_bot() || b.is_bot()) return EvalResult::bot();
            return EvalResult(Value(a == b));
        }

        case Op::SeqAt: {
            EvalResult subject = eval(n.args[0], ctx);
            if (!subject.is_seq()) return EvalResult::bot();
            EvalResult idx = eval(n.args[1], ctx);
            auto j = index_into(idx, subject.seq().size());
            if (!j) return EvalResult::bot();
            return EvalResult(subject.seq()[*j - 1]);
        }

        case Op::If: {
            // A ⊥ or false guard selects the else branch; that is what lets
            // `x or y` fall through to y when x is a failed timelock. Only a
            // guard that is a defined non-Bool value is an error. The
            // untaken branch is never evaluated.
            EvalResult c = eval(n.args[0], ctx);
            if (c.is_true()) return eval(n.args[1], ctx);
            if (c.is_false() || c.is_bot()) return eval(n.args[2], ctx);
            return EvalResult::bot();
        }

        case Op::RtxWit:
            return EvalResult(ctx.rtx.witnesses[ctx.input_index - 1]);

        case Op::Size: {
            EvalResult a = eval(n.args[0], ctx);
            if (!a.is_value()) return EvalResult::bot();
            if (a.value().is_int())
                return EvalResult(Value(BigInt(encode_int(a.value().as_int()).size())));
            if (a.value().is_bytes())
                return EvalResult(Value(BigInt(a.value().as_bytes().size())));
            return EvalResult::bot();
        }

        case Op::Hash: {
            EvalResult a = eval(n.args[0], ctx);
            if (a.is_bot()) return EvalResult::bot();
            Bytes enc = a.is_value() ? encode_datum_for_hash(a.value())
                                     : encode_datum_for_hash(a.seq());
            return EvalResult(Value(sha256(enc)));
        }

        case Op::Versig: {
            // Each argument may contribute one value or a whole sequence
            // (e.g. rtx.wit); results are flattened in order. Any ⊥ is ⊥,
            // any non-Bytes element makes the check false.
            // All operands are evaluated (⊥ wins over ill-shapedness).
            auto flatten = [&](size_t begin, size_t end,
                               std::vector<Bytes>& out) -> int {
                int status = 1;
                for (size_t i = begin; i < end; ++i) {
                    EvalResult r = eval(n.args[i], ctx);
                    if (r.is_bot()) {
                        status = -1;
                        continue;
                    }
                    ValueSeq items;
                    if (r.is_value())
                        items.push_back(r.value());
                    else
                        items = r.seq();
                    for (const Value& v : items) {
                        if (!v.is_bytes())
                            status = std::min(status, 0);
                        else
                            out.push_back(v.as_bytes());
                    }
                }
                return status;
            };
            std::vector<Bytes> keys, sigs;
            int k = flatten(0, n.nkeys, keys);
            int s2 = flatten(n.nkeys, n.args.size(), sigs);
            if (k < 0 || s2 < 0) return EvalResult::bot();
            if (k == 0 || s2 == 0) return EvalResult(Value(false));
            return EvalResult(Value(
                ver_multisig(ctx.scheme, keys, sigs, ctx.rtx, ctx.input_index)));
        }

        case Op::After:
        case Op::AfterRel: {
            EvalResult t = eval(n.args[0], ctx);
            if (!t.is_value() || !t.value().is_int()) return EvalResult::bot();
            Time have = n.op == Op::After
                            ? ctx.rtx.abs_lock
                            : ctx.rtx.rel_locks[ctx.input_index - 1];
            if (BigInt(have) >= t.value().as_int()) return eval(n.args[1], ctx);
            return EvalResult::bot();
        }

        case Op::Ctxo:
        case Op::Rtxo: {
            const Transaction& tx = n.op == Op::Rtxo ? ctx.rtx : parent_tx(ctx);
            EvalResult idx = eval(n.args[0], ctx);
            auto j = index_into(idx, tx.outputs.size());
            if (!j) return EvalResult::bot();
            return output_field(tx.outputs[*j - 1], n.field);
        }

        case Op::OutIdx:
            return EvalResult(Value(BigInt(ctx.rtx.inputs[ctx.input_index - 1].index)));

        case Op::InIdx:
            return EvalResult(Value(BigInt(ctx.input_index)));

        case Op::Verscr: {
            EvalResult idx = eval(n.args[0], ctx);
            auto j = index_into(idx, ctx.rtx.outputs.size());
            if (!j) return EvalResult::bot();
            // The quoted script is data: compared, never evaluated.
            return EvalResult(Value(script_eq(ctx.rtx.outputs[*j - 1].scr, n.args[1])));
        }

        case Op::Verrec: {
            EvalResult idx = eval(n.args[0], ctx);
            auto j = index_into(idx, ctx.rtx.outputs.size());
            if (!j) return EvalResult::bot();
            return EvalResult(Value(
                script_eq(ctx.rtx.outputs[*j - 1].scr, redeemed_output(ctx).scr)));
        }
    }
    throw CorruptContext("unreachable script op");
}

static std::string format_value(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Bool: return v.as_bool() ? "true" : "false";
        case Value::Kind::Int: return "int:" + v.as_int().str();
        case Value::Kind::Bytes: return "bytes:" + to_hex(v.as_bytes());
        case Value::Kind::Script: return "script:{" + render_script(v.as_script()) + "}";
    }
    return "?";
}

std::string format_result(const EvalResult& r) {
    if (r.is_bot()) return "bot";
    if (r.is_value()) return format_value(r.value());
    std::string out = "seq:[";
    for (size_t i = 0; i < r.seq().size(); ++i) {
        if (i) out += ",";
        out += format_value(r.seq()[i]);
    }
    return out + "]";
}

}  // namespace cov
