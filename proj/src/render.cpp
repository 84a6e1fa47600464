#include "cov/render.hpp"

#include <string>

namespace cov {

namespace {

// Operator levels, matching the parser: or(1) < and(2) < not/prefix(3) <
// cmp(4) < add(5) < postfix(6) < atom(7). A node is parenthesized when its
// level is below the minimum its context requires. The surviving prefix
// forms (if/after/afterRel) additionally take parens in any operand
// position (min > 0) because their bodies extend maximally to the right.
constexpr int kOr = 1, kAnd = 2, kNot = 3, kCmp = 4, kAdd = 5, kPost = 6;

bool bool_ok(Kind k) { return k == Kind::Bool || k == Kind::Any; }

bool is_int_const(const Script& s, int v) {
    return s.op() == Op::Const && s.node().literal.is_int() &&
           s.node().literal.as_int() == v;
}

bool is_true_node(const Script& s) {
    return s.op() == Op::Eq && is_int_const(s.node().args[0], 1) &&
           is_int_const(s.node().args[1], 1);
}

bool is_false_node(const Script& s) {
    return s.op() == Op::Eq && is_int_const(s.node().args[0], 1) &&
           is_int_const(s.node().args[1], 0);
}

const std::string* key_name(const SymbolEnv& env, const Bytes& pk) {
    if (!env.keys) return nullptr;
    for (const auto& [name, kp] : env.keys->bound())
        if (kp.pk == pk) return &name;
    return nullptr;
}

struct Renderer {
    const SymbolEnv& env;
    std::string out;

    void put(const std::string& s) { out += s; }
    void put(char c) { out += c; }

    void value(const Value& v) {
        switch (v.kind()) {
            case Value::Kind::Int:
                put(v.as_int().str());
                break;
            case Value::Kind::Bytes:
                if (const std::string* n = key_name(env, v.as_bytes()))
                    put(*n);
                else
                    put("0x" + to_hex(v.as_bytes()));
                break;
            case Value::Kind::Bool:
                put(v.as_bool() ? "true" : "false");
                break;
            case Value::Kind::Script:
                put('<');
                script(v.as_script(), 0);
                put('>');
                break;
        }
    }

    void items(const std::vector<Script>& xs, size_t from, size_t to) {
        for (size_t i = from; i < to; ++i) {
            if (i > from) put(' ');
            script(xs[i], kPost);
        }
    }

    void infix(const Script& a, const char* op, const Script& b, int level,
               int min) {
        bool paren = level < min;
        if (paren) put('(');
        script(a, level);
        put(' ');
        put(op);
        put(' ');
        script(b, level + 1);
        if (paren) put(')');
    }

    // if / after / afterRel: parens whenever used as an operand.
    void prefix_open(int min) {
        if (min > 0) put('(');
    }
    void prefix_close(int min) {
        if (min > 0) put(')');
    }

    void field_access(const char* head, const ScriptNode& n) {
        put(head);
        put('.');
        switch (n.field) {
            case TxField::Arg: put("arg"); break;
            case TxField::Scr: put("scr"); break;
            case TxField::Val: put("val"); break;
        }
        put('(');
        script(n.args[0], 0);
        put(')');
    }

    void if_node(const Script& s, int min) {
        const ScriptNode& n = s.node();
        const Script &c = n.args[0], &t = n.args[1], &e = n.args[2];
        if (is_false_node(t) && is_true_node(e)) {
            if (c.op() == Op::Lt) {  // not (a < b)  ==  a >= b
                infix(c.node().args[0], ">=", c.node().args[1], kCmp, min);
                return;
            }
            if (c.op() == Op::Eq && !is_true_node(c) && !is_false_node(c)) {
                infix(c.node().args[0], "!=", c.node().args[1], kCmp, min);
                return;
            }
            bool paren = kNot < min;
            if (paren) put('(');
            put("not ");
            script(c, kNot);
            if (paren) put(')');
            return;
        }
        if (is_false_node(e) && bool_ok(t.kind())) {
            infix(c, "and", t, kAnd, min);
            return;
        }
        if (is_true_node(t) && bool_ok(e.kind())) {
            infix(c, "or", e, kOr, min);
            return;
        }
        prefix_open(min);
        put("if ");
        script(c, 0);
        put(" then ");
        script(t, 0);
        put(" else ");
        script(e, 0);
        prefix_close(min);
    }

    void script(const Script& s, int min) {
        for (const auto& [name, def] : env.scripts) {
            if (script_eq(def, s)) {
                put('@');
                put(name);
                return;
            }
        }
        const ScriptNode& n = s.node();
        switch (n.op) {
            case Op::Const:
                value(n.literal);
                return;
            case Op::Vec:
                put('[');
                items(n.args, 0, n.args.size());
                put(']');
                return;
            case Op::Add:
                infix(n.args[0], "+", n.args[1], kAdd, min);
                return;
            case Op::Sub:
                infix(n.args[0], "-", n.args[1], kAdd, min);
                return;
            case Op::Eq:
                if (is_true_node(s)) { put("true"); return; }
                if (is_false_node(s)) { put("false"); return; }
                infix(n.args[0], "=", n.args[1], kCmp, min);
                return;
            case Op::Lt:
                infix(n.args[0], "<", n.args[1], kCmp, min);
                return;
            case Op::SeqAt: {
                bool paren = kPost < min;
                if (paren) put('(');
                script(n.args[0], kPost);
                put('.');
                const Script& ix = n.args[1];
                if (ix.op() == Op::Const && ix.node().literal.is_int() &&
                    ix.node().literal.as_int() >= 0) {
                    put(ix.node().literal.as_int().str());
                } else {
                    put('(');
                    script(ix, 0);
                    put(')');
                }
                if (paren) put(')');
                return;
            }
            case Op::If:
                if_node(s, min);
                return;
            case Op::RtxWit:
                put("rtx.wit");
                return;
            case Op::Size:
                put("size(");
                script(n.args[0], 0);
                put(')');
                return;
            case Op::Hash:
                put("hash(");
                script(n.args[0], 0);
                put(')');
                return;
            case Op::Versig:
                put("versig(");
                items(n.args, 0, n.nkeys);
                put(';');
                if (n.nkeys < n.args.size()) {
                    put(' ');
                    items(n.args, n.nkeys, n.args.size());
                }
                put(')');
                return;
            case Op::After:
            case Op::AfterRel:
                prefix_open(min);
                put(n.op == Op::After ? "after " : "afterRel ");
                script(n.args[0], kAdd);
                put(" : ");
                script(n.args[1], 0);
                prefix_close(min);
                return;
            case Op::Ctxo:
                field_access("ctxo", n);
                return;
            case Op::Rtxo:
                field_access("rtxo", n);
                return;
            case Op::OutIdx:
                put("outidx");
                return;
            case Op::InIdx:
                put("inidx");
                return;
            case Op::Verscr:
                put("verscr(");
                script(n.args[0], 0);
                put(", <");
                script(n.args[1], 0);
                put(">)");
                return;
            case Op::Verrec:
                put("verrec(");
                script(n.args[0], 0);
                put(')');
                return;
        }
    }
};

}  // namespace

std::string render_script(const Script& s, const SymbolEnv& env) {
    Renderer r{env, {}};
    r.script(s, 0);
    return r.out;
}

std::string render_value(const Value& v, const SymbolEnv& env) {
    Renderer r{env, {}};
    r.value(v);
    return r.out;
}

std::string render_btc(Amount sat) {
    std::string whole = std::to_string(sat / kSatoshiPerBtc);
    std::string frac = std::to_string(sat % kSatoshiPerBtc);
    frac.insert(0, 8 - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    return whole + "." + frac;
}

std::string render_tx(const Transaction& tx, const SymbolEnv& env) {
    Renderer r{env, {}};
    r.put("tx\n");
    for (size_t i = 0; i < tx.inputs.size(); ++i) {
        r.put("  in 0x" + tx.inputs[i].txid.hex() + " " +
              std::to_string(tx.inputs[i].index));
        if (!tx.witnesses[i].empty()) {
            r.put(" wit");
            for (const Value& v : tx.witnesses[i]) {
                r.put(' ');
                r.value(v);
            }
        }
        if (tx.rel_locks[i] != 0)
            r.put(" rellock " + std::to_string(tx.rel_locks[i]));
        r.put('\n');
    }
    for (const Output& o : tx.outputs) {
        r.put("  out arg(");
        for (size_t i = 0; i < o.arg.size(); ++i) {
            if (i > 0) r.put(' ');
            r.value(o.arg[i]);
        }
        r.put(") scr(");
        r.script(o.scr, 0);
        r.put(") val " + render_btc(o.val) + "\n");
    }
    if (tx.abs_lock != 0) r.put("  abslock " + std::to_string(tx.abs_lock) + "\n");
    return r.out;
}

}  // namespace cov
