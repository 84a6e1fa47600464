#include "cov/serial.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>

#include "cov/crypto.hpp"
#include "cov/errors.hpp"

namespace cov {

// ---- primitive writers ----------------------------------------------------

void write_uleb(Bytes& out, uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<uint8_t>(v) | 0x80);
        v >>= 7;
    }
    out.push_back(static_cast<uint8_t>(v));
}

Bytes encode_int(const BigInt& v) {
    if (v == 0) return {};
    Bytes out;
    if (v > 0) {
        boost::multiprecision::export_bits(v, std::back_inserter(out), 8, true);
        if (out[0] & 0x80) out.insert(out.begin(), 0x00);
        return out;
    }
    BigInt mag = -v;
    Bytes magb;
    boost::multiprecision::export_bits(mag, std::back_inserter(magb), 8, true);
    size_t len = magb.size();
    // -(2^(8len-1)) is the most negative value len bytes can hold.
    if (mag > (BigInt(1) << (8 * len - 1))) ++len;
    BigInt tc = (BigInt(1) << (8 * len)) + v;  // in [2^(8len-1), 2^(8len))
    out.clear();
    boost::multiprecision::export_bits(tc, std::back_inserter(out), 8, true);
    return out;  // top bit is set, so exactly len bytes came out
}

BigInt decode_int(const Bytes& p) {
    if (p.empty()) return 0;
    if (p[0] == 0x00 && (p.size() == 1 || !(p[1] & 0x80)))
        throw SerError("non-minimal integer encoding (redundant 0x00)");
    if (p[0] == 0xff && p.size() > 1 && (p[1] & 0x80))
        throw SerError("non-minimal integer encoding (redundant 0xff)");
    BigInt v;
    boost::multiprecision::import_bits(v, p.begin(), p.end(), 8, true);
    if (p[0] & 0x80) v -= BigInt(1) << (8 * p.size());
    return v;
}

static void write_int_field(Bytes& out, const BigInt& v) {
    Bytes payload = encode_int(v);
    write_uleb(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
}

void write_int(Bytes& out, const BigInt& v) { write_int_field(out, v); }

static void write_bytes_field(Bytes& out, const Bytes& b) {
    write_uleb(out, b.size());
    out.insert(out.end(), b.begin(), b.end());
}

// ---- primitive reader -----------------------------------------------------

namespace {

struct Reader {
    const Bytes& in;
    size_t pos = 0;

    uint8_t u8() {
        if (pos >= in.size()) throw SerError("truncated stream");
        return in[pos++];
    }

    uint64_t uleb() {
        uint64_t v = 0;
        int shift = 0;
        size_t n = 0;
        while (true) {
            uint8_t b = u8();
            ++n;
            if (shift == 63 && (b & 0x7e))
                throw SerError("ULEB128 overflows 64 bits");
            v |= uint64_t(b & 0x7f) << shift;
            if (!(b & 0x80)) {
                if (b == 0 && n > 1) throw SerError("non-minimal ULEB128");
                return v;
            }
            shift += 7;
            if (shift > 63) throw SerError("ULEB128 overflows 64 bits");
        }
    }

    Bytes raw(size_t n) {
        if (in.size() - pos < n) throw SerError("truncated stream");
        Bytes out(in.begin() + pos, in.begin() + pos + n);
        pos += n;
        return out;
    }

    Bytes bytes_field() { return raw(uleb()); }

    BigInt int_field() { return decode_int(bytes_field()); }

    int64_t i64_field(const char* what) {
        BigInt v = int_field();
        if (v < std::numeric_limits<int64_t>::min() ||
            v > std::numeric_limits<int64_t>::max())
            throw SerError(std::string(what) + " out of int64 range");
        return static_cast<int64_t>(v);
    }

    void done() {
        if (pos != in.size()) throw SerError("trailing bytes after value");
    }
};

}  // namespace

// ---- values ---------------------------------------------------------------

// Tags are normative (docs/serialization.md).
enum : uint8_t { kTagInt = 0x01, kTagBytes = 0x02, kTagBool = 0x03, kTagScript = 0x04 };

static void write_script(Bytes& out, const Script& s);
static Script read_script(Reader& r);

static void write_value(Bytes& out, const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Int:
            out.push_back(kTagInt);
            write_int_field(out, v.as_int());
            return;
        case Value::Kind::Bytes:
            out.push_back(kTagBytes);
            write_bytes_field(out, v.as_bytes());
            return;
        case Value::Kind::Bool:
            out.push_back(kTagBool);
            out.push_back(v.as_bool() ? 1 : 0);
            return;
        case Value::Kind::Script:
            out.push_back(kTagScript);
            write_script(out, v.as_script());
            return;
    }
    throw SerError("unreachable value kind");
}

static Value read_value(Reader& r) {
    uint8_t tag = r.u8();
    switch (tag) {
        case kTagInt: return Value(r.int_field());
        case kTagBytes: return Value(r.bytes_field());
        case kTagBool: {
            uint8_t b = r.u8();
            if (b > 1) throw SerError("bool byte must be 0 or 1");
            return Value(b == 1);
        }
        case kTagScript: return Value(read_script(r));
        default: throw SerError("unknown value tag");
    }
}

static void write_value_seq(Bytes& out, const ValueSeq& s) {
    write_uleb(out, s.size());
    for (const Value& v : s) write_value(out, v);
}

static ValueSeq read_value_seq(Reader& r) {
    uint64_t n = r.uleb();
    ValueSeq s;
    s.reserve(n);
    for (uint64_t i = 0; i < n; ++i) s.push_back(read_value(r));
    return s;
}

// ---- scripts --------------------------------------------------------------

static_assert(static_cast<uint8_t>(Op::Const) == 0 &&
                  static_cast<uint8_t>(Op::Verrec) == 19,
              "script tag table is Op value + 1; keep Op order stable");

static void write_script(Bytes& out, const Script& s) {
    if (!s.valid()) throw SerError("cannot serialize null script");
    const ScriptNode& n = s.node();
    out.push_back(static_cast<uint8_t>(n.op) + 1);
    switch (n.op) {
        case Op::Const:
            write_value(out, n.literal);
            return;
        case Op::Vec:
            write_uleb(out, n.args.size());
            for (const Script& a : n.args) write_script(out, a);
            return;
        case Op::Versig: {
            write_uleb(out, n.nkeys);
            for (uint32_t i = 0; i < n.nkeys; ++i) write_script(out, n.args[i]);
            write_uleb(out, n.args.size() - n.nkeys);
            for (size_t i = n.nkeys; i < n.args.size(); ++i) write_script(out, n.args[i]);
            return;
        }
        case Op::Ctxo:
        case Op::Rtxo:
            out.push_back(static_cast<uint8_t>(n.field));
            write_script(out, n.args[0]);
            return;
        default:
            for (const Script& a : n.args) write_script(out, a);
            return;
    }
}

static TxField read_field(Reader& r) {
    uint8_t f = r.u8();
    if (f > 2) throw SerError("unknown tx field byte");
    return static_cast<TxField>(f);
}

static Script read_script(Reader& r) {
    uint8_t tag = r.u8();
    if (tag < 1 || tag > 20) throw SerError("unknown script tag");
    Op op = static_cast<Op>(tag - 1);
    try {
        switch (op) {
            case Op::Const: {
                Value v = read_value(r);
                switch (v.kind()) {
                    case Value::Kind::Int: return sc::intc(v.as_int());
                    case Value::Kind::Bytes: return sc::bytec(v.as_bytes());
                    case Value::Kind::Bool: return sc::boolc(v.as_bool());
                    case Value::Kind::Script: return sc::scriptc(v.as_script());
                }
                throw SerError("unreachable const kind");
            }
            case Op::Vec: {
                uint64_t n = r.uleb();
                std::vector<Script> elems;
                elems.reserve(n);
                for (uint64_t i = 0; i < n; ++i) elems.push_back(read_script(r));
                return sc::vec(std::move(elems));
            }
            case Op::Add: { Script a = read_script(r); Script b = read_script(r); return sc::add(a, b); }
            case Op::Sub: { Script a = read_script(r); Script b = read_script(r); return sc::sub(a, b); }
            case Op::Eq: { Script a = read_script(r); Script b = read_script(r); return sc::eq(a, b); }
            case Op::Lt: { Script a = read_script(r); Script b = read_script(r); return sc::lt(a, b); }
            case Op::SeqAt: { Script a = read_script(r); Script b = read_script(r); return sc::seqat(a, b); }
            case Op::If: {
                Script c = read_script(r);
                Script t = read_script(r);
                Script e = read_script(r);
                return sc::if_(c, t, e);
            }
            case Op::RtxWit: return sc::rtx_wit();
            case Op::Size: return sc::size(read_script(r));
            case Op::Hash: return sc::hash(read_script(r));
            case Op::Versig: {
                uint64_t nk = r.uleb();
                std::vector<Script> keys;
                keys.reserve(nk);
                for (uint64_t i = 0; i < nk; ++i) keys.push_back(read_script(r));
                uint64_t ns = r.uleb();
                std::vector<Script> sigs;
                sigs.reserve(ns);
                for (uint64_t i = 0; i < ns; ++i) sigs.push_back(read_script(r));
                return sc::versig(std::move(keys), std::move(sigs));
            }
            case Op::After: { Script t = read_script(r); Script b = read_script(r); return sc::after(t, b); }
            case Op::AfterRel: { Script t = read_script(r); Script b = read_script(r); return sc::after_rel(t, b); }
            case Op::Ctxo: { TxField f = read_field(r); return sc::ctxo(f, read_script(r)); }
            case Op::Rtxo: { TxField f = read_field(r); return sc::rtxo(f, read_script(r)); }
            case Op::OutIdx: return sc::outidx();
            case Op::InIdx: return sc::inidx();
            case Op::Verscr: { Script i = read_script(r); Script q = read_script(r); return sc::verscr(i, q); }
            case Op::Verrec: return sc::verrec(read_script(r));
        }
    } catch (const TypeError& e) {
        throw SerError(std::string("ill-typed script in stream: ") + e.what());
    }
    throw SerError("unreachable script tag");
}

// ---- transactions ---------------------------------------------------------

static void write_tx(Bytes& out, const Transaction& tx, bool clear_witnesses) {
    write_uleb(out, tx.inputs.size());
    for (const OutputRef& ref : tx.inputs) {
        out.insert(out.end(), ref.txid.bytes.begin(), ref.txid.bytes.end());
        write_uleb(out, ref.index);
    }
    write_uleb(out, tx.witnesses.size());
    for (const ValueSeq& w : tx.witnesses) {
        if (clear_witnesses)
            write_uleb(out, 0);
        else
            write_value_seq(out, w);
    }
    write_uleb(out, tx.outputs.size());
    for (const Output& o : tx.outputs) {
        write_value_seq(out, o.arg);
        write_script(out, o.scr);
        write_int_field(out, BigInt(o.val));
    }
    write_int_field(out, BigInt(tx.abs_lock));
    write_uleb(out, tx.rel_locks.size());
    for (Time t : tx.rel_locks) write_int_field(out, BigInt(t));
}

Bytes encode_tx(const Transaction& tx) {
    Bytes out;
    write_tx(out, tx, /*clear_witnesses=*/false);
    return out;
}

Bytes signing_payload(const Transaction& tx) {
    Bytes out;
    write_tx(out, tx, /*clear_witnesses=*/true);
    return out;
}

Bytes signing_payload_digest(const Transaction& tx) {
    return sha256(signing_payload(tx));
}

Transaction decode_tx(const Bytes& in) {
    Reader r{in};
    Transaction tx;
    uint64_t nin = r.uleb();
    for (uint64_t i = 0; i < nin; ++i) {
        OutputRef ref;
        Bytes id = r.raw(32);
        std::copy(id.begin(), id.end(), ref.txid.bytes.begin());
        uint64_t idx = r.uleb();
        if (idx == 0 || idx > std::numeric_limits<uint32_t>::max())
            throw SerError("input index out of range");
        ref.index = static_cast<uint32_t>(idx);
        tx.inputs.push_back(ref);
    }
    uint64_t nwit = r.uleb();
    for (uint64_t i = 0; i < nwit; ++i) tx.witnesses.push_back(read_value_seq(r));
    uint64_t nout = r.uleb();
    for (uint64_t i = 0; i < nout; ++i) {
        Output o;
        o.arg = read_value_seq(r);
        o.scr = read_script(r);
        o.val = r.i64_field("output value");
        tx.outputs.push_back(std::move(o));
    }
    tx.abs_lock = r.i64_field("abs_lock");
    uint64_t nrel = r.uleb();
    for (uint64_t i = 0; i < nrel; ++i) tx.rel_locks.push_back(r.i64_field("rel_lock"));
    r.done();
    try {
        check_well_formed(tx);
    } catch (const std::invalid_argument& e) {
        throw SerError(std::string("malformed transaction in stream: ") + e.what());
    }
    return tx;
}

// ---- public wrappers ------------------------------------------------------

Bytes encode_value(const Value& v) {
    Bytes out;
    write_value(out, v);
    return out;
}

Bytes encode_value_seq(const ValueSeq& s) {
    Bytes out;
    write_value_seq(out, s);
    return out;
}

Bytes encode_script(const Script& s) {
    Bytes out;
    write_script(out, s);
    return out;
}

Value decode_value(const Bytes& in) {
    Reader r{in};
    Value v = read_value(r);
    r.done();
    return v;
}

ValueSeq decode_value_seq(const Bytes& in) {
    Reader r{in};
    ValueSeq s = read_value_seq(r);
    r.done();
    return s;
}

Script decode_script(const Bytes& in) {
    Reader r{in};
    Script s = read_script(r);
    r.done();
    return s;
}

TxId tx_id(const Transaction& tx) {
    Bytes digest = sha256(encode_tx(tx));
    TxId id;
    std::copy(digest.begin(), digest.end(), id.bytes.begin());
    return id;
}

Bytes encode_datum_for_hash(const Value& v) {
    Bytes out{0x01};
    write_value(out, v);
    return out;
}

Bytes encode_datum_for_hash(const ValueSeq& s) {
    Bytes out{0x02};
    write_value_seq(out, s);
    return out;
}

}  // namespace cov
