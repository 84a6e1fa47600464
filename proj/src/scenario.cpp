#include "cov/scenario.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cov/errors.hpp"
#include "cov/serial.hpp"
#include "text_detail.hpp"

namespace cov {

namespace {

using detail::Cursor;
using detail::Tok;
using detail::Token;

// One Cursor per non-blank line; blank and comment-only lines vanish here.
std::vector<Cursor> split_lines(const std::string& text) {
    std::vector<Cursor> out;
    std::istringstream ss(text);
    std::string line;
    int no = 1;
    for (; std::getline(ss, line); ++no) {
        std::vector<Token> toks = detail::lex(line, no);
        if (toks.front().t != Tok::End) out.emplace_back(std::move(toks));
    }
    return out;
}

bool is_format_word(const std::string& w) {
    static const std::set<std::string> kWords = {
        "scenario", "scheme", "keys", "faucet", "script", "tx",
        "in",       "out",    "rellock", "abslock", "expect", "accept",
        "reject",   "input",  "advance"};
    return kWords.count(w) > 0;
}

std::string take_name(Cursor& c, const char* what) {
    const Token& t = c.peek();
    if (t.t != Tok::Word || detail::is_reserved(t.text) || is_format_word(t.text))
        c.fail(std::string("expected ") + what);
    std::string name = c.next().text;
    size_t end = t.offset + name.size();
    // Hyphenated names ("pure-bitcoin"): merge adjacent -word/-digit runs.
    while (c.peek().t == Tok::Sym && c.peek().text == "-" && c.peek().offset == end) {
        c.next();
        const Token& p = c.peek();
        if ((p.t != Tok::Word && p.t != Tok::Int) || p.offset != end + 1)
            c.fail(std::string("expected ") + what);
        name += "-" + c.next().text;
        end = p.offset + p.text.size();
    }
    return name;
}

int64_t take_nonneg(Cursor& c, const char* what) {
    const Token& t = c.peek();
    if (t.t != Tok::Int) c.fail(std::string("expected ") + what);
    BigInt v = detail::dec_big(t.text);
    if (v > std::numeric_limits<int64_t>::max())
        throw SyntaxError(std::string(what) + " out of range", t.line, t.col);
    c.next();
    return static_cast<int64_t>(v);
}

uint32_t take_out_index(Cursor& c) {
    const Token& t = c.peek();
    int64_t v = take_nonneg(c, "output index");
    if (v < 1 || v > std::numeric_limits<uint32_t>::max())
        throw SyntaxError("output indices are 1-based", t.line, t.col);
    return static_cast<uint32_t>(v);
}

void end_line(Cursor& c) {
    if (!c.at_end()) c.fail("unexpected trailing input");
}

// `wit item... [rellock k]` -- everything after `in <parent> <index>`.
void parse_in_tail(Cursor& c, const SymbolEnv& env, std::vector<WitnessItem>& wit,
                   Time& rel_lock) {
    if (c.eat_word("wit")) {
        while (!c.at_end() && !c.is_word("rellock")) {
            if (c.is_word("sig")) {
                c.next();
                c.expect_sym("(");
                Token nt = c.peek();
                std::string who = take_name(c, "participant name");
                c.expect_sym(")");
                // get(), not has(): a lenient table derives the key on
                // demand, the strict scenario table still refuses.
                if (env.keys) {
                    try {
                        env.keys->get(who);
                    } catch (const ReferenceError&) {
                        throw ReferenceError(std::to_string(nt.line) + ":" +
                                             std::to_string(nt.col) +
                                             ": unknown participant `" + who +
                                             "`");
                    }
                }
                wit.push_back({who, Value()});
            } else {
                wit.push_back({std::nullopt, detail::parse_value_item(c, env)});
            }
        }
        if (wit.empty()) c.fail("expected witness items after `wit`");
    }
    if (c.eat_word("rellock")) rel_lock = take_nonneg(c, "relative lock");
    end_line(c);
}

Output parse_out_rest(Cursor& c, const SymbolEnv& env) {
    Output o;
    c.expect_word("arg");
    c.expect_sym("(");
    while (!c.is_sym(")")) o.arg.push_back(detail::parse_value_item(c, env));
    c.expect_sym(")");
    c.expect_word("scr");
    c.expect_sym("(");
    o.scr = detail::parse_expr(c, env);
    c.expect_sym(")");
    c.expect_word("val");
    o.val = detail::parse_btc_tokens(c);
    end_line(c);
    return o;
}

Expect parse_expect_rest(Cursor& c) {
    Expect ex;
    if (c.eat_word("accept")) {
        end_line(c);
        return ex;
    }
    if (c.eat_word("reject")) {
        ex.accept = false;
        const Token& rt = c.peek();
        if (rt.t != Tok::Word) c.fail("expected a reject reason");
        std::optional<RejectReason> r = reject_reason_from_string(rt.text);
        if (!r)
            throw SyntaxError("unknown reject reason `" + rt.text + "`", rt.line,
                              rt.col);
        c.next();
        ex.reason = *r;
        if (c.eat_word("input")) {
            const Token& it = c.peek();
            int64_t i = take_nonneg(c, "input index");
            if (i < 1 || i > std::numeric_limits<uint32_t>::max())
                throw SyntaxError("input indices are 1-based", it.line, it.col);
            ex.input = static_cast<uint32_t>(i);
        }
        end_line(c);
        return ex;
    }
    c.fail("expected `accept` or `reject`");
}

std::string reject_token(RejectReason r, std::optional<uint32_t> input) {
    std::string s = std::string("reject:") + to_string(r);
    if (input) s += ":input" + std::to_string(*input);
    return s;
}

std::string expect_token(const Expect& ex) {
    if (ex.accept) return "accept";
    return reject_token(*ex.reason, ex.input);
}

}  // namespace

KeyTable Scenario::key_table() const {
    KeyTable kt(scheme_by_name(scheme), /*strict=*/true);
    for (const std::string& p : participants) kt.bind(p, p);
    return kt;
}

Scenario parse_scenario(const std::string& text) {
    std::vector<Cursor> lines = split_lines(text);
    if (lines.empty()) throw SyntaxError("empty scenario", 1, 1);

    Scenario sc;
    {
        Cursor& c = lines[0];
        c.expect_word("scenario");
        sc.name = take_name(c, "scenario name");
        end_line(c);
    }

    // Header, in canonical order: scheme? keys? faucet? script*.
    std::optional<KeyTable> kt;
    auto table = [&]() -> KeyTable& {
        if (!kt) {
            kt.emplace(scheme_by_name(sc.scheme), /*strict=*/true);
            for (const std::string& p : sc.participants) kt->bind(p, p);
        }
        return *kt;
    };
    SymbolEnv env;
    int rank = 0;  // scheme=1 keys=2 faucet=3 script=4
    auto order = [&](Cursor& c, int r, const char* what) {
        if (rank >= r)
            throw SyntaxError(std::string("`") + what +
                                  "` must appear once, before " +
                                  (rank >= 4 ? "script definitions" : "this point"),
                              c.peek().line, c.peek().col);
        rank = r;
    };

    size_t li = 1;
    for (; li < lines.size(); ++li) {
        Cursor& c = lines[li];
        if (c.is_word("scheme")) {
            order(c, 1, "scheme");
            c.next();
            const Token& st = c.peek();
            // Scheme names are not identifiers; `hash` is a script keyword
            // but a perfectly good scheme name.
            if (st.t != Tok::Word) c.fail("expected scheme name");
            sc.scheme = c.next().text;
            try {
                scheme_by_name(sc.scheme);
            } catch (const std::invalid_argument&) {
                throw SyntaxError("unknown scheme `" + sc.scheme + "`", st.line,
                                  st.col);
            }
            end_line(c);
        } else if (c.is_word("keys")) {
            order(c, 2, "keys");
            c.next();
            if (c.at_end()) c.fail("expected participant names");
            while (!c.at_end()) {
                const Token& nt = c.peek();
                std::string p = take_name(c, "participant name");
                if (std::count(sc.participants.begin(), sc.participants.end(), p))
                    throw SyntaxError("duplicate participant `" + p + "`",
                                      nt.line, nt.col);
                sc.participants.push_back(p);
            }
        } else if (c.is_word("faucet")) {
            order(c, 3, "faucet");
            c.next();
            end_line(c);
            sc.faucet = true;
        } else if (c.is_word("script")) {
            if (rank > 4)
                c.fail("script definitions must precede the first step");
            rank = 4;
            c.next();
            const Token& nt = c.peek();
            std::string name = take_name(c, "script name");
            if (env.find_script(name))
                throw SyntaxError("duplicate script `" + name + "`", nt.line,
                                  nt.col);
            c.expect_sym("=");
            env.keys = &table();
            Script s = detail::parse_expr(c, env);
            end_line(c);
            env.scripts.emplace_back(name, s);
            sc.scripts.emplace_back(name, s);
        } else {
            break;  // first step
        }
    }
    env.keys = &table();

    std::set<std::string> tx_names;
    while (li < lines.size()) {
        Cursor& c = lines[li];
        if (c.is_word("advance")) {
            const Token& at = c.peek();
            c.next();
            int64_t k = take_nonneg(c, "advance count");
            if (!sc.faucet)
                throw SyntaxError("advance requires the faucet directive",
                                  at.line, at.col);
            end_line(c);
            Step st;
            st.advance = k;
            sc.steps.push_back(std::move(st));
            ++li;
            continue;
        }
        if (!c.is_word("tx")) c.fail("expected `tx` or `advance`");
        const Token& txt = c.peek();
        c.next();
        const Token& nt = c.peek();
        TxTemplate t;
        t.name = take_name(c, "transaction name");
        if (tx_names.count(t.name))
            throw SyntaxError("duplicate transaction `" + t.name + "`", nt.line,
                              nt.col);
        end_line(c);
        ++li;

        bool seen_out = false, seen_abs = false;
        std::optional<Expect> ex;
        while (li < lines.size()) {
            Cursor& b = lines[li];
            if (b.is_word("in")) {
                if (seen_out || seen_abs)
                    b.fail("inputs must precede outputs and abslock");
                b.next();
                const Token& pt = b.peek();
                InputTemplate in;
                in.parent = take_name(b, "parent transaction name");
                if (!tx_names.count(in.parent))
                    throw ReferenceError(std::to_string(pt.line) + ":" +
                                         std::to_string(pt.col) +
                                         ": unknown parent transaction `" +
                                         in.parent + "`");
                in.out_index = take_out_index(b);
                parse_in_tail(b, env, in.wit, in.rel_lock);
                t.inputs.push_back(std::move(in));
                ++li;
            } else if (b.is_word("out")) {
                if (seen_abs) b.fail("outputs must precede abslock");
                seen_out = true;
                b.next();
                t.outputs.push_back(parse_out_rest(b, env));
                ++li;
            } else if (b.is_word("abslock")) {
                if (seen_abs) b.fail("duplicate abslock");
                seen_abs = true;
                b.next();
                t.abs_lock = take_nonneg(b, "absolute lock");
                end_line(b);
                ++li;
            } else if (b.is_word("expect")) {
                b.next();
                ex = parse_expect_rest(b);
                ++li;
                break;
            } else {
                b.fail("expected in/out/abslock/expect");
            }
        }
        if (!ex)
            throw SyntaxError("transaction `" + t.name + "` has no expect line",
                              txt.line, txt.col);
        if (t.outputs.empty())
            throw SyntaxError("transaction `" + t.name + "` needs an output",
                              txt.line, txt.col);
        tx_names.insert(t.name);
        Step st;
        st.tx = std::move(t);
        st.expect = *ex;
        sc.steps.push_back(std::move(st));
    }
    return sc;
}

std::string render_scenario(const Scenario& sc) {
    std::string out = "scenario " + sc.name + "\n";
    if (sc.scheme != "ed25519") out += "scheme " + sc.scheme + "\n";
    if (!sc.participants.empty()) {
        out += "keys";
        for (const std::string& p : sc.participants) out += " " + p;
        out += "\n";
    }
    if (sc.faucet) out += "faucet\n";

    KeyTable kt = sc.key_table();
    for (size_t i = 0; i < sc.scripts.size(); ++i) {
        // Earlier definitions only, so a body never renders as its own name.
        SymbolEnv env{&kt, {sc.scripts.begin(), sc.scripts.begin() + i}};
        out += "script " + sc.scripts[i].first + " = " +
               render_script(sc.scripts[i].second, env) + "\n";
    }
    SymbolEnv env{&kt, sc.scripts};

    for (const Step& st : sc.steps) {
        out += "\n";
        if (st.advance) {
            out += "advance " + std::to_string(*st.advance) + "\n";
            continue;
        }
        const TxTemplate& t = st.tx;
        out += "tx " + t.name + "\n";
        for (const InputTemplate& in : t.inputs) {
            out += "  in " + in.parent + " " + std::to_string(in.out_index);
            if (!in.wit.empty()) {
                out += " wit";
                for (const WitnessItem& w : in.wit)
                    out += " " + (w.sig_of ? "sig(" + *w.sig_of + ")"
                                           : render_value(w.literal, env));
            }
            if (in.rel_lock != 0)
                out += " rellock " + std::to_string(in.rel_lock);
            out += "\n";
        }
        for (const Output& o : t.outputs) {
            out += "  out arg(";
            for (size_t i = 0; i < o.arg.size(); ++i)
                out += (i ? " " : "") + render_value(o.arg[i], env);
            out += ") scr(" + render_script(o.scr, env) + ") val " +
                   render_btc(o.val) + "\n";
        }
        if (t.abs_lock != 0)
            out += "  abslock " + std::to_string(t.abs_lock) + "\n";
        out += "expect " +
               (st.expect.accept
                    ? std::string("accept")
                    : "reject " + std::string(to_string(*st.expect.reason)) +
                          (st.expect.input
                               ? " input " + std::to_string(*st.expect.input)
                               : "")) +
               "\n";
    }
    return out;
}

RunReport run_scenario(const Scenario& sc, bool force_faucet) {
    bool faucet = sc.faucet || force_faucet;
    KeyTable kt = sc.key_table();
    const SignatureScheme& scheme = kt.scheme();

    RunReport rep;
    rep.scenario = sc.name;
    Ledger led(scheme);

    for (const Step& st : sc.steps) {
        if (st.advance) {
            for (int64_t i = 0; i < *st.advance; ++i) {
                auto r = led.append(tick_tx(led.size()), {faucet});
                if (!std::holds_alternative<Ledger>(r))
                    throw std::runtime_error("advance needs faucet mode");
                led = std::move(std::get<Ledger>(r));
            }
            continue;
        }
        const TxTemplate& t = st.tx;
        Transaction tx;
        for (const InputTemplate& in : t.inputs) {
            tx.inputs.push_back({rep.names.at(in.parent), in.out_index});
            tx.rel_locks.push_back(in.rel_lock);
            tx.witnesses.emplace_back();
        }
        tx.outputs = t.outputs;
        tx.abs_lock = t.abs_lock;
        // Signatures cover the witness-cleared payload, so slots can be
        // filled one by one without invalidating earlier ones.
        for (size_t i = 0; i < t.inputs.size(); ++i)
            for (const WitnessItem& w : t.inputs[i].wit)
                tx.witnesses[i].push_back(
                    w.sig_of ? Value(sign_tx(scheme, kt.get(*w.sig_of).sk, tx))
                             : w.literal);
        rep.names[t.name] = tx_id(tx);

        StepReport sr;
        sr.name = t.name;
        sr.expected = expect_token(st.expect);
        auto res = led.append(tx, {faucet});
        if (std::holds_alternative<Ledger>(res)) {
            sr.got = "accept";
            sr.pass = st.expect.accept;
            led = std::move(std::get<Ledger>(res));
        } else {
            const Reject& rj = std::get<Reject>(res);
            sr.got = reject_token(rj.reason, rj.input);
            sr.pass = !st.expect.accept && st.expect.reason == rj.reason &&
                      (!st.expect.input || st.expect.input == rj.input);
        }
        rep.steps.push_back(std::move(sr));
    }
    rep.all_pass = std::all_of(rep.steps.begin(), rep.steps.end(),
                               [](const StepReport& s) { return s.pass; });
    rep.conservation_ok = led.utxo_total() + led.fees() == led.minted();
    rep.ledger = std::move(led);
    return rep;
}

std::string format_report(const RunReport& r) {
    std::string out;
    for (const StepReport& s : r.steps)
        out += "STEP " + s.name + " EXPECT " + s.expected + " GOT " + s.got +
               (s.pass ? " PASS" : " FAIL") + "\n";
    return out;
}

Transaction parse_tx(const std::string& text, const KeyTable& keys) {
    std::vector<Cursor> lines = split_lines(text);
    if (lines.empty()) throw SyntaxError("empty transaction", 1, 1);
    {
        Cursor& c = lines[0];
        c.expect_word("tx");
        end_line(c);
    }
    SymbolEnv env{&keys, {}};
    Transaction tx;
    std::vector<std::vector<WitnessItem>> wits;
    bool seen_out = false, seen_abs = false;
    for (size_t li = 1; li < lines.size(); ++li) {
        Cursor& c = lines[li];
        if (c.is_word("in")) {
            if (seen_out || seen_abs)
                c.fail("inputs must precede outputs and abslock");
            c.next();
            const Token& ht = c.peek();
            if (ht.t != Tok::Hex || ht.text.size() != 66)
                c.fail("expected a 32-byte parent txid (0x...)");
            TxId id = TxId::from_hex_str(ht.text.substr(2));
            c.next();
            uint32_t idx = take_out_index(c);
            std::vector<WitnessItem> wit;
            Time rel = 0;
            parse_in_tail(c, env, wit, rel);
            tx.inputs.push_back({id, idx});
            tx.rel_locks.push_back(rel);
            tx.witnesses.emplace_back();
            wits.push_back(std::move(wit));
        } else if (c.is_word("out")) {
            if (seen_abs) c.fail("outputs must precede abslock");
            seen_out = true;
            c.next();
            tx.outputs.push_back(parse_out_rest(c, env));
        } else if (c.is_word("abslock")) {
            if (seen_abs) c.fail("duplicate abslock");
            seen_abs = true;
            c.next();
            tx.abs_lock = take_nonneg(c, "absolute lock");
            end_line(c);
        } else {
            c.fail("expected in/out/abslock");
        }
    }
    for (size_t i = 0; i < wits.size(); ++i)
        for (const WitnessItem& w : wits[i])
            tx.witnesses[i].push_back(
                w.sig_of
                    ? Value(sign_tx(keys.scheme(), keys.get(*w.sig_of).sk, tx))
                    : w.literal);
    check_well_formed(tx);
    return tx;
}

}  // namespace cov
