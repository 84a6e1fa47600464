#pragma once

// Reusable randomized property drivers. Each runs a fixed number of cases
// and reports how many failed, so the unit suite and the acceptance runner
// can hold the same properties to zero failures at different scales.

#include "cov/parser.hpp"
#include "cov/render.hpp"
#include "gen.hpp"

namespace testgen {

struct PropResult {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void tally(bool ok, const std::function<std::string()>& describe) {
        ++cases;
        if (ok) return;
        ++failures;
        if (first_failure.empty()) first_failure = describe();
    }
};

// A ⊥-producing expression of static kind Any, so it can occupy any operand
// slot: every variant indexes a sequence out of range.
inline Script gen_bot(Rng& r) {
    switch (r.pick(4)) {
        case 0: return bot_expr();
        case 1:
            return sc::seqat(sc::vec({}),
                             sc::intc(static_cast<int64_t>(r.pick(4)) + 1));
        case 2:
            return sc::seqat(sc::ctxo(TxField::Arg, sc::intc(1)),
                             sc::intc(static_cast<int64_t>(r.pick(4)) + 5));
        default: return sc::seqat(sc::rtx_wit(), sc::intc(0));
    }
}

inline EvalFixture prop_fixture() {
    return EvalFixture(
        {out_of(sc::true_(), 100, {Value(BigInt(7))})},
        {out_of(sc::true_(), 10)},
        {Value(Bytes{0xaa})});
}

// Every strict operand position must turn ⊥ into ⊥; the three documented
// exceptions (untaken if branch, ⊥ if guard, quoted verscr argument) must
// not.
inline PropResult strictness_prop(int iters, uint64_t seed) {
    PropResult pr;
    Rng r(seed);
    ExprGen g(r);
    EvalFixture fx = prop_fixture();
    EvalContext ctx = fx.ctx();

    auto expect_bot = [&](const Script& s, const char* what) {
        pr.tally(eval(s, ctx).is_bot(), [&] {
            return std::string("expected bot from ") + what + ": " +
                   render_script(s);
        });
    };

    for (int i = 0; i < iters; ++i) {
        Script bot = gen_bot(r);
        Script fill_i = g.gen(Kind::Int, 1);
        Script fill_a = g.gen(Kind::Any, 1);
        switch (r.pick(25)) {
            case 0: expect_bot(sc::add(bot, fill_i), "add lhs"); break;
            case 1: expect_bot(sc::add(fill_i, bot), "add rhs"); break;
            case 2: expect_bot(sc::sub(bot, fill_i), "sub lhs"); break;
            case 3: expect_bot(sc::sub(fill_i, bot), "sub rhs"); break;
            case 4: expect_bot(sc::lt(bot, fill_i), "lt lhs"); break;
            case 5: expect_bot(sc::lt(fill_i, bot), "lt rhs"); break;
            case 6: expect_bot(sc::eq(bot, fill_a), "eq lhs"); break;
            case 7: expect_bot(sc::eq(fill_a, bot), "eq rhs"); break;
            case 8: expect_bot(sc::seqat(bot, sc::intc(1)), "seqat subject"); break;
            case 9:
                expect_bot(sc::seqat(sc::vec({fill_a}), bot), "seqat index");
                break;
            case 10: expect_bot(sc::size(bot), "size"); break;
            case 11: expect_bot(sc::hash(bot), "hash"); break;
            case 12:
                expect_bot(sc::vec({g.gen(Kind::Any, 1), bot}), "vec element");
                break;
            case 13:
                expect_bot(sc::if_(sc::true_(), bot, fill_a), "taken then");
                break;
            case 14:
                expect_bot(sc::if_(sc::false_(), fill_a, bot), "taken else");
                break;
            case 15: expect_bot(sc::versig({bot}, {}), "versig key"); break;
            case 16:
                expect_bot(sc::versig({sc::bytec({0x01})}, {bot}), "versig sig");
                break;
            case 17:
                expect_bot(sc::after(bot, sc::true_()), "after time");
                break;
            case 18:
                expect_bot(sc::after(sc::intc(0), bot), "after body");
                break;
            case 19:
                expect_bot(sc::after_rel(bot, sc::true_()), "afterRel time");
                break;
            case 20:
                expect_bot(sc::after_rel(sc::intc(0), bot), "afterRel body");
                break;
            case 21:
                expect_bot(sc::ctxo(TxField::Arg, bot), "ctxo index");
                break;
            case 22:
                expect_bot(sc::rtxo(TxField::Val, bot), "rtxo index");
                break;
            case 23:
                expect_bot(sc::verscr(bot, sc::true_()), "verscr index");
                break;
            case 24: expect_bot(sc::verrec(bot), "verrec index"); break;
        }

        // Exceptions to strictness, one probe per iteration.
        switch (r.pick(4)) {
            case 0: {
                // ⊥ guard behaves exactly like a false one.
                Script a = g.gen(Kind::Any, 2);
                Script b = g.gen(Kind::Any, 2);
                EvalResult got = eval(sc::if_(gen_bot(r), a, b), ctx);
                EvalResult want = eval(b, ctx);
                pr.tally(got == want, [&] {
                    return "bot guard did not select else: " +
                           render_script(b);
                });
                break;
            }
            case 1: {
                // The untaken branch is never evaluated, so a ⊥ there is
                // invisible.
                int64_t k = r.small_int();
                EvalResult then_r =
                    eval(sc::if_(sc::true_(), sc::intc(k), gen_bot(r)), ctx);
                EvalResult else_r =
                    eval(sc::if_(sc::false_(), gen_bot(r), sc::intc(k)), ctx);
                bool ok = then_r == EvalResult(Value(BigInt(k))) &&
                          else_r == EvalResult(Value(BigInt(k)));
                pr.tally(ok, [&] {
                    return std::string("untaken bot branch leaked");
                });
                break;
            }
            case 2: {
                // A defined non-Bool guard is an error, not a fallthrough.
                Script guard = sc::seqat(sc::vec({sc::intc(9)}), sc::intc(1));
                EvalResult got = eval(
                    sc::if_(guard, sc::intc(1), sc::intc(2)), ctx);
                pr.tally(got.is_bot(),
                         [&] { return std::string("non-Bool guard not bot"); });
                break;
            }
            case 3: {
                // verscr never evaluates its quoted script.
                EvalResult got =
                    eval(sc::verscr(sc::intc(1), gen_bot(r)), ctx);
                pr.tally(got.is_value() && got.value().is_bool(), [&] {
                    return std::string("verscr evaluated its quoted script");
                });
                break;
            }
        }
    }
    return pr;
}

// verscr is script_eq on the redeeming output's script, verrec the same
// against the redeemed script; both regardless of what the scripts would
// evaluate to.
inline PropResult verscr_prop(int iters, uint64_t seed) {
    PropResult pr;
    Rng r(seed);
    ExprGen g(r);
    for (int i = 0; i < iters; ++i) {
        Script q = g.gen(Kind::Any, 2);
        Script out_scr = r.coin() ? q : g.gen(Kind::Any, 2);
        Script parent_scr = r.coin() ? out_scr : g.gen(Kind::Any, 2);
        EvalFixture fx({out_of(parent_scr, 100)}, {out_of(out_scr, 10)});
        EvalContext ctx = fx.ctx();

        EvalResult vs = eval(sc::verscr(sc::intc(1), q), ctx);
        pr.tally(vs == EvalResult(Value(script_eq(out_scr, q))), [&] {
            return "verscr mismatch on " + render_script(q);
        });

        EvalResult vr = eval(sc::verrec(sc::intc(1)), ctx);
        pr.tally(vr == EvalResult(Value(script_eq(out_scr, parent_scr))), [&] {
            return "verrec mismatch on " + render_script(out_scr);
        });
    }
    return pr;
}

// parse is a left inverse of render, and render(parse(render(s))) is stable.
inline PropResult roundtrip_prop(int iters, uint64_t seed) {
    PropResult pr;
    Rng r(seed);
    ExprGen g(r);
    for (int i = 0; i < iters; ++i) {
        Script s = g.gen(Kind::Any, 3);
        std::string text = render_script(s);
        bool ok = false;
        std::string note;
        try {
            Script back = parse_script(text);
            ok = script_eq(back, s) && render_script(back) == text;
            if (!ok) note = "reparse changed the tree";
        } catch (const std::exception& e) {
            note = e.what();
        }
        pr.tally(ok, [&] { return text + " | " + note; });
    }
    return pr;
}

// ver_multisig against the exhaustive order-preserving oracle.
inline PropResult multisig_prop(const SignatureScheme& s, int iters,
                                uint64_t seed) {
    PropResult pr;
    Rng r(seed);
    Transaction tx;
    tx.outputs.push_back(out_of(sc::true_(), 1));

    std::vector<KeyPair> pool;
    for (const char* n : {"A", "B", "C", "D"}) pool.push_back(s.derive(n));
    std::vector<Bytes> pool_sigs;
    for (const KeyPair& kp : pool) pool_sigs.push_back(sign_tx(s, kp.sk, tx));

    for (int i = 0; i < iters; ++i) {
        std::vector<Bytes> keys;
        size_t n = r.pick(5);
        for (size_t k = 0; k < n; ++k) {
            if (r.pick(8) == 0)
                keys.push_back(r.bytes(8));  // junk key
            else
                keys.push_back(pool[r.pick(pool.size())].pk);
        }
        std::vector<Bytes> sigs;
        size_t m = r.pick(6);
        for (size_t k = 0; k < m; ++k) {
            Bytes sig = pool_sigs[r.pick(pool_sigs.size())];
            if (r.pick(6) == 0 && !sig.empty()) sig[r.pick(sig.size())] ^= 1;
            if (r.pick(10) == 0) sig = r.bytes(16);
            sigs.push_back(sig);
        }
        bool got = ver_multisig(s, keys, sigs, tx, 1);
        bool want = multisig_oracle(s, keys, sigs, tx);
        pr.tally(got == want, [&] {
            return "ver_multisig disagreed with the oracle (" +
                   std::to_string(keys.size()) + " keys, " +
                   std::to_string(sigs.size()) + " sigs)";
        });
    }
    return pr;
}

}  // namespace testgen
