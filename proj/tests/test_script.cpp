#include "doctest.h"

#include "cov/errors.hpp"
#include "cov/script.hpp"
#include "gen.hpp"

using namespace cov;
using namespace testgen;

TEST_CASE("factories enforce static kinds") {
    CHECK_THROWS_AS(sc::add(sc::intc(1), sc::bytec({0x01})), TypeError);
    CHECK_THROWS_AS(sc::sub(sc::rtx_wit(), sc::intc(1)), TypeError);
    CHECK_THROWS_AS(sc::lt(sc::intc(1), sc::true_()), TypeError);
    CHECK_THROWS_AS(sc::size(sc::rtx_wit()), TypeError);
    CHECK_THROWS_AS(sc::if_(sc::intc(1), sc::intc(1), sc::intc(2)), TypeError);
    CHECK_THROWS_AS(sc::seqat(sc::intc(1), sc::intc(1)), TypeError);
    CHECK_THROWS_AS(sc::seqat(sc::rtx_wit(), sc::true_()), TypeError);
    CHECK_THROWS_AS(sc::after(sc::true_(), sc::true_()), TypeError);
    CHECK_THROWS_AS(sc::after_rel(sc::bytec({}), sc::true_()), TypeError);
    CHECK_THROWS_AS(sc::ctxo(TxField::Val, sc::rtx_wit()), TypeError);
    CHECK_THROWS_AS(sc::verscr(sc::true_(), sc::intc(1)), TypeError);
    CHECK_THROWS_AS(sc::verrec(sc::bytec({})), TypeError);
    CHECK_THROWS_AS(sc::and_(sc::true_(), sc::intc(1)), TypeError);
    CHECK_THROWS_AS(sc::or_(sc::intc(1), sc::true_()), TypeError);
    // Any defers to runtime, so it is accepted everywhere.
    Script any = bot_expr();
    CHECK(sc::add(any, sc::intc(1)).kind() == Kind::Int);
    CHECK(sc::size(any).kind() == Kind::Int);
    CHECK(sc::if_(any, sc::intc(1), sc::intc(2)).kind() == Kind::Int);
    CHECK(sc::seqat(any, any).kind() == Kind::Any);
}

TEST_CASE("static kinds of composite nodes") {
    CHECK(sc::intc(5).kind() == Kind::Int);
    CHECK(sc::bytec({0x01}).kind() == Kind::Bytes);
    CHECK(sc::boolc(true).kind() == Kind::Bool);
    CHECK(sc::scriptc(sc::intc(1)).kind() == Kind::Script);
    CHECK(sc::vec({}).kind() == Kind::Seq);
    CHECK(sc::rtx_wit().kind() == Kind::Seq);
    CHECK(sc::outidx().kind() == Kind::Int);
    CHECK(sc::inidx().kind() == Kind::Int);
    CHECK(sc::hash(sc::rtx_wit()).kind() == Kind::Bytes);
    CHECK(sc::eq(sc::intc(1), sc::rtx_wit()).kind() == Kind::Bool);
    CHECK(sc::versig({}, {}).kind() == Kind::Bool);
    CHECK(sc::ctxo(TxField::Arg, sc::intc(1)).kind() == Kind::Seq);
    CHECK(sc::ctxo(TxField::Scr, sc::intc(1)).kind() == Kind::Script);
    CHECK(sc::ctxo(TxField::Val, sc::intc(1)).kind() == Kind::Int);
    CHECK(sc::rtxo(TxField::Val, sc::intc(1)).kind() == Kind::Int);
    // if joins branch kinds; a mismatch falls back to Any.
    CHECK(sc::if_(sc::true_(), sc::intc(1), sc::intc(2)).kind() == Kind::Int);
    CHECK(sc::if_(sc::true_(), sc::intc(1), sc::bytec({})).kind() == Kind::Any);
    // Timelocks take the body's kind.
    CHECK(sc::after(sc::intc(1), sc::intc(2)).kind() == Kind::Int);
    CHECK(sc::after_rel(sc::intc(1), sc::true_()).kind() == Kind::Bool);
}

TEST_CASE("sugar desugars to the documented cores") {
    Script t = sc::true_();
    REQUIRE(t.op() == Op::Eq);
    CHECK(t.node().args[0].node().literal == Value(BigInt(1)));
    CHECK(t.node().args[1].node().literal == Value(BigInt(1)));
    Script f = sc::false_();
    CHECK(f.node().args[1].node().literal == Value(BigInt(0)));

    Script a = sc::lt(sc::intc(1), sc::intc(2));
    Script b = sc::eq(sc::intc(3), sc::intc(3));

    CHECK(script_eq(sc::and_(a, b), sc::if_(a, b, sc::false_())));
    CHECK(script_eq(sc::or_(a, b), sc::if_(a, sc::true_(), b)));
    CHECK(script_eq(sc::not_(a), sc::if_(a, sc::false_(), sc::true_())));
    CHECK(script_eq(sc::ge(sc::intc(1), sc::intc(2)),
                    sc::not_(sc::lt(sc::intc(1), sc::intc(2)))));
    CHECK(script_eq(sc::gt(sc::intc(1), sc::intc(2)),
                    sc::lt(sc::intc(2), sc::intc(1))));
    CHECK(script_eq(sc::le(sc::intc(1), sc::intc(2)),
                    sc::not_(sc::lt(sc::intc(2), sc::intc(1)))));
    CHECK(script_eq(sc::ne(sc::intc(1), sc::intc(2)),
                    sc::not_(sc::eq(sc::intc(1), sc::intc(2)))));

    CHECK(script_eq(sc::and_all({}), sc::true_()));
    CHECK(script_eq(sc::or_all({}), sc::false_()));
    CHECK(script_eq(sc::and_all({a}), a));
    CHECK(script_eq(sc::and_all({a, b, t}), sc::and_(sc::and_(a, b), t)));
    CHECK(script_eq(sc::or_all({a, b, t}), sc::or_(sc::or_(a, b), t)));
}

TEST_CASE("script_eq is syntactic") {
    Rng r(301);
    ExprGen g(r);
    for (int i = 0; i < 300; ++i) {
        Script s = g.gen(Kind::Any, 3);
        CHECK(script_eq(s, s));
    }
    // Semantically equal, syntactically different.
    CHECK(!script_eq(sc::intc(1), sc::bytec({0x01})));
    CHECK(!script_eq(sc::add(sc::intc(1), sc::intc(2)),
                     sc::add(sc::intc(2), sc::intc(1))));
    CHECK(!script_eq(sc::true_(), sc::boolc(true)));
    // Quoted scripts compare recursively.
    CHECK(script_eq(sc::scriptc(sc::intc(1)), sc::scriptc(sc::intc(1))));
    CHECK(!script_eq(sc::scriptc(sc::intc(1)), sc::scriptc(sc::intc(2))));
    // A single changed leaf breaks equality.
    Script base = sc::and_(sc::lt(sc::intc(1), sc::intc(2)), sc::true_());
    Script tweak = sc::and_(sc::lt(sc::intc(1), sc::intc(3)), sc::true_());
    CHECK(!script_eq(base, tweak));
    // versig key/sig split matters even with the same flat arg list.
    Script k1s1 = sc::versig({sc::bytec({0x01})}, {sc::bytec({0x02})});
    Script k2s0 = sc::versig({sc::bytec({0x01}), sc::bytec({0x02})}, {});
    CHECK(!script_eq(k1s1, k2s0));
}

TEST_CASE("Value equality is total and kind-separated") {
    CHECK(Value(BigInt(1)) == Value(BigInt(1)));
    CHECK(Value(BigInt(1)) != Value(BigInt(2)));
    CHECK(Value(BigInt(1)) != Value(Bytes{0x01}));
    CHECK(Value(BigInt(0)) != Value(false));
    CHECK(Value(BigInt(1)) != Value(true));
    CHECK(Value(Bytes{}) != Value(false));
    CHECK(Value(true) == Value(true));
    CHECK(Value(true) != Value(false));
    CHECK(Value(sc::intc(1)) == Value(sc::intc(1)));
    CHECK(Value(sc::intc(1)) != Value(sc::intc(2)));
    CHECK(Value(sc::intc(1)) != Value(BigInt(1)));

    ValueSeq a{Value(BigInt(1)), Value(true)};
    ValueSeq b{Value(BigInt(1)), Value(true)};
    ValueSeq c{Value(BigInt(1))};
    CHECK(seq_eq(a, b));
    CHECK(!seq_eq(a, c));
    CHECK(seq_eq({}, {}));
}
