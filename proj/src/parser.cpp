#include "cov/parser.hpp"

#include <cctype>
#include <limits>
#include <set>

#include "cov/errors.hpp"
#include "text_detail.hpp"

namespace cov {

const Script* SymbolEnv::find_script(const std::string& name) const {
    for (const auto& [n, s] : scripts)
        if (n == name) return &s;
    return nullptr;
}

namespace detail {

std::vector<Token> lex(const std::string& text, int line_base) {
    std::vector<Token> out;
    int line = line_base, col = 1;
    size_t i = 0;
    auto bump = [&](char ch) {
        if (ch == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '#') {  // comment to end of line
            while (i < text.size() && text[i] != '\n') {
                bump(text[i]);
                ++i;
            }
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
            bump(ch);
            ++i;
            continue;
        }
        Token tok;
        tok.line = line;
        tok.col = col;
        tok.offset = i;
        if (ch == '0' && i + 1 < text.size() && text[i + 1] == 'x') {
            size_t j = i + 2;
            while (j < text.size() && std::isxdigit(static_cast<unsigned char>(text[j])))
                ++j;
            tok.t = Tok::Hex;
            tok.text = text.substr(i, j - i);
            if ((tok.text.size() - 2) % 2 != 0)
                throw SyntaxError("hex literal needs an even number of digits", line, col);
            while (i < j) {
                bump(text[i]);
                ++i;
            }
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            tok.t = Tok::Int;
            tok.text = text.substr(i, j - i);
            while (i < j) {
                bump(text[i]);
                ++i;
            }
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            tok.t = Tok::Word;
            tok.text = text.substr(i, j - i);
            while (i < j) {
                bump(text[i]);
                ++i;
            }
        } else {
            static const std::string kSingles = "()[]<>,;:.+-=@";
            tok.t = Tok::Sym;
            if ((ch == '>' || ch == '<' || ch == '!') && i + 1 < text.size() &&
                text[i + 1] == '=') {
                tok.text = text.substr(i, 2);
                bump(ch);
                bump('=');
                i += 2;
            } else if (kSingles.find(ch) != std::string::npos) {
                tok.text = std::string(1, ch);
                bump(ch);
                ++i;
            } else {
                throw SyntaxError(std::string("stray character '") + ch + "'", line, col);
            }
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.t = Tok::End;
    end.line = line;
    end.col = col;
    end.offset = text.size();
    out.push_back(end);
    return out;
}

bool Cursor::eat_sym(const char* s) {
    if (!is_sym(s)) return false;
    next();
    return true;
}

bool Cursor::eat_word(const char* w) {
    if (!is_word(w)) return false;
    next();
    return true;
}

void Cursor::expect_sym(const char* s) {
    if (!eat_sym(s)) fail(std::string("expected `") + s + "`");
}

void Cursor::expect_word(const char* w) {
    if (!eat_word(w)) fail(std::string("expected `") + w + "`");
}

void Cursor::fail(const std::string& msg) const {
    const Token& tok = peek();
    std::string got = tok.t == Tok::End ? "end of input" : "`" + tok.text + "`";
    throw SyntaxError(msg + ", got " + got, tok.line, tok.col);
}

BigInt dec_big(const std::string& digits) {
    BigInt v = 0;
    for (char ch : digits) v = v * 10 + (ch - '0');
    return v;
}

bool is_reserved(const std::string& w) {
    static const std::set<std::string> kReserved = {
        "and", "or",  "not",  "if",     "then",   "else",   "true",
        "false", "after", "afterRel", "rtx",  "wit",    "ctxo",   "rtxo",
        "arg", "scr", "val",  "size",   "hash",   "versig", "verscr",
        "verrec", "outidx", "inidx", "sig"};
    return kReserved.count(w) > 0;
}

namespace {

// Wraps factory TypeError / ReferenceError with the source position.
template <typename F>
auto at(const Token& tok, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const TypeError& e) {
        throw TypeError(std::to_string(tok.line) + ":" + std::to_string(tok.col) +
                        ": " + e.what());
    } catch (const ReferenceError& e) {
        throw ReferenceError(std::to_string(tok.line) + ":" +
                             std::to_string(tok.col) + ": " + e.what());
    }
}

struct ExprParser {
    Cursor& c;
    const SymbolEnv& env;

    Script expr() { return or_level(); }

    Script or_level() {
        Script l = and_level();
        while (c.is_word("or")) {
            Token tok = c.peek();
            c.next();
            Script r = and_level();
            l = at(tok, [&] { return sc::or_(l, r); });
        }
        return l;
    }

    Script and_level() {
        Script l = not_level();
        while (c.is_word("and")) {
            Token tok = c.peek();
            c.next();
            Script r = not_level();
            l = at(tok, [&] { return sc::and_(l, r); });
        }
        return l;
    }

    // Prefix forms live here: `not` is tight, after/afterRel/if take a
    // maximal body (everything to the right until a closer/keyword).
    Script not_level() {
        Token tok = c.peek();
        if (c.eat_word("not"))
            return at(tok, [&] { return sc::not_(not_level()); });
        if (c.is_word("after") || c.is_word("afterRel")) {
            bool rel = c.peek().text == "afterRel";
            c.next();
            Script t = add_level();
            c.expect_sym(":");
            Script body = expr();
            return at(tok, [&] {
                return rel ? sc::after_rel(t, body) : sc::after(t, body);
            });
        }
        if (c.eat_word("if")) {
            Script cond = expr();
            c.expect_word("then");
            Script then_e = expr();
            c.expect_word("else");
            Script else_e = expr();
            return at(tok, [&] { return sc::if_(cond, then_e, else_e); });
        }
        return cmp_level();
    }

    Script cmp_level() {
        Script l = add_level();
        while (true) {
            Token tok = c.peek();
            if (c.eat_sym("=")) {
                Script r = add_level();
                l = at(tok, [&] { return sc::eq(l, r); });
            } else if (c.eat_sym("!=")) {
                Script r = add_level();
                l = at(tok, [&] { return sc::ne(l, r); });
            } else if (c.eat_sym("<")) {
                Script r = add_level();
                l = at(tok, [&] { return sc::lt(l, r); });
            } else if (c.eat_sym("<=")) {
                Script r = add_level();
                l = at(tok, [&] { return sc::le(l, r); });
            } else if (c.eat_sym(">=")) {
                Script r = add_level();
                l = at(tok, [&] { return sc::ge(l, r); });
            } else {
                return l;
            }
        }
    }

    Script add_level() {
        Script l = postfix_level();
        while (true) {
            Token tok = c.peek();
            if (c.eat_sym("+")) {
                Script r = postfix_level();
                l = at(tok, [&] { return sc::add(l, r); });
            } else if (c.eat_sym("-")) {
                Script r = postfix_level();
                l = at(tok, [&] { return sc::sub(l, r); });
            } else {
                return l;
            }
        }
    }

    Script postfix_level() {
        Script e = primary();
        while (c.is_sym(".")) {
            Token tok = c.peek();
            c.next();
            Script idx;
            if (c.peek().t == Tok::Int) {
                idx = sc::intc(detail::dec_big(c.next().text));
            } else if (c.eat_sym("(")) {
                idx = expr();
                c.expect_sym(")");
            } else {
                c.fail("expected sequence index after `.`");
            }
            e = at(tok, [&] { return sc::seqat(e, idx); });
        }
        return e;
    }

    std::vector<Script> item_list(const char* stop1, const char* stop2) {
        std::vector<Script> items;
        while (!c.is_sym(stop1) && (!stop2 || !c.is_sym(stop2)) && !c.at_end())
            items.push_back(postfix_level());
        return items;
    }

    Script primary() {
        Token tok = c.peek();
        switch (tok.t) {
            case Tok::Int:
                c.next();
                return sc::intc(detail::dec_big(tok.text));
            case Tok::Hex:
                c.next();
                return sc::bytec(from_hex(tok.text.substr(2)));
            case Tok::Word:
                return word_primary();
            case Tok::Sym:
                break;
            case Tok::End:
                c.fail("expected expression");
        }
        if (c.eat_sym("-")) {
            if (c.peek().t != Tok::Int) c.fail("expected digits after unary `-`");
            return sc::intc(-detail::dec_big(c.next().text));
        }
        if (c.eat_sym("(")) {
            Script e = expr();
            c.expect_sym(")");
            return e;
        }
        if (c.eat_sym("<")) {
            Script q = expr();
            c.expect_sym(">");
            return sc::scriptc(q);
        }
        if (c.eat_sym("[")) {
            std::vector<Script> items = item_list("]", nullptr);
            c.expect_sym("]");
            return sc::vec(std::move(items));
        }
        if (c.eat_sym("@")) {
            if (c.peek().t != Tok::Word) c.fail("expected script name after `@`");
            Token name = c.next();
            const Script* s = env.find_script(name.text);
            if (!s)
                throw ReferenceError(std::to_string(name.line) + ":" +
                                     std::to_string(name.col) +
                                     ": unknown script @" + name.text);
            return *s;
        }
        c.fail("expected expression");
    }

    Script word_primary() {
        Token tok = c.peek();
        const std::string& w = tok.text;
        if (w == "true") { c.next(); return sc::true_(); }
        if (w == "false") { c.next(); return sc::false_(); }
        if (w == "outidx") { c.next(); return sc::outidx(); }
        if (w == "inidx") { c.next(); return sc::inidx(); }
        if (w == "rtx") {
            c.next();
            c.expect_sym(".");
            c.expect_word("wit");
            return sc::rtx_wit();
        }
        if (w == "ctxo" || w == "rtxo") {
            bool cur = w == "ctxo";
            c.next();
            c.expect_sym(".");
            TxField f;
            if (c.eat_word("arg")) f = TxField::Arg;
            else if (c.eat_word("scr")) f = TxField::Scr;
            else if (c.eat_word("val")) f = TxField::Val;
            else { c.fail("expected arg, scr or val"); }
            c.expect_sym("(");
            Script idx = expr();
            c.expect_sym(")");
            return at(tok, [&] { return cur ? sc::ctxo(f, idx) : sc::rtxo(f, idx); });
        }
        if (w == "size" || w == "hash") {
            bool sz = w == "size";
            c.next();
            c.expect_sym("(");
            Script e = expr();
            c.expect_sym(")");
            return at(tok, [&] { return sz ? sc::size(e) : sc::hash(e); });
        }
        if (w == "versig") {
            c.next();
            c.expect_sym("(");
            std::vector<Script> keys = item_list(";", ")");
            c.expect_sym(";");
            std::vector<Script> sigs = item_list(")", nullptr);
            c.expect_sym(")");
            return at(tok, [&] { return sc::versig(std::move(keys), std::move(sigs)); });
        }
        if (w == "verscr") {
            c.next();
            c.expect_sym("(");
            Script idx = expr();
            c.expect_sym(",");
            c.expect_sym("<");
            Script quoted = expr();
            c.expect_sym(">");
            c.expect_sym(")");
            return at(tok, [&] { return sc::verscr(idx, quoted); });
        }
        if (w == "verrec") {
            c.next();
            c.expect_sym("(");
            Script idx = expr();
            c.expect_sym(")");
            return at(tok, [&] { return sc::verrec(idx); });
        }
        if (is_reserved(w)) c.fail("unexpected keyword `" + w + "`");
        // Bare identifier: a participant's public key.
        c.next();
        if (!env.keys)
            throw ReferenceError(std::to_string(tok.line) + ":" +
                                 std::to_string(tok.col) + ": unknown identifier `" +
                                 w + "` (no key table)");
        return at(tok, [&] { return sc::bytec(env.keys->get(w).pk); });
    }
};

}  // namespace

Script parse_expr(Cursor& c, const SymbolEnv& env) {
    ExprParser p{c, env};
    return p.expr();
}

Value parse_value_item(Cursor& c, const SymbolEnv& env) {
    Token tok = c.peek();
    if (tok.t == Tok::Int) {
        c.next();
        return Value(detail::dec_big(tok.text));
    }
    if (c.is_sym("-")) {
        c.next();
        if (c.peek().t != Tok::Int) c.fail("expected digits after unary `-`");
        return Value(-detail::dec_big(c.next().text));
    }
    if (tok.t == Tok::Hex) {
        c.next();
        return Value(from_hex(tok.text.substr(2)));
    }
    if (c.eat_word("true")) return Value(true);
    if (c.eat_word("false")) return Value(false);
    if (c.eat_sym("<")) {
        Script q = parse_expr(c, env);
        c.expect_sym(">");
        return Value(q);
    }
    if (tok.t == Tok::Word && !is_reserved(tok.text)) {
        c.next();
        if (!env.keys)
            throw ReferenceError(std::to_string(tok.line) + ":" +
                                 std::to_string(tok.col) + ": unknown identifier `" +
                                 tok.text + "` (no key table)");
        return at(tok, [&] { return Value(env.keys->get(tok.text).pk); });
    }
    c.fail("expected a value");
}

Amount parse_btc_tokens(Cursor& c) {
    Token whole = c.peek();
    if (whole.t != Tok::Int) c.fail("expected BTC amount");
    c.next();
    Token dot = c.peek();
    if (!(dot.t == Tok::Sym && dot.text == "." &&
          dot.offset == whole.offset + whole.text.size()))
        c.fail("BTC amounts need a decimal point (e.g. 1.0)");
    c.next();
    Token frac = c.peek();
    if (frac.t != Tok::Int || frac.offset != dot.offset + 1)
        c.fail("expected fractional digits after `.`");
    c.next();
    if (frac.text.size() > 8)
        throw SyntaxError("BTC amounts have at most 8 decimals", frac.line, frac.col);
    BigInt sat = dec_big(whole.text) * kSatoshiPerBtc;
    std::string fdigits = frac.text;
    fdigits.append(8 - fdigits.size(), '0');
    sat += dec_big(fdigits);
    if (sat > std::numeric_limits<Amount>::max())
        throw SyntaxError("BTC amount out of range", whole.line, whole.col);
    return static_cast<Amount>(sat);
}

}  // namespace detail

Script parse_script(const std::string& text, const SymbolEnv& env) {
    detail::Cursor c(detail::lex(text));
    Script s = detail::parse_expr(c, env);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return s;
}

Value parse_value(const std::string& text, const SymbolEnv& env) {
    detail::Cursor c(detail::lex(text));
    Value v = detail::parse_value_item(c, env);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return v;
}

Amount parse_btc(const std::string& text) {
    detail::Cursor c(detail::lex(text));
    Amount a = detail::parse_btc_tokens(c);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return a;
}

}  // namespace cov
