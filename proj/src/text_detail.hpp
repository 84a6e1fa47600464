#pragma once

// Internal lexer/cursor shared by the script parser (parser.cpp) and the
// line-oriented transaction/scenario formats (scenario.cpp).

#include <string>
#include <vector>

#include "cov/parser.hpp"

namespace cov::detail {

enum class Tok : uint8_t {
    Int,    // decimal digits
    Hex,    // 0x...
    Word,   // identifier or keyword; parsers match on text
    Sym,    // single symbol or >= <= != as one token
    End,
};

struct Token {
    Tok t = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
    size_t offset = 0;  // byte offset; adjacency checks for "1.5"
};

// Throws SyntaxError on stray characters. '#' comments run to end of line;
// newlines are whitespace (line structure is handled by splitting upstream).
std::vector<Token> lex(const std::string& text, int line_base = 1);

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    bool at_end() const { return peek().t == Tok::End; }

    bool is_sym(const char* s) const { return peek().t == Tok::Sym && peek().text == s; }
    bool is_word(const char* w) const { return peek().t == Tok::Word && peek().text == w; }
    bool eat_sym(const char* s);
    bool eat_word(const char* w);
    void expect_sym(const char* s);
    void expect_word(const char* w);
    [[noreturn]] void fail(const std::string& msg) const;

private:
    std::vector<Token> toks_;
    size_t i_ = 0;
};

bool is_reserved(const std::string& word);

// Decimal digit string -> BigInt. The cpp_int string constructor would
// auto-detect octal on a leading zero ("09" throws); token text is always
// plain base 10.
BigInt dec_big(const std::string& digits);

// Full script expression; stops at tokens that cannot continue one.
Script parse_expr(Cursor& c, const SymbolEnv& env);

// One value literal (arg fields, witness items).
Value parse_value_item(Cursor& c, const SymbolEnv& env);

// BTC amount: Int '.' Int, adjacent, <= 8 fractional digits.
Amount parse_btc_tokens(Cursor& c);

}  // namespace cov::detail
