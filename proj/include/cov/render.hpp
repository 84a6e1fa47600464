#pragma once

#include "cov/parser.hpp"

namespace cov {

// Canonical text forms. parse(render(x)) == x for every well-formed x, and
// render(parse(t)) is the canonical formatting of t (single spaces, minimal
// parentheses, resugared true/false/and/or/not/>=/!=).
//
// With a SymbolEnv, byte constants equal to a bound public key render as the
// name, and subtrees script_eq-equal to a defined script render as @Name
// (first definition wins). Without one, bytes render as 0x hex.

std::string render_script(const Script& s, const SymbolEnv& env = {});
std::string render_value(const Value& v, const SymbolEnv& env = {});
std::string render_tx(const Transaction& tx, const SymbolEnv& env = {});

// "1.0", "0.00000001": minimal decimals, at least one fractional digit.
std::string render_btc(Amount sat);

}  // namespace cov
