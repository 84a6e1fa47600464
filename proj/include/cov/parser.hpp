#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cov/crypto.hpp"
#include "cov/errors.hpp"
#include "cov/tx.hpp"

namespace cov {

// Names visible to the script/value grammar: bare identifiers resolve to
// public keys, `@Name` resolves to a previously defined script (shared by
// value, not re-parsed). Scenario files populate both; standalone parsing
// may pass a KeyTable only.
struct SymbolEnv {
    const KeyTable* keys = nullptr;
    std::vector<std::pair<std::string, Script>> scripts;

    const Script* find_script(const std::string& name) const;
};

// Concrete script syntax (grammar in docs/formats.md). Desugars
// true/false/and/or/not and the derived comparisons at parse time, runs the
// basic type check via the node factories, and throws SyntaxError /
// TypeError / ReferenceError with line:col positions.
Script parse_script(const std::string& text, const SymbolEnv& env = {});

// Single value in the script-literal syntax (ints, 0x hex, key names,
// true/false, <script>).
Value parse_value(const std::string& text, const SymbolEnv& env = {});

// Standalone transaction text (.txn): resolves sig(name) witness items by
// signing the witness-cleared payload with `keys`' scheme, so the parsed
// transaction is fully concrete.
Transaction parse_tx(const std::string& text, const KeyTable& keys);

// BTC decimal with mandatory point ("1.0", "0.00000001") -> satoshi.
// Throws SyntaxError on malformed input or more than 8 decimals.
Amount parse_btc(const std::string& text);

}  // namespace cov
