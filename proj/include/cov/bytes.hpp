#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cov {

using Bytes = std::vector<uint8_t>;

std::string to_hex(const uint8_t* data, size_t len);
std::string to_hex(const Bytes& b);

// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(const std::string& hex);

// Transaction identifier: digest of the canonical serialization (witnesses
// included). Fixed width so it can key maps and sort deterministically.
struct TxId {
    std::array<uint8_t, 32> bytes{};

    auto operator<=>(const TxId&) const = default;
    std::string hex() const { return to_hex(bytes.data(), bytes.size()); }
    static TxId from_hex_str(const std::string& hex);
};

// Reference to the `index`-th output (1-based) of the transaction `txid`.
struct OutputRef {
    TxId txid;
    uint32_t index = 0;

    auto operator<=>(const OutputRef&) const = default;
};

}  // namespace cov
