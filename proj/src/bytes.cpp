#include "cov/bytes.hpp"

namespace cov {

static const char* kHexDigits = "0123456789abcdef";

std::string to_hex(const uint8_t* data, size_t len) {
    std::string out;
    out.reserve(len * 2);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(kHexDigits[data[i] >> 4]);
        out.push_back(kHexDigits[data[i] & 0x0f]);
    }
    return out;
}

std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0)
        throw std::invalid_argument("hex string has odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("non-hex character in hex string");
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

TxId TxId::from_hex_str(const std::string& hex) {
    Bytes raw = from_hex(hex);
    if (raw.size() != 32)
        throw std::invalid_argument("txid must be 32 bytes of hex");
    TxId id;
    std::copy(raw.begin(), raw.end(), id.bytes.begin());
    return id;
}

}  // namespace cov
