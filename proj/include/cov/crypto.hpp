#pragma once

#include <map>
#include <memory>
#include <string>

#include "cov/tx.hpp"

namespace cov {

// Raw SHA-256 over arbitrary bytes.
Bytes sha256(const Bytes& data);
Bytes sha256(const uint8_t* data, size_t len);

struct KeyPair {
    Bytes pk;
    Bytes sk;
};

// Pluggable signature scheme. Implementations must be deterministic: the
// same (sk, message) always yields the same signature, and key derivation
// from a seed string is reproducible across runs.
class SignatureScheme {
public:
    virtual ~SignatureScheme() = default;
    virtual std::string name() const = 0;
    virtual KeyPair derive(const std::string& seed) const = 0;
    virtual Bytes sign(const Bytes& sk, const Bytes& msg) const = 0;
    // Total: malformed keys or signatures verify as false, never throw.
    virtual bool verify(const Bytes& pk, const Bytes& sig, const Bytes& msg) const = 0;
};

// Default scheme: Ed25519 (deterministic by construction). 32-byte keys.
const SignatureScheme& ed25519_scheme();

// Transparent test scheme for readable fixtures: pk = sk = H(seed)[0:8],
// sig = pk || H(pk || msg)[0:8]. Zero security on purpose.
const SignatureScheme& hash_scheme();

// Lookup by name ("ed25519" | "hash"); throws std::invalid_argument.
const SignatureScheme& scheme_by_name(const std::string& name);

// Sign the transaction's witness-cleared canonical payload digest. Changing
// any witness slot does not change the signature.
Bytes sign_tx(const SignatureScheme& s, const Bytes& sk, const Transaction& tx);

// m-of-n check in the Bitcoin style: every signature must verify over the
// signing payload of `tx`, and the signature list must match an
// order-preserving subsequence of the key list. m = 0 is vacuously true;
// m > n or any ill-shaped element is false. `input_index` only locates the
// witness in the wider semantics; the signed payload does not include it.
bool ver_multisig(const SignatureScheme& s, const std::vector<Bytes>& keys,
                  const std::vector<Bytes>& sigs, const Transaction& tx,
                  uint32_t input_index);

// Keys file: `name = "seed"` lines, '#' comments. A lenient table derives
// unknown names on demand with seed == name (CLI convenience); a strict one
// (scenarios, where participants are declared) throws ReferenceError.
class KeyTable {
public:
    explicit KeyTable(const SignatureScheme& scheme, bool strict = false)
        : scheme_(&scheme), strict_(strict) {}

    static KeyTable load(const std::string& path, const SignatureScheme& scheme);

    void bind(const std::string& name, const std::string& seed);
    const KeyPair& get(const std::string& name) const;
    bool has(const std::string& name) const;
    // Insertion-ordered bindings; rendering reverse-maps pk bytes -> name.
    const std::vector<std::pair<std::string, KeyPair>>& bound() const { return order_; }
    const SignatureScheme& scheme() const { return *scheme_; }

private:
    const SignatureScheme* scheme_;
    bool strict_ = false;
    mutable std::map<std::string, size_t> index_;
    mutable std::vector<std::pair<std::string, KeyPair>> order_;
};

}  // namespace cov
