#include "cov/crypto.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "cov/errors.hpp"
#include "cov/serial.hpp"

namespace cov {

Bytes sha256(const uint8_t* data, size_t len) {
    Bytes out(32);
    unsigned int outlen = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data, len) != 1 ||
        EVP_DigestFinal_ex(ctx, out.data(), &outlen) != 1 || outlen != 32) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-256 failed");
    }
    EVP_MD_CTX_free(ctx);
    return out;
}

Bytes sha256(const Bytes& data) { return sha256(data.data(), data.size()); }

// ---- Ed25519 (default) ----------------------------------------------------

namespace {

struct PkeyDeleter {
    void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;

struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

class Ed25519Scheme : public SignatureScheme {
public:
    std::string name() const override { return "ed25519"; }

    KeyPair derive(const std::string& seed) const override {
        // 32-byte Ed25519 private seed from the name; fully reproducible.
        Bytes sk = sha256(reinterpret_cast<const uint8_t*>(seed.data()), seed.size());
        PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr,
                                                 sk.data(), sk.size()));
        if (!key) throw std::runtime_error("ed25519 key derivation failed");
        Bytes pk(32);
        size_t pklen = pk.size();
        if (EVP_PKEY_get_raw_public_key(key.get(), pk.data(), &pklen) != 1 ||
            pklen != 32)
            throw std::runtime_error("ed25519 public key extraction failed");
        return {pk, sk};
    }

    Bytes sign(const Bytes& sk, const Bytes& msg) const override {
        if (sk.size() != 32) throw std::invalid_argument("ed25519 sk must be 32 bytes");
        PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr,
                                                 sk.data(), sk.size()));
        MdCtxPtr ctx(EVP_MD_CTX_new());
        if (!key || !ctx ||
            EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1)
            throw std::runtime_error("ed25519 sign init failed");
        Bytes sig(64);
        size_t siglen = sig.size();
        if (EVP_DigestSign(ctx.get(), sig.data(), &siglen, msg.data(), msg.size()) != 1 ||
            siglen != 64)
            throw std::runtime_error("ed25519 sign failed");
        return sig;
    }

    bool verify(const Bytes& pk, const Bytes& sig, const Bytes& msg) const override {
        if (pk.size() != 32 || sig.size() != 64) return false;
        PkeyPtr key(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr,
                                                pk.data(), pk.size()));
        if (!key) return false;
        MdCtxPtr ctx(EVP_MD_CTX_new());
        if (!ctx ||
            EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1)
            return false;
        return EVP_DigestVerify(ctx.get(), sig.data(), sig.size(), msg.data(),
                                msg.size()) == 1;
    }
};

// pk = sk = H(seed)[0:8]; sig = pk || H(pk || msg)[0:8]. Readable, insecure.
class HashScheme : public SignatureScheme {
public:
    std::string name() const override { return "hash"; }

    KeyPair derive(const std::string& seed) const override {
        Bytes h = sha256(reinterpret_cast<const uint8_t*>(seed.data()), seed.size());
        Bytes k(h.begin(), h.begin() + 8);
        return {k, k};
    }

    Bytes sign(const Bytes& sk, const Bytes& msg) const override {
        Bytes input = sk;
        input.insert(input.end(), msg.begin(), msg.end());
        Bytes h = sha256(input);
        Bytes sig = sk;
        sig.insert(sig.end(), h.begin(), h.begin() + 8);
        return sig;
    }

    bool verify(const Bytes& pk, const Bytes& sig, const Bytes& msg) const override {
        if (pk.size() != 8 || sig.size() != 16) return false;
        if (!std::equal(pk.begin(), pk.end(), sig.begin())) return false;
        Bytes expect = sign(pk, msg);
        return sig == expect;
    }
};

}  // namespace

const SignatureScheme& ed25519_scheme() {
    static const Ed25519Scheme scheme;
    return scheme;
}

const SignatureScheme& hash_scheme() {
    static const HashScheme scheme;
    return scheme;
}

const SignatureScheme& scheme_by_name(const std::string& name) {
    if (name == "ed25519") return ed25519_scheme();
    if (name == "hash") return hash_scheme();
    throw std::invalid_argument("unknown signature scheme: " + name);
}

Bytes sign_tx(const SignatureScheme& s, const Bytes& sk, const Transaction& tx) {
    return s.sign(sk, signing_payload_digest(tx));
}

bool ver_multisig(const SignatureScheme& s, const std::vector<Bytes>& keys,
                  const std::vector<Bytes>& sigs, const Transaction& tx,
                  uint32_t /*input_index: locates the witness only; the
                             signed payload is witness-free and index-free*/) {
    if (sigs.empty()) return true;  // 0-of-n holds vacuously
    if (sigs.size() > keys.size()) return false;
    Bytes digest = signing_payload_digest(tx);
    // Greedy in-order matching. For an order-preserving assignment the
    // earliest verifying key is never worse than a later one, so greedy is
    // equivalent to the exhaustive subsequence search (property-tested
    // against the brute-force oracle).
    size_t k = 0;
    for (const Bytes& sig : sigs) {
        while (k < keys.size() && !s.verify(keys[k], sig, digest)) ++k;
        if (k == keys.size()) return false;
        ++k;
    }
    return true;
}

// ---- key table ------------------------------------------------------------

void KeyTable::bind(const std::string& name, const std::string& seed) {
    auto it = index_.find(name);
    if (it != index_.end()) {
        order_[it->second].second = scheme_->derive(seed);
        return;
    }
    index_[name] = order_.size();
    order_.emplace_back(name, scheme_->derive(seed));
}

bool KeyTable::has(const std::string& name) const {
    return index_.count(name) > 0;
}

const KeyPair& KeyTable::get(const std::string& name) const {
    auto it = index_.find(name);
    if (it != index_.end()) return order_[it->second].second;
    if (strict_)
        throw ReferenceError("unknown participant: " + name);
    index_[name] = order_.size();
    order_.emplace_back(name, scheme_->derive(name));
    return order_.back().second;
}

KeyTable KeyTable::load(const std::string& path, const SignatureScheme& scheme) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open keys file: " + path);
    KeyTable table(scheme);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        std::istringstream ls(line);
        std::string name, eq_tok, seed_tok;
        if (!(ls >> name)) continue;  // blank
        if (!(ls >> eq_tok >> seed_tok) || eq_tok != "=")
            throw SyntaxError("keys file expects `name = \"seed\"`", lineno, 1);
        if (seed_tok.size() < 2 || seed_tok.front() != '"' || seed_tok.back() != '"')
            throw SyntaxError("seed must be double-quoted", lineno, 1);
        table.bind(name, seed_tok.substr(1, seed_tok.size() - 2));
    }
    return table;
}

}  // namespace cov
