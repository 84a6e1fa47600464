#pragma once

#include <optional>
#include <set>
#include <variant>

#include "cov/eval.hpp"

namespace cov {

enum class RejectReason : uint8_t {
    UnknownInput,       // 1(a): referenced output does not exist on the chain
    DoubleSpend,        // 1(b): referenced output already spent
    ScriptFalse,        // 1(c): redeemed script evaluated to something != true
    ScriptBot,          // 1(c): redeemed script evaluated to ⊥
    RelLockNotMet,      // 1(d): fewer than rel_locks[i] positions elapsed
    AbsLockNotMet,      // 2:    appended before abs_lock
    ValueCreated,       // 3:    outputs exceed inputs
    CoinbaseNotAllowed, // coinbase outside position 0 without faucet mode
};

const char* to_string(RejectReason r);
std::optional<RejectReason> reject_reason_from_string(const std::string& s);

struct Reject {
    RejectReason reason;
    // Input the failing condition was observed on (conditions 1a-1d).
    std::optional<uint32_t> input;
    std::string detail;
};

struct AppendOptions {
    // Faucet mode accepts (validity-exempt) coinbases at any position, the
    // way the paper's examples conjure funded participants out of thin air.
    bool faucet = false;
};

// Append-only ledger with position-as-timestamp. Values are immutable:
// append returns the advanced copy and never mutates the receiver.
// Validity (checked condition-major, in the numbering order, inputs in
// order within each condition):
//   1(a) every input resolves to an existing prior output
//   1(b) no referenced output is spent, on-chain or earlier in this tx
//   1(c) every redeemed script evaluates to true
//   1(d) n - position(parent) >= rel_locks[i]
//   2    n >= abs_lock
//   3    sum(inputs) >= sum(outputs); the difference is the fee
// Coinbases are exempt (they mint); allowed at position 0, or anywhere in
// faucet mode, except that re-minting an identical coinbase (duplicate
// txid) is rejected so positions_of/replay stay well-defined.
class Ledger : public TxResolver {
public:
    explicit Ledger(const SignatureScheme& scheme = ed25519_scheme())
        : scheme_(&scheme) {}

    std::variant<Ledger, Reject> append(const Transaction& tx,
                                        const AppendOptions& opts = {}) const;

    size_t size() const { return txs_.size(); }
    const std::vector<Transaction>& transactions() const { return txs_; }
    const Transaction& at(size_t position) const { return txs_.at(position); }
    const SignatureScheme& scheme() const { return *scheme_; }

    // TxResolver.
    const Transaction* find(const TxId& id) const override;

    std::optional<size_t> position_of(const TxId& id) const;
    // Throws UnknownRef when ref does not name an existing output.
    bool is_spent(const OutputRef& ref) const;

    // Unspent outputs in deterministic (txid, index) order.
    std::vector<std::pair<OutputRef, Amount>> utxos() const;
    Amount utxo_total() const;
    Amount minted() const { return minted_; }   // sum of coinbase outputs
    Amount fees() const { return fees_; }       // sum of (inputs - outputs)

    const Output& output_at(const OutputRef& ref) const;  // throws UnknownRef

private:
    const SignatureScheme* scheme_;
    std::vector<Transaction> txs_;
    std::map<TxId, size_t> by_id_;
    std::set<OutputRef> utxo_;
    std::set<OutputRef> spent_;
    Amount minted_ = 0;
    Amount fees_ = 0;
};

// A no-op faucet tick: coinbase minting nothing, arg-tagged with `position`
// so consecutive ticks have distinct txids. Advancing time is appending one.
Transaction tick_tx(size_t position);

}  // namespace cov
