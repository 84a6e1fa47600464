#include "cov/ledger.hpp"

#include <limits>

#include "cov/errors.hpp"
#include "cov/serial.hpp"

namespace cov {

const char* to_string(RejectReason r) {
    switch (r) {
        case RejectReason::UnknownInput: return "UnknownInput";
        case RejectReason::DoubleSpend: return "DoubleSpend";
        case RejectReason::ScriptFalse: return "ScriptFalse";
        case RejectReason::ScriptBot: return "ScriptBot";
        case RejectReason::RelLockNotMet: return "RelLockNotMet";
        case RejectReason::AbsLockNotMet: return "AbsLockNotMet";
        case RejectReason::ValueCreated: return "ValueCreated";
        case RejectReason::CoinbaseNotAllowed: return "CoinbaseNotAllowed";
    }
    return "?";
}

std::optional<RejectReason> reject_reason_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(RejectReason::CoinbaseNotAllowed); ++i) {
        RejectReason r = static_cast<RejectReason>(i);
        if (s == to_string(r)) return r;
    }
    return std::nullopt;
}

const Transaction* Ledger::find(const TxId& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &txs_[it->second];
}

std::optional<size_t> Ledger::position_of(const TxId& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

const Output& Ledger::output_at(const OutputRef& ref) const {
    const Transaction* tx = find(ref.txid);
    if (!tx) throw UnknownRef("no transaction " + ref.txid.hex());
    if (ref.index == 0 || ref.index > tx->outputs.size())
        throw UnknownRef(ref.txid.hex() + " has no output " + std::to_string(ref.index));
    return tx->outputs[ref.index - 1];
}

bool Ledger::is_spent(const OutputRef& ref) const {
    output_at(ref);  // throws UnknownRef when the output does not exist
    return spent_.count(ref) > 0;
}

std::vector<std::pair<OutputRef, Amount>> Ledger::utxos() const {
    std::vector<std::pair<OutputRef, Amount>> out;
    out.reserve(utxo_.size());
    for (const OutputRef& ref : utxo_) out.emplace_back(ref, output_at(ref).val);
    return out;
}

Amount Ledger::utxo_total() const {
    Amount sum = 0;
    for (const OutputRef& ref : utxo_) sum += output_at(ref).val;
    return sum;
}

std::variant<Ledger, Reject> Ledger::append(const Transaction& tx,
                                            const AppendOptions& opts) const {
    check_well_formed(tx);  // malformed input is a caller bug, not a Reject
    const size_t n = txs_.size();
    const TxId id = tx_id(tx);

    if (tx.is_coinbase()) {
        // Coinbases mint and are exempt from conditions 1-3; allowed as
        // genesis or under faucet mode. Duplicate ids would break replay.
        if (n != 0 && !opts.faucet)
            return Reject{RejectReason::CoinbaseNotAllowed, std::nullopt,
                          "coinbase outside position 0 without faucet"};
        if (by_id_.count(id))
            return Reject{RejectReason::CoinbaseNotAllowed, std::nullopt,
                          "identical coinbase already on the chain"};
        Ledger next(*this);
        next.txs_.push_back(tx);
        next.by_id_[id] = n;
        for (uint32_t j = 1; j <= tx.outputs.size(); ++j)
            next.utxo_.insert(OutputRef{id, j});
        next.minted_ += total_output_value(tx);
        return next;
    }

    // Conditions are checked condition-major in the paper's numbering order
    // (1a over every input, then 1b, ...) so the first report is
    // deterministic even when different inputs fail different conditions.

    // 1(a): every input names an existing prior output.
    for (uint32_t i = 1; i <= tx.inputs.size(); ++i) {
        const OutputRef& ref = tx.inputs[i - 1];
        const Transaction* parent = find(ref.txid);
        if (!parent || ref.index > parent->outputs.size())
            return Reject{RejectReason::UnknownInput, i,
                          "no output " + std::to_string(ref.index) + " of " +
                              ref.txid.hex()};
    }

    // 1(b): nothing spent on-chain or twice within this transaction.
    for (uint32_t i = 1; i <= tx.inputs.size(); ++i) {
        const OutputRef& ref = tx.inputs[i - 1];
        if (spent_.count(ref))
            return Reject{RejectReason::DoubleSpend, i, "output already spent"};
        for (uint32_t j = 1; j < i; ++j)
            if (tx.inputs[j - 1] == ref)
                return Reject{RejectReason::DoubleSpend, i,
                              "duplicate of input " + std::to_string(j)};
    }

    // 1(c): each redeemed script must evaluate to true.
    for (uint32_t i = 1; i <= tx.inputs.size(); ++i) {
        EvalContext ctx{tx, i, *this, *scheme_};
        EvalResult r = eval(output_at(tx.inputs[i - 1]).scr, ctx);
        if (r.is_bot())
            return Reject{RejectReason::ScriptBot, i, "script evaluated to bot"};
        if (!r.is_true())
            return Reject{RejectReason::ScriptFalse, i,
                          "script evaluated to " + format_result(r)};
    }

    // 1(d): enough positions elapsed since each parent.
    for (uint32_t i = 1; i <= tx.inputs.size(); ++i) {
        size_t h = *position_of(tx.inputs[i - 1].txid);
        if (static_cast<Time>(n - h) < tx.rel_locks[i - 1])
            return Reject{RejectReason::RelLockNotMet, i,
                          std::to_string(n - h) + " of " +
                              std::to_string(tx.rel_locks[i - 1]) + " positions elapsed"};
    }

    // 2: absolute lock.
    if (static_cast<Time>(n) < tx.abs_lock)
        return Reject{RejectReason::AbsLockNotMet, std::nullopt,
                      "position " + std::to_string(n) + " < abs_lock " +
                          std::to_string(tx.abs_lock)};

    // 3: no value out of thin air; the shortfall of outputs is the fee.
    Amount in_total = 0;
    for (const OutputRef& ref : tx.inputs) {
        Amount v = output_at(ref).val;
        if (v > std::numeric_limits<Amount>::max() - in_total)
            throw std::overflow_error("input value sum overflows");
        in_total += v;
    }
    Amount out_total = total_output_value(tx);
    if (in_total < out_total)
        return Reject{RejectReason::ValueCreated, std::nullopt,
                      "outputs exceed inputs by " + std::to_string(out_total - in_total)};

    Ledger next(*this);
    next.txs_.push_back(tx);
    next.by_id_[id] = n;
    for (const OutputRef& ref : tx.inputs) {
        next.utxo_.erase(ref);
        next.spent_.insert(ref);
    }
    for (uint32_t j = 1; j <= tx.outputs.size(); ++j)
        next.utxo_.insert(OutputRef{id, j});
    next.fees_ += in_total - out_total;
    return next;
}

Transaction tick_tx(size_t position) {
    Transaction tx;
    Output o;
    o.arg = {Value(BigInt(position))};
    o.scr = sc::false_();  // unspendable marker output
    o.val = 0;
    tx.outputs.push_back(std::move(o));
    return tx;
}

}  // namespace cov
