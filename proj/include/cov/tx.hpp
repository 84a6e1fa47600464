#pragma once

#include <cstdint>
#include <vector>

#include "cov/script.hpp"

namespace cov {

// Amounts are integer satoshi; 1 BTC = 100,000,000 satoshi.
using Amount = int64_t;
constexpr Amount kSatoshiPerBtc = 100'000'000;

// Time values are chain positions (the ledger position doubles as timestamp).
using Time = int64_t;

// One transaction output. `arg` is a first-class data field scripts can read
// through ctxo.arg / rtxo.arg; it carries contract state across covenants.
struct Output {
    ValueSeq arg;
    Script scr;
    Amount val = 0;
};

struct Transaction {
    std::vector<OutputRef> inputs;    // empty for a coinbase
    std::vector<ValueSeq> witnesses;  // one slot per input
    std::vector<Output> outputs;      // never empty
    Time abs_lock = 0;
    std::vector<Time> rel_locks;      // one per input

    bool is_coinbase() const { return inputs.empty(); }
};

// Structural invariants: |witnesses| == |inputs| == |rel_locks|, outputs
// non-empty, all amounts and locks non-negative, input indices 1-based
// non-zero. Throws std::invalid_argument describing the first violation.
void check_well_formed(const Transaction& tx);

Amount total_output_value(const Transaction& tx);

}  // namespace cov
