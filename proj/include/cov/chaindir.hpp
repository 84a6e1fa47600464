#pragma once

#include <filesystem>

#include "cov/ledger.hpp"

namespace cov {

// On-disk chain: one canonical-serialized transaction file per position
// (000000.tx, 000001.tx, ...) plus index.txt listing "position txid" lines
// under a header that records the faucet flag. `load_chain` replays the
// files through Ledger::append and cross-checks everything bit-for-bit:
// stored bytes must equal the re-serialization, listed txids must match the
// recomputed ones, and every append must be accepted.

struct ChainMeta {
    bool faucet = false;
};

void save_chain(const Ledger& ledger, const ChainMeta& meta,
                const std::filesystem::path& dir);

// Appends just the new tail transaction file + index line.
void append_chain_file(const Transaction& tx, size_t position,
                       const std::filesystem::path& dir);

void write_chain_meta(const ChainMeta& meta, size_t count,
                      const std::filesystem::path& dir);

struct LoadedChain {
    Ledger ledger;
    ChainMeta meta;
};

class ChainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool chain_exists(const std::filesystem::path& dir);
LoadedChain load_chain(const std::filesystem::path& dir,
                       const SignatureScheme& scheme = ed25519_scheme());

}  // namespace cov
