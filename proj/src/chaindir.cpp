#include "cov/chaindir.hpp"

#include <cstdio>
#include <fstream>

#include "cov/errors.hpp"
#include "cov/serial.hpp"

namespace cov {

namespace fs = std::filesystem;

namespace {

std::string tx_file_name(size_t position) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%06zu.tx", position);
    return buf;
}

void write_file(const fs::path& p, const std::string& data) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw ChainError("cannot write " + p.string());
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw ChainError("short write to " + p.string());
}

void write_file(const fs::path& p, const Bytes& data) {
    write_file(p, std::string(data.begin(), data.end()));
}

Bytes read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw ChainError("cannot read " + p.string());
    std::string s((std::istreambuf_iterator<char>(f)),
                  std::istreambuf_iterator<char>());
    return Bytes(s.begin(), s.end());
}

}  // namespace

void append_chain_file(const Transaction& tx, size_t position,
                       const fs::path& dir) {
    write_file(dir / tx_file_name(position), encode_tx(tx));
    std::ofstream idx(dir / "index.txt", std::ios::app);
    if (!idx) throw ChainError("cannot append to " + (dir / "index.txt").string());
    idx << position << " " << tx_id(tx).hex() << "\n";
    if (!idx) throw ChainError("short write to " + (dir / "index.txt").string());
}

void write_chain_meta(const ChainMeta& meta, size_t count, const fs::path& dir) {
    std::string head = "chain faucet=";
    head += meta.faucet ? "1" : "0";
    head += "\n";
    // Rebuild the whole index so the header stays first.
    std::string body;
    for (size_t i = 0; i < count; ++i) {
        Bytes raw = read_file(dir / tx_file_name(i));
        body += std::to_string(i) + " " + tx_id(decode_tx(raw)).hex() + "\n";
    }
    write_file(dir / "index.txt", head + body);
}

void save_chain(const Ledger& ledger, const ChainMeta& meta, const fs::path& dir) {
    fs::create_directories(dir);
    std::string index = "chain faucet=";
    index += meta.faucet ? "1" : "0";
    index += "\n";
    for (size_t i = 0; i < ledger.size(); ++i) {
        const Transaction& tx = ledger.at(i);
        write_file(dir / tx_file_name(i), encode_tx(tx));
        index += std::to_string(i) + " " + tx_id(tx).hex() + "\n";
    }
    write_file(dir / "index.txt", index);
}

bool chain_exists(const fs::path& dir) {
    return fs::exists(dir / "index.txt");
}

LoadedChain load_chain(const fs::path& dir, const SignatureScheme& scheme) {
    std::ifstream idx(dir / "index.txt");
    if (!idx) throw ChainError("no chain at " + dir.string());
    std::string header;
    if (!std::getline(idx, header) ||
        (header != "chain faucet=0" && header != "chain faucet=1"))
        throw ChainError("bad index header in " + (dir / "index.txt").string());

    LoadedChain lc{Ledger(scheme), {header == "chain faucet=1"}};
    std::string line;
    size_t expect_pos = 0;
    while (std::getline(idx, line)) {
        if (line.empty()) continue;
        size_t sp = line.find(' ');
        if (sp == std::string::npos || sp + 1 + 64 != line.size())
            throw ChainError("bad index line: " + line);
        if (line.substr(0, sp) != std::to_string(expect_pos))
            throw ChainError("index positions out of order at " + line);

        fs::path file = dir / tx_file_name(expect_pos);
        Bytes raw = read_file(file);
        Transaction tx;
        try {
            tx = decode_tx(raw);
        } catch (const SerError& e) {
            throw ChainError("corrupt transaction in " + file.string() + ": " +
                             e.what());
        }
        if (encode_tx(tx) != raw)
            throw ChainError("non-canonical bytes in " + file.string());
        TxId id = tx_id(tx);
        if (id.hex() != line.substr(sp + 1))
            throw ChainError("txid mismatch at " + file.string());

        auto res = lc.ledger.append(tx, {lc.meta.faucet});
        if (const Reject* rj = std::get_if<Reject>(&res))
            throw ChainError("invalid chain at " + file.string() + ": " +
                             to_string(rj->reason) +
                             (rj->detail.empty() ? "" : " (" + rj->detail + ")"));
        lc.ledger = std::move(std::get<Ledger>(res));
        ++expect_pos;
    }
    return lc;
}

}  // namespace cov
