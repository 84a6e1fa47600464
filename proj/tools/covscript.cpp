#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cov/chaindir.hpp"
#include "cov/contracts.hpp"
#include "cov/errors.hpp"
#include "cov/scenario.hpp"
#include "cov/serial.hpp"

namespace {

using namespace cov;

// Exit codes: 0 success, 1 domain rejection, 2 usage/parse error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open " + path);
    return std::string((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
}

const SignatureScheme& scheme_of(const std::string& name) {
    try {
        return scheme_by_name(name);
    } catch (const std::invalid_argument&) {
        throw UsageError("unknown scheme `" + name + "` (ed25519 or hash)");
    }
}

KeyTable keys_of(const std::string& path, const SignatureScheme& scheme) {
    if (path.empty()) return KeyTable(scheme, /*strict=*/false);
    return KeyTable::load(path, scheme);
}

bool color_on() { return isatty(1) && std::getenv("NO_COLOR") == nullptr; }

std::string verdict(bool pass) {
    if (!color_on()) return pass ? "PASS" : "FAIL";
    return pass ? "\x1b[32mPASS\x1b[0m" : "\x1b[31mFAIL\x1b[0m";
}

// Single-file options shared by parse/render.
struct TextSel {
    std::string script, tx, scenario, keys, scheme = "ed25519";

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--script", script, "script file (.scr)");
        auto* b = cmd->add_option("--tx", tx, "transaction file (.txn)");
        auto* c = cmd->add_option("--scenario", scenario, "scenario file (.scn)");
        a->excludes(b)->excludes(c);
        b->excludes(c);
        cmd->add_option("--keys", keys, "keys file (name = \"seed\" lines)");
        cmd->add_option("--scheme", scheme, "signature scheme (ed25519|hash)");
    }

    std::string canonical() const {
        const SignatureScheme& sch = scheme_of(scheme);
        KeyTable kt = keys_of(keys, sch);
        if (!script.empty()) {
            SymbolEnv env{&kt, {}};
            return render_script(parse_script(read_text(script), env), env) + "\n";
        }
        if (!tx.empty()) {
            SymbolEnv env{&kt, {}};
            return render_tx(parse_tx(read_text(tx), kt), env);
        }
        if (!scenario.empty())
            return render_scenario(parse_scenario(read_text(scenario)));
        throw UsageError("one of --script/--tx/--scenario is required");
    }
};

int cmd_parse(const TextSel& sel) {
    sel.canonical();
    std::cout << "OK\n";
    return 0;
}

int cmd_render(const TextSel& sel) {
    std::cout << sel.canonical();
    return 0;
}

struct EvalOpts {
    std::string script, tx, chain, keys, scheme = "ed25519";
    std::vector<std::string> parents;
    uint32_t input = 1;
};

int cmd_eval(const EvalOpts& o) {
    const SignatureScheme& sch = scheme_of(o.scheme);
    KeyTable kt = keys_of(o.keys, sch);
    SymbolEnv env{&kt, {}};
    Script s = parse_script(read_text(o.script), env);

    MapResolver res;
    if (!o.chain.empty()) {
        LoadedChain lc = load_chain(o.chain, sch);
        for (const Transaction& t : lc.ledger.transactions()) res.add(t);
    }
    for (const std::string& p : o.parents) res.add(parse_tx(read_text(p), kt));

    Transaction rtx;
    if (!o.tx.empty()) {
        rtx = parse_tx(read_text(o.tx), kt);
    } else {
        // Standalone evaluation: a throwaway coinbase and a spender of it,
        // so context operators have something well-formed to look at.
        Transaction dummy_parent;
        dummy_parent.outputs.push_back({{}, sc::false_(), 0});
        res.add(dummy_parent);
        rtx.inputs.push_back({tx_id(dummy_parent), 1});
        rtx.witnesses.emplace_back();
        rtx.rel_locks.push_back(0);
        rtx.outputs.push_back({{}, sc::true_(), 0});
    }
    if (o.input == 0 || o.input > rtx.inputs.size())
        throw UsageError("--input must name an input of the transaction (1-based)");

    EvalResult r = eval(s, {rtx, o.input, res, sch});
    std::cout << format_result(r) << "\n";
    return 0;
}

int cmd_keygen(const std::string& name, const std::string& seed,
               const std::string& scheme) {
    const SignatureScheme& sch = scheme_of(scheme);
    KeyPair kp = sch.derive(seed.empty() ? name : seed);
    std::cout << "pk " << to_hex(kp.pk) << "\n"
              << "sk " << to_hex(kp.sk) << "\n";
    return 0;
}

int cmd_tx_build(const std::string& tx_file, const std::string& keys,
                 const std::string& scheme, const std::string& out) {
    const SignatureScheme& sch = scheme_of(scheme);
    KeyTable kt = keys_of(keys, sch);
    Transaction tx = parse_tx(read_text(tx_file), kt);
    if (!out.empty()) {
        Bytes raw = encode_tx(tx);
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        if (!f) throw UsageError("cannot write " + out);
        f.write(reinterpret_cast<const char*>(raw.data()),
                static_cast<std::streamsize>(raw.size()));
    }
    std::cout << tx_id(tx).hex() << "\n";
    return 0;
}

int cmd_append(const std::string& dir, const std::string& tx_file,
               const std::string& keys, const std::string& scheme, bool faucet) {
    const SignatureScheme& sch = scheme_of(scheme);
    KeyTable kt = keys_of(keys, sch);

    Ledger led(sch);
    ChainMeta meta{faucet};
    if (chain_exists(dir)) {
        LoadedChain lc = load_chain(dir, sch);
        led = std::move(lc.ledger);
        meta = lc.meta;  // the stored flag wins over --faucet
    } else {
        std::filesystem::create_directories(dir);
        write_chain_meta(meta, 0, dir);
    }

    Transaction tx = parse_tx(read_text(tx_file), kt);
    auto res = led.append(tx, {meta.faucet});
    if (const Reject* rj = std::get_if<Reject>(&res)) {
        std::cout << "REJECT " << to_string(rj->reason);
        if (rj->input) std::cout << " input " << *rj->input;
        std::cout << "\n";
        return 1;
    }
    append_chain_file(tx, led.size(), dir);
    std::cout << tx_id(tx).hex() << "\n";
    return 0;
}

int cmd_validate(const std::string& dir, const std::string& scheme) {
    LoadedChain lc = load_chain(dir, scheme_of(scheme));
    std::cout << "OK " << lc.ledger.size() << "\n";
    return 0;
}

int cmd_utxos(const std::string& dir, const std::string& scheme, bool pretty) {
    LoadedChain lc = load_chain(dir, scheme_of(scheme));
    Amount total = 0;
    for (const auto& [ref, val] : lc.ledger.utxos()) {
        std::cout << ref.txid.hex() << " " << ref.index << " " << render_btc(val)
                  << "\n";
        total += val;
    }
    if (pretty) std::cout << "TOTAL " << render_btc(total) << "\n";
    return 0;
}

int cmd_scenario_run(const std::string& file, bool faucet, bool pretty) {
    Scenario sc = parse_scenario(read_text(file));
    RunReport rep = run_scenario(sc, faucet);
    for (const StepReport& s : rep.steps)
        std::cout << "STEP " << s.name << " EXPECT " << s.expected << " GOT "
                  << s.got << " " << verdict(s.pass) << "\n";
    if (pretty) {
        size_t ok = 0;
        for (const StepReport& s : rep.steps) ok += s.pass;
        std::cout << "SCENARIO " << rep.scenario << " " << ok << "/"
                  << rep.steps.size() << " steps pass\n"
                  << "CONSERVATION "
                  << (rep.conservation_ok ? "holds" : "VIOLATED") << "\n";
    }
    return rep.all_pass && rep.conservation_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covenant-extended transaction model toolkit"};
    app.require_subcommand(1);

    TextSel parse_sel, render_sel;
    auto* p_parse = app.add_subcommand("parse", "check syntax and types");
    parse_sel.attach(p_parse);
    auto* p_render = app.add_subcommand("render", "print the canonical text form");
    render_sel.attach(p_render);

    EvalOpts ev;
    auto* p_eval = app.add_subcommand("eval", "evaluate a script");
    p_eval->add_option("--script", ev.script, "script file (.scr)")->required();
    p_eval->add_option("--tx", ev.tx, "redeeming transaction (.txn)");
    p_eval->add_option("--input", ev.input, "1-based input index (default 1)");
    p_eval->add_option("--parent", ev.parents,
                       "parent transaction file, repeatable");
    p_eval->add_option("--chain", ev.chain, "chain directory for parents");
    p_eval->add_option("--keys", ev.keys, "keys file");
    p_eval->add_option("--scheme", ev.scheme, "signature scheme (ed25519|hash)");

    std::string kg_name, kg_seed, kg_scheme = "ed25519";
    auto* p_keygen = app.add_subcommand("keygen", "derive a key pair");
    p_keygen->add_option("--name", kg_name, "participant name")->required();
    p_keygen->add_option("--seed", kg_seed, "derivation seed (default: name)");
    p_keygen->add_option("--scheme", kg_scheme, "signature scheme (ed25519|hash)");

    std::string tb_tx, tb_keys, tb_scheme = "ed25519", tb_out;
    auto* p_build = app.add_subcommand("tx-build", "build a transaction, print its txid");
    p_build->add_option("--tx", tb_tx, "transaction file (.txn)")->required();
    p_build->add_option("--keys", tb_keys, "keys file");
    p_build->add_option("--scheme", tb_scheme, "signature scheme (ed25519|hash)");
    p_build->add_option("--out", tb_out, "write canonical bytes here");

    std::string ap_dir, ap_tx, ap_keys, ap_scheme = "ed25519";
    bool ap_faucet = false;
    auto* p_append = app.add_subcommand("append", "append a transaction to a chain directory");
    p_append->add_option("--chain", ap_dir, "chain directory")->required();
    p_append->add_option("--tx", ap_tx, "transaction file (.txn)")->required();
    p_append->add_option("--keys", ap_keys, "keys file");
    p_append->add_option("--scheme", ap_scheme, "signature scheme (ed25519|hash)");
    p_append->add_flag("--faucet", ap_faucet,
                       "allow coinbases anywhere (new chains only)");

    std::string va_dir, va_scheme = "ed25519";
    auto* p_validate = app.add_subcommand("validate", "replay and verify a chain directory");
    p_validate->add_option("--chain", va_dir, "chain directory")->required();
    p_validate->add_option("--scheme", va_scheme, "signature scheme (ed25519|hash)");

    std::string ut_dir, ut_scheme = "ed25519";
    bool ut_pretty = false;
    auto* p_utxos = app.add_subcommand("utxos", "list unspent outputs");
    p_utxos->add_option("--chain", ut_dir, "chain directory")->required();
    p_utxos->add_option("--scheme", ut_scheme, "signature scheme (ed25519|hash)");
    p_utxos->add_flag("--pretty", ut_pretty, "append a TOTAL line");

    auto* p_scn = app.add_subcommand("scenario", "scenario file operations");
    p_scn->require_subcommand(1);
    std::string sr_file;
    bool sr_faucet = false, sr_pretty = false;
    auto* p_run = p_scn->add_subcommand("run", "execute a scenario, report per step");
    p_run->add_option("file", sr_file, "scenario file (.scn)")->required();
    p_run->add_flag("--faucet", sr_faucet, "force faucet mode");
    p_run->add_flag("--pretty", sr_pretty, "append summary lines");
    std::string sn_file;
    auto* p_rendscn = p_scn->add_subcommand("render", "print the canonical scenario text");
    p_rendscn->add_option("file", sn_file, "scenario file (.scn)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*p_parse) return cmd_parse(parse_sel);
        if (*p_render) return cmd_render(render_sel);
        if (*p_eval) return cmd_eval(ev);
        if (*p_keygen) return cmd_keygen(kg_name, kg_seed, kg_scheme);
        if (*p_build) return cmd_tx_build(tb_tx, tb_keys, tb_scheme, tb_out);
        if (*p_append) return cmd_append(ap_dir, ap_tx, ap_keys, ap_scheme, ap_faucet);
        if (*p_validate) return cmd_validate(va_dir, va_scheme);
        if (*p_utxos) return cmd_utxos(ut_dir, ut_scheme, ut_pretty);
        if (*p_run) return cmd_scenario_run(sr_file, sr_faucet, sr_pretty);
        if (*p_rendscn) {
            std::cout << cov::render_scenario(cov::parse_scenario(read_text(sn_file)));
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cov::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cov::TypeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cov::ReferenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cov::SerError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
