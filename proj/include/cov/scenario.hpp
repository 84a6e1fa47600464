#pragma once

#include "cov/ledger.hpp"
#include "cov/render.hpp"

namespace cov {

// A scenario is an ordered list of named transaction templates with
// expected outcomes, plus faucet/advance directives. Templates reference
// earlier transactions by name and witness slots may say sig(participant);
// both are resolved when the step is built against the running ledger.

struct WitnessItem {
    std::optional<std::string> sig_of;  // sign as this participant...
    Value literal;                      // ...or use this value verbatim
};

struct InputTemplate {
    std::string parent;  // earlier tx name
    uint32_t out_index = 0;
    std::vector<WitnessItem> wit;
    Time rel_lock = 0;
};

struct TxTemplate {
    std::string name;
    std::vector<InputTemplate> inputs;
    std::vector<Output> outputs;  // fully resolved at parse time
    Time abs_lock = 0;
};

struct Expect {
    bool accept = true;
    std::optional<RejectReason> reason;
    std::optional<uint32_t> input;
};

struct Step {
    // advance k  <=>  k ticks; otherwise a tx step with an expectation.
    std::optional<int64_t> advance;
    TxTemplate tx;
    Expect expect;
};

struct Scenario {
    std::string name;
    std::string scheme = "ed25519";
    std::vector<std::string> participants;  // `keys` line, in order
    bool faucet = false;
    std::vector<std::pair<std::string, Script>> scripts;  // `script` defs
    std::vector<Step> steps;

    // Environment for rendering/parsing scripts of this scenario.
    KeyTable key_table() const;
};

Scenario parse_scenario(const std::string& text);
std::string render_scenario(const Scenario& sc);

struct StepReport {
    std::string name;
    std::string expected;  // "accept" or "reject:<Reason>[:input<i>]"
    std::string got;
    bool pass = false;
};

struct RunReport {
    std::string scenario;
    std::vector<StepReport> steps;
    bool all_pass = false;
    bool conservation_ok = false;  // sum(utxo) + fees == minted afterwards
    Ledger ledger;                 // final state
    std::map<std::string, TxId> names;  // template name -> txid
};

// Execute every step in order. Expectation mismatches are reported, not
// thrown; a rejected append leaves the ledger unchanged and the run
// continues. `force_faucet` is the CLI --faucet override.
RunReport run_scenario(const Scenario& sc, bool force_faucet = false);

std::string format_report(const RunReport& r);  // STEP ... PASS|FAIL lines

}  // namespace cov
