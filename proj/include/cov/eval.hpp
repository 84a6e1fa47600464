#pragma once

#include <optional>
#include <variant>

#include "cov/crypto.hpp"
#include "cov/tx.hpp"

namespace cov {

// Supplies the transactions an rtx's inputs point at. Implemented by the
// ledger; tests use a simple map. A miss is a CorruptContext error, not ⊥:
// validation never evaluates scripts against inputs it could not resolve.
class TxResolver {
public:
    virtual ~TxResolver() = default;
    virtual const Transaction* find(const TxId& id) const = 0;
};

class MapResolver : public TxResolver {
public:
    void add(const Transaction& tx);
    const Transaction* find(const TxId& id) const override;

private:
    std::map<TxId, Transaction> txs_;
};

// ⊥, a single Value, or a ValueSeq. ⊥ is the only failure channel the
// interpreter has; it never throws for in-language failures.
class EvalResult {
public:
    EvalResult() = default;  // ⊥
    explicit EvalResult(Value v) : rep_(std::move(v)) {}
    explicit EvalResult(ValueSeq s) : rep_(std::move(s)) {}
    static EvalResult bot() { return EvalResult(); }

    bool is_bot() const { return !rep_.has_value(); }
    bool is_value() const { return rep_ && rep_->index() == 0; }
    bool is_seq() const { return rep_ && rep_->index() == 1; }
    const Value& value() const { return std::get<0>(*rep_); }
    const ValueSeq& seq() const { return std::get<1>(*rep_); }

    bool is_true() const { return is_value() && value().is_bool() && value().as_bool(); }
    bool is_false() const { return is_value() && value().is_bool() && !value().as_bool(); }

    bool operator==(const EvalResult& other) const;

private:
    std::optional<std::variant<Value, ValueSeq>> rep_;
};

struct EvalContext {
    const Transaction& rtx;    // redeeming transaction
    uint32_t input_index;      // 1-based; which input is being checked
    const TxResolver& resolver;
    const SignatureScheme& scheme;
};

// Evaluate a script as the condition guarding ctx.rtx's input_index-th
// input. Strict: a ⊥ operand makes every operator ⊥, with three exceptions:
// the untaken branch of `if` is never evaluated, verscr's quoted argument is
// never evaluated, and a ⊥ `if` guard selects the else branch (a failed
// guard behaves as false there; this is what lets a timelocked disjunct be
// bypassed by the other arm of an `or`).
// Precondition: 1 <= input_index <= |rtx.inputs| (throws otherwise).
EvalResult eval(const Script& s, const EvalContext& ctx);

// The output the checked input redeems: resolver(in[i].txid).outputs[in[i].index].
const Output& redeemed_output(const EvalContext& ctx);

// One-line result form used by the CLI and scenario reports:
// true | false | int:<n> | bytes:<hex> | script:<text> | seq:[...] | bot
std::string format_result(const EvalResult& r);

}  // namespace cov
