#include "cov/tx.hpp"

#include <limits>
#include <stdexcept>

namespace cov {

void check_well_formed(const Transaction& tx) {
    if (tx.witnesses.size() != tx.inputs.size())
        throw std::invalid_argument("witness slot count must equal input count");
    if (tx.rel_locks.size() != tx.inputs.size())
        throw std::invalid_argument("rel_lock count must equal input count");
    if (tx.outputs.empty())
        throw std::invalid_argument("transaction must have at least one output");
    for (const OutputRef& ref : tx.inputs)
        if (ref.index == 0)
            throw std::invalid_argument("input indices are 1-based; 0 is invalid");
    for (const Output& o : tx.outputs) {
        if (!o.scr.valid())
            throw std::invalid_argument("output script must be present");
        if (o.val < 0)
            throw std::invalid_argument("output value must be non-negative");
    }
    if (tx.abs_lock < 0)
        throw std::invalid_argument("abs_lock must be non-negative");
    for (Time t : tx.rel_locks)
        if (t < 0)
            throw std::invalid_argument("rel_locks must be non-negative");
}

Amount total_output_value(const Transaction& tx) {
    Amount sum = 0;
    for (const Output& o : tx.outputs) {
        if (o.val > std::numeric_limits<Amount>::max() - sum)
            throw std::overflow_error("output value sum overflows");
        sum += o.val;
    }
    return sum;
}

}  // namespace cov
