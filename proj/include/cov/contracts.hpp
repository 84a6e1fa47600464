#pragma once

#include "cov/tx.hpp"

namespace cov {
// Builders for the worked covenant contracts. Each returns the desugared
// script with participant keys and amounts baked in; script_eq against the
// parsed fixture texts is what ties them to the on-disk scenarios.
namespace contracts {

// Standard deposit: {arg: [], scr: versig(owner; rtx.wit), val: v} — the
// script only; callers pick the amount.
Script std_script(const Bytes& owner_pk);

// Crowdfunding: the collector Z may sweep if output 1 carries at least
// `target`; after `deadline` the contributor may reclaim.
//   (versig(Z; rtx.wit) and rtxo.val(1) >= target)
//     or after deadline : versig(contributor; rtx.wit)
Script cf_script(const Bytes& z_pk, const Bytes& contributor_pk,
                 Amount target, Time deadline);

// Non-fungible token, flawed: checks output 1 regardless of which input is
// being redeemed, so one covenant output can absorb two tokens.
//   versig(ctxo.arg(1); rtx.wit) and verrec(1) and rtxo.val(1) = 1 BTC
Script nft_flawed();

// Fixed token: self-indexing through inidx/outidx.
//   versig(ctxo.arg(outidx); rtx.wit) and verrec(inidx)
//     and rtxo.val(inidx) = 1 BTC
Script nft_fixed();

// Token with a distinguishing inert clause (id = id) so distinct tokens
// have syntactically distinct scripts and verrec cannot conflate them.
Script nft_with_id(int64_t id);

// Basic vault. Spending the vault must re-create the de-vaulting script S;
// S releases to the arg-designated receiver after `delay`, or back to the
// recovery key at any time.
struct VaultScripts {
    Script vault;    // versig(A; rtx.wit) and verscr(1, S)
    Script devault;  // (afterRel delay : versig(ctxo.arg(outidx); rtx.wit))
                     //   or versig(Ar; rtx.wit)
};
VaultScripts vault_scripts(const Bytes& owner_pk, const Bytes& recovery_pk,
                           Time delay);

// Recursive vault: one script, state in arg ([0] vaulted, [1, receiver]
// de-vaulting). De-vault jumps to state 1, the recovery arm re-vaults to
// state 0, both through verrec(1), so the covenant never expires.
Script recursive_vault_script(const Bytes& owner_pk, const Bytes& recovery_pk,
                              Time delay);

// Pyramid scheme: joining pays your inviter double and plants two fresh
// covenant nodes.
struct PyramidScripts {
    Script node;    // verscr(1, payout) and rtxo.arg(1) = ctxo.arg(outidx)
                    //   and rtxo.val(1) = 2 BTC and verrec(2) and verrec(3)
    Script payout;  // versig(ctxo.arg(outidx); rtx.wit)
};
PyramidScripts pyramid_scripts();

// King of the Ether Throne: usurping re-creates the covenant with the new
// king in arg and compensates the old king with at least double.
struct KotetScripts {
    Script throne;  // verrec(1) and rtxo.arg(2) = ctxo.arg(1)
                    //   and rtxo.val(2) >= ctxo.val(2) + ctxo.val(2)
                    //   and verscr(2, payout)
    Script payout;  // versig(ctxo.arg(2); rtx.wit)
};
KotetScripts kotet_scripts();

}  // namespace contracts
}  // namespace cov
