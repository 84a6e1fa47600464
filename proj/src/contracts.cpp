#include "cov/contracts.hpp"

namespace cov::contracts {

namespace {

Script versig1(Script key) {
    return sc::versig({std::move(key)}, {sc::rtx_wit()});
}

constexpr Amount kBtc = kSatoshiPerBtc;

}  // namespace

Script std_script(const Bytes& owner_pk) { return versig1(sc::bytec(owner_pk)); }

Script cf_script(const Bytes& z_pk, const Bytes& contributor_pk, Amount target,
                 Time deadline) {
    Script sweep = sc::and_(versig1(sc::bytec(z_pk)),
                            sc::ge(sc::rtxo(TxField::Val, sc::intc(1)),
                                   sc::intc(target)));
    Script refund = sc::after(sc::intc(deadline), versig1(sc::bytec(contributor_pk)));
    return sc::or_(std::move(sweep), std::move(refund));
}

Script nft_flawed() {
    return sc::and_all({versig1(sc::ctxo(TxField::Arg, sc::intc(1))),
                        sc::verrec(sc::intc(1)),
                        sc::eq(sc::rtxo(TxField::Val, sc::intc(1)),
                               sc::intc(kBtc))});
}

Script nft_fixed() {
    return sc::and_all({versig1(sc::ctxo(TxField::Arg, sc::outidx())),
                        sc::verrec(sc::inidx()),
                        sc::eq(sc::rtxo(TxField::Val, sc::inidx()),
                               sc::intc(kBtc))});
}

Script nft_with_id(int64_t id) {
    return sc::and_(nft_flawed(), sc::eq(sc::intc(id), sc::intc(id)));
}

VaultScripts vault_scripts(const Bytes& owner_pk, const Bytes& recovery_pk,
                           Time delay) {
    Script devault =
        sc::or_(sc::after_rel(sc::intc(delay),
                              versig1(sc::ctxo(TxField::Arg, sc::outidx()))),
                versig1(sc::bytec(recovery_pk)));
    Script vault = sc::and_(versig1(sc::bytec(owner_pk)),
                            sc::verscr(sc::intc(1), devault));
    return {std::move(vault), std::move(devault)};
}

Script recursive_vault_script(const Bytes& owner_pk, const Bytes& recovery_pk,
                              Time delay) {
    Script cur_state =
        sc::seqat(sc::ctxo(TxField::Arg, sc::intc(1)), sc::intc(1));
    Script next_state =
        sc::seqat(sc::rtxo(TxField::Arg, sc::intc(1)), sc::intc(1));
    Script receiver =
        sc::seqat(sc::ctxo(TxField::Arg, sc::intc(1)), sc::intc(2));

    Script devault = sc::and_all({versig1(sc::bytec(owner_pk)),
                                  sc::verrec(sc::intc(1)),
                                  sc::eq(next_state, sc::intc(1))});
    Script revault = sc::and_all({versig1(sc::bytec(recovery_pk)),
                                  sc::verrec(sc::intc(1)),
                                  sc::eq(next_state, sc::intc(0))});
    Script release = sc::after_rel(sc::intc(delay), versig1(receiver));
    return sc::if_(sc::eq(cur_state, sc::intc(0)), devault,
                   sc::or_(release, revault));
}

PyramidScripts pyramid_scripts() {
    Script payout = versig1(sc::ctxo(TxField::Arg, sc::outidx()));
    Script node = sc::and_all(
        {sc::verscr(sc::intc(1), payout),
         sc::eq(sc::rtxo(TxField::Arg, sc::intc(1)),
                sc::ctxo(TxField::Arg, sc::outidx())),
         sc::eq(sc::rtxo(TxField::Val, sc::intc(1)), sc::intc(2 * kBtc)),
         sc::verrec(sc::intc(2)), sc::verrec(sc::intc(3))});
    return {std::move(node), std::move(payout)};
}

KotetScripts kotet_scripts() {
    Script payout = versig1(sc::ctxo(TxField::Arg, sc::intc(2)));
    Script old_val = sc::ctxo(TxField::Val, sc::intc(2));
    Script throne = sc::and_all(
        {sc::verrec(sc::intc(1)),
         sc::eq(sc::rtxo(TxField::Arg, sc::intc(2)),
                sc::ctxo(TxField::Arg, sc::intc(1))),
         sc::ge(sc::rtxo(TxField::Val, sc::intc(2)),
                sc::add(old_val, old_val)),
         sc::verscr(sc::intc(2), payout)});
    return {std::move(throne), std::move(payout)};
}

}  // namespace cov::contracts
