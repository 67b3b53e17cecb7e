#pragma once

#include <map>
#include <set>
#include <vector>

#include "mevlens/registry.hpp"

namespace mevlens {

// Per-address, per-token signed deltas. Exact: amounts are never scaled or
// rounded, so a closed transfer set sums to zero per token.
struct BalanceLedger {
    std::map<Address, std::map<Address, Int>> deltas;

    void apply(const TransferRecord& t);
    Int delta(const Address& who, const Address& token) const;
};

struct TraderContext {
    std::set<Address> trader_addresses;
    std::set<Address> irrelevant_addresses;
};

struct TokenChange {
    std::map<Address, Int> net;
    std::map<Address, U256> flow_in;   // received by traders in swaps
    std::map<Address, U256> flow_out;  // spent by traders in swaps
};

// Accumulates transfer deltas (ERC-20 plus native pseudo-token) over one or
// more successful transactions.
BalanceLedger get_bal_change(const std::vector<const TransactionRecord*>& txs);
BalanceLedger get_bal_change(const TransactionRecord& tx);

// Trader set is {tx.from} union {tx.to}. Irrelevant addresses are token
// contracts (Transfer emitters in the slice), pool/DEX addresses (decoded
// swap pools and swap-event emitters), the black-hole addresses, and the
// block producer. An address in both sets resolves to irrelevant.
TraderContext resolve_trader_context(const std::vector<const TransactionRecord*>& txs, const std::vector<Swap>& swaps,
                                     const std::vector<TransferRecord>& transfers, const Address& producer);

// Drops irrelevant addresses and restricts the rest to the trader set.
// EmptyTraderSetError when nothing remains to assess.
BalanceLedger rmv_irr_addr(const BalanceLedger& ledger, const TraderContext& ctx);

// Sums the filtered ledger into per-token nets and accumulates swap flows
// for swaps attributable to a trader (pool received the input from, or sent
// the output to, a trader address per the transfers).
TokenChange aggr_tkn_change(const BalanceLedger& filtered, const std::vector<Swap>& swaps,
                            const std::vector<TransferRecord>& transfers, const TraderContext& ctx);

}  // namespace mevlens
