#include "mevlens/ledger.hpp"

namespace mevlens {

void BalanceLedger::apply(const TransferRecord& t) {
    if (t.amount == 0) return;
    Int amount(t.amount);
    deltas[t.from][t.token] -= amount;
    deltas[t.to][t.token] += amount;
}

Int BalanceLedger::delta(const Address& who, const Address& token) const {
    auto it = deltas.find(who);
    if (it == deltas.end()) return 0;
    auto jt = it->second.find(token);
    return jt == it->second.end() ? Int(0) : jt->second;
}

BalanceLedger get_bal_change(const std::vector<const TransactionRecord*>& txs) {
    BalanceLedger ledger;
    for (const auto* tx : txs) {
        auto decoded = decode_transfers(*tx);
        for (const auto& t : decoded.transfers) ledger.apply(t);
    }
    return ledger;
}

BalanceLedger get_bal_change(const TransactionRecord& tx) { return get_bal_change({&tx}); }

TraderContext resolve_trader_context(const std::vector<const TransactionRecord*>& txs, const std::vector<Swap>& swaps,
                                     const std::vector<TransferRecord>& transfers, const Address& producer) {
    TraderContext ctx;
    for (const auto* tx : txs) {
        ctx.trader_addresses.insert(tx->from);
        if (tx->to) ctx.trader_addresses.insert(*tx->to);
    }
    for (const auto& t : transfers) {
        if (t.token != native_token()) ctx.irrelevant_addresses.insert(t.token);
    }
    for (const auto& s : swaps) ctx.irrelevant_addresses.insert(s.pool);
    for (const auto* tx : txs) {
        for (const auto& log : tx->logs) {
            if (log.topics.empty() || log.topics[0] == transfer_topic()) continue;
            for (const auto& s : swaps) {
                if (s.log_index == log.log_index && s.tx_hash == tx->hash) {
                    ctx.irrelevant_addresses.insert(log.emitter);
                    break;
                }
            }
        }
    }
    ctx.irrelevant_addresses.insert(zero_address());
    ctx.irrelevant_addresses.insert(dead_address());
    ctx.irrelevant_addresses.insert(producer);
    // Conflicts resolve to irrelevant: pool inventory is not trader profit.
    for (const auto& a : ctx.irrelevant_addresses) ctx.trader_addresses.erase(a);
    return ctx;
}

BalanceLedger rmv_irr_addr(const BalanceLedger& ledger, const TraderContext& ctx) {
    BalanceLedger filtered;
    for (const auto& [addr, tokens] : ledger.deltas) {
        if (ctx.irrelevant_addresses.count(addr)) continue;
        if (!ctx.trader_addresses.count(addr)) continue;
        filtered.deltas.emplace(addr, tokens);
    }
    if (filtered.deltas.empty())
        throw EmptyTraderSetError("no trader address retained; transaction cannot be assessed");
    return filtered;
}

TokenChange aggr_tkn_change(const BalanceLedger& filtered, const std::vector<Swap>& swaps,
                            const std::vector<TransferRecord>& transfers, const TraderContext& ctx) {
    TokenChange change;
    for (const auto& [addr, tokens] : filtered.deltas) {
        (void)addr;
        for (const auto& [token, delta] : tokens) change.net[token] += delta;
    }
    for (const auto& s : swaps) {
        bool attributed = false;
        for (const auto& t : transfers) {
            if (t.token == s.token_in && t.to == s.pool && ctx.trader_addresses.count(t.from)) {
                attributed = true;
                break;
            }
            if (t.token == s.token_out && t.from == s.pool && ctx.trader_addresses.count(t.to)) {
                attributed = true;
                break;
            }
        }
        if (!attributed) continue;
        change.flow_out[s.token_in] += s.amount_in;
        change.flow_in[s.token_out] += s.amount_out;
    }
    return change;
}

}  // namespace mevlens
