#pragma once

#include "mevlens/flowgraph.hpp"
#include "mevlens/ledger.hpp"

namespace mevlens {

struct Epsilon {
    Rat value{1, 100};  // in [0, 1)

    static Epsilon parse(std::string_view text);
};

struct Conversion {
    Address token_lost;
    Address token_gained;
    U256 amount_converted;  // in units of the gained token
};

struct ProfitVerdict {
    bool profitable = false;
    std::map<Address, Int> residual;  // post-conversion nets
    std::vector<Conversion> conversions;
    bool lower_bound = false;  // a conversion ran on a truncated route set
};

// Covering pass over a token change: every loss whose swap-flow ratio is
// below epsilon is converted into some gain at the best observed route rate;
// profitable iff all residual entries end non-negative. Small instances run
// an exact assignment search so the verdict matches the exhaustive
// pair-ordering semantics; larger ones use the deterministic greedy order
// (losses descending by token address, gains descending by net value).
ProfitVerdict evaluate_token_change(const TokenChange& change, const TokenFlowGraph& g, const Epsilon& eps,
                                    const RouteLimits& limits);

// Algorithm entry point: ledger -> filter -> aggregate -> covering pass.
// Propagates EmptyTraderSetError when no trader address can be assessed.
ProfitVerdict check_profitable(const std::vector<const TransactionRecord*>& txs, const TokenFlowGraph& g,
                               const Epsilon& eps, const TraderContext& ctx, const RouteLimits& limits);

}  // namespace mevlens
