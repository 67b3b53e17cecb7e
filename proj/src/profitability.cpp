#include "mevlens/profitability.hpp"

#include <algorithm>

namespace mevlens {

Epsilon Epsilon::parse(std::string_view text) {
    Epsilon e;
    e.value = parse_rational(text);
    if (e.value < 0 || e.value >= 1) throw SchemaError("epsilon must lie in [0, 1): " + std::string(text));
    return e;
}

namespace {

// ratio = (received - spent) / spent over the trader's swap flows; a loss
// with no swap outflow counts as ratio -1 so the conversion is attempted.
bool ratio_below_epsilon(const TokenChange& change, const Address& token, const Epsilon& eps) {
    auto out_it = change.flow_out.find(token);
    U256 spent = out_it == change.flow_out.end() ? U256(0) : out_it->second;
    if (spent == 0) return true;
    auto in_it = change.flow_in.find(token);
    U256 received = in_it == change.flow_in.end() ? U256(0) : in_it->second;
    Int num = Int(received) - Int(spent);
    // num / spent < eps  <=>  num * eps_den < eps_num * spent
    return num * denominator(eps.value) < numerator(eps.value) * Int(spent);
}

struct ConversionPlan {
    std::optional<ExchangeOutcome> outcome;  // nullopt: no route
};

struct Instance {
    std::vector<Address> losses;             // ratio-gated, convertible candidates
    std::vector<Address> blocked_losses;     // ratio gate failed: can never be covered
    std::vector<Address> gains;
    std::map<Address, Int> net;
    // plan[i][k]: converting the full loss i into gain k.
    std::vector<std::vector<ConversionPlan>> plan;
};

Instance build_instance(const TokenChange& change, const TokenFlowGraph& g, const Epsilon& eps,
                        const RouteLimits& limits) {
    Instance inst;
    inst.net = change.net;
    for (const auto& [token, net] : change.net) {
        if (net < 0) {
            if (ratio_below_epsilon(change, token, eps))
                inst.losses.push_back(token);
            else
                inst.blocked_losses.push_back(token);
        } else if (net > 0) {
            inst.gains.push_back(token);
        }
    }
    // Losses descending by token address; the full original loss is always
    // the conversion input because losses are only ever zeroed outright.
    std::sort(inst.losses.begin(), inst.losses.end(), [](const Address& a, const Address& b) { return b < a; });
    inst.plan.resize(inst.losses.size());
    for (std::size_t i = 0; i < inst.losses.size(); ++i) {
        inst.plan[i].resize(inst.gains.size());
        U256 ex_input = U256(-inst.net.at(inst.losses[i]));
        for (std::size_t k = 0; k < inst.gains.size(); ++k) {
            if (inst.losses[i] == inst.gains[k]) continue;
            inst.plan[i][k].outcome = exchange_token(inst.losses[i], inst.gains[k], g, ex_input, limits);
        }
    }
    return inst;
}

// Applies an assignment loss->gain to the verdict. Assumes feasibility was
// already established (strict capacity at every step).
void apply_assignment(const Instance& inst, const std::vector<std::size_t>& assignment, ProfitVerdict* verdict) {
    for (std::size_t i = 0; i < inst.losses.size(); ++i) {
        std::size_t k = assignment[i];
        const auto& outcome = inst.plan[i][k].outcome;
        verdict->residual[inst.gains[k]] -= Int(outcome->amount);
        verdict->residual[inst.losses[i]] = 0;
        verdict->conversions.push_back({inst.losses[i], inst.gains[k], outcome->amount});
        if (outcome->truncated) verdict->lower_bound = true;
    }
}

// Exhaustive assignment search. Order within one gain does not matter (the
// strict capacity test over every prefix reduces to the strict test on the
// total), so trying assignments covers every pair ordering of the loop.
bool search_assignment(const Instance& inst, std::size_t loss_idx, std::vector<Int>& remaining,
                       std::vector<std::size_t>& chosen) {
    if (loss_idx == inst.losses.size()) return true;
    for (std::size_t k = 0; k < inst.gains.size(); ++k) {
        const auto& outcome = inst.plan[loss_idx][k].outcome;
        if (!outcome) continue;
        Int amount = Int(outcome->amount);
        if (remaining[k] - amount <= 0) continue;  // strict, per the covering test
        remaining[k] -= amount;
        chosen[loss_idx] = k;
        if (search_assignment(inst, loss_idx + 1, remaining, chosen)) return true;
        remaining[k] += amount;
    }
    return false;
}

void run_greedy(const Instance& inst, ProfitVerdict* verdict) {
    for (std::size_t i = 0; i < inst.losses.size(); ++i) {
        // Gains in descending current-net order, ties broken by address.
        std::vector<std::size_t> order;
        for (std::size_t k = 0; k < inst.gains.size(); ++k) order.push_back(k);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const Int& na = verdict->residual.at(inst.gains[a]);
            const Int& nb = verdict->residual.at(inst.gains[b]);
            if (na != nb) return na > nb;
            return inst.gains[b] < inst.gains[a];
        });
        for (std::size_t k : order) {
            const auto& outcome = inst.plan[i][k].outcome;
            if (!outcome) continue;
            Int amount = Int(outcome->amount);
            Int& gain_net = verdict->residual.at(inst.gains[k]);
            if (gain_net - amount <= 0) continue;
            gain_net -= amount;
            verdict->residual[inst.losses[i]] = 0;
            verdict->conversions.push_back({inst.losses[i], inst.gains[k], outcome->amount});
            if (outcome->truncated) verdict->lower_bound = true;
            break;
        }
    }
}

}  // namespace

ProfitVerdict evaluate_token_change(const TokenChange& change, const TokenFlowGraph& g, const Epsilon& eps,
                                    const RouteLimits& limits) {
    ProfitVerdict verdict;
    verdict.residual = change.net;

    Instance inst = build_instance(change, g, eps, limits);

    constexpr std::size_t kExactLossCap = 4;
    constexpr std::size_t kExactPairCap = 16;
    bool exact = inst.losses.size() <= kExactLossCap && inst.losses.size() * inst.gains.size() <= kExactPairCap;

    bool covered = false;
    if (exact && !inst.losses.empty()) {
        std::vector<Int> remaining;
        for (const auto& gain : inst.gains) remaining.push_back(inst.net.at(gain));
        std::vector<std::size_t> chosen(inst.losses.size());
        if (search_assignment(inst, 0, remaining, chosen)) {
            apply_assignment(inst, chosen, &verdict);
            covered = true;
        }
    }
    if (!covered && !inst.losses.empty()) run_greedy(inst, &verdict);

    verdict.profitable = true;
    for (const auto& [token, net] : verdict.residual) {
        (void)token;
        if (net < 0) {
            verdict.profitable = false;
            break;
        }
    }
    return verdict;
}

ProfitVerdict check_profitable(const std::vector<const TransactionRecord*>& txs, const TokenFlowGraph& g,
                               const Epsilon& eps, const TraderContext& ctx, const RouteLimits& limits) {
    std::vector<TransferRecord> transfers;
    for (const auto* tx : txs) {
        auto decoded = decode_transfers(*tx);
        transfers.insert(transfers.end(), decoded.transfers.begin(), decoded.transfers.end());
    }
    BalanceLedger ledger = get_bal_change(txs);
    BalanceLedger filtered = rmv_irr_addr(ledger, ctx);
    TokenChange change = aggr_tkn_change(filtered, g.edges(), transfers, ctx);
    return evaluate_token_change(change, g, eps, limits);
}

}  // namespace mevlens
