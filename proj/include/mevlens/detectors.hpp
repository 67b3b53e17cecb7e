#pragma once

#include <optional>

#include "mevlens/profitability.hpp"
#include "mevlens/sim.hpp"

namespace mevlens {

enum class RunningKind { front, back, unknown };

struct DetectorParams {
    Epsilon eps;
    RouteLimits limits;
    // Test hook for the legacy-comparison harness: when false, cycle-bearing
    // transactions are reported without the profitability gate.
    bool profit_gate = true;
};

struct ArbitrageFinding {
    Hash32 tx;
    std::int64_t block = 0;
    std::int64_t tx_index = 0;
    std::vector<Swap> swaps;
    ProfitVerdict verdict;
    RunningKind running = RunningKind::unknown;
    std::map<Address, Int> revenue;  // positive residual per token, pre-fee
    std::vector<std::string> warnings;
    bool toxic_overlap = false;  // shares a transaction with a sandwich finding
};

enum class SandwichShape { normal, multi_layered_burger, conjoined };

struct SandwichFinding {
    std::int64_t block = 0;
    std::vector<std::int64_t> attack_indices;  // ascending tx_index
    std::vector<Hash32> attack_txs;
    std::vector<std::int64_t> victim_indices;
    std::vector<Hash32> victim_txs;
    SandwichShape kind = SandwichShape::normal;
    bool toxic = false;
    ProfitVerdict verdict;
    std::set<Address> pools;
    std::vector<std::string> warnings;
};

// Direction of a swap on a pool.
using SwapDirection = std::pair<Address, Address>;  // (token_in, token_out)

struct AttackPair {
    std::int64_t front_index = 0;
    std::int64_t back_index = 0;
    std::vector<std::int64_t> victim_indices;
    std::set<std::pair<Address, SwapDirection>> pool_evidence;
};

struct AttackGroup {
    std::vector<std::int64_t> attack_indices;  // sorted, deduped
    std::vector<std::int64_t> victim_indices;
    std::set<Address> pools;
    bool conjoined = false;  // more than two attack transactions merged
};

// Cycle-gated, profitability-gated arbitrage identification on a single
// transaction. Swap order within the transaction is irrelevant. Decode
// problems shrink the swap set and surface as warnings on the finding.
std::optional<ArbitrageFinding> identify_arbitrage(const TransactionRecord& tx, const Address& producer,
                                                   const PatternRegistry& registry, const DetectorParams& params);

// Replays the finding's transaction at the top of its block: still an
// arbitrage -> front-running, otherwise back-running. A missing oracle or an
// unavailable replay yields unknown, never an abort.
RunningKind classify_running(const ArbitrageFinding& finding, const Block& block, const ReplayOracle* oracle,
                             const PatternRegistry& registry, const DetectorParams& params);

// True iff a transaction that is not an arbitrage in place becomes one when
// replayed at the top of its block. Throws ReplayUnavailableError when the
// oracle has no state for the block.
bool detect_failed_frontrun(const TransactionRecord& tx, const Block& block, const ReplayOracle& oracle,
                            const PatternRegistry& registry, const DetectorParams& params);

// Connected components over the shares-a-transaction relation.
std::vector<AttackGroup> combine_attacks(const std::vector<AttackPair>& pairs);

// Full in-block sandwich scan: candidate pairs by (pool, shared address,
// direction), aggregation via combine_attacks, profitability over the attack
// transactions only.
std::vector<SandwichFinding> identify_sandwiches(const Block& block, const PatternRegistry& registry,
                                                 const DetectorParams& params);

// Flags sandwiches whose attack transaction doubles as a profitable
// arbitrage; the overlapping arbitrage finding carries the shared identity so
// totals can deduplicate.
void mark_toxic(std::vector<ArbitrageFinding>& arbs, std::vector<SandwichFinding>& sandwiches);

}  // namespace mevlens
