#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mevlens/registry.hpp"

namespace mevlens {

// Behavioral replay contract: what would tx yield if executed alone at the
// top of its block (previous block's end state)? A forked-node re-executor
// can stand behind the same interface.
class ReplayOracle {
  public:
    virtual ~ReplayOracle() = default;
    virtual TransactionRecord replay_at_top(const Block& block, const TransactionRecord& tx) const = 0;
};

enum class PoolEventStyle { pair, concentrated, order_fill, multi_asset };

PoolEventStyle pool_event_style_from_string(std::string_view s);
std::string pool_event_style_to_string(PoolEventStyle s);

struct AmmPool {
    Address address;
    Address token0;
    Address token1;
    U256 reserve0;
    U256 reserve1;
    std::uint32_t fee_num = 997;
    std::uint32_t fee_den = 1000;
    PoolEventStyle style = PoolEventStyle::pair;

    bool has_token(const Address& t) const { return t == token0 || t == token1; }
    const U256& reserve_of(const Address& t) const { return t == token0 ? reserve0 : reserve1; }
    const Address& other_token(const Address& t) const { return t == token0 ? token1 : token0; }
};

// Constant-product swap with the fee retained in the pool:
//   a   = floor(amount_in * fee_num / fee_den)
//   out = floor(reserve_out * a / (reserve_in + a))
// Reserves are updated in place; the product reserve0*reserve1 never
// decreases. Throws InsufficientLiquidityError when the output floors to 0.
U256 sim_swap(AmmPool& pool, const Address& token_in, const U256& amount_in);

struct TxAction {
    enum class Op { swap, wrap, unwrap, transfer, native_transfer };
    enum class AmountMode { absolute, prev_output, all };

    Op op = Op::swap;
    Address pool;          // swap
    Address token;         // swap input token / transfer token
    Address counterparty;  // transfer / native_transfer recipient
    AmountMode amount_mode = AmountMode::absolute;
    U256 amount;
};

struct MinNetGuard {
    Address token;
    Int min_delta;  // end-of-tx balance delta must be >= this or the tx reverts
};

struct TxIntent {
    Hash32 hash;
    std::int64_t block_number = 0;
    std::int64_t tx_index = 0;
    Address from;
    std::optional<Address> to;
    Address actor;  // whose balances move (searcher contract or user EOA)
    std::uint64_t gas_used = 0;
    std::uint64_t effective_gas_price = 0;
    U256 coinbase_transfer;
    std::vector<TxAction> actions;
    std::vector<MinNetGuard> guards;
};

// Deterministic AMM chain. Value semantics: a copy is a snapshot. Account
// balances are tracked as signed deltas against an implicit large faucet
// baseline, so synthetic actors never bottom out; pools carry the real
// economic state.
class SimChain {
  public:
    std::map<Address, AmmPool> pools;
    std::map<Address, std::map<Address, Int>> balances;  // deltas from baseline
    Address wrapped_token;         // the W contract; wrap/unwrap 1:1 with native
    Address order_fill_exchange;   // emitter for order-fill style events
    Address multi_asset_vault;     // emitter for multi-asset style events
    std::int64_t block_number = 0;

    // Executes the intent, committing state only on success. A failed guard
    // or action yields a failed record (no logs, traces flagged reverted)
    // and leaves the chain untouched.
    TransactionRecord apply_tx(const TxIntent& intent);

    Int balance_delta(const Address& who, const Address& token) const;
};

// Snapshot-backed oracle over generator intents.
class SimReplayOracle : public ReplayOracle {
  public:
    void add_snapshot(std::int64_t block_number, SimChain state);
    void add_intent(const TxIntent& intent);

    TransactionRecord replay_at_top(const Block& block, const TransactionRecord& tx) const override;

  private:
    std::map<std::int64_t, SimChain> block_start_;
    std::map<Hash32, TxIntent> intents_;
};

// Sidecar state file: one world line (pools + special addresses) followed by
// one line per transaction intent. Lets `detect --replay sim` rebuild block
// start snapshots for any corpus the generator emitted.
void write_sim_state(const std::string& path, const SimChain& initial, const std::vector<TxIntent>& intents);

struct SimStateFile {
    SimChain initial;
    std::vector<TxIntent> intents;
};
SimStateFile read_sim_state(const std::string& path);

// Replays the intent stream to snapshot every block start.
SimReplayOracle build_oracle_from_state(const SimStateFile& state);

}  // namespace mevlens
