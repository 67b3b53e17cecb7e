#include "mevlens/generator.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

namespace mevlens {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kGwei = 1000000000ull;

// All schedule and sizing draws flow through one deterministic source so a
// fixed seed reproduces the corpus byte for byte.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t u64() { return gen_(); }

    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {  // inclusive
        return lo + u64() % (hi - lo + 1);
    }

    U256 amount(const U256& lo, const U256& hi) {
        Int span = Int(hi) - Int(lo) + 1;
        Int draw = ((Int(u64()) << 64) | Int(u64())) % span;
        return U256(Int(lo) + draw);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[range(0, i - 1)]);
    }

  private:
    std::mt19937_64 gen_;
};

Address make_address(std::uint8_t tag, std::uint64_t n) {
    Address a;
    a.bytes[0] = tag;
    for (int i = 0; i < 8; ++i) a.bytes[19 - i] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xff);
    return a;
}

Hash32 make_tx_hash(std::int64_t block, std::int64_t tx_index, std::uint64_t salt) {
    Hash32 h;
    h.bytes[0] = 0x7a;
    for (int i = 0; i < 8; ++i) {
        h.bytes[8 + i] = static_cast<std::uint8_t>((static_cast<std::uint64_t>(block) >> (8 * (7 - i))) & 0xff);
        h.bytes[16 + i] = static_cast<std::uint8_t>((static_cast<std::uint64_t>(tx_index) >> (8 * (7 - i))) & 0xff);
        h.bytes[24 + i] = static_cast<std::uint8_t>((salt >> (8 * (7 - i))) & 0xff);
    }
    return h;
}

struct World {
    Address wrapped;
    std::vector<Address> tokens;
    std::vector<Address> main_pool;                   // (W, Ti), one per token
    std::vector<Address> alt_pool;                    // parallel (W, Ti) for the first few tokens
    std::map<std::pair<int, int>, Address> ring_pool; // (Ti, Ti+1)
    std::vector<Address> builders;
    int alt_count = 0;
};

PoolEventStyle style_for(std::size_t ordinal) {
    switch (ordinal % 8) {
        case 3: return PoolEventStyle::concentrated;
        case 5: return PoolEventStyle::order_fill;
        case 7: return PoolEventStyle::multi_asset;
        default: return PoolEventStyle::pair;
    }
}

World build_world(SimChain* chain, int n_tokens, Rng* rng) {
    World world;
    world.wrapped = make_address(0x11, 0);
    chain->wrapped_token = world.wrapped;
    chain->order_fill_exchange = make_address(0x61, 1);
    chain->multi_asset_vault = make_address(0x61, 2);
    for (int b = 0; b < 4; ++b) world.builders.push_back(make_address(0x51, b));

    for (int i = 0; i < n_tokens; ++i) world.tokens.push_back(make_address(0x12, i + 1));
    world.alt_count = std::max(2, n_tokens / 2);

    std::size_t pool_ordinal = 0;
    auto add_pool = [&](const Address& a, const Address& b, const U256& ra, const U256& rb) {
        AmmPool pool;
        pool.address = make_address(0x21, pool_ordinal + 1);
        pool.style = style_for(pool_ordinal);
        ++pool_ordinal;
        if (a < b) {
            pool.token0 = a;
            pool.token1 = b;
            pool.reserve0 = ra;
            pool.reserve1 = rb;
        } else {
            pool.token0 = b;
            pool.token1 = a;
            pool.reserve0 = rb;
            pool.reserve1 = ra;
        }
        chain->pools.emplace(pool.address, pool);
        return pool.address;
    };

    const U256 unit("0x3635c9adc5dea00000");  // 1000 * 1e18
    std::vector<U256> w_side(n_tokens), t_side(n_tokens);
    for (int i = 0; i < n_tokens; ++i) {
        w_side[i] = rng->amount(unit / 2, unit * 3);
        U256 mult = U256(rng->range(1, 4));
        t_side[i] = w_side[i] * mult;
        world.main_pool.push_back(add_pool(world.wrapped, world.tokens[i], w_side[i], t_side[i]));
    }
    for (int i = 0; i < world.alt_count; ++i) {
        // Same price as the main pool so no cycle opens spontaneously.
        U256 scale_num = U256(rng->range(40, 90));
        U256 aw = w_side[i] * scale_num / 100;
        U256 at = U256(Int(aw) * Int(t_side[i]) / Int(w_side[i]));
        world.alt_pool.push_back(add_pool(world.wrapped, world.tokens[i], aw, at));
    }
    for (int i = 0; i + 1 < std::min(n_tokens, 5); ++i) {
        // Cross rate consistent with the two main pools.
        U256 ri = t_side[i] / 2;
        U256 rj = U256(Int(ri) * Int(w_side[i]) * Int(t_side[i + 1]) / (Int(t_side[i]) * Int(w_side[i + 1])));
        world.ring_pool[{i, i + 1}] = add_pool(world.tokens[i], world.tokens[i + 1], ri, rj);
    }
    return world;
}

// ---------------------------------------------------------------------------
// Cycle and sandwich simulation against scratch copies.

struct CyclePlan {
    std::vector<Address> pools;
    std::vector<Address> token_in;  // per hop; hop 0 starts at W, last hop ends at W
};

Int cycle_profit(const SimChain& chain, const CyclePlan& plan, const U256& input) {
    SimChain scratch = chain;
    try {
        U256 amt = input;
        for (std::size_t h = 0; h < plan.pools.size(); ++h)
            amt = sim_swap(scratch.pools.at(plan.pools[h]), plan.token_in[h], amt);
        return Int(amt) - Int(input);
    } catch (const std::exception&) {
        return -(Int(1) << 200);
    }
}

void apply_cycle(SimChain* chain, const CyclePlan& plan, const U256& input) {
    U256 amt = input;
    for (std::size_t h = 0; h < plan.pools.size(); ++h)
        amt = sim_swap(chain->pools.at(plan.pools[h]), plan.token_in[h], amt);
}

struct SandwichPlan {
    Address pool;
    Address token;  // victims buy this with W
    U256 front_w;
    std::vector<U256> victims_w;
    int backs = 1;  // conjoined uses 2 back legs
};

// Mirrors the emission order exactly: the conjoined shape sells half between
// the two victim groups, the others sell everything after all victims.
Int sandwich_profit(const SimChain& chain, const World& world, const SandwichPlan& p) {
    SimChain scratch = chain;
    try {
        AmmPool& pool = scratch.pools.at(p.pool);
        U256 bought = sim_swap(pool, world.wrapped, p.front_w);
        Int w_back = 0;
        if (p.backs == 1) {
            for (const auto& v : p.victims_w) sim_swap(pool, world.wrapped, v);
            w_back = Int(sim_swap(pool, p.token, bought));
        } else {
            std::size_t first_half = (p.victims_w.size() + 1) / 2;
            for (std::size_t v = 0; v < first_half; ++v) sim_swap(pool, world.wrapped, p.victims_w[v]);
            w_back = Int(sim_swap(pool, p.token, bought / 2));
            for (std::size_t v = first_half; v < p.victims_w.size(); ++v) sim_swap(pool, world.wrapped, p.victims_w[v]);
            w_back += Int(sim_swap(pool, p.token, bought - bought / 2));
        }
        return w_back - Int(p.front_w);
    } catch (const std::exception&) {
        return -(Int(1) << 200);
    }
}

// ---------------------------------------------------------------------------
// Scheduling.

struct PlannedInjection {
    InjectionSpec::Kind kind;
    std::int64_t block = 0;
    int victims = 1;
    CyclePlan cycle;       // arbitrage kinds
    Address sandwich_pool; // sandwich kinds
    Address sandwich_token;
    Address setup_pool;    // pool pushed by the setup/enabling trade
    Address setup_token;
};

struct BenignTask {
    enum class Kind { swap, transfer, wrap, decoy, failed };
    Kind kind = Kind::swap;
    CyclePlan decoy_cycle;
};

struct BlockTasks {
    std::optional<PlannedInjection> injection;
    std::vector<BenignTask> tasks;
};

// Labels are assembled after execution, once hashes and realized profits
// are known.
struct PendingLabel {
    std::string kind;
    Address actor;
    std::vector<std::size_t> attack_positions;
    std::vector<std::size_t> victim_positions;
};

struct TxTemplate {
    TxIntent intent;  // hash/block/index filled at emission
    bool is_benign_decoy = false;
};

constexpr std::uint64_t kMinProfitWei = 50000000000000000ull;  // 0.05 native units

std::uint64_t gas_for_actions(const std::vector<TxAction>& actions) {
    std::uint64_t gas = 21000;
    for (const auto& a : actions) {
        switch (a.op) {
            case TxAction::Op::swap: gas += 65000; break;
            case TxAction::Op::wrap:
            case TxAction::Op::unwrap: gas += 30000; break;
            case TxAction::Op::transfer: gas += 12000; break;
            case TxAction::Op::native_transfer: gas += 9000; break;
        }
    }
    return gas;
}

}  // namespace

std::string injection_kind_to_string(InjectionSpec::Kind k) {
    switch (k) {
        case InjectionSpec::Kind::arbitrage_front: return "arbitrage_front";
        case InjectionSpec::Kind::arbitrage_back: return "arbitrage_back";
        case InjectionSpec::Kind::sandwich_normal: return "sandwich_normal";
        case InjectionSpec::Kind::sandwich_burger: return "sandwich_burger";
        case InjectionSpec::Kind::sandwich_conjoined: return "sandwich_conjoined";
        case InjectionSpec::Kind::failed_frontrun: return "failed_frontrun";
        case InjectionSpec::Kind::benign: return "benign";
    }
    return "benign";
}

InjectionSpec::Kind injection_kind_from_string(std::string_view s) {
    if (s == "arbitrage_front") return InjectionSpec::Kind::arbitrage_front;
    if (s == "arbitrage_back") return InjectionSpec::Kind::arbitrage_back;
    if (s == "sandwich_normal") return InjectionSpec::Kind::sandwich_normal;
    if (s == "sandwich_burger") return InjectionSpec::Kind::sandwich_burger;
    if (s == "sandwich_conjoined") return InjectionSpec::Kind::sandwich_conjoined;
    if (s == "failed_frontrun") return InjectionSpec::Kind::failed_frontrun;
    if (s == "benign") return InjectionSpec::Kind::benign;
    throw SchemaError("unknown injection kind: " + std::string(s));
}

GeneratorConfig GeneratorConfig::scaled_profile(std::int64_t n_blocks, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n_blocks = n_blocks;
    auto scaled = [&](int per_thousand) { return std::max(1, static_cast<int>(n_blocks * per_thousand / 1000)); };
    cfg.injections = {
        {InjectionSpec::Kind::arbitrage_front, scaled(20), 1, 2},
        {InjectionSpec::Kind::arbitrage_back, scaled(18), 1, 2},
        {InjectionSpec::Kind::sandwich_normal, scaled(22), 1, 2},
        {InjectionSpec::Kind::sandwich_burger, scaled(16), 3, 2},
        {InjectionSpec::Kind::sandwich_conjoined, scaled(14), 3, 2},
        {InjectionSpec::Kind::failed_frontrun, scaled(12), 1, 2},
    };
    cfg.benign.swaps = scaled(300);
    cfg.benign.transfers = scaled(90);
    cfg.benign.wraps = scaled(60);
    cfg.benign.decoy_cycles = scaled(90);
    cfg.benign.failed = scaled(12);
    return cfg;
}

std::string serialize_label(const LabelRecord& label) {
    json j;
    j["block"] = label.block;
    json txs = json::array();
    for (const auto& h : label.tx_hashes) txs.push_back(to_hex(h));
    j["txHashes"] = std::move(txs);
    json victims = json::array();
    for (const auto& h : label.victim_tx_hashes) victims.push_back(to_hex(h));
    j["victimTxHashes"] = std::move(victims);
    j["kind"] = label.kind;
    j["expectedProfitToken"] = to_hex(label.expected_profit_token);
    j["expectedProfitAmount"] = label.expected_profit_amount.str();
    return j.dump();
}

LabelRecord parse_label_line(const std::string& line) {
    json j = json::parse(line);
    LabelRecord label;
    label.block = j.at("block").get<std::int64_t>();
    for (const auto& h : j.at("txHashes")) label.tx_hashes.push_back(hash_from_hex(h.get<std::string>()));
    for (const auto& h : j.at("victimTxHashes")) label.victim_tx_hashes.push_back(hash_from_hex(h.get<std::string>()));
    label.kind = j.at("kind").get<std::string>();
    label.expected_profit_token = address_from_hex(j.at("expectedProfitToken").get<std::string>());
    label.expected_profit_amount = Int(j.at("expectedProfitAmount").get<std::string>());
    return label;
}

std::vector<LabelRecord> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open labels file: " + path);
    std::vector<LabelRecord> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        labels.push_back(parse_label_line(line));
    }
    return labels;
}

GeneratorConfig load_generator_specs(const std::string& path, std::int64_t n_blocks, std::uint64_t seed,
                                     const std::string& out_dir) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open specs file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    GeneratorConfig cfg = GeneratorConfig::scaled_profile(n_blocks, seed);
    cfg.out_dir = out_dir;
    if (j.contains("world") && j["world"].contains("tokens")) cfg.world_tokens = j["world"]["tokens"].get<int>();
    if (j.contains("injections")) {
        cfg.injections.clear();
        for (const auto& inj : j["injections"]) {
            InjectionSpec spec;
            spec.kind = injection_kind_from_string(inj.at("kind").get<std::string>());
            spec.count = inj.value("count", 1);
            spec.victims = inj.value("victims", spec.kind == InjectionSpec::Kind::sandwich_burger ? 3 : 1);
            spec.hops = inj.value("hops", 2);
            cfg.injections.push_back(spec);
        }
    }
    if (j.contains("benign")) {
        const auto& b = j["benign"];
        cfg.benign.swaps = b.value("swaps", cfg.benign.swaps);
        cfg.benign.transfers = b.value("transfers", cfg.benign.transfers);
        cfg.benign.wraps = b.value("wraps", cfg.benign.wraps);
        cfg.benign.decoy_cycles = b.value("decoyCycles", cfg.benign.decoy_cycles);
        cfg.benign.failed = b.value("failed", cfg.benign.failed);
    }
    cfg.self_check = j.value("selfCheck", true);
    return cfg;
}

namespace {

// ---------------------------------------------------------------------------
// The generator proper.

class CorpusBuilder {
  public:
    CorpusBuilder(const GeneratorConfig& config)
        : config_(config), rng_(config.seed), chain_(), world_(build_world(&chain_, config.world_tokens, &rng_)) {}

    GeneratorResult run();

  private:
    const GeneratorConfig& config_;
    Rng rng_;
    SimChain chain_;
    World world_;
    std::map<std::int64_t, std::set<Address>> claims_;
    std::map<std::int64_t, BlockTasks> schedule_;
    std::map<Address, std::pair<Address, U256>> pending_reverse_;  // pool -> (token bought, amount)
    std::uint64_t actor_counter_ = 0;
    std::uint64_t hash_salt_ = 0;
    std::vector<TxIntent> all_intents_;
    std::vector<LabelRecord> labels_;
    SimReplayOracle oracle_;
    DetectorParams detector_params_;
    PatternRegistry registry_ = PatternRegistry::builtin();
    std::size_t benign_emitted_ = 0;
    std::size_t decoys_emitted_ = 0;
    std::size_t tx_count_ = 0;

    Address fresh_address(std::uint8_t tag) { return make_address(tag, ++actor_counter_); }

    bool pool_free(std::int64_t block, const Address& pool) const {
        auto it = claims_.find(block);
        return it == claims_.end() || !it->second.count(pool);
    }

    void claim(std::int64_t block, const Address& pool) { claims_[block].insert(pool); }

    CyclePlan make_cycle_plan(int token_idx, int hops) const {
        CyclePlan plan;
        if (hops == 3 && world_.ring_pool.count({token_idx, token_idx + 1})) {
            plan.pools = {world_.main_pool[token_idx], world_.ring_pool.at({token_idx, token_idx + 1}),
                          world_.main_pool[token_idx + 1]};
            plan.token_in = {world_.wrapped, world_.tokens[token_idx], world_.tokens[token_idx + 1]};
        } else {
            plan.pools = {world_.main_pool[token_idx], world_.alt_pool[token_idx]};
            plan.token_in = {world_.wrapped, world_.tokens[token_idx]};
        }
        return plan;
    }

    bool plan_free(const CyclePlan& plan, std::int64_t first_block, std::int64_t last_block) const {
        for (std::int64_t b = first_block; b <= last_block; ++b)
            for (const auto& p : plan.pools)
                if (!pool_free(b, p)) return false;
        return true;
    }

    void schedule();
    void schedule_injection(PlannedInjection inj);
    void schedule_decoy(int attempt_budget);

    TxTemplate benign_swap_template(std::int64_t block);
    TxTemplate benign_transfer_template();
    TxTemplate benign_wrap_template();
    TxTemplate benign_failed_template();
    TxTemplate decoy_template(const CyclePlan& plan);
    TxTemplate cycle_tx_template(const CyclePlan& plan, const U256& input, bool guarded);
    TxTemplate victim_swap_template(const Address& pool, const U256& amount_w);
    TxTemplate setup_push_template(const Address& pool, const Address& token, const U256& amount);

    void emit_block(std::int64_t number);
    std::vector<TxTemplate> build_injection_txs(PlannedInjection& inj, std::vector<PendingLabel>* pending,
                                                std::size_t base_position, std::int64_t block);
    void self_check_block(const Block& block, const std::vector<LabelRecord>& block_labels);

    U256 reserve_of(const Address& pool, const Address& token) const { return chain_.pools.at(pool).reserve_of(token); }

    std::ofstream blocks_out_;
    std::ofstream labels_out_;
};

void CorpusBuilder::schedule() {
    std::vector<PlannedInjection> planned;
    for (const auto& spec : config_.injections) {
        if (spec.kind == InjectionSpec::Kind::benign) continue;
        for (int c = 0; c < spec.count; ++c) {
            PlannedInjection inj;
            inj.kind = spec.kind;
            inj.victims = std::max(spec.kind == InjectionSpec::Kind::sandwich_burger ? 2 : 1, spec.victims);
            if (spec.kind == InjectionSpec::Kind::sandwich_normal) inj.victims = 1;
            planned.push_back(inj);
        }
    }
    rng_.shuffle(planned);
    if (!planned.empty()) {
        std::int64_t usable = config_.n_blocks - 2;
        std::int64_t step = usable / static_cast<std::int64_t>(planned.size());
        if (step < 2)
            throw SpecInfeasibleError("not enough blocks for " + std::to_string(planned.size()) + " injections");
        for (std::size_t i = 0; i < planned.size(); ++i) {
            planned[i].block = 2 + static_cast<std::int64_t>(i) * step;
            schedule_injection(planned[i]);
        }
    }
    for (int d = 0; d < config_.benign.decoy_cycles; ++d) schedule_decoy(64);

    auto spread = [&](int count, BenignTask::Kind kind) {
        for (int i = 0; i < count; ++i) {
            BenignTask task;
            task.kind = kind;
            schedule_[static_cast<std::int64_t>(rng_.range(1, config_.n_blocks))].tasks.push_back(task);
        }
    };
    spread(config_.benign.swaps, BenignTask::Kind::swap);
    spread(config_.benign.transfers, BenignTask::Kind::transfer);
    spread(config_.benign.wraps, BenignTask::Kind::wrap);
    spread(config_.benign.failed, BenignTask::Kind::failed);
}

void CorpusBuilder::schedule_injection(PlannedInjection inj) {
    bool is_arb = inj.kind == InjectionSpec::Kind::arbitrage_front || inj.kind == InjectionSpec::Kind::arbitrage_back ||
                  inj.kind == InjectionSpec::Kind::failed_frontrun;
    bool needs_setup_block =
        inj.kind == InjectionSpec::Kind::arbitrage_front || inj.kind == InjectionSpec::Kind::failed_frontrun;
    std::int64_t first_block = needs_setup_block ? inj.block - 1 : inj.block;

    if (is_arb) {
        int offset = static_cast<int>(rng_.range(0, world_.alt_count - 1));
        for (int probe = 0; probe < world_.alt_count; ++probe) {
            int idx = (offset + probe) % world_.alt_count;
            int hops = (probe % 3 == 2 && world_.ring_pool.count({idx, idx + 1})) ? 3 : 2;
            CyclePlan plan = make_cycle_plan(idx, hops);
            if (!plan_free(plan, first_block, inj.block)) continue;
            inj.cycle = plan;
            inj.setup_pool = plan.pools.front();
            inj.setup_token = world_.tokens[idx];
            for (std::int64_t b = first_block; b <= inj.block; ++b)
                for (const auto& p : plan.pools) claim(b, p);
            auto& slot = schedule_[inj.block];
            if (slot.injection) throw SpecInfeasibleError("two injections scheduled into one block");
            slot.injection = inj;
            return;
        }
        throw SpecInfeasibleError("no free pool set for an arbitrage injection at block " + std::to_string(inj.block));
    }

    int offset = static_cast<int>(rng_.range(0, world_.tokens.size() - 1));
    for (std::size_t probe = 0; probe < world_.tokens.size(); ++probe) {
        int idx = (offset + static_cast<int>(probe)) % static_cast<int>(world_.tokens.size());
        const Address& pool = world_.main_pool[idx];
        if (!pool_free(inj.block, pool)) continue;
        inj.sandwich_pool = pool;
        inj.sandwich_token = world_.tokens[idx];
        claim(inj.block, pool);
        auto& slot = schedule_[inj.block];
        if (slot.injection) throw SpecInfeasibleError("two injections scheduled into one block");
        slot.injection = inj;
        return;
    }
    throw SpecInfeasibleError("no free pool for a sandwich injection at block " + std::to_string(inj.block));
}

void CorpusBuilder::schedule_decoy(int attempt_budget) {
    for (int attempt = 0; attempt < attempt_budget; ++attempt) {
        std::int64_t block = static_cast<std::int64_t>(rng_.range(1, config_.n_blocks));
        int offset = static_cast<int>(rng_.range(0, world_.alt_count - 1));
        for (int probe = 0; probe < world_.alt_count; ++probe) {
            int idx = (offset + probe) % world_.alt_count;
            CyclePlan plan = make_cycle_plan(idx, 2);
            if (!plan_free(plan, block, block)) continue;
            for (const auto& p : plan.pools) claim(block, p);
            BenignTask task;
            task.kind = BenignTask::Kind::decoy;
            task.decoy_cycle = plan;
            schedule_[block].tasks.push_back(task);
            return;
        }
    }
    throw SpecInfeasibleError("could not place an unprofitable-cycle decoy");
}

// ---------------------------------------------------------------------------
// Transaction templates.

TxTemplate CorpusBuilder::benign_swap_template(std::int64_t block) {
    // Noise trades mean-revert per pool: a forward trade stores its output
    // and the next trade on the pool sells it back, so drift never opens a
    // cycle that fees would not close.
    Address pool_addr;
    int offset = static_cast<int>(rng_.range(0, chain_.pools.size() - 1));
    int probe = 0;
    for (const auto& [addr, pool] : chain_.pools) {
        (void)pool;
        if (probe++ < offset) continue;
        if (pool_free(block, addr)) {
            pool_addr = addr;
            break;
        }
    }
    if (pool_addr.is_zero()) {
        for (const auto& [addr, pool] : chain_.pools) {
            (void)pool;
            if (pool_free(block, addr)) {
                pool_addr = addr;
                break;
            }
        }
    }
    if (pool_addr.is_zero()) pool_addr = chain_.pools.begin()->first;  // every pool claimed: accept interference-free noise

    const AmmPool& pool = chain_.pools.at(pool_addr);
    TxAction swap;
    swap.op = TxAction::Op::swap;
    swap.pool = pool_addr;
    auto pending = pending_reverse_.find(pool_addr);
    if (pending != pending_reverse_.end()) {
        swap.token = pending->second.first;
        swap.amount = pending->second.second;
        pending_reverse_.erase(pending);
    } else {
        swap.token = rng_.range(0, 1) == 0 ? pool.token0 : pool.token1;
        const U256& reserve = pool.reserve_of(swap.token);
        swap.amount = rng_.amount(reserve / 5000, reserve / 500);
        SimChain scratch = chain_;
        try {
            U256 out = sim_swap(scratch.pools.at(pool_addr), swap.token, swap.amount);
            pending_reverse_[pool_addr] = {pool.other_token(swap.token), out};
        } catch (const InsufficientLiquidityError&) {
            swap.amount = reserve / 100;
        }
    }

    TxTemplate t;
    t.intent.from = fresh_address(0x31);
    t.intent.to = pool_addr;
    t.intent.actor = t.intent.from;
    t.intent.actions = {swap};
    return t;
}

TxTemplate CorpusBuilder::benign_transfer_template() {
    TxTemplate t;
    TxAction a;
    a.op = TxAction::Op::transfer;
    a.token = world_.tokens[rng_.range(0, world_.tokens.size() - 1)];
    a.counterparty = fresh_address(0x32);
    a.amount = rng_.amount(U256(1000000000000ull), U256("0x8ac7230489e80000"));  // up to 10 units
    t.intent.from = fresh_address(0x31);
    t.intent.to = a.token;
    t.intent.actor = t.intent.from;
    t.intent.actions = {a};
    return t;
}

TxTemplate CorpusBuilder::benign_wrap_template() {
    TxTemplate t;
    TxAction a;
    a.op = rng_.range(0, 1) == 0 ? TxAction::Op::wrap : TxAction::Op::unwrap;
    a.amount = rng_.amount(U256(1000000000000000ull), U256("0x4563918244f40000"));  // up to 5 units
    t.intent.from = fresh_address(0x31);
    t.intent.to = world_.wrapped;
    t.intent.actor = t.intent.from;
    t.intent.actions = {a};
    return t;
}

TxTemplate CorpusBuilder::benign_failed_template() {
    TxTemplate t = benign_transfer_template();
    // Unsatisfiable guard: a pure token transfer never grows the native
    // balance, so the transaction reverts both in place and at the top.
    t.intent.guards = {{native_token(), Int(1)}};
    return t;
}

TxTemplate CorpusBuilder::decoy_template(const CyclePlan& plan) {
    // Pick the losing direction; with aligned prices and fees both lose, a
    // drifted pool can favor at most one.
    CyclePlan forward = plan;
    CyclePlan reverse;
    reverse.pools = {plan.pools[1], plan.pools[0]};
    reverse.token_in = {world_.wrapped, plan.token_in[1]};
    const U256 base = reserve_of(plan.pools[0], world_.wrapped) / 800;
    Int profit_fwd = cycle_profit(chain_, forward, base);
    Int profit_rev = cycle_profit(chain_, reverse, base);
    const CyclePlan& losing = profit_fwd <= profit_rev ? forward : reverse;
    Int losing_profit = std::min(profit_fwd, profit_rev);
    if (losing_profit >= 0) throw SpecInfeasibleError("decoy cycle would be profitable; world drifted");
    TxTemplate t = cycle_tx_template(losing, base, false);
    t.is_benign_decoy = true;
    return t;
}

TxTemplate CorpusBuilder::cycle_tx_template(const CyclePlan& plan, const U256& input, bool guarded) {
    TxTemplate t;
    Address eoa = fresh_address(0x41);
    Address contract = fresh_address(0x42);
    t.intent.from = eoa;
    t.intent.to = contract;
    t.intent.actor = contract;

    TxAction wrap;
    wrap.op = TxAction::Op::wrap;
    wrap.amount = input;
    t.intent.actions.push_back(wrap);
    for (std::size_t h = 0; h < plan.pools.size(); ++h) {
        TxAction swap;
        swap.op = TxAction::Op::swap;
        swap.pool = plan.pools[h];
        swap.token = plan.token_in[h];
        swap.amount_mode = TxAction::AmountMode::prev_output;  // chain off the wrap, then hop to hop
        t.intent.actions.push_back(swap);
    }
    TxAction unwrap;
    unwrap.op = TxAction::Op::unwrap;
    unwrap.amount_mode = TxAction::AmountMode::all;
    t.intent.actions.push_back(unwrap);
    if (guarded) t.intent.guards = {{native_token(), Int(1)}};
    return t;
}

TxTemplate CorpusBuilder::victim_swap_template(const Address& pool, const U256& amount_w) {
    TxTemplate t;
    TxAction swap;
    swap.op = TxAction::Op::swap;
    swap.pool = pool;
    swap.token = world_.wrapped;
    swap.amount = amount_w;
    t.intent.from = fresh_address(0x33);
    t.intent.to = pool;
    t.intent.actor = t.intent.from;
    t.intent.actions = {swap};
    return t;
}

TxTemplate CorpusBuilder::setup_push_template(const Address& pool, const Address& token, const U256& amount) {
    TxTemplate t;
    TxAction swap;
    swap.op = TxAction::Op::swap;
    swap.pool = pool;
    swap.token = token;
    swap.amount = amount;
    t.intent.from = fresh_address(0x34);
    t.intent.to = pool;
    t.intent.actor = t.intent.from;
    t.intent.actions = {swap};
    return t;
}

// ---------------------------------------------------------------------------
// Injection realization.

std::vector<TxTemplate> CorpusBuilder::build_injection_txs(PlannedInjection& inj, std::vector<PendingLabel>* pending,
                                                           std::size_t base_position, std::int64_t block) {
    std::vector<TxTemplate> txs;
    const Address native = native_token();

    switch (inj.kind) {
        case InjectionSpec::Kind::arbitrage_front:
        case InjectionSpec::Kind::arbitrage_back:
        case InjectionSpec::Kind::failed_frontrun: {
            bool in_block_setup = inj.kind == InjectionSpec::Kind::arbitrage_back;
            SimChain staged = chain_;
            std::optional<TxTemplate> enabling;
            if (in_block_setup) {
                U256 push = reserve_of(inj.setup_pool, inj.setup_token) / 10;
                enabling = setup_push_template(inj.setup_pool, inj.setup_token, push);
                sim_swap(staged.pools.at(inj.setup_pool), inj.setup_token, push);
            }
            // The out-of-block setup for front/failed kinds ran in the
            // previous block, so `chain_` already carries the discrepancy.
            const U256 base = staged.pools.at(inj.cycle.pools.front()).reserve_of(world_.wrapped);
            U256 best_input;
            Int best_profit = 0;
            for (std::uint64_t bps : {25ull, 50ull, 100ull, 200ull, 400ull, 800ull}) {
                U256 candidate = U256(Int(base) * Int(bps) / 10000);
                if (candidate == 0) continue;
                Int profit = cycle_profit(staged, inj.cycle, candidate);
                if (profit > best_profit) {
                    best_profit = profit;
                    best_input = candidate;
                }
            }
            if (best_profit < Int(kMinProfitWei))
                throw SpecInfeasibleError("cycle cannot be made profitable for " +
                                          injection_kind_to_string(inj.kind) + " at block " + std::to_string(block));
            if (in_block_setup) {
                // Replayed alone at the top the cycle must stay unprofitable,
                // otherwise the back-running label would be wrong.
                if (cycle_profit(chain_, inj.cycle, best_input) > 0)
                    throw SpecInfeasibleError("pre-existing discrepancy breaks a back-run injection");
                txs.push_back(std::move(*enabling));
            }
            txs.push_back(cycle_tx_template(inj.cycle, best_input, true));
            PendingLabel label;
            label.actor = *txs.back().intent.to;
            label.kind = injection_kind_to_string(inj.kind == InjectionSpec::Kind::failed_frontrun
                                                      ? InjectionSpec::Kind::arbitrage_front
                                                      : inj.kind);
            if (in_block_setup) label.attack_positions = {base_position, base_position + 1};
            else label.attack_positions = {base_position};
            if (inj.kind == InjectionSpec::Kind::failed_frontrun) {
                // The loser mirrors the winner but lands after it, reverts in
                // place, and only works when replayed at the top.
                SimChain after_winner = chain_;
                apply_cycle(&after_winner, inj.cycle, best_input);
                if (cycle_profit(after_winner, inj.cycle, best_input) > 0)
                    throw SpecInfeasibleError("losing front-run would still profit after the winner");
                pending->push_back(label);
                txs.push_back(cycle_tx_template(inj.cycle, best_input, true));
                PendingLabel loser;
                loser.kind = "failed_frontrun";
                loser.actor = *txs.back().intent.to;
                loser.attack_positions = {base_position + 1};
                pending->push_back(loser);
            } else {
                pending->push_back(label);
            }
            break;
        }
        case InjectionSpec::Kind::sandwich_normal:
        case InjectionSpec::Kind::sandwich_burger:
        case InjectionSpec::Kind::sandwich_conjoined: {
            SandwichPlan plan;
            plan.pool = inj.sandwich_pool;
            plan.token = inj.sandwich_token;
            plan.backs = inj.kind == InjectionSpec::Kind::sandwich_conjoined ? 2 : 1;
            int victims = inj.kind == InjectionSpec::Kind::sandwich_normal ? 1 : std::max(2, inj.victims);
            const U256 rw = reserve_of(plan.pool, world_.wrapped);
            U256 victim_total = 0;
            for (int v = 0; v < victims; ++v) {
                U256 amount = rng_.amount(rw / 100, rw / 40);
                plan.victims_w.push_back(amount);
                victim_total += amount;
            }
            Int best_profit = 0;
            U256 best_front;
            for (std::uint64_t pct : {60ull, 100ull, 150ull, 220ull}) {
                SandwichPlan candidate = plan;
                candidate.front_w = U256(Int(victim_total) * Int(pct) / 100);
                Int profit = sandwich_profit(chain_, world_, candidate);
                if (profit > best_profit) {
                    best_profit = profit;
                    best_front = candidate.front_w;
                }
            }
            if (best_profit < Int(kMinProfitWei))
                throw SpecInfeasibleError("sandwich cannot be made profitable on pool " + to_hex(plan.pool));
            plan.front_w = best_front;

            Address eoa = fresh_address(0x41);
            Address contract = fresh_address(0x42);
            auto attacker_tx = [&](std::vector<TxAction> actions) {
                TxTemplate t;
                t.intent.from = eoa;
                t.intent.to = contract;
                t.intent.actor = contract;
                t.intent.actions = std::move(actions);
                return t;
            };

            TxAction wrap;
            wrap.op = TxAction::Op::wrap;
            wrap.amount = plan.front_w;
            TxAction front_swap;
            front_swap.op = TxAction::Op::swap;
            front_swap.pool = plan.pool;
            front_swap.token = world_.wrapped;
            front_swap.amount_mode = TxAction::AmountMode::prev_output;
            txs.push_back(attacker_tx({wrap, front_swap}));

            PendingLabel label;
            label.kind = injection_kind_to_string(inj.kind);
            label.actor = contract;
            label.attack_positions.push_back(base_position);

            // Victims, with the conjoined shape interleaving its first back
            // leg the way the three-attack pattern does.
            U256 bought;
            {
                SimChain scratch = chain_;
                bought = sim_swap(scratch.pools.at(plan.pool), world_.wrapped, plan.front_w);
            }
            auto back_leg = [&](TxAction::AmountMode mode, const U256& amount) {
                TxAction sell;
                sell.op = TxAction::Op::swap;
                sell.pool = plan.pool;
                sell.token = plan.token;
                sell.amount_mode = mode;
                sell.amount = amount;
                TxAction unwrap;
                unwrap.op = TxAction::Op::unwrap;
                unwrap.amount_mode = TxAction::AmountMode::all;
                return attacker_tx({sell, unwrap});
            };

            if (inj.kind == InjectionSpec::Kind::sandwich_conjoined) {
                int first_half = (victims + 1) / 2;
                for (int v = 0; v < first_half; ++v) {
                    txs.push_back(victim_swap_template(plan.pool, plan.victims_w[v]));
                    label.victim_positions.push_back(base_position + txs.size() - 1);
                }
                txs.push_back(back_leg(TxAction::AmountMode::absolute, bought / 2));
                label.attack_positions.push_back(base_position + txs.size() - 1);
                for (int v = first_half; v < victims; ++v) {
                    txs.push_back(victim_swap_template(plan.pool, plan.victims_w[v]));
                    label.victim_positions.push_back(base_position + txs.size() - 1);
                }
                txs.push_back(back_leg(TxAction::AmountMode::all, U256(0)));
                label.attack_positions.push_back(base_position + txs.size() - 1);
            } else {
                for (int v = 0; v < victims; ++v) {
                    txs.push_back(victim_swap_template(plan.pool, plan.victims_w[v]));
                    label.victim_positions.push_back(base_position + txs.size() - 1);
                }
                txs.push_back(back_leg(TxAction::AmountMode::all, U256(0)));
                label.attack_positions.push_back(base_position + txs.size() - 1);
            }
            pending->push_back(label);
            break;
        }
        case InjectionSpec::Kind::benign:
            break;
    }
    return txs;
}

// ---------------------------------------------------------------------------
// Block emission.

void CorpusBuilder::emit_block(std::int64_t number) {
    chain_.block_number = number;
    oracle_.add_snapshot(number, chain_);

    BlockTasks tasks;
    auto it = schedule_.find(number);
    if (it != schedule_.end()) tasks = it->second;

    // Out-of-block setup pushes land one block ahead of their injection.
    auto next_it = schedule_.find(number + 1);
    std::vector<TxTemplate> templates;
    if (next_it != schedule_.end() && next_it->second.injection) {
        const PlannedInjection& nxt = *next_it->second.injection;
        if (nxt.kind == InjectionSpec::Kind::arbitrage_front || nxt.kind == InjectionSpec::Kind::failed_frontrun) {
            U256 push = reserve_of(nxt.setup_pool, nxt.setup_token) / 10;
            templates.push_back(setup_push_template(nxt.setup_pool, nxt.setup_token, push));
        }
    }

    std::vector<TxTemplate> benign_templates;
    std::vector<std::size_t> weavable;  // indices of benign txs safe between legs
    for (const auto& task : tasks.tasks) {
        switch (task.kind) {
            case BenignTask::Kind::swap:
                weavable.push_back(benign_templates.size());
                benign_templates.push_back(benign_swap_template(number));
                break;
            case BenignTask::Kind::transfer:
                weavable.push_back(benign_templates.size());
                benign_templates.push_back(benign_transfer_template());
                break;
            case BenignTask::Kind::wrap: benign_templates.push_back(benign_wrap_template()); break;
            case BenignTask::Kind::failed: benign_templates.push_back(benign_failed_template()); break;
            case BenignTask::Kind::decoy:
                benign_templates.push_back(decoy_template(task.decoy_cycle));
                ++decoys_emitted_;
                break;
        }
    }

    std::vector<PendingLabel> pending;
    std::size_t split = benign_templates.size() / 2;
    for (std::size_t i = 0; i < split; ++i) templates.push_back(std::move(benign_templates[i]));

    if (tasks.injection) {
        PlannedInjection inj = *tasks.injection;
        std::size_t base = templates.size();
        auto injection_txs = build_injection_txs(inj, &pending, base, number);
        // Weave one bystander between the legs of a multi-victim sandwich so
        // the victim rule gets exercised against unrelated traffic.
        bool sandwich = inj.kind == InjectionSpec::Kind::sandwich_burger ||
                        inj.kind == InjectionSpec::Kind::sandwich_conjoined;
        std::optional<std::size_t> bystander;
        for (std::size_t w : weavable)
            if (w >= split) {
                bystander = w;
                break;
            }
        if (sandwich && bystander && injection_txs.size() >= 3) {
            std::size_t insert_at = 2;  // after the first victim
            injection_txs.insert(injection_txs.begin() + insert_at, std::move(benign_templates[*bystander]));
            for (auto& label : pending) {
                for (auto& p : label.attack_positions)
                    if (p >= base + insert_at) ++p;
                for (auto& p : label.victim_positions)
                    if (p >= base + insert_at) ++p;
            }
        }
        for (auto& t : injection_txs) templates.push_back(std::move(t));
        for (std::size_t i = split; i < benign_templates.size(); ++i) {
            if (sandwich && bystander && i == *bystander) continue;
            templates.push_back(std::move(benign_templates[i]));
        }
    } else {
        for (std::size_t i = split; i < benign_templates.size(); ++i) templates.push_back(std::move(benign_templates[i]));
    }

    Block block;
    block.number = number;
    block.producer = world_.builders[static_cast<std::size_t>(number) % world_.builders.size()];

    std::map<Address, Int> actor_native_before;
    for (const auto& label : pending)
        actor_native_before[label.actor] = chain_.balance_delta(label.actor, native_token());

    for (std::size_t i = 0; i < templates.size(); ++i) {
        TxIntent& intent = templates[i].intent;
        intent.block_number = number;
        intent.tx_index = static_cast<std::int64_t>(i);
        intent.hash = make_tx_hash(number, intent.tx_index, ++hash_salt_);
        intent.gas_used = gas_for_actions(intent.actions);
        intent.effective_gas_price = (15 + rng_.range(0, 45)) * kGwei;
        intent.coinbase_transfer = 0;
        TransactionRecord record = chain_.apply_tx(intent);
        oracle_.add_intent(intent);
        all_intents_.push_back(intent);
        block.transactions.push_back(std::move(record));
        ++tx_count_;
        if (!templates[i].is_benign_decoy && !tasks.injection) ++benign_emitted_;
    }
    if (tasks.injection) {
        std::set<std::size_t> injection_positions;
        for (const auto& label : pending) {
            for (auto p : label.attack_positions) injection_positions.insert(p);
            for (auto p : label.victim_positions) injection_positions.insert(p);
        }
        for (std::size_t i = 0; i < templates.size(); ++i)
            if (!injection_positions.count(i) && !templates[i].is_benign_decoy) ++benign_emitted_;
    }

    std::vector<LabelRecord> block_labels;
    for (const auto& p : pending) {
        LabelRecord label;
        label.block = number;
        label.kind = p.kind;
        for (auto pos : p.attack_positions) label.tx_hashes.push_back(block.transactions[pos].hash);
        for (auto pos : p.victim_positions) label.victim_tx_hashes.push_back(block.transactions[pos].hash);
        label.expected_profit_token = native_token();
        if (p.kind == "failed_frontrun") {
            label.expected_profit_amount = 0;
        } else {
            label.expected_profit_amount = chain_.balance_delta(p.actor, native_token()) - actor_native_before[p.actor];
            if (label.expected_profit_amount <= 0)
                throw SpecInfeasibleError("injection realized no profit in block " + std::to_string(number));
        }
        block_labels.push_back(label);
    }
    // Tip the producer a slice of realized profit on attack transactions.
    for (auto& label : block_labels) {
        if (label.kind == "failed_frontrun") continue;
        for (const auto& hash : label.tx_hashes) {
            for (std::size_t i = 0; i < block.transactions.size(); ++i) {
                if (block.transactions[i].hash != hash) continue;
                U256 tip = U256(label.expected_profit_amount / 16 / Int(label.tx_hashes.size()));
                block.transactions[i].coinbase_transfer = tip;
                all_intents_[all_intents_.size() - block.transactions.size() + i].coinbase_transfer = tip;
            }
        }
    }

    if (config_.self_check) self_check_block(block, block_labels);

    blocks_out_ << serialize_block(block) << "\n";
    for (const auto& label : block_labels) {
        labels_out_ << serialize_label(label) << "\n";
        labels_.push_back(label);
    }
}

// Generation-time assertion: the emitted block, run through the detector
// pipeline with the replay oracle, reproduces the labels exactly and nothing
// else.
void CorpusBuilder::self_check_block(const Block& block, const std::vector<LabelRecord>& block_labels) {
    auto fail = [&](const std::string& why) {
        throw std::logic_error("generator self-check failed at block " + std::to_string(block.number) + ": " + why);
    };

    std::vector<ArbitrageFinding> arbs;
    for (const auto& tx : block.transactions) {
        auto finding = identify_arbitrage(tx, block.producer, registry_, detector_params_);
        if (finding) {
            finding->running = classify_running(*finding, block, &oracle_, registry_, detector_params_);
            arbs.push_back(std::move(*finding));
        }
    }
    auto sandwiches = identify_sandwiches(block, registry_, detector_params_);
    std::vector<Hash32> failed_frontruns;
    for (const auto& tx : block.transactions) {
        bool is_arb = false;
        for (const auto& a : arbs) is_arb = is_arb || a.tx == tx.hash;
        if (is_arb) continue;
        if (detect_failed_frontrun(tx, block, oracle_, registry_, detector_params_)) failed_frontruns.push_back(tx.hash);
    }

    std::size_t expected_arbs = 0, expected_sandwiches = 0, expected_failed = 0;
    for (const auto& label : block_labels) {
        if (label.kind == "arbitrage_front" || label.kind == "arbitrage_back") {
            ++expected_arbs;
            const Hash32& arb_hash = label.tx_hashes.back();
            const ArbitrageFinding* found = nullptr;
            for (const auto& a : arbs)
                if (a.tx == arb_hash) found = &a;
            if (!found) fail("labeled arbitrage not detected");
            RunningKind want = label.kind == "arbitrage_front" ? RunningKind::front : RunningKind::back;
            if (found->running != want) fail("arbitrage running classification mismatch");
            auto residual = found->verdict.residual.find(native_token());
            if (residual == found->verdict.residual.end() || residual->second != label.expected_profit_amount)
                fail("arbitrage residual does not match the realized profit");
        } else if (label.kind.rfind("sandwich", 0) == 0) {
            ++expected_sandwiches;
            const SandwichFinding* found = nullptr;
            for (const auto& s : sandwiches)
                if (s.attack_txs == label.tx_hashes) found = &s;
            if (!found) fail("labeled sandwich not detected (" + label.kind + ")");
            if (found->victim_txs != label.victim_tx_hashes) fail("sandwich victim set mismatch");
            SandwichShape want = label.kind == "sandwich_normal"
                                     ? SandwichShape::normal
                                     : (label.kind == "sandwich_burger" ? SandwichShape::multi_layered_burger
                                                                        : SandwichShape::conjoined);
            if (found->kind != want) fail("sandwich shape mismatch");
            auto residual = found->verdict.residual.find(native_token());
            if (residual == found->verdict.residual.end() || residual->second != label.expected_profit_amount)
                fail("sandwich residual does not match the realized profit");
        } else if (label.kind == "failed_frontrun") {
            ++expected_failed;
            bool found = false;
            for (const auto& h : failed_frontruns) found = found || h == label.tx_hashes.front();
            if (!found) fail("labeled failed front-run not flagged");
        }
    }
    if (arbs.size() != expected_arbs) fail("unexpected arbitrage finding count");
    if (sandwiches.size() != expected_sandwiches) fail("unexpected sandwich finding count");
    if (failed_frontruns.size() != expected_failed) fail("unexpected failed front-run count");
}

GeneratorResult CorpusBuilder::run() {
    namespace fs = std::filesystem;
    if (config_.out_dir.empty()) throw SchemaError("generator needs an output directory");
    fs::create_directories(config_.out_dir);
    GeneratorResult result;
    result.blocks_path = (fs::path(config_.out_dir) / "blocks.jsonl").string();
    result.labels_path = (fs::path(config_.out_dir) / "labels.jsonl").string();
    result.state_path = (fs::path(config_.out_dir) / "sim_state.jsonl").string();
    result.manifest_path = (fs::path(config_.out_dir) / "manifest.json").string();

    SimChain initial = chain_;
    schedule();

    blocks_out_.open(result.blocks_path);
    labels_out_.open(result.labels_path);
    if (!blocks_out_ || !labels_out_) throw SchemaError("cannot write corpus outputs under " + config_.out_dir);
    for (std::int64_t b = 1; b <= config_.n_blocks; ++b) emit_block(b);
    blocks_out_.close();
    labels_out_.close();

    write_sim_state(result.state_path, initial, all_intents_);

    std::map<std::string, std::size_t> by_kind;
    for (const auto& label : labels_) ++by_kind[label.kind];
    json manifest;
    manifest["seed"] = config_.seed;
    manifest["blocks"] = config_.n_blocks;
    manifest["transactions"] = tx_count_;
    json labels_json;
    for (const auto& [kind, count] : by_kind) labels_json[kind] = count;
    manifest["labels"] = std::move(labels_json);
    manifest["labelTotal"] = labels_.size();
    manifest["benignTransactions"] = benign_emitted_;
    manifest["decoyCycles"] = decoys_emitted_;
    std::ofstream manifest_out(result.manifest_path);
    manifest_out << manifest.dump(2) << "\n";

    result.label_count = labels_.size();
    result.benign_tx_count = benign_emitted_;
    result.decoy_count = decoys_emitted_;
    result.tx_count = tx_count_;
    log_msg(LogLevel::info, "generated " + std::to_string(config_.n_blocks) + " blocks, " +
                                std::to_string(tx_count_) + " txs, " + std::to_string(labels_.size()) + " labels");
    return result;
}

}  // namespace

GeneratorResult generate_corpus(const GeneratorConfig& config) {
    CorpusBuilder builder(config);
    return builder.run();
}

}  // namespace mevlens
