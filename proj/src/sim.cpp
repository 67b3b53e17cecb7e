#include "mevlens/sim.hpp"

#include <fstream>

#include <json.hpp>

namespace mevlens {

namespace {
using json = nlohmann::ordered_json;
}

PoolEventStyle pool_event_style_from_string(std::string_view s) {
    if (s == "pair") return PoolEventStyle::pair;
    if (s == "concentrated") return PoolEventStyle::concentrated;
    if (s == "order_fill") return PoolEventStyle::order_fill;
    if (s == "multi_asset") return PoolEventStyle::multi_asset;
    throw SchemaError("unknown pool event style: " + std::string(s));
}

std::string pool_event_style_to_string(PoolEventStyle s) {
    switch (s) {
        case PoolEventStyle::pair: return "pair";
        case PoolEventStyle::concentrated: return "concentrated";
        case PoolEventStyle::order_fill: return "order_fill";
        case PoolEventStyle::multi_asset: return "multi_asset";
    }
    return "pair";
}

U256 sim_swap(AmmPool& pool, const Address& token_in, const U256& amount_in) {
    if (amount_in == 0) throw SchemaError("sim_swap requires amount_in > 0");
    if (!pool.has_token(token_in)) throw SchemaError("token not in pool " + to_hex(pool.address));
    bool zero_to_one = token_in == pool.token0;
    const U256& reserve_in = zero_to_one ? pool.reserve0 : pool.reserve1;
    const U256& reserve_out = zero_to_one ? pool.reserve1 : pool.reserve0;

    Int effective = Int(amount_in) * pool.fee_num / pool.fee_den;
    Int out = Int(reserve_out) * effective / (Int(reserve_in) + effective);
    if (out == 0) throw InsufficientLiquidityError("swap output floors to zero on pool " + to_hex(pool.address));

    if (zero_to_one) {
        pool.reserve0 += amount_in;
        pool.reserve1 -= U256(out);
    } else {
        pool.reserve1 += amount_in;
        pool.reserve0 -= U256(out);
    }
    return U256(out);
}

Int SimChain::balance_delta(const Address& who, const Address& token) const {
    auto it = balances.find(who);
    if (it == balances.end()) return 0;
    auto jt = it->second.find(token);
    return jt == it->second.end() ? Int(0) : jt->second;
}

namespace {

// Event emission helpers; layouts match the bundled pattern registry.

LogRecord transfer_log(std::int64_t idx, const Address& token, const Address& from, const Address& to, const U256& amount) {
    LogRecord log;
    log.emitter = token;
    log.topics = {transfer_topic(), word_from_address(from), word_from_address(to)};
    auto w = word_from_u256(amount);
    log.data.assign(w.bytes.begin(), w.bytes.end());
    log.log_index = idx;
    return log;
}

void append_word(std::vector<std::uint8_t>* data, const Hash32& w) { data->insert(data->end(), w.bytes.begin(), w.bytes.end()); }

Hash32 word_from_int256(const Int& v) {
    Int wrapped = v < 0 ? v + (Int(1) << 256) : v;
    return word_from_u256(U256(wrapped));
}

LogRecord swap_event_log(std::int64_t idx, const SimChain& chain, const AmmPool& pool, const Address& actor,
                         const Address& token_in, const U256& amount_in, const U256& amount_out) {
    LogRecord log;
    log.log_index = idx;
    bool zero_in = token_in == pool.token0;
    switch (pool.style) {
        case PoolEventStyle::pair: {
            log.emitter = pool.address;
            log.topics = {pair_swap_topic(), word_from_address(actor), word_from_address(actor)};
            append_word(&log.data, word_from_u256(zero_in ? amount_in : U256(0)));
            append_word(&log.data, word_from_u256(zero_in ? U256(0) : amount_in));
            append_word(&log.data, word_from_u256(zero_in ? U256(0) : amount_out));
            append_word(&log.data, word_from_u256(zero_in ? amount_out : U256(0)));
            break;
        }
        case PoolEventStyle::concentrated: {
            log.emitter = pool.address;
            log.topics = {concentrated_swap_topic(), word_from_address(actor), word_from_address(actor)};
            Int amount0 = zero_in ? Int(amount_in) : -Int(amount_out);
            Int amount1 = zero_in ? -Int(amount_out) : Int(amount_in);
            append_word(&log.data, word_from_int256(amount0));
            append_word(&log.data, word_from_int256(amount1));
            append_word(&log.data, word_from_u256(0));  // price slot, unused
            append_word(&log.data, word_from_u256(0));  // liquidity slot, unused
            append_word(&log.data, word_from_u256(0));  // tick slot, unused
            break;
        }
        case PoolEventStyle::order_fill: {
            log.emitter = chain.order_fill_exchange;
            log.topics = {order_fill_topic(), word_from_address(pool.address)};
            append_word(&log.data, word_from_address(token_in));
            append_word(&log.data, word_from_u256(amount_in));
            append_word(&log.data, word_from_address(pool.other_token(token_in)));
            append_word(&log.data, word_from_u256(amount_out));
            break;
        }
        case PoolEventStyle::multi_asset: {
            log.emitter = chain.multi_asset_vault;
            log.topics = {multi_asset_swap_topic(), word_from_address(pool.address), word_from_address(token_in),
                          word_from_address(pool.other_token(token_in))};
            append_word(&log.data, word_from_u256(amount_in));
            append_word(&log.data, word_from_u256(amount_out));
            break;
        }
    }
    return log;
}

}  // namespace

TransactionRecord SimChain::apply_tx(const TxIntent& intent) {
    TransactionRecord record;
    record.hash = intent.hash;
    record.block_number = intent.block_number;
    record.tx_index = intent.tx_index;
    record.from = intent.from;
    record.to = intent.to;
    record.gas_used = intent.gas_used;
    record.effective_gas_price = intent.effective_gas_price;
    record.coinbase_transfer = intent.coinbase_transfer;

    SimChain scratch = *this;
    std::vector<LogRecord> logs;
    std::vector<TraceRecord> traces;
    std::int64_t log_index = 0;
    std::optional<U256> prev_output;
    const Address& actor = intent.actor;
    std::map<Address, Int> start_deltas;
    for (const auto& guard : intent.guards) start_deltas[guard.token] = balance_delta(actor, guard.token);

    bool ok = true;
    for (const auto& action : intent.actions) {
        U256 amount = action.amount;
        if (action.amount_mode == TxAction::AmountMode::prev_output) {
            if (!prev_output) {
                ok = false;
                break;
            }
            amount = *prev_output;
        } else if (action.amount_mode == TxAction::AmountMode::all) {
            Address token = action.op == TxAction::Op::unwrap ? scratch.wrapped_token : action.token;
            Int delta = scratch.balance_delta(actor, token);
            if (delta <= 0) {
                ok = false;
                break;
            }
            amount = U256(delta);
        }
        if (amount == 0) {
            ok = false;
            break;
        }

        switch (action.op) {
            case TxAction::Op::swap: {
                auto pool_it = scratch.pools.find(action.pool);
                if (pool_it == scratch.pools.end() || !pool_it->second.has_token(action.token)) {
                    ok = false;
                    break;
                }
                AmmPool& pool = pool_it->second;
                const Address token_out = pool.other_token(action.token);
                U256 out;
                try {
                    out = sim_swap(pool, action.token, amount);
                } catch (const InsufficientLiquidityError&) {
                    ok = false;
                    break;
                }
                logs.push_back(transfer_log(log_index++, action.token, actor, pool.address, amount));
                logs.push_back(transfer_log(log_index++, token_out, pool.address, actor, out));
                logs.push_back(swap_event_log(log_index++, scratch, pool, actor, action.token, amount, out));
                scratch.balances[actor][action.token] -= Int(amount);
                scratch.balances[actor][token_out] += Int(out);
                prev_output = out;
                break;
            }
            case TxAction::Op::wrap: {
                logs.push_back(transfer_log(log_index++, scratch.wrapped_token, zero_address(), actor, amount));
                LogRecord dep;
                dep.emitter = scratch.wrapped_token;
                dep.topics = {wrapped_deposit_topic(), word_from_address(actor)};
                auto w = word_from_u256(amount);
                dep.data.assign(w.bytes.begin(), w.bytes.end());
                dep.log_index = log_index++;
                logs.push_back(dep);
                traces.push_back({actor, scratch.wrapped_token, amount, 1, false});
                scratch.balances[actor][native_token()] -= Int(amount);
                scratch.balances[actor][scratch.wrapped_token] += Int(amount);
                prev_output = amount;
                break;
            }
            case TxAction::Op::unwrap: {
                logs.push_back(transfer_log(log_index++, scratch.wrapped_token, actor, zero_address(), amount));
                LogRecord wd;
                wd.emitter = scratch.wrapped_token;
                wd.topics = {wrapped_withdrawal_topic(), word_from_address(actor)};
                auto w = word_from_u256(amount);
                wd.data.assign(w.bytes.begin(), w.bytes.end());
                wd.log_index = log_index++;
                logs.push_back(wd);
                traces.push_back({scratch.wrapped_token, actor, amount, 1, false});
                scratch.balances[actor][scratch.wrapped_token] -= Int(amount);
                scratch.balances[actor][native_token()] += Int(amount);
                prev_output = amount;
                break;
            }
            case TxAction::Op::transfer: {
                logs.push_back(transfer_log(log_index++, action.token, actor, action.counterparty, amount));
                scratch.balances[actor][action.token] -= Int(amount);
                scratch.balances[action.counterparty][action.token] += Int(amount);
                prev_output = amount;
                break;
            }
            case TxAction::Op::native_transfer: {
                traces.push_back({actor, action.counterparty, amount, 1, false});
                scratch.balances[actor][native_token()] -= Int(amount);
                scratch.balances[action.counterparty][native_token()] += Int(amount);
                prev_output = amount;
                break;
            }
        }
        if (!ok) break;
    }

    if (ok) {
        for (const auto& guard : intent.guards) {
            Int end_delta = scratch.balance_delta(actor, guard.token);
            if (end_delta - start_deltas.at(guard.token) < guard.min_delta) {
                ok = false;
                break;
            }
        }
    }

    if (!ok) {
        record.status = TxStatus::failed;
        for (auto& t : traces) t.reverted = true;
        record.traces = std::move(traces);
        return record;  // chain untouched
    }

    record.status = TxStatus::success;
    record.logs = std::move(logs);
    record.traces = std::move(traces);
    *this = std::move(scratch);
    return record;
}

void SimReplayOracle::add_snapshot(std::int64_t block_number, SimChain state) {
    // Replays run the transaction alone with fresh accounts; only the pool
    // state matters, and dropping balances keeps snapshots small.
    state.balances.clear();
    block_start_.emplace(block_number, std::move(state));
}

void SimReplayOracle::add_intent(const TxIntent& intent) { intents_[intent.hash] = intent; }

TransactionRecord SimReplayOracle::replay_at_top(const Block& block, const TransactionRecord& tx) const {
    auto snap_it = block_start_.find(block.number);
    if (snap_it == block_start_.end())
        throw ReplayUnavailableError("no state snapshot for block " + std::to_string(block.number));
    auto intent_it = intents_.find(tx.hash);
    if (intent_it == intents_.end())
        throw ReplayUnavailableError("no intent recorded for tx " + to_hex(tx.hash));
    SimChain chain = snap_it->second;
    return chain.apply_tx(intent_it->second);
}

namespace {

json action_to_json(const TxAction& a) {
    json j;
    switch (a.op) {
        case TxAction::Op::swap:
            j["op"] = "swap";
            j["pool"] = to_hex(a.pool);
            j["tokenIn"] = to_hex(a.token);
            break;
        case TxAction::Op::wrap: j["op"] = "wrap"; break;
        case TxAction::Op::unwrap: j["op"] = "unwrap"; break;
        case TxAction::Op::transfer:
            j["op"] = "transfer";
            j["token"] = to_hex(a.token);
            j["to"] = to_hex(a.counterparty);
            break;
        case TxAction::Op::native_transfer:
            j["op"] = "native";
            j["to"] = to_hex(a.counterparty);
            break;
    }
    switch (a.amount_mode) {
        case TxAction::AmountMode::absolute: j["amount"] = u256_to_hex(a.amount); break;
        case TxAction::AmountMode::prev_output: j["amount"] = "prev"; break;
        case TxAction::AmountMode::all: j["amount"] = "all"; break;
    }
    return j;
}

TxAction action_from_json(const json& j) {
    TxAction a;
    std::string op = j.at("op").get<std::string>();
    if (op == "swap") {
        a.op = TxAction::Op::swap;
        a.pool = address_from_hex(j.at("pool").get<std::string>());
        a.token = address_from_hex(j.at("tokenIn").get<std::string>());
    } else if (op == "wrap") {
        a.op = TxAction::Op::wrap;
    } else if (op == "unwrap") {
        a.op = TxAction::Op::unwrap;
    } else if (op == "transfer") {
        a.op = TxAction::Op::transfer;
        a.token = address_from_hex(j.at("token").get<std::string>());
        a.counterparty = address_from_hex(j.at("to").get<std::string>());
    } else if (op == "native") {
        a.op = TxAction::Op::native_transfer;
        a.counterparty = address_from_hex(j.at("to").get<std::string>());
    } else {
        throw SchemaError("unknown action op: " + op);
    }
    std::string amount = j.at("amount").get<std::string>();
    if (amount == "prev")
        a.amount_mode = TxAction::AmountMode::prev_output;
    else if (amount == "all")
        a.amount_mode = TxAction::AmountMode::all;
    else {
        a.amount_mode = TxAction::AmountMode::absolute;
        a.amount = u256_from_hex(amount);
    }
    return a;
}

}  // namespace

void write_sim_state(const std::string& path, const SimChain& initial, const std::vector<TxIntent>& intents) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write sim state file: " + path);
    json world;
    world["type"] = "world";
    world["wrappedToken"] = to_hex(initial.wrapped_token);
    world["orderFillExchange"] = to_hex(initial.order_fill_exchange);
    world["multiAssetVault"] = to_hex(initial.multi_asset_vault);
    json pools = json::array();
    for (const auto& [_, pool] : initial.pools) {
        json p;
        p["address"] = to_hex(pool.address);
        p["token0"] = to_hex(pool.token0);
        p["token1"] = to_hex(pool.token1);
        p["reserve0"] = u256_to_hex(pool.reserve0);
        p["reserve1"] = u256_to_hex(pool.reserve1);
        p["feeNum"] = pool.fee_num;
        p["feeDen"] = pool.fee_den;
        p["style"] = pool_event_style_to_string(pool.style);
        pools.push_back(std::move(p));
    }
    world["pools"] = std::move(pools);
    out << world.dump() << "\n";

    for (const auto& intent : intents) {
        json j;
        j["type"] = "tx";
        j["block"] = intent.block_number;
        j["txIndex"] = intent.tx_index;
        j["hash"] = to_hex(intent.hash);
        j["from"] = to_hex(intent.from);
        if (intent.to)
            j["to"] = to_hex(*intent.to);
        else
            j["to"] = nullptr;
        j["actor"] = to_hex(intent.actor);
        j["gasUsed"] = intent.gas_used;
        j["effectiveGasPrice"] = intent.effective_gas_price;
        j["coinbaseTransfer"] = u256_to_hex(intent.coinbase_transfer);
        json actions = json::array();
        for (const auto& a : intent.actions) actions.push_back(action_to_json(a));
        j["actions"] = std::move(actions);
        json guards = json::array();
        for (const auto& g : intent.guards) {
            json gj;
            gj["token"] = to_hex(g.token);
            gj["minDelta"] = g.min_delta.str();
            guards.push_back(std::move(gj));
        }
        j["guards"] = std::move(guards);
        out << j.dump() << "\n";
    }
}

SimStateFile read_sim_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open sim state file: " + path);
    SimStateFile state;
    std::string line;
    std::size_t line_no = 0;
    bool world_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
            std::string type = j.at("type").get<std::string>();
            if (type == "world") {
                state.initial.wrapped_token = address_from_hex(j.at("wrappedToken").get<std::string>());
                state.initial.order_fill_exchange = address_from_hex(j.at("orderFillExchange").get<std::string>());
                state.initial.multi_asset_vault = address_from_hex(j.at("multiAssetVault").get<std::string>());
                for (const auto& p : j.at("pools")) {
                    AmmPool pool;
                    pool.address = address_from_hex(p.at("address").get<std::string>());
                    pool.token0 = address_from_hex(p.at("token0").get<std::string>());
                    pool.token1 = address_from_hex(p.at("token1").get<std::string>());
                    pool.reserve0 = u256_from_hex(p.at("reserve0").get<std::string>());
                    pool.reserve1 = u256_from_hex(p.at("reserve1").get<std::string>());
                    pool.fee_num = p.at("feeNum").get<std::uint32_t>();
                    pool.fee_den = p.at("feeDen").get<std::uint32_t>();
                    pool.style = pool_event_style_from_string(p.at("style").get<std::string>());
                    state.initial.pools.emplace(pool.address, pool);
                }
                world_seen = true;
            } else if (type == "tx") {
                TxIntent intent;
                intent.block_number = j.at("block").get<std::int64_t>();
                intent.tx_index = j.at("txIndex").get<std::int64_t>();
                intent.hash = hash_from_hex(j.at("hash").get<std::string>());
                intent.from = address_from_hex(j.at("from").get<std::string>());
                if (!j.at("to").is_null()) intent.to = address_from_hex(j.at("to").get<std::string>());
                intent.actor = address_from_hex(j.at("actor").get<std::string>());
                intent.gas_used = j.at("gasUsed").get<std::uint64_t>();
                intent.effective_gas_price = j.at("effectiveGasPrice").get<std::uint64_t>();
                intent.coinbase_transfer = u256_from_hex(j.at("coinbaseTransfer").get<std::string>());
                for (const auto& a : j.at("actions")) intent.actions.push_back(action_from_json(a));
                for (const auto& g : j.at("guards")) {
                    MinNetGuard guard;
                    guard.token = address_from_hex(g.at("token").get<std::string>());
                    guard.min_delta = Int(g.at("minDelta").get<std::string>());
                    intent.guards.push_back(guard);
                }
                state.intents.push_back(std::move(intent));
            } else {
                throw SchemaError("unknown record type: " + type);
            }
        } catch (const json::exception& e) {
            throw SchemaError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!world_seen) throw SchemaError("sim state file has no world record: " + path);
    return state;
}

SimReplayOracle build_oracle_from_state(const SimStateFile& state) {
    SimReplayOracle oracle;
    SimChain chain = state.initial;
    std::int64_t current_block = -1;
    for (const auto& intent : state.intents) {
        if (intent.block_number != current_block) {
            current_block = intent.block_number;
            chain.block_number = current_block;
            oracle.add_snapshot(current_block, chain);
        }
        oracle.add_intent(intent);
        chain.apply_tx(intent);
    }
    return oracle;
}

}  // namespace mevlens
