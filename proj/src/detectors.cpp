#include "mevlens/detectors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mevlens {

namespace {

bool is_profitable_arbitrage_record(const TransactionRecord& tx, const Address& producer, const PatternRegistry& registry,
                                    const DetectorParams& params) {
    if (tx.status != TxStatus::success) return false;
    auto decoded = decode_swaps(tx, registry);
    if (decoded.swaps.empty()) return false;
    TokenFlowGraph g = TokenFlowGraph::init(decoded.swaps);
    if (!exists_cycle(g)) return false;
    auto transfers = decode_transfers(tx);
    try {
        TraderContext ctx = resolve_trader_context({&tx}, decoded.swaps, transfers.transfers, producer);
        ProfitVerdict verdict = check_profitable({&tx}, g, params.eps, ctx, params.limits);
        return verdict.profitable;
    } catch (const EmptyTraderSetError&) {
        return false;
    }
}

}  // namespace

std::optional<ArbitrageFinding> identify_arbitrage(const TransactionRecord& tx, const Address& producer,
                                                   const PatternRegistry& registry, const DetectorParams& params) {
    if (tx.status != TxStatus::success) return std::nullopt;
    auto decoded = decode_swaps(tx, registry);
    if (decoded.swaps.empty()) return std::nullopt;
    TokenFlowGraph g = TokenFlowGraph::init(decoded.swaps);
    if (!exists_cycle(g)) return std::nullopt;

    auto transfers = decode_transfers(tx);
    ProfitVerdict verdict;
    try {
        TraderContext ctx = resolve_trader_context({&tx}, decoded.swaps, transfers.transfers, producer);
        verdict = check_profitable({&tx}, g, params.eps, ctx, params.limits);
    } catch (const EmptyTraderSetError&) {
        return std::nullopt;
    }
    if (params.profit_gate && !verdict.profitable) return std::nullopt;

    ArbitrageFinding finding;
    finding.tx = tx.hash;
    finding.block = tx.block_number;
    finding.tx_index = tx.tx_index;
    finding.swaps = decoded.swaps;
    finding.verdict = verdict;
    for (const auto& w : decoded.warnings)
        finding.warnings.push_back("log " + std::to_string(w.log_index) + " (" + w.pattern_id + "): " + w.message);
    for (const auto& [token, net] : verdict.residual)
        if (net > 0) finding.revenue[token] = net;
    return finding;
}

RunningKind classify_running(const ArbitrageFinding& finding, const Block& block, const ReplayOracle* oracle,
                             const PatternRegistry& registry, const DetectorParams& params) {
    if (!oracle) return RunningKind::unknown;
    const TransactionRecord* tx = nullptr;
    for (const auto& t : block.transactions)
        if (t.hash == finding.tx) tx = &t;
    if (!tx) return RunningKind::unknown;
    TransactionRecord replayed;
    try {
        replayed = oracle->replay_at_top(block, *tx);
    } catch (const ReplayUnavailableError&) {
        return RunningKind::unknown;
    }
    return is_profitable_arbitrage_record(replayed, block.producer, registry, params) ? RunningKind::front
                                                                                      : RunningKind::back;
}

bool detect_failed_frontrun(const TransactionRecord& tx, const Block& block, const ReplayOracle& oracle,
                            const PatternRegistry& registry, const DetectorParams& params) {
    TransactionRecord replayed = oracle.replay_at_top(block, tx);
    return is_profitable_arbitrage_record(replayed, block.producer, registry, params);
}

std::vector<AttackGroup> combine_attacks(const std::vector<AttackPair>& pairs) {
    std::vector<AttackGroup> groups;
    if (pairs.empty()) return groups;

    // Union-find over pair indices, joined when two pairs share an attack tx.
    std::vector<std::size_t> parent(pairs.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<std::int64_t, std::size_t> first_seen;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::int64_t tx_index : {pairs[i].front_index, pairs[i].back_index}) {
            auto [it, inserted] = first_seen.emplace(tx_index, i);
            if (!inserted) parent[find(i)] = find(it->second);
        }
    }

    std::map<std::size_t, AttackGroup> by_root;
    std::vector<std::size_t> root_order;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::size_t root = find(i);
        auto [it, inserted] = by_root.try_emplace(root);
        if (inserted) root_order.push_back(root);
        AttackGroup& grp = it->second;
        grp.attack_indices.push_back(pairs[i].front_index);
        grp.attack_indices.push_back(pairs[i].back_index);
        grp.victim_indices.insert(grp.victim_indices.end(), pairs[i].victim_indices.begin(),
                                  pairs[i].victim_indices.end());
        for (const auto& [pool, dir] : pairs[i].pool_evidence) {
            (void)dir;
            grp.pools.insert(pool);
        }
    }

    for (std::size_t root : root_order) {
        AttackGroup grp = std::move(by_root.at(root));
        auto dedupe = [](std::vector<std::int64_t>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        dedupe(grp.attack_indices);
        dedupe(grp.victim_indices);
        // Victims that merged in as attack legs of a sibling pair are legs,
        // not victims.
        std::erase_if(grp.victim_indices, [&](std::int64_t v) {
            return std::binary_search(grp.attack_indices.begin(), grp.attack_indices.end(), v);
        });
        grp.conjoined = grp.attack_indices.size() > 2;
        groups.push_back(std::move(grp));
    }
    std::sort(groups.begin(), groups.end(),
              [](const AttackGroup& a, const AttackGroup& b) { return a.attack_indices < b.attack_indices; });
    return groups;
}

std::vector<SandwichFinding> identify_sandwiches(const Block& block, const PatternRegistry& registry,
                                                 const DetectorParams& params) {
    struct TxSwaps {
        const TransactionRecord* tx = nullptr;
        std::vector<Swap> swaps;
        std::vector<DecodeWarning> warnings;
    };
    std::map<std::int64_t, TxSwaps> by_index;
    for (const auto& tx : block.transactions) {
        if (tx.status != TxStatus::success) continue;
        auto decoded = decode_swaps(tx, registry);
        if (decoded.swaps.empty() && decoded.warnings.empty()) continue;
        by_index[tx.tx_index] = {&tx, std::move(decoded.swaps), std::move(decoded.warnings)};
    }

    // (pool, direction) -> ascending tx indices swapping that way.
    std::map<std::pair<Address, SwapDirection>, std::vector<std::int64_t>> lanes;
    for (const auto& [tx_index, info] : by_index)
        for (const auto& s : info.swaps) {
            auto& lane = lanes[{s.pool, {s.token_in, s.token_out}}];
            if (lane.empty() || lane.back() != tx_index) lane.push_back(tx_index);
        }

    auto address_match = [&](const TransactionRecord& a, const TransactionRecord& b) {
        if (a.from == b.from) return true;
        return a.to && b.to && *a.to == *b.to;
    };

    std::map<std::pair<std::int64_t, std::int64_t>, AttackPair> pair_map;
    for (const auto& [key, fronts] : lanes) {
        const auto& [pool, dir] = key;
        SwapDirection opposite{dir.second, dir.first};
        auto backs_it = lanes.find({pool, opposite});
        if (backs_it == lanes.end()) continue;
        const auto& backs = backs_it->second;
        for (std::int64_t front : fronts) {
            for (std::int64_t back : backs) {
                if (back <= front) continue;
                if (!address_match(*by_index.at(front).tx, *by_index.at(back).tx)) continue;
                // Victims: same direction as the front, strictly between.
                std::vector<std::int64_t> victims;
                for (std::int64_t v : fronts)
                    if (v > front && v < back) victims.push_back(v);
                if (victims.empty()) continue;
                auto [it, inserted] = pair_map.try_emplace({front, back});
                AttackPair& pair = it->second;
                if (inserted) {
                    pair.front_index = front;
                    pair.back_index = back;
                }
                for (std::int64_t v : victims) pair.victim_indices.push_back(v);
                pair.pool_evidence.insert({pool, dir});
            }
        }
    }

    std::vector<AttackPair> pairs;
    pairs.reserve(pair_map.size());
    for (auto& [_, pair] : pair_map) pairs.push_back(std::move(pair));

    std::vector<SandwichFinding> findings;
    for (const auto& grp : combine_attacks(pairs)) {
        std::vector<const TransactionRecord*> attack_txs;
        std::vector<Swap> swaps;
        std::vector<TransferRecord> transfers;
        std::vector<std::string> warnings;
        for (std::int64_t idx : grp.attack_indices) {
            const TxSwaps& info = by_index.at(idx);
            attack_txs.push_back(info.tx);
            swaps.insert(swaps.end(), info.swaps.begin(), info.swaps.end());
            auto tr = decode_transfers(*info.tx);
            transfers.insert(transfers.end(), tr.transfers.begin(), tr.transfers.end());
            for (const auto& w : info.warnings)
                warnings.push_back("log " + std::to_string(w.log_index) + " (" + w.pattern_id + "): " + w.message);
        }
        TokenFlowGraph g = TokenFlowGraph::init(swaps);
        ProfitVerdict verdict;
        try {
            TraderContext ctx = resolve_trader_context(attack_txs, swaps, transfers, block.producer);
            verdict = check_profitable(attack_txs, g, params.eps, ctx, params.limits);
        } catch (const EmptyTraderSetError&) {
            continue;
        }
        if (params.profit_gate && !verdict.profitable) continue;

        SandwichFinding finding;
        finding.block = block.number;
        finding.attack_indices = grp.attack_indices;
        finding.victim_indices = grp.victim_indices;
        for (std::int64_t idx : grp.attack_indices) finding.attack_txs.push_back(by_index.at(idx).tx->hash);
        for (std::int64_t idx : grp.victim_indices) finding.victim_txs.push_back(by_index.at(idx).tx->hash);
        finding.pools = grp.pools;
        finding.verdict = verdict;
        finding.warnings = std::move(warnings);
        if (grp.conjoined)
            finding.kind = SandwichShape::conjoined;
        else if (finding.victim_indices.size() >= 2)
            finding.kind = SandwichShape::multi_layered_burger;
        else
            finding.kind = SandwichShape::normal;
        findings.push_back(std::move(finding));
    }
    return findings;
}

void mark_toxic(std::vector<ArbitrageFinding>& arbs, std::vector<SandwichFinding>& sandwiches) {
    std::map<Hash32, ArbitrageFinding*> arb_by_tx;
    for (auto& a : arbs) arb_by_tx[a.tx] = &a;
    for (auto& s : sandwiches) {
        for (const auto& hash : s.attack_txs) {
            auto it = arb_by_tx.find(hash);
            if (it == arb_by_tx.end()) continue;
            s.toxic = true;
            it->second->toxic_overlap = true;
        }
    }
}

}  // namespace mevlens
