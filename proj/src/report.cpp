#include "mevlens/report.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace mevlens {

namespace {
using json = nlohmann::ordered_json;
}

NativeValue value_in_native(const ProfitVerdict& verdict, const TokenFlowGraph& g, const RouteLimits& limits) {
    NativeValue value;
    for (const auto& [token, net] : verdict.residual) {
        if (net <= 0) continue;
        if (token == native_token()) {
            value.native += net;
            continue;
        }
        auto outcome = exchange_token(token, native_token(), g, U256(net), limits);
        if (outcome)
            value.native += Int(outcome->amount);
        else
            value.unpriced.push_back({token, net});
    }
    return value;
}

Rat expected_profit(const EpInputs& in) {
    if (in.sr < 0 || in.sr > 1) throw SchemaError("success rate must lie in [0, 1]");
    return Rat(in.profit) * in.sr - Rat(in.gas_price * in.gas_units) * (Rat(1) - in.sr);
}

std::vector<CollusionRow> collusion_scan(const std::vector<FindingRecord>& findings, const Rat& threshold) {
    std::map<std::pair<Address, Address>, std::size_t> pair_counts;
    std::map<Address, std::size_t> builder_counts;
    std::map<Address, std::size_t> searcher_counts;
    for (const auto& f : findings) {
        if (f.kind == "failed_frontrun") continue;
        ++pair_counts[{f.builder, f.searcher}];
        ++builder_counts[f.builder];
        ++searcher_counts[f.searcher];
    }
    std::vector<CollusionRow> rows;
    for (const auto& [key, count] : pair_counts) {
        const auto& [builder, searcher] = key;
        Rat share_builder(count, builder_counts.at(builder));
        Rat share_searcher(count, searcher_counts.at(searcher));
        if (share_builder > threshold && share_searcher > threshold)
            rows.push_back({builder, searcher, count, share_builder, share_searcher});
    }
    return rows;
}

std::string serialize_finding(const FindingRecord& f) {
    json j;
    j["id"] = f.id;
    j["kind"] = f.kind;
    if (!f.running.empty()) j["running"] = f.running;
    if (!f.shape.empty()) j["shape"] = f.shape;
    j["toxic"] = f.toxic;
    j["block"] = f.block;
    json txs = json::array();
    for (const auto& h : f.txs) txs.push_back(to_hex(h));
    j["txs"] = std::move(txs);
    json victims = json::array();
    for (const auto& h : f.victims) victims.push_back(to_hex(h));
    j["victims"] = std::move(victims);
    json pools = json::array();
    for (const auto& p : f.pools) pools.push_back(to_hex(p));
    j["pools"] = std::move(pools);
    j["builder"] = to_hex(f.builder);
    j["searcher"] = to_hex(f.searcher);
    j["gasUsed"] = f.gas_used;
    j["gasPrice"] = f.gas_price;
    j["revenueNative"] = f.revenue_native.str();
    j["feesNative"] = f.fees_native.str();
    j["profitNative"] = f.profit_native.str();
    if (f.margin)
        j["margin"] = rational_to_string(*f.margin);
    else
        j["margin"] = nullptr;
    j["lowerBound"] = f.lower_bound;
    json unpriced = json::array();
    for (const auto& [token, amount] : f.residual_unpriced) {
        json u;
        u["token"] = to_hex(token);
        u["amount"] = amount.str();
        unpriced.push_back(std::move(u));
    }
    j["residualUnpriced"] = std::move(unpriced);
    json warnings = json::array();
    for (const auto& w : f.warnings) warnings.push_back(w);
    j["warnings"] = std::move(warnings);
    return j.dump();
}

FindingRecord parse_finding_line(const std::string& line) {
    json j = json::parse(line);
    FindingRecord f;
    f.id = j.at("id").get<std::string>();
    f.kind = j.at("kind").get<std::string>();
    f.running = j.value("running", "");
    f.shape = j.value("shape", "");
    f.toxic = j.at("toxic").get<bool>();
    f.block = j.at("block").get<std::int64_t>();
    for (const auto& h : j.at("txs")) f.txs.push_back(hash_from_hex(h.get<std::string>()));
    for (const auto& h : j.at("victims")) f.victims.push_back(hash_from_hex(h.get<std::string>()));
    for (const auto& p : j.at("pools")) f.pools.push_back(address_from_hex(p.get<std::string>()));
    f.builder = address_from_hex(j.at("builder").get<std::string>());
    f.searcher = address_from_hex(j.at("searcher").get<std::string>());
    f.gas_used = j.at("gasUsed").get<std::uint64_t>();
    f.gas_price = j.at("gasPrice").get<std::uint64_t>();
    f.revenue_native = Int(j.at("revenueNative").get<std::string>());
    f.fees_native = Int(j.at("feesNative").get<std::string>());
    f.profit_native = Int(j.at("profitNative").get<std::string>());
    if (!j.at("margin").is_null()) f.margin = parse_rational(j.at("margin").get<std::string>());
    f.lower_bound = j.at("lowerBound").get<bool>();
    for (const auto& u : j.at("residualUnpriced"))
        f.residual_unpriced.push_back({address_from_hex(u.at("token").get<std::string>()), Int(u.at("amount").get<std::string>())});
    for (const auto& w : j.at("warnings")) f.warnings.push_back(w.get<std::string>());
    return f;
}

std::vector<FindingRecord> load_findings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open findings file: " + path);
    std::vector<FindingRecord> findings;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        findings.push_back(parse_finding_line(line));
    }
    return findings;
}

namespace {

struct BlockOutput {
    std::vector<ArbitrageFinding> arbs;
    std::vector<SandwichFinding> sandwiches;
    std::vector<Hash32> failed_frontruns;
    std::vector<std::int64_t> failed_frontrun_indices;
    std::string ledger_dump;
};

Int fee_of(const TransactionRecord& tx) {
    return Int(tx.gas_used) * Int(tx.effective_gas_price) + Int(tx.coinbase_transfer);
}

BlockOutput process_block(const Block& block, const PatternRegistry& registry, const DetectorParams& params,
                          const ReplayOracle* oracle, bool dump_ledger) {
    BlockOutput out;
    for (const auto& tx : block.transactions) {
        auto finding = identify_arbitrage(tx, block.producer, registry, params);
        if (finding) {
            finding->running = classify_running(*finding, block, oracle, registry, params);
            out.arbs.push_back(std::move(*finding));
        }
    }
    out.sandwiches = identify_sandwiches(block, registry, params);
    if (oracle) {
        for (const auto& tx : block.transactions) {
            bool is_arb = false;
            for (const auto& a : out.arbs) is_arb = is_arb || a.tx == tx.hash;
            if (is_arb) continue;
            try {
                if (detect_failed_frontrun(tx, block, *oracle, registry, params)) {
                    out.failed_frontruns.push_back(tx.hash);
                    out.failed_frontrun_indices.push_back(tx.tx_index);
                }
            } catch (const ReplayUnavailableError&) {
                // No state for this block; skip quietly.
            }
        }
    }
    if (dump_ledger) {
        std::ostringstream dump;
        for (const auto& tx : block.transactions) {
            if (tx.status != TxStatus::success) continue;
            BalanceLedger ledger = get_bal_change(tx);
            for (const auto& [addr, tokens] : ledger.deltas)
                for (const auto& [token, delta] : tokens)
                    dump << block.number << " " << to_hex(tx.hash) << " " << to_hex(addr) << " " << to_hex(token) << " "
                         << delta.str() << "\n";
        }
        out.ledger_dump = dump.str();
    }
    return out;
}

const TransactionRecord* tx_by_hash(const Block& block, const Hash32& hash) {
    for (const auto& tx : block.transactions)
        if (tx.hash == hash) return &tx;
    return nullptr;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    namespace fs = std::filesystem;
    if (config.out_dir.empty()) throw SchemaError("pipeline needs an output directory");
    fs::create_directories(config.out_dir);

    PatternRegistry registry =
        config.pattern_paths.empty() ? PatternRegistry::builtin() : PatternRegistry::from_files(config.pattern_paths);

    DetectorParams params;
    params.eps.value = config.epsilon;
    if (params.eps.value < 0 || params.eps.value >= 1) throw SchemaError("epsilon must lie in [0, 1)");
    params.limits = config.limits;

    std::optional<SimReplayOracle> oracle;
    if (config.use_sim_replay) {
        std::string state_path = config.sim_state_path;
        if (state_path.empty())
            state_path = (fs::path(config.blocks_path).parent_path() / "sim_state.jsonl").string();
        oracle = build_oracle_from_state(read_sim_state(state_path));
    }

    std::vector<Block> blocks = load_blocks(config.blocks_path, config.range);

    // Fan out per block; results land in a slot vector so emission order is
    // identical to sequential execution regardless of worker count.
    std::vector<BlockOutput> outputs(blocks.size());
    int workers = std::max(1, config.workers);
    const ReplayOracle* oracle_ptr = oracle ? &*oracle : nullptr;
    if (workers == 1) {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            outputs[i] = process_block(blocks[i], registry, params, oracle_ptr, config.dump_ledger);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= blocks.size()) return;
                outputs[i] = process_block(blocks[i], registry, params, oracle_ptr, config.dump_ledger);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Toxic overlap is a sequential final pass over the merged findings;
    // merging preserves block order, so emission stays deterministic.
    std::vector<ArbitrageFinding> all_arbs;
    std::vector<SandwichFinding> all_sandwiches;
    for (auto& out : outputs) {
        for (auto& a : out.arbs) all_arbs.push_back(std::move(a));
        for (auto& s : out.sandwiches) all_sandwiches.push_back(std::move(s));
        out.arbs.clear();
        out.sandwiches.clear();
    }
    mark_toxic(all_arbs, all_sandwiches);

    PipelineResult result;
    result.findings_path = (fs::path(config.out_dir) / "findings.jsonl").string();
    result.summary_path = (fs::path(config.out_dir) / "summary.txt").string();
    result.totals_path = (fs::path(config.out_dir) / "totals.json").string();
    std::ofstream findings_out(result.findings_path);
    if (!findings_out) throw SchemaError("cannot write findings file");
    std::ofstream ledger_out;
    if (config.dump_ledger) {
        ledger_out.open((fs::path(config.out_dir) / "ledger_dump.jsonl").string());
    }

    std::size_t front_count = 0, back_count = 0, unknown_count = 0;
    std::size_t normal_count = 0, burger_count = 0, conjoined_count = 0;
    Int total_revenue = 0, total_profit = 0;
    std::set<Hash32> toxic_overlap_txs;

    auto emit = [&](const FindingRecord& f) { findings_out << serialize_finding(f) << "\n"; };

    std::size_t arb_cursor = 0, sandwich_cursor = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Block& block = blocks[i];
        BlockOutput& out = outputs[i];
        if (config.dump_ledger) ledger_out << out.ledger_dump;

        // Arbitrages and sandwiches interleaved by their first transaction.
        std::vector<const ArbitrageFinding*> arbs;
        std::vector<const SandwichFinding*> sandwiches;
        while (arb_cursor < all_arbs.size() && all_arbs[arb_cursor].block == block.number)
            arbs.push_back(&all_arbs[arb_cursor++]);
        while (sandwich_cursor < all_sandwiches.size() && all_sandwiches[sandwich_cursor].block == block.number)
            sandwiches.push_back(&all_sandwiches[sandwich_cursor++]);

        std::size_t ai = 0, si = 0;
        auto arb_key = [&](const ArbitrageFinding* a) { return a->tx_index; };
        auto sand_key = [&](const SandwichFinding* s) { return s->attack_indices.front(); };
        while (ai < arbs.size() || si < sandwiches.size()) {
            bool take_arb = si >= sandwiches.size() ||
                            (ai < arbs.size() && arb_key(arbs[ai]) <= sand_key(sandwiches[si]));
            if (take_arb) {
                const ArbitrageFinding& a = *arbs[ai++];
                const TransactionRecord* tx = tx_by_hash(block, a.tx);
                FindingRecord f;
                f.id = "b" + std::to_string(block.number) + "-a" + std::to_string(a.tx_index);
                f.kind = "arbitrage";
                f.running = a.running == RunningKind::front ? "front" : (a.running == RunningKind::back ? "back" : "unknown");
                f.toxic = a.toxic_overlap;
                f.block = block.number;
                f.txs = {a.tx};
                f.builder = block.producer;
                f.searcher = tx && tx->to ? *tx->to : (tx ? tx->from : Address{});
                std::set<Address> pools;
                for (const auto& s : a.swaps) pools.insert(s.pool);
                f.pools.assign(pools.begin(), pools.end());
                f.gas_used = tx ? tx->gas_used : 0;
                f.gas_price = tx ? tx->effective_gas_price : 0;
                TokenFlowGraph g = TokenFlowGraph::init(a.swaps);
                NativeValue value = value_in_native(a.verdict, g, params.limits);
                f.revenue_native = value.native;
                f.residual_unpriced = value.unpriced;
                f.fees_native = tx ? fee_of(*tx) : Int(0);
                f.profit_native = f.revenue_native - f.fees_native;
                if (f.revenue_native > 0) f.margin = Rat(f.profit_native, f.revenue_native);
                f.lower_bound = a.verdict.lower_bound;
                f.warnings = a.warnings;
                if (a.running == RunningKind::front)
                    ++front_count;
                else if (a.running == RunningKind::back)
                    ++back_count;
                else
                    ++unknown_count;
                if (a.toxic_overlap) toxic_overlap_txs.insert(a.tx);
                total_revenue += f.revenue_native;
                total_profit += f.profit_native;
                emit(f);
            } else {
                const SandwichFinding& s = *sandwiches[si++];
                FindingRecord f;
                f.id = "b" + std::to_string(block.number) + "-s" + std::to_string(s.attack_indices.front());
                f.kind = "sandwich";
                f.shape = s.kind == SandwichShape::normal
                              ? "normal"
                              : (s.kind == SandwichShape::multi_layered_burger ? "multi_layered_burger" : "conjoined");
                f.toxic = s.toxic;
                f.block = block.number;
                f.txs = s.attack_txs;
                f.victims = s.victim_txs;
                f.pools.assign(s.pools.begin(), s.pools.end());
                f.builder = block.producer;
                const TransactionRecord* first = tx_by_hash(block, s.attack_txs.front());
                f.searcher = first && first->to ? *first->to : (first ? first->from : Address{});
                std::vector<Swap> swaps;
                for (const auto& hash : s.attack_txs) {
                    const TransactionRecord* tx = tx_by_hash(block, hash);
                    if (!tx) continue;
                    f.gas_used += tx->gas_used;
                    f.fees_native += fee_of(*tx);
                    auto decoded = decode_swaps(*tx, registry);
                    swaps.insert(swaps.end(), decoded.swaps.begin(), decoded.swaps.end());
                }
                f.gas_price = first ? first->effective_gas_price : 0;
                TokenFlowGraph g = TokenFlowGraph::init(swaps);
                NativeValue value = value_in_native(s.verdict, g, params.limits);
                f.revenue_native = value.native;
                f.residual_unpriced = value.unpriced;
                f.profit_native = f.revenue_native - f.fees_native;
                if (f.revenue_native > 0) f.margin = Rat(f.profit_native, f.revenue_native);
                f.lower_bound = s.verdict.lower_bound;
                f.warnings = s.warnings;
                switch (s.kind) {
                    case SandwichShape::normal: ++normal_count; break;
                    case SandwichShape::multi_layered_burger: ++burger_count; break;
                    case SandwichShape::conjoined: ++conjoined_count; break;
                }
                total_revenue += f.revenue_native;
                total_profit += f.profit_native;
                emit(f);
            }
        }
        for (std::size_t k = 0; k < out.failed_frontruns.size(); ++k) {
            const TransactionRecord* tx = tx_by_hash(block, out.failed_frontruns[k]);
            FindingRecord f;
            f.id = "b" + std::to_string(block.number) + "-f" + std::to_string(out.failed_frontrun_indices[k]);
            f.kind = "failed_frontrun";
            f.block = block.number;
            f.txs = {out.failed_frontruns[k]};
            f.builder = block.producer;
            f.searcher = tx && tx->to ? *tx->to : (tx ? tx->from : Address{});
            f.gas_used = tx ? tx->gas_used : 0;
            f.gas_price = tx ? tx->effective_gas_price : 0;
            f.fees_native = tx ? fee_of(*tx) : Int(0);
            f.profit_native = -f.fees_native;
            emit(f);
            ++result.failed_frontrun_count;
        }
    }
    findings_out.close();

    result.arbitrage_count = all_arbs.size();
    result.sandwich_count = all_sandwiches.size();
    result.toxic_overlap_count = toxic_overlap_txs.size();

    std::size_t dedup_total = result.arbitrage_count + result.sandwich_count - result.toxic_overlap_count;
    {
        std::ofstream summary(result.summary_path);
        summary << "mevlens detection summary\n";
        summary << "blocks processed:        " << blocks.size() << "\n";
        summary << "arbitrages:              " << result.arbitrage_count << "\n";
        summary << "  front-running:         " << front_count << "\n";
        summary << "  back-running:          " << back_count << "\n";
        summary << "  unknown:               " << unknown_count << "\n";
        summary << "sandwich attacks:        " << result.sandwich_count << "\n";
        summary << "  multi-layered burger:  " << burger_count << "\n";
        summary << "  conjoined:             " << conjoined_count << "\n";
        summary << "  normal:                " << normal_count << "\n";
        summary << "toxic arbitrage overlap: " << result.toxic_overlap_count << "\n";
        summary << "failed front-runs:       " << result.failed_frontrun_count << "\n";
        summary << "total MEV activities:    " << dedup_total << "\n";
        summary << "total revenue (native):  " << total_revenue.str() << "\n";
        summary << "total profit (native):   " << total_profit.str() << "\n";
    }
    {
        json totals;
        totals["blocks"] = blocks.size();
        totals["arbitrages"] = result.arbitrage_count;
        totals["arbitragesFront"] = front_count;
        totals["arbitragesBack"] = back_count;
        totals["arbitragesUnknown"] = unknown_count;
        totals["sandwiches"] = result.sandwich_count;
        totals["sandwichesNormal"] = normal_count;
        totals["sandwichesBurger"] = burger_count;
        totals["sandwichesConjoined"] = conjoined_count;
        totals["toxicOverlap"] = result.toxic_overlap_count;
        totals["failedFrontruns"] = result.failed_frontrun_count;
        totals["totalDeduplicated"] = dedup_total;
        totals["totalRevenueNative"] = total_revenue.str();
        totals["totalProfitNative"] = total_profit.str();
        std::ofstream totals_out(result.totals_path);
        totals_out << totals.dump(2) << "\n";
    }
    return result;
}

std::vector<EpRow> expected_profit_report(const std::vector<FindingRecord>& findings) {
    struct Acc {
        std::size_t arbs = 0;
        std::size_t failed = 0;
        Int failed_gas = 0;
        std::vector<const FindingRecord*> arb_findings;
    };
    std::map<Address, Acc> by_searcher;
    for (const auto& f : findings) {
        Acc& acc = by_searcher[f.searcher];
        if (f.kind == "arbitrage") {
            ++acc.arbs;
            acc.arb_findings.push_back(&f);
        } else if (f.kind == "failed_frontrun") {
            ++acc.failed;
            acc.failed_gas += Int(f.gas_used);
        }
    }
    // Searchers without observed failures inherit the averages of those with.
    Rat sr_sum = 0;
    Rat fg_sum = 0;
    std::size_t with_failures = 0;
    for (const auto& [searcher, acc] : by_searcher) {
        (void)searcher;
        if (acc.failed == 0 || acc.arbs == 0) continue;
        ++with_failures;
        sr_sum += Rat(acc.arbs, acc.arbs + acc.failed);
        fg_sum += Rat(acc.failed_gas, acc.failed);
    }
    Rat default_sr = with_failures ? sr_sum / with_failures : Rat(1);
    Rat default_fg = with_failures ? fg_sum / with_failures : Rat(0);

    std::vector<EpRow> rows;
    for (const auto& [searcher, acc] : by_searcher) {
        if (acc.arbs == 0) continue;
        EpRow row;
        row.searcher = searcher;
        row.arbitrages = acc.arbs;
        row.failed = acc.failed;
        Rat sr = acc.failed ? Rat(acc.arbs, acc.arbs + acc.failed) : default_sr;
        Rat fg = acc.failed ? Rat(acc.failed_gas, acc.failed) : default_fg;
        row.success_rate = sr;
        Rat sum = 0;
        for (const auto* f : acc.arb_findings) {
            EpInputs in;
            in.profit = f->profit_native;
            in.sr = sr;
            in.gas_price = Int(f->gas_price);
            // fg is an average, so evaluate the formula over rationals.
            Rat ep = Rat(in.profit) * sr - Rat(in.gas_price) * fg * (Rat(1) - sr);
            sum += ep;
            if (ep < 0) ++row.negative_ep;
        }
        row.mean_ep = sum / static_cast<int>(acc.arbs);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mevlens
