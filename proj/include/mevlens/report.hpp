#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mevlens/detectors.hpp"
#include "mevlens/generator.hpp"

namespace mevlens {

struct FindingRecord {
    std::string id;
    std::string kind;     // arbitrage | sandwich | failed_frontrun
    std::string running;  // front | back | unknown (arbitrage only)
    std::string shape;    // normal | multi_layered_burger | conjoined (sandwich only)
    bool toxic = false;
    std::int64_t block = 0;
    std::vector<Hash32> txs;
    std::vector<Hash32> victims;
    std::vector<Address> pools;
    Address builder;
    Address searcher;
    std::uint64_t gas_used = 0;   // summed over the finding's transactions
    std::uint64_t gas_price = 0;  // first attack transaction
    Int revenue_native = 0;       // pre-fee trader gain valued in native units
    Int fees_native = 0;          // gas cost plus coinbase transfers
    Int profit_native = 0;        // revenue - fees
    std::optional<Rat> margin;    // profit / revenue, defined iff revenue > 0
    bool lower_bound = false;
    std::vector<std::pair<Address, Int>> residual_unpriced;  // gains with no route to native
    std::vector<std::string> warnings;
};

struct NativeValue {
    Int native = 0;
    std::vector<std::pair<Address, Int>> unpriced;
};

// Values the verdict's residual gains in the native pseudo-token via
// exchange_token over the same graph; unrouteable residues stay in vector
// form next to the partial native value.
NativeValue value_in_native(const ProfitVerdict& verdict, const TokenFlowGraph& g, const RouteLimits& limits);

struct EpInputs {
    Int profit;     // native units
    Rat sr;         // success rate in [0, 1]
    Int gas_price;  // wei per gas
    Int gas_units;  // consumed gas of the failed attempts
};

// EP = profit * sr - gas_price * gas_units * (1 - sr), evaluated exactly.
Rat expected_profit(const EpInputs& in);

struct CollusionRow {
    Address builder;
    Address searcher;
    std::size_t tx_count = 0;
    Rat share_builder;   // builder's findings from this searcher
    Rat share_searcher;  // searcher's findings packed by this builder
};

// Pairs where both shares strictly exceed the threshold (default 1/2).
std::vector<CollusionRow> collusion_scan(const std::vector<FindingRecord>& findings, const Rat& threshold);

std::string serialize_finding(const FindingRecord& finding);
FindingRecord parse_finding_line(const std::string& line);
std::vector<FindingRecord> load_findings(const std::string& path);

struct PipelineConfig {
    std::string blocks_path;
    std::vector<std::string> pattern_paths;  // empty -> bundled registry
    std::optional<BlockRange> range;
    Rat epsilon{1, 100};
    RouteLimits limits;
    bool use_sim_replay = false;
    std::string sim_state_path;  // defaults to sim_state.jsonl next to the corpus
    std::string out_dir;
    int workers = 1;
    bool dump_ledger = false;
};

struct PipelineResult {
    std::string findings_path;
    std::string summary_path;
    std::string totals_path;
    std::size_t arbitrage_count = 0;
    std::size_t sandwich_count = 0;
    std::size_t failed_frontrun_count = 0;
    std::size_t toxic_overlap_count = 0;
};

// Streams blocks through the detectors (optionally fanned out over a worker
// pool; output is identical to sequential execution), then runs the toxic
// overlap pass and writes findings, a human-readable summary, and a totals
// record. Throws on I/O and schema failures; per-transaction decode problems
// only surface as warnings.
PipelineResult run_pipeline(const PipelineConfig& config);

// Per-searcher expected-profit table over a findings file: success rate and
// failure gas are taken from each searcher's own failed front-runs, searchers
// without failures fall back to the averages of those with.
struct EpRow {
    Address searcher;
    std::size_t arbitrages = 0;
    std::size_t failed = 0;
    Rat success_rate;
    Rat mean_ep;
    std::size_t negative_ep = 0;
};
std::vector<EpRow> expected_profit_report(const std::vector<FindingRecord>& findings);

}  // namespace mevlens
