#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mevlens/detectors.hpp"
#include "mevlens/sim.hpp"

namespace mevlens {

struct InjectionSpec {
    enum class Kind {
        arbitrage_front,
        arbitrage_back,
        sandwich_normal,
        sandwich_burger,
        sandwich_conjoined,
        failed_frontrun,
        benign
    };

    Kind kind = Kind::benign;
    int count = 1;    // expansion factor when scheduling
    int victims = 1;  // sandwich victim count (burger uses >= 2)
    int hops = 2;     // arbitrage cycle length (2 or 3)
};

std::string injection_kind_to_string(InjectionSpec::Kind k);
InjectionSpec::Kind injection_kind_from_string(std::string_view s);

struct BenignPlan {
    int swaps = 0;
    int transfers = 0;
    int wraps = 0;
    int decoy_cycles = 0;  // unprofitable cycles exercising the profit gate
    int failed = 0;
};

struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::int64_t n_blocks = 100;
    int world_tokens = 12;
    std::vector<InjectionSpec> injections;
    BenignPlan benign;
    bool self_check = true;
    std::string out_dir;

    // Profile with the default injection/noise mix for a corpus size.
    static GeneratorConfig scaled_profile(std::int64_t n_blocks, std::uint64_t seed);
};

struct LabelRecord {
    std::int64_t block = 0;
    std::vector<Hash32> tx_hashes;         // attack / arbitrage transactions
    std::vector<Hash32> victim_tx_hashes;  // sandwich victims; enabling tx for back-runs travels in tx_hashes
    std::string kind;
    Address expected_profit_token;
    Int expected_profit_amount;
};

std::string serialize_label(const LabelRecord& label);
LabelRecord parse_label_line(const std::string& line);
std::vector<LabelRecord> load_labels(const std::string& path);

struct GeneratorResult {
    std::string blocks_path;
    std::string labels_path;
    std::string state_path;
    std::string manifest_path;
    std::size_t label_count = 0;
    std::size_t benign_tx_count = 0;
    std::size_t decoy_count = 0;
    std::size_t tx_count = 0;
};

// Deterministic for a fixed seed (byte-identical outputs). Every injected
// activity is executed on the simulator, labeled from realized outcomes, and
// (unless self_check is off) pushed through the full detector pipeline as a
// generation-time assertion. Throws SpecInfeasibleError when an injection
// cannot be realized profitably on the configured world.
GeneratorResult generate_corpus(const GeneratorConfig& config);

// Optional specs file: overrides the scaled profile.
GeneratorConfig load_generator_specs(const std::string& path, std::int64_t n_blocks, std::uint64_t seed,
                                     const std::string& out_dir);

}  // namespace mevlens
