#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mevlens/report.hpp"

using namespace mevlens;

int main(int argc, char** argv) {
    CLI::App app{"mevlens: profitability-gated MEV detection over line-delimited block corpora"};
    app.require_subcommand(1);

    // detect
    auto* detect = app.add_subcommand("detect", "scan a block corpus for arbitrages and sandwich attacks");
    std::string blocks_path, range_text, replay_mode = "none", sim_state, out_dir = "out", epsilon_text = "1/100";
    std::vector<std::string> pattern_paths;
    int max_hops = 6, workers = 1;
    std::size_t max_routes = 10000;
    bool dump_ledger = false;
    detect->add_option("--blocks", blocks_path, "block corpus file (one block per line)")->required();
    detect->add_option("--patterns", pattern_paths, "swap pattern registry file (repeatable; bundled set when omitted)");
    detect->add_option("--range", range_text, "inclusive block interval a:b");
    detect->add_option("--epsilon", epsilon_text, "loss-ratio threshold, rational p/q or decimal");
    detect->add_option("--max-hops", max_hops, "route enumeration hop cap");
    detect->add_option("--max-routes", max_routes, "route enumeration count cap");
    detect->add_option("--replay", replay_mode, "replay oracle: none|sim")->check(CLI::IsMember({"none", "sim"}));
    detect->add_option("--sim-state", sim_state, "simulator state sidecar (defaults to sim_state.jsonl beside --blocks)");
    detect->add_option("--out", out_dir, "output directory");
    detect->add_option("--workers", workers, "block-level worker threads");
    detect->add_flag("--dump-ledger", dump_ledger, "write per-transaction balance ledgers");

    // generate
    auto* generate = app.add_subcommand("generate", "emit a labeled synthetic corpus from the AMM simulator");
    std::string specs_path, gen_out = "corpus";
    std::uint64_t seed = 1;
    std::int64_t n_blocks = 1000;
    generate->add_option("--specs", specs_path, "injection spec file (JSON); scaled defaults when omitted");
    generate->add_option("--seed", seed, "deterministic seed");
    generate->add_option("--blocks", n_blocks, "number of blocks to emit")->required();
    generate->add_option("--out", gen_out, "output directory")->required();

    // report
    auto* report = app.add_subcommand("report", "analytics over a findings file");
    std::string findings_path, thresholds_text = "1/2";
    bool run_ep = false, run_collusion = false;
    report->add_option("--findings", findings_path, "findings file from detect")->required();
    report->add_flag("--ep", run_ep, "expected-profit table per searcher");
    report->add_flag("--collusion", run_collusion, "builder-searcher collusion scan");
    report->add_option("--thresholds", thresholds_text, "collusion share threshold (rational)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*detect) {
            PipelineConfig config;
            config.blocks_path = blocks_path;
            config.pattern_paths = pattern_paths;
            if (!range_text.empty()) config.range = parse_range(range_text);
            config.epsilon = Epsilon::parse(epsilon_text).value;
            config.limits.max_hops = max_hops;
            config.limits.max_routes = max_routes;
            config.use_sim_replay = replay_mode == "sim";
            config.sim_state_path = sim_state;
            config.out_dir = out_dir;
            config.workers = workers;
            config.dump_ledger = dump_ledger;
            PipelineResult result = run_pipeline(config);
            std::ifstream summary(result.summary_path);
            std::cout << summary.rdbuf();
            return 0;
        }
        if (*generate) {
            GeneratorConfig config = specs_path.empty() ? GeneratorConfig::scaled_profile(n_blocks, seed)
                                                        : load_generator_specs(specs_path, n_blocks, seed, gen_out);
            config.seed = seed;
            config.n_blocks = n_blocks;
            config.out_dir = gen_out;
            GeneratorResult result = generate_corpus(config);
            std::cout << "corpus:   " << result.blocks_path << "\n"
                      << "labels:   " << result.labels_path << " (" << result.label_count << " activities)\n"
                      << "state:    " << result.state_path << "\n"
                      << "manifest: " << result.manifest_path << "\n";
            return 0;
        }
        if (*report) {
            auto findings = load_findings(findings_path);
            if (run_collusion) {
                Rat threshold = parse_rational(thresholds_text);
                auto rows = collusion_scan(findings, threshold);
                std::cout << "collusion pairs (threshold " << rational_to_string(threshold) << "): " << rows.size()
                          << "\n";
                for (const auto& row : rows)
                    std::cout << to_hex(row.builder) << " " << to_hex(row.searcher) << " txs=" << row.tx_count
                              << " shareBuilder=" << rational_to_string(row.share_builder)
                              << " shareSearcher=" << rational_to_string(row.share_searcher) << "\n";
            }
            if (run_ep) {
                auto rows = expected_profit_report(findings);
                std::cout << "expected profit by searcher (" << rows.size() << " searchers)\n";
                for (const auto& row : rows)
                    std::cout << to_hex(row.searcher) << " arbs=" << row.arbitrages << " failed=" << row.failed
                              << " sr=" << rational_to_string(row.success_rate) << " negEP=" << row.negative_ep << "/"
                              << row.arbitrages << "\n";
            }
            if (!run_ep && !run_collusion)
                std::cout << "loaded " << findings.size() << " findings; pass --ep and/or --collusion\n";
            return 0;
        }
    } catch (const RangeEmptyError& e) {
        std::fprintf(stderr, "mevlens: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "mevlens: %s\n", e.what());
        return 1;
    }
    return 0;
}
