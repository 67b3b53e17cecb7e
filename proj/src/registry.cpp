#include "mevlens/registry.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace mevlens {

namespace {

using json = nlohmann::ordered_json;

int parse_bracket_index(std::string_view text, std::string_view prefix) {
    // text looks like "<prefix>[i]"
    auto body = text.substr(prefix.size());
    if (body.size() < 3 || body.front() != '[' || body.back() != ']')
        throw SchemaError("malformed field source: " + std::string(text));
    return std::stoi(std::string(body.substr(1, body.size() - 2)));
}

bool is_scalar_source(const FieldSource& s) {
    return s.kind == SourceKind::topic || s.kind == SourceKind::word || s.kind == SourceKind::emitter;
}

}  // namespace

FieldSource parse_field_source(std::string_view text) {
    FieldSource s;
    if (text == "emitter") {
        s.kind = SourceKind::emitter;
    } else if (text == "transfer_in") {
        s.kind = SourceKind::transfer_in;
    } else if (text == "transfer_out") {
        s.kind = SourceKind::transfer_out;
    } else if (text.rfind("topic", 0) == 0) {
        s.kind = SourceKind::topic;
        s.index = parse_bracket_index(text, "topic");
        if (s.index < 1 || s.index > 3) throw SchemaError("topic index must be 1..3: " + std::string(text));
    } else if (text.rfind("word", 0) == 0) {
        s.kind = SourceKind::word;
        s.index = parse_bracket_index(text, "word");
        if (s.index < 0) throw SchemaError("word index must be non-negative: " + std::string(text));
    } else if (text.rfind("signed_pair", 0) == 0) {
        s.kind = SourceKind::signed_pair;
        auto body = text.substr(std::string_view("signed_pair").size());
        if (body.size() < 5 || body.front() != '[' || body.back() != ']')
            throw SchemaError("malformed signed_pair source: " + std::string(text));
        auto inner = std::string(body.substr(1, body.size() - 2));
        auto comma = inner.find(',');
        if (comma == std::string::npos) throw SchemaError("signed_pair needs two indices: " + std::string(text));
        s.index = std::stoi(inner.substr(0, comma));
        s.index2 = std::stoi(inner.substr(comma + 1));
        if (s.index < 0 || s.index2 < 0 || s.index == s.index2)
            throw SchemaError("signed_pair indices must be distinct and non-negative: " + std::string(text));
    } else {
        throw SchemaError("unknown field source: " + std::string(text));
    }
    return s;
}

std::string field_source_to_string(const FieldSource& s) {
    switch (s.kind) {
        case SourceKind::emitter: return "emitter";
        case SourceKind::transfer_in: return "transfer_in";
        case SourceKind::transfer_out: return "transfer_out";
        case SourceKind::topic: return "topic[" + std::to_string(s.index) + "]";
        case SourceKind::word: return "word[" + std::to_string(s.index) + "]";
        case SourceKind::signed_pair:
            return "signed_pair[" + std::to_string(s.index) + "," + std::to_string(s.index2) + "]";
    }
    return "emitter";
}

void PatternRegistry::register_pattern(const SwapPattern& p) {
    if (p.pattern_id.empty()) throw SchemaError("pattern_id must be non-empty");
    if (!is_scalar_source(p.field_map.pool_address))
        throw SchemaError("pool_address source must be topic[i], word[i], or emitter in pattern " + p.pattern_id);
    auto it = by_topic_.find(p.topic0);
    if (it != by_topic_.end()) {
        if (it->second == p) return;  // idempotent
        throw DuplicateTopicError("topic0 " + to_hex(p.topic0) + " already registered as '" + it->second.pattern_id +
                                  "' with a different field map");
    }
    by_topic_.emplace(p.topic0, p);
}

const SwapPattern* PatternRegistry::find(const Hash32& topic0) const {
    auto it = by_topic_.find(topic0);
    return it == by_topic_.end() ? nullptr : &it->second;
}

std::vector<SwapPattern> PatternRegistry::patterns_sorted() const {
    std::vector<SwapPattern> out;
    out.reserve(by_topic_.size());
    for (const auto& [_, p] : by_topic_) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const SwapPattern& a, const SwapPattern& b) { return a.pattern_id < b.pattern_id; });
    return out;
}

void PatternRegistry::merge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open pattern file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw SchemaError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        SwapPattern p;
        try {
            p.pattern_id = j.at("patternId").get<std::string>();
            p.topic0 = hash_from_hex(j.at("topic0").get<std::string>());
            const auto& fm = j.at("fieldMap");
            p.field_map.input_token = parse_field_source(fm.at("inputToken").get<std::string>());
            p.field_map.input_amount = parse_field_source(fm.at("inputAmount").get<std::string>());
            p.field_map.output_token = parse_field_source(fm.at("outputToken").get<std::string>());
            p.field_map.output_amount = parse_field_source(fm.at("outputAmount").get<std::string>());
            p.field_map.pool_address = parse_field_source(fm.at("poolAddress").get<std::string>());
            register_pattern(p);
        } catch (const json::exception& e) {
            throw SchemaError(path + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const SchemaError& e) {
            throw SchemaError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

PatternRegistry PatternRegistry::from_files(const std::vector<std::string>& paths) {
    PatternRegistry reg;
    for (const auto& p : paths) reg.merge_file(p);
    return reg;
}

void PatternRegistry::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write pattern file: " + path);
    for (const auto& p : patterns_sorted()) {
        json j;
        j["patternId"] = p.pattern_id;
        j["topic0"] = to_hex(p.topic0);
        json fm;
        fm["inputToken"] = field_source_to_string(p.field_map.input_token);
        fm["inputAmount"] = field_source_to_string(p.field_map.input_amount);
        fm["outputToken"] = field_source_to_string(p.field_map.output_token);
        fm["outputAmount"] = field_source_to_string(p.field_map.output_amount);
        fm["poolAddress"] = field_source_to_string(p.field_map.pool_address);
        j["fieldMap"] = std::move(fm);
        out << j.dump() << "\n";
    }
}

const Hash32& transfer_topic() {
    static const Hash32 h = hash_from_hex("0xddf252ad1be2c89b69c2b068fc378daa952ba7f163c4a11628f55a4df523b3ef");
    return h;
}
const Hash32& pair_swap_topic() {
    static const Hash32 h = hash_from_hex("0xd78ad95fa46c994b6551d0da85fc275fe613ce37657fb8d5e3d130840159d822");
    return h;
}
const Hash32& concentrated_swap_topic() {
    static const Hash32 h = hash_from_hex("0xc42079f94a6350d7e6235f29174924f928cc2ac818eb64fed8004e115fbcca67");
    return h;
}
const Hash32& order_fill_topic() {
    static const Hash32 h = hash_from_hex("0xd0a08e8c493f9c94f29311604c9de1b4e8c8d4c06bd0c789af57f2d65bfec0f6");
    return h;
}
const Hash32& multi_asset_swap_topic() {
    static const Hash32 h = hash_from_hex("0x2170c741c41531aec20e7c107c24eecfdd15e69c9bb0a8dd37b1840b9e0b207b");
    return h;
}
const Hash32& wrapped_deposit_topic() {
    static const Hash32 h = hash_from_hex("0xe1fffcc4923d04b559f4d29a8bfc6cda04eb5b0d3c460751c2402c5c5cc9109c");
    return h;
}
const Hash32& wrapped_withdrawal_topic() {
    static const Hash32 h = hash_from_hex("0x7fcf532c15f0a6db0bd6d0e038bea71d30d808c7d98cb3bf7268a95bf5081b65");
    return h;
}

PatternRegistry PatternRegistry::builtin() {
    PatternRegistry reg;
    auto src = [](std::string_view s) { return parse_field_source(s); };

    // Pair-style swaps carry no token addresses; both legs resolve through
    // the companion transfers that moved funds across the pool.
    reg.register_pattern({"cp_pair",
                          pair_swap_topic(),
                          {src("transfer_in"), src("transfer_in"), src("transfer_out"), src("transfer_out"), src("emitter")}});
    reg.register_pattern({"cl_pool",
                          concentrated_swap_topic(),
                          {src("transfer_in"), src("signed_pair[0,1]"), src("transfer_out"), src("signed_pair[0,1]"),
                           src("emitter")}});
    reg.register_pattern({"order_fill",
                          order_fill_topic(),
                          {src("word[0]"), src("word[1]"), src("word[2]"), src("word[3]"), src("topic[1]")}});
    reg.register_pattern({"multi_asset",
                          multi_asset_swap_topic(),
                          {src("topic[2]"), src("word[0]"), src("topic[3]"), src("word[1]"), src("topic[1]")}});
    // Wrap/unwrap as 1:1 swaps between the native pseudo-token and the
    // wrapped token; the native leg resolves through the synthetic trace
    // transfer, the wrapped leg is the emitting contract itself.
    reg.register_pattern({"wrapped_deposit",
                          wrapped_deposit_topic(),
                          {src("transfer_in"), src("word[0]"), src("emitter"), src("word[0]"), src("emitter")}});
    reg.register_pattern({"wrapped_withdrawal",
                          wrapped_withdrawal_topic(),
                          {src("emitter"), src("word[0]"), src("transfer_out"), src("word[0]"), src("emitter")}});
    return reg;
}

TransferDecodeResult decode_transfers(const TransactionRecord& tx) {
    TransferDecodeResult result;
    if (tx.status != TxStatus::success) return result;
    std::int64_t max_log_index = -1;
    for (const auto& log : tx.logs) {
        max_log_index = std::max(max_log_index, log.log_index);
        if (log.topics.empty() || log.topics[0] != transfer_topic()) continue;
        if (log.topics.size() != 3 || log.data.size() != 32) {
            result.warnings.push_back({log.log_index, "erc20_transfer", "malformed Transfer log skipped"});
            continue;
        }
        Hash32 amount_word;
        std::copy(log.data.begin(), log.data.end(), amount_word.bytes.begin());
        result.transfers.push_back({log.emitter, address_from_word(log.topics[1]), address_from_word(log.topics[2]),
                                    u256_from_word(amount_word), log.log_index});
    }
    // Synthetic native-token records for value-bearing traces; ordered after
    // the real logs so companion lookup distances stay well-defined.
    std::int64_t synth_index = max_log_index + 1;
    for (const auto& trace : tx.traces) {
        if (trace.reverted || trace.native_value == 0) continue;
        result.transfers.push_back({native_token(), trace.from, trace.to, trace.native_value, synth_index++});
    }
    return result;
}

namespace {

struct ResolvedScalar {
    Hash32 word;
};

// Scalar (topic/word/emitter) resolution; nullopt means malformed payload.
std::optional<Hash32> resolve_scalar_word(const FieldSource& s, const LogRecord& log, std::string* error) {
    switch (s.kind) {
        case SourceKind::topic:
            if (s.index >= static_cast<int>(log.topics.size())) {
                *error = "topic index " + std::to_string(s.index) + " out of range";
                return std::nullopt;
            }
            return log.topics[s.index];
        case SourceKind::word: {
            std::size_t offset = static_cast<std::size_t>(s.index) * 32;
            if (log.data.size() < offset + 32) {
                *error = "data too short for word " + std::to_string(s.index);
                return std::nullopt;
            }
            Hash32 w;
            std::copy(log.data.begin() + offset, log.data.begin() + offset + 32, w.bytes.begin());
            return w;
        }
        case SourceKind::emitter:
            return word_from_address(log.emitter);
        default:
            *error = "source is not scalar";
            return std::nullopt;
    }
}

const TransferRecord* nearest_companion(const std::vector<TransferRecord>& transfers, const Address& pool,
                                        std::int64_t swap_log_index, bool into_pool) {
    const TransferRecord* best = nullptr;
    std::int64_t best_distance = 0;
    for (const auto& t : transfers) {
        const Address& endpoint = into_pool ? t.to : t.from;
        if (endpoint != pool) continue;
        std::int64_t distance = t.log_index >= swap_log_index ? t.log_index - swap_log_index : swap_log_index - t.log_index;
        bool preceding = t.log_index < swap_log_index;
        if (!best) {
            best = &t;
            best_distance = distance;
            continue;
        }
        bool best_preceding = best->log_index < swap_log_index;
        // Smallest distance wins; on a tie the preceding transfer is kept.
        if (distance < best_distance || (distance == best_distance && preceding && !best_preceding)) {
            best = &t;
            best_distance = distance;
        }
    }
    return best;
}

}  // namespace

SwapDecodeResult decode_swaps(const TransactionRecord& tx, const PatternRegistry& registry) {
    SwapDecodeResult result;
    if (tx.status != TxStatus::success) return result;
    auto transfers = decode_transfers(tx);

    for (const auto& log : tx.logs) {
        if (log.topics.empty()) continue;
        const SwapPattern* pattern = registry.find(log.topics[0]);
        if (!pattern) continue;

        std::string error;
        auto fail = [&](const std::string& msg) {
            result.warnings.push_back({log.log_index, pattern->pattern_id, msg});
        };

        auto pool_word = resolve_scalar_word(pattern->field_map.pool_address, log, &error);
        if (!pool_word) {
            fail("pool: " + error);
            continue;
        }
        Address pool = address_from_word(*pool_word);

        // Signed-pair amounts are shared between the two amount targets.
        std::optional<U256> signed_in, signed_out;
        auto decode_signed_pair = [&](const FieldSource& s) -> bool {
            std::string e2;
            Hash32 w0, w1;
            FieldSource f0{SourceKind::word, s.index, -1};
            FieldSource f1{SourceKind::word, s.index2, -1};
            auto a = resolve_scalar_word(f0, log, &e2);
            auto b = resolve_scalar_word(f1, log, &e2);
            if (!a || !b) {
                fail("signed_pair: " + e2);
                return false;
            }
            w0 = *a;
            w1 = *b;
            Int v0 = int256_from_word(w0);
            Int v1 = int256_from_word(w1);
            if ((v0 > 0) == (v1 > 0) || v0 == 0 || v1 == 0) {
                fail("signed_pair amounts must have opposite signs");
                return false;
            }
            const Int& pos = v0 > 0 ? v0 : v1;
            const Int& neg = v0 > 0 ? v1 : v0;
            signed_in = U256(pos);
            signed_out = U256(-neg);
            return true;
        };

        auto resolve_token = [&](const FieldSource& s, bool input_side, std::optional<Address>* out) -> bool {
            if (s.kind == SourceKind::transfer_in || s.kind == SourceKind::transfer_out) {
                bool into_pool = s.kind == SourceKind::transfer_in;
                const TransferRecord* t = nearest_companion(transfers.transfers, pool, log.log_index, into_pool);
                if (!t) {
                    fail(std::string(input_side ? "input" : "output") + " token: no companion transfer for pool " +
                         to_hex(pool));
                    return false;
                }
                *out = t->token;
                return true;
            }
            if (s.kind == SourceKind::signed_pair) {
                fail("signed_pair cannot resolve a token");
                return false;
            }
            auto w = resolve_scalar_word(s, log, &error);
            if (!w) {
                fail(std::string(input_side ? "input" : "output") + " token: " + error);
                return false;
            }
            *out = address_from_word(*w);
            return true;
        };

        auto resolve_amount = [&](const FieldSource& s, bool input_side, std::optional<U256>* out) -> bool {
            if (s.kind == SourceKind::signed_pair) {
                if (!signed_in && !decode_signed_pair(s)) return false;
                *out = input_side ? *signed_in : *signed_out;
                return true;
            }
            if (s.kind == SourceKind::transfer_in || s.kind == SourceKind::transfer_out) {
                bool into_pool = s.kind == SourceKind::transfer_in;
                const TransferRecord* t = nearest_companion(transfers.transfers, pool, log.log_index, into_pool);
                if (!t) {
                    fail(std::string(input_side ? "input" : "output") + " amount: no companion transfer for pool " +
                         to_hex(pool));
                    return false;
                }
                *out = t->amount;
                return true;
            }
            auto w = resolve_scalar_word(s, log, &error);
            if (!w) {
                fail(std::string(input_side ? "input" : "output") + " amount: " + error);
                return false;
            }
            *out = u256_from_word(*w);
            return true;
        };

        std::optional<Address> token_in, token_out;
        std::optional<U256> amount_in, amount_out;
        if (!resolve_token(pattern->field_map.input_token, true, &token_in)) continue;
        if (!resolve_amount(pattern->field_map.input_amount, true, &amount_in)) continue;
        if (!resolve_token(pattern->field_map.output_token, false, &token_out)) continue;
        if (!resolve_amount(pattern->field_map.output_amount, false, &amount_out)) continue;

        if (*token_in == *token_out) {
            fail("decoded swap has identical input and output token");
            continue;
        }
        if (*amount_in == 0 || *amount_out == 0) {
            fail("decoded swap has a zero amount");
            continue;
        }
        result.swaps.push_back(
            {pool, *token_in, *amount_in, *token_out, *amount_out, tx.hash, log.log_index, pattern->pattern_id});
    }
    return result;
}

}  // namespace mevlens
