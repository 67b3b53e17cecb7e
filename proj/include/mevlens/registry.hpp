#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mevlens/chain.hpp"
#include "mevlens/common.hpp"

namespace mevlens {

// Field sources understood by the registry mini-grammar:
//   topic[i]          i-th log topic (1..3)
//   word[i]           i-th 32-byte word of the data section
//   emitter           the log's emitting address
//   transfer_in       companion transfer into the pool (token or amount)
//   transfer_out      companion transfer out of the pool (token or amount)
//   signed_pair[i,j]  data words i,j as int256; the positive one is the
//                     pool's input amount, the negative one its output
enum class SourceKind { topic, word, emitter, transfer_in, transfer_out, signed_pair };

struct FieldSource {
    SourceKind kind = SourceKind::emitter;
    int index = -1;
    int index2 = -1;

    bool operator==(const FieldSource&) const = default;
};

FieldSource parse_field_source(std::string_view text);
std::string field_source_to_string(const FieldSource& s);

struct FieldMap {
    FieldSource input_token;
    FieldSource input_amount;
    FieldSource output_token;
    FieldSource output_amount;
    FieldSource pool_address;  // must be topic[i], word[i], or emitter

    bool operator==(const FieldMap&) const = default;
};

struct SwapPattern {
    std::string pattern_id;
    Hash32 topic0;
    FieldMap field_map;

    bool operator==(const SwapPattern&) const = default;
};

struct Swap {
    Address pool;
    Address token_in;
    U256 amount_in;
    Address token_out;
    U256 amount_out;
    Hash32 tx_hash;
    std::int64_t log_index = 0;
    std::string pattern_id;

    bool operator==(const Swap&) const = default;
};

struct TransferRecord {
    Address token;
    Address from;
    Address to;
    U256 amount;
    std::int64_t log_index = 0;

    bool operator==(const TransferRecord&) const = default;
};

struct DecodeWarning {
    std::int64_t log_index = 0;
    std::string pattern_id;
    std::string message;
};

struct SwapDecodeResult {
    std::vector<Swap> swaps;
    std::vector<DecodeWarning> warnings;
};

struct TransferDecodeResult {
    std::vector<TransferRecord> transfers;
    std::vector<DecodeWarning> warnings;
};

class PatternRegistry {
  public:
    // Idempotent on identical re-registration; DuplicateTopicError when the
    // same topic0 arrives with a different field map or id.
    void register_pattern(const SwapPattern& p);
    const SwapPattern* find(const Hash32& topic0) const;
    std::size_t size() const { return by_topic_.size(); }
    std::vector<SwapPattern> patterns_sorted() const;

    // One pattern per line: {"patternId":..., "topic0":..., "fieldMap":{...}}.
    void merge_file(const std::string& path);
    static PatternRegistry from_files(const std::vector<std::string>& paths);
    void write_file(const std::string& path) const;

    // The bundled representative set: constant-product pair, concentrated
    // liquidity (signed pair), order fill, multi-asset pool, and wrapped
    // token deposit/withdrawal treated as 1:1 swaps with the native
    // pseudo-token.
    static PatternRegistry builtin();

  private:
    std::unordered_map<Hash32, SwapPattern> by_topic_;
};

// keccak("Transfer(address,address,uint256)")
const Hash32& transfer_topic();
// Event signature hashes used by the bundled pattern set.
const Hash32& pair_swap_topic();
const Hash32& concentrated_swap_topic();
const Hash32& order_fill_topic();
const Hash32& multi_asset_swap_topic();
const Hash32& wrapped_deposit_topic();
const Hash32& wrapped_withdrawal_topic();

// Canonical ERC-20 Transfer logs plus one synthetic native-token record per
// non-reverted trace carrying value. Synthetic records are ordered after the
// real logs. Requires tx.status == success; failed transactions yield nothing.
TransferDecodeResult decode_transfers(const TransactionRecord& tx);

// One Swap per registry-matching log, in log order. Logs matching no pattern
// are skipped; matching logs with malformed payloads are reported per log and
// do not abort the transaction.
SwapDecodeResult decode_swaps(const TransactionRecord& tx, const PatternRegistry& registry);

}  // namespace mevlens
