#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mevlens/common.hpp"

namespace mevlens {

struct LogRecord {
    Address emitter;
    std::vector<Hash32> topics;  // 0..4 entries, topics[0] is the event signature
    std::vector<std::uint8_t> data;
    std::int64_t log_index = 0;

    bool operator==(const LogRecord&) const = default;
};

struct TraceRecord {
    Address from;
    Address to;
    U256 native_value;
    std::int64_t call_depth = 0;
    bool reverted = false;

    bool operator==(const TraceRecord&) const = default;
};

enum class TxStatus { success, failed };

struct TransactionRecord {
    Hash32 hash;
    std::int64_t block_number = 0;
    std::int64_t tx_index = 0;
    Address from;
    std::optional<Address> to;
    TxStatus status = TxStatus::success;
    std::uint64_t gas_used = 0;
    std::uint64_t effective_gas_price = 0;  // wei per gas
    U256 coinbase_transfer;                 // native value paid directly to the producer
    std::vector<LogRecord> logs;
    std::vector<TraceRecord> traces;

    bool operator==(const TransactionRecord&) const = default;
};

struct Block {
    std::int64_t number = 0;
    Address producer;
    std::vector<TransactionRecord> transactions;

    bool operator==(const Block&) const = default;
};

struct BlockRange {
    std::int64_t first = 0;
    std::int64_t last = 0;  // inclusive
};

// Returns violation descriptions; empty iff every Block and
// TransactionRecord invariant holds. Violations are data, not failures.
std::vector<std::string> validate_block(const Block& b);

Block parse_block_line(const std::string& line);
std::string serialize_block(const Block& b);

// Streaming reader over a line-delimited block corpus. Lines are validated
// as they are read; schema and invariant problems raise SchemaError with the
// offending line number. Block numbers must be strictly ascending.
class BlockReader {
  public:
    BlockReader(std::string path, std::optional<BlockRange> range = std::nullopt);
    ~BlockReader();
    BlockReader(BlockReader&&) noexcept;
    BlockReader& operator=(BlockReader&&) noexcept;

    std::optional<Block> next();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Eager variant; throws RangeEmptyError when the interval selects nothing.
std::vector<Block> load_blocks(const std::string& path, std::optional<BlockRange> range = std::nullopt);

// "a:b" -> inclusive interval.
BlockRange parse_range(std::string_view text);

}  // namespace mevlens
