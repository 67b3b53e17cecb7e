#include "mevlens/chain.hpp"

#include <fstream>
#include <memory>

#include <json.hpp>

namespace mevlens {

namespace {

using json = nlohmann::ordered_json;

const json& require(const json& obj, const char* key, const char* ctx) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "' in " + ctx);
    return *it;
}

std::int64_t as_int(const json& v, const char* key, const char* ctx) {
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer in " + ctx);
    return v.get<std::int64_t>();
}

std::string as_str(const json& v, const char* key, const char* ctx) {
    if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string in " + ctx);
    return v.get<std::string>();
}

LogRecord parse_log(const json& j) {
    LogRecord log;
    log.emitter = address_from_hex(as_str(require(j, "address", "log"), "address", "log"));
    const json& topics = require(j, "topics", "log");
    if (!topics.is_array()) throw SchemaError("field 'topics' must be an array in log");
    if (topics.size() > 4) throw SchemaError("log carries more than 4 topics");
    for (const auto& t : topics) log.topics.push_back(hash_from_hex(as_str(t, "topics", "log")));
    log.data = bytes_from_hex(as_str(require(j, "data", "log"), "data", "log"));
    log.log_index = as_int(require(j, "logIndex", "log"), "logIndex", "log");
    if (log.log_index < 0) throw SchemaError("logIndex must be non-negative");
    return log;
}

TraceRecord parse_trace(const json& j) {
    TraceRecord tr;
    tr.from = address_from_hex(as_str(require(j, "from", "trace"), "from", "trace"));
    tr.to = address_from_hex(as_str(require(j, "to", "trace"), "to", "trace"));
    tr.native_value = u256_from_hex(as_str(require(j, "value", "trace"), "value", "trace"));
    tr.call_depth = as_int(require(j, "depth", "trace"), "depth", "trace");
    if (tr.call_depth < 0) throw SchemaError("trace depth must be non-negative");
    const json& rev = require(j, "reverted", "trace");
    if (!rev.is_boolean()) throw SchemaError("field 'reverted' must be a boolean in trace");
    tr.reverted = rev.get<bool>();
    return tr;
}

TransactionRecord parse_tx(const json& j) {
    TransactionRecord tx;
    tx.hash = hash_from_hex(as_str(require(j, "hash", "transaction"), "hash", "transaction"));
    tx.block_number = as_int(require(j, "blockNumber", "transaction"), "blockNumber", "transaction");
    tx.tx_index = as_int(require(j, "txIndex", "transaction"), "txIndex", "transaction");
    tx.from = address_from_hex(as_str(require(j, "from", "transaction"), "from", "transaction"));
    const json& to = require(j, "to", "transaction");
    if (!to.is_null()) tx.to = address_from_hex(as_str(to, "to", "transaction"));
    std::string status = as_str(require(j, "status", "transaction"), "status", "transaction");
    if (status == "success")
        tx.status = TxStatus::success;
    else if (status == "failed")
        tx.status = TxStatus::failed;
    else
        throw SchemaError("status must be 'success' or 'failed', got '" + status + "'");
    tx.gas_used = static_cast<std::uint64_t>(as_int(require(j, "gasUsed", "transaction"), "gasUsed", "transaction"));
    tx.effective_gas_price = static_cast<std::uint64_t>(
        as_int(require(j, "effectiveGasPrice", "transaction"), "effectiveGasPrice", "transaction"));
    tx.coinbase_transfer =
        u256_from_hex(as_str(require(j, "coinbaseTransfer", "transaction"), "coinbaseTransfer", "transaction"));
    for (const auto& l : require(j, "logs", "transaction")) tx.logs.push_back(parse_log(l));
    for (const auto& t : require(j, "traces", "transaction")) tx.traces.push_back(parse_trace(t));
    return tx;
}

json log_to_json(const LogRecord& log) {
    json j;
    j["address"] = to_hex(log.emitter);
    json topics = json::array();
    for (const auto& t : log.topics) topics.push_back(to_hex(t));
    j["topics"] = std::move(topics);
    j["data"] = to_hex(log.data);
    j["logIndex"] = log.log_index;
    return j;
}

json trace_to_json(const TraceRecord& tr) {
    json j;
    j["from"] = to_hex(tr.from);
    j["to"] = to_hex(tr.to);
    j["value"] = u256_to_hex(tr.native_value);
    j["depth"] = tr.call_depth;
    j["reverted"] = tr.reverted;
    return j;
}

json tx_to_json(const TransactionRecord& tx) {
    json j;
    j["hash"] = to_hex(tx.hash);
    j["blockNumber"] = tx.block_number;
    j["txIndex"] = tx.tx_index;
    j["from"] = to_hex(tx.from);
    if (tx.to)
        j["to"] = to_hex(*tx.to);
    else
        j["to"] = nullptr;
    j["status"] = tx.status == TxStatus::success ? "success" : "failed";
    j["gasUsed"] = tx.gas_used;
    j["effectiveGasPrice"] = tx.effective_gas_price;
    j["coinbaseTransfer"] = u256_to_hex(tx.coinbase_transfer);
    json logs = json::array();
    for (const auto& l : tx.logs) logs.push_back(log_to_json(l));
    j["logs"] = std::move(logs);
    json traces = json::array();
    for (const auto& t : tx.traces) traces.push_back(trace_to_json(t));
    j["traces"] = std::move(traces);
    return j;
}

}  // namespace

std::vector<std::string> validate_block(const Block& b) {
    std::vector<std::string> violations;
    std::int64_t expected_index = 0;
    for (const auto& tx : b.transactions) {
        std::string tag = "block " + std::to_string(b.number) + " tx " + to_hex(tx.hash);
        if (tx.tx_index != expected_index)
            violations.push_back(tag + ": txIndex " + std::to_string(tx.tx_index) + " breaks the gap-free ordering (expected " +
                                 std::to_string(expected_index) + ")");
        expected_index = tx.tx_index + 1;
        if (tx.block_number != b.number)
            violations.push_back(tag + ": blockNumber " + std::to_string(tx.block_number) + " does not match block " +
                                 std::to_string(b.number));
        if (tx.status == TxStatus::failed && !tx.logs.empty())
            violations.push_back(tag + ": failed transaction carries " + std::to_string(tx.logs.size()) + " logs");
        std::int64_t prev_log = -1;
        for (const auto& log : tx.logs) {
            if (log.log_index <= prev_log) {
                violations.push_back(tag + ": logIndex " + std::to_string(log.log_index) + " is not strictly increasing");
                break;
            }
            prev_log = log.log_index;
        }
    }
    return violations;
}

Block parse_block_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("unparseable block line: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("block line is not an object");
    Block b;
    b.number = as_int(require(j, "number", "block"), "number", "block");
    b.producer = address_from_hex(as_str(require(j, "producer", "block"), "producer", "block"));
    const json& txs = require(j, "transactions", "block");
    if (!txs.is_array()) throw SchemaError("field 'transactions' must be an array in block");
    for (const auto& t : txs) b.transactions.push_back(parse_tx(t));
    auto violations = validate_block(b);
    if (!violations.empty()) throw SchemaError(violations.front());
    return b;
}

std::string serialize_block(const Block& b) {
    json j;
    j["number"] = b.number;
    j["producer"] = to_hex(b.producer);
    json txs = json::array();
    for (const auto& t : b.transactions) txs.push_back(tx_to_json(t));
    j["transactions"] = std::move(txs);
    return j.dump();
}

struct BlockReader::Impl {
    std::ifstream file;
    std::string path;
    std::optional<BlockRange> range;
    std::size_t line_no = 0;
    std::optional<std::int64_t> last_number;
};

BlockReader::BlockReader(std::string path, std::optional<BlockRange> range) : impl_(std::make_unique<Impl>()) {
    impl_->file.open(path);
    if (!impl_->file) throw SchemaError("cannot open blocks file: " + path);
    impl_->path = std::move(path);
    impl_->range = range;
}

BlockReader::~BlockReader() = default;
BlockReader::BlockReader(BlockReader&&) noexcept = default;
BlockReader& BlockReader::operator=(BlockReader&&) noexcept = default;

std::optional<Block> BlockReader::next() {
    std::string line;
    while (std::getline(impl_->file, line)) {
        ++impl_->line_no;
        if (line.empty()) continue;
        Block b;
        try {
            b = parse_block_line(line);
        } catch (const SchemaError& e) {
            throw SchemaError(impl_->path + ":" + std::to_string(impl_->line_no) + ": " + e.what());
        }
        if (impl_->last_number && b.number <= *impl_->last_number)
            throw SchemaError(impl_->path + ":" + std::to_string(impl_->line_no) + ": block numbers must be strictly ascending");
        impl_->last_number = b.number;
        if (impl_->range) {
            if (b.number < impl_->range->first) continue;
            if (b.number > impl_->range->last) return std::nullopt;
        }
        return b;
    }
    return std::nullopt;
}

std::vector<Block> load_blocks(const std::string& path, std::optional<BlockRange> range) {
    BlockReader reader(path, range);
    std::vector<Block> blocks;
    while (auto b = reader.next()) blocks.push_back(std::move(*b));
    if (blocks.empty()) {
        std::string detail = range ? " in range [" + std::to_string(range->first) + "," + std::to_string(range->last) + "]"
                                   : "";
        throw RangeEmptyError("no blocks" + detail + " in " + path);
    }
    return blocks;
}

BlockRange parse_range(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw SchemaError("range must look like a:b, got '" + std::string(text) + "'");
    BlockRange r;
    try {
        r.first = std::stoll(std::string(text.substr(0, colon)));
        r.last = std::stoll(std::string(text.substr(colon + 1)));
    } catch (const std::exception&) {
        throw SchemaError("range bounds must be integers: '" + std::string(text) + "'");
    }
    if (r.last < r.first) throw SchemaError("range upper bound precedes lower bound");
    return r;
}

}  // namespace mevlens
