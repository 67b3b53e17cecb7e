#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mevlens {

// Raw on-chain amounts. Checked backend: arithmetic throws instead of
// silently wrapping.
using U256 = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
    256, 256, boost::multiprecision::unsigned_magnitude, boost::multiprecision::checked, void>>;

// Arbitrary-precision signed value (balance deltas, route products).
using Int = boost::multiprecision::cpp_int;

// Exact rational (thresholds, rates, margins). Never collapsed to floating
// point inside a comparison.
using Rat = boost::multiprecision::cpp_rational;

template <std::size_t N>
struct FixedBytes {
    std::array<std::uint8_t, N> bytes{};

    auto operator<=>(const FixedBytes&) const = default;
    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0) return false;
        return true;
    }
};

struct Address : FixedBytes<20> {};
struct Hash32 : FixedBytes<32> {};

// Canonical 0x-prefixed lowercase hex.
std::string to_hex(const std::uint8_t* data, std::size_t len);
std::string to_hex(const Address& a);
std::string to_hex(const Hash32& h);
std::string to_hex(const std::vector<std::uint8_t>& bytes);

Address address_from_hex(std::string_view hex);
Hash32 hash_from_hex(std::string_view hex);
std::vector<std::uint8_t> bytes_from_hex(std::string_view hex);

std::string u256_to_hex(const U256& v);
U256 u256_from_hex(std::string_view hex);

// 32-byte ABI word helpers.
Address address_from_word(const Hash32& w);
U256 u256_from_word(const Hash32& w);
Int int256_from_word(const Hash32& w);  // two's complement
Hash32 word_from_u256(const U256& v);
Hash32 word_from_address(const Address& a);

// Rational from "p/q" or a plain decimal like "0.01".
Rat parse_rational(std::string_view text);
std::string rational_to_string(const Rat& r);

// Native value is modeled as a pseudo-token under the conventional
// 0xeeee...eeee sentinel so traces and ERC-20 transfers share one ledger.
const Address& native_token();
const Address& zero_address();
const Address& dead_address();

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RangeEmptyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DuplicateTopicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyTraderSetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ReplayUnavailableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SpecInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientLiquidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// Level comes from MEVLENS_LOG (error|warn|info|debug), default warn.
LogLevel log_level();
void log_msg(LogLevel level, const std::string& msg);

}  // namespace mevlens

template <>
struct std::hash<mevlens::Address> {
    std::size_t operator()(const mevlens::Address& a) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto b : a.bytes) h = (h ^ b) * 1099511628211ull;
        return h;
    }
};

template <>
struct std::hash<mevlens::Hash32> {
    std::size_t operator()(const mevlens::Hash32& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto b : v.bytes) h = (h ^ b) * 1099511628211ull;
        return h;
    }
};
