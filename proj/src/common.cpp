#include "mevlens/common.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>

namespace mevlens {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string_view strip_0x(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    return hex;
}

}  // namespace

std::string to_hex(const std::uint8_t* data, std::size_t len) {
    std::string out;
    out.reserve(2 + 2 * len);
    out += "0x";
    for (std::size_t i = 0; i < len; ++i) {
        out += kHexDigits[data[i] >> 4];
        out += kHexDigits[data[i] & 0xf];
    }
    return out;
}

std::string to_hex(const Address& a) { return to_hex(a.bytes.data(), a.bytes.size()); }
std::string to_hex(const Hash32& h) { return to_hex(h.bytes.data(), h.bytes.size()); }
std::string to_hex(const std::vector<std::uint8_t>& bytes) { return to_hex(bytes.data(), bytes.size()); }

std::vector<std::uint8_t> bytes_from_hex(std::string_view hex) {
    hex = strip_0x(hex);
    if (hex.size() % 2 != 0) throw SchemaError("hex string has odd length: " + std::string(hex));
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(hex[2 * i]), lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw SchemaError("invalid hex digit in: " + std::string(hex));
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

Address address_from_hex(std::string_view hex) {
    auto raw = bytes_from_hex(hex);
    if (raw.size() != 20) throw SchemaError("address must be 20 bytes: " + std::string(hex));
    Address a;
    std::copy(raw.begin(), raw.end(), a.bytes.begin());
    return a;
}

Hash32 hash_from_hex(std::string_view hex) {
    auto raw = bytes_from_hex(hex);
    if (raw.size() != 32) throw SchemaError("hash/word must be 32 bytes: " + std::string(hex));
    Hash32 h;
    std::copy(raw.begin(), raw.end(), h.bytes.begin());
    return h;
}

std::string u256_to_hex(const U256& v) {
    std::ostringstream ss;
    ss << std::hex << v;
    return "0x" + ss.str();
}

U256 u256_from_hex(std::string_view hex) {
    auto digits = strip_0x(hex);
    if (digits.empty() || digits.size() > 64) throw SchemaError("amount out of range: " + std::string(hex));
    for (char c : digits)
        if (nibble(c) < 0) throw SchemaError("invalid hex amount: " + std::string(hex));
    return U256("0x" + std::string(digits));
}

Address address_from_word(const Hash32& w) {
    Address a;
    std::copy(w.bytes.begin() + 12, w.bytes.end(), a.bytes.begin());
    return a;
}

U256 u256_from_word(const Hash32& w) {
    U256 v = 0;
    for (auto b : w.bytes) v = (v << 8) | b;
    return v;
}

Int int256_from_word(const Hash32& w) {
    Int v = Int(u256_from_word(w));
    if (w.bytes[0] & 0x80) v -= (Int(1) << 256);
    return v;
}

Hash32 word_from_u256(const U256& v) {
    Hash32 w;
    U256 rest = v;
    for (int i = 31; i >= 0; --i) {
        w.bytes[i] = static_cast<std::uint8_t>(rest & 0xff);
        rest >>= 8;
    }
    return w;
}

Hash32 word_from_address(const Address& a) {
    Hash32 w;
    std::copy(a.bytes.begin(), a.bytes.end(), w.bytes.begin() + 12);
    return w;
}

Rat parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw SchemaError("rational with zero denominator: " + s);
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s), 1);
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-") whole += "0";
    Int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Int num = Int(whole) * den;
    Int frac_part = frac.empty() ? Int(0) : Int(frac);
    num += negative ? -frac_part : frac_part;
    return Rat(num, den);
}

std::string rational_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

const Address& native_token() {
    static const Address a = address_from_hex("0xeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeeee");
    return a;
}

const Address& zero_address() {
    static const Address a{};
    return a;
}

const Address& dead_address() {
    static const Address a = address_from_hex("0x000000000000000000000000000000000000dead");
    return a;
}

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("MEVLENS_LOG");
        if (!env) return LogLevel::warn;
        std::string v(env);
        if (v == "error") return LogLevel::error;
        if (v == "info") return LogLevel::info;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

void log_msg(LogLevel level, const std::string& msg) {
    if (level > log_level()) return;
    static std::mutex mu;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::lock_guard<std::mutex> lock(mu);
    std::fprintf(stderr, "mevlens [%s] %s\n", names[static_cast<int>(level)], msg.c_str());
}

}  // namespace mevlens
