#include "xchain/common.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <limits>

namespace xchain {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw SimError("invalid hex digit");
}
}  // namespace

std::string to_hex(const std::uint8_t* data, std::size_t len) {
    std::string out;
    out.reserve(len * 2);
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(kHexDigits[data[i] >> 4]);
        out.push_back(kHexDigits[data[i] & 0xf]);
    }
    return out;
}

void from_hex_into(std::string_view h, std::uint8_t* out, std::size_t len) {
    if (h.size() != len * 2) throw SimError("hex string has wrong length");
    for (std::size_t i = 0; i < len; ++i) {
        out[i] = static_cast<std::uint8_t>(hex_nibble(h[2 * i]) << 4 | hex_nibble(h[2 * i + 1]));
    }
}

std::string Hash32::hex() const { return to_hex(bytes.data(), bytes.size()); }

Hash32 Hash32::from_hex(std::string_view h) {
    Hash32 out;
    from_hex_into(h, out.bytes.data(), out.bytes.size());
    return out;
}

bool Hash32::is_zero() const {
    for (auto b : bytes)
        if (b != 0) return false;
    return true;
}

std::string AccountId::hex() const { return to_hex(bytes.data(), bytes.size()); }

AccountId AccountId::from_hex(std::string_view h) {
    AccountId out;
    from_hex_into(h, out.bytes.data(), out.bytes.size());
    return out;
}

AccountId AccountId::from_label(std::string_view label) {
    Hash32 h = sha256(std::string("acct:") + std::string(label));
    AccountId out;
    std::memcpy(out.bytes.data(), h.bytes.data(), out.bytes.size());
    return out;
}

Hash32 sha256(const void* data, std::size_t len) {
    Hash32 out;
    unsigned int md_len = 0;
    if (EVP_Digest(data, len, out.bytes.data(), &md_len, EVP_sha256(), nullptr) != 1 ||
        md_len != out.bytes.size()) {
        throw SimError("sha256 failed");
    }
    return out;
}

Hash32 sha256(std::string_view s) { return sha256(s.data(), s.size()); }

Hash32 commit_hash(Amount value, const Hash32& salt) {
    std::array<std::uint8_t, 8 + 32> buf{};
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(value >> (56 - 8 * i));
    std::memcpy(buf.data() + 8, salt.bytes.data(), salt.bytes.size());
    return sha256(buf.data(), buf.size());
}

Amount checked_add(Amount a, Amount b) {
    if (a > std::numeric_limits<Amount>::max() - b) throw SimError("amount overflow");
    return a + b;
}

Amount checked_sub(Amount a, Amount b) {
    if (b > a) throw SimError("amount underflow");
    return a - b;
}

Amount checked_mul(Amount a, Amount b) {
    if (b != 0 && a > std::numeric_limits<Amount>::max() / b) throw SimError("amount overflow");
    return a * b;
}

}  // namespace xchain
