#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace xchain {

using json = nlohmann::json;

// Smallest stablecoin denomination. Checked arithmetic helpers below.
using Amount = std::uint64_t;

struct Hash32 {
    std::array<std::uint8_t, 32> bytes{};

    auto operator<=>(const Hash32&) const = default;
    std::string hex() const;
    static Hash32 from_hex(std::string_view h);
    bool is_zero() const;
};

// 20-byte opaque address, shared by user accounts and contracts.
struct AccountId {
    std::array<std::uint8_t, 20> bytes{};

    auto operator<=>(const AccountId&) const = default;
    std::string hex() const;
    static AccountId from_hex(std::string_view h);
    // Deterministic fixture address derived from a human-readable label.
    static AccountId from_label(std::string_view label);
};

struct ChainId {
    std::uint32_t value = 0;

    auto operator<=>(const ChainId&) const = default;
};

// Raised for API misuse outside contract execution (bad config, unknown
// contract or method, malformed scenario files). Contract-level failures use
// Revert instead and surface in the transaction receipt.
struct SimError : std::runtime_error {
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown inside contract code to abort the surrounding transaction. All state
// changes of the transaction are rolled back; gas spent is still recorded.
struct Revert {
    std::string reason;
};

Hash32 sha256(const void* data, std::size_t len);
Hash32 sha256(std::string_view s);

// H(value || salt), the sealed-bid / attribute commitment stand-in.
Hash32 commit_hash(Amount value, const Hash32& salt);

std::string to_hex(const std::uint8_t* data, std::size_t len);
void from_hex_into(std::string_view h, std::uint8_t* out, std::size_t len);

Amount checked_add(Amount a, Amount b);
Amount checked_sub(Amount a, Amount b);
Amount checked_mul(Amount a, Amount b);

}  // namespace xchain
