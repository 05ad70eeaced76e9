#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "xchain/common.hpp"

namespace xchain {

// Seeded deterministic RNG. Agents and generators fork independent streams by
// label so that adding an actor never perturbs another actor's draws.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw SimError("DetRng::below(0)");
        return next() % n;
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw SimError("DetRng::range: hi < lo");
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool chance(double p) { return unit() < p; }

    double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    Hash32 hash32() {
        std::array<std::uint8_t, 32> b{};
        for (int i = 0; i < 4; ++i) {
            std::uint64_t v = next();
            for (int j = 0; j < 8; ++j) b[i * 8 + j] = static_cast<std::uint8_t>(v >> (8 * j));
        }
        Hash32 h;
        h.bytes = b;
        return h;
    }

    DetRng fork(std::string_view label) const {
        Hash32 h = sha256(std::to_string(seed_) + ":" + std::string(label));
        std::uint64_t s = 0;
        for (int i = 0; i < 8; ++i) s = s << 8 | h.bytes[i];
        return DetRng(s);
    }

private:
    std::mt19937_64 eng_;
    std::uint64_t seed_;
};

}  // namespace xchain
