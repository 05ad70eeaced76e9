#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "xchain/common.hpp"

namespace xchain {

// Abstract gas model. Values are calibration, not contract; only relative
// trends matter (first write to a slot costs storage_new, later writes
// storage_update). An all-zero schedule models Fabric-style chains.
struct GasSchedule {
    std::uint64_t base_call = 0;
    std::uint64_t storage_new = 0;
    std::uint64_t storage_update = 0;
    std::uint64_t hash_op = 0;
    std::uint64_t event_emit = 0;
    std::uint64_t coin_transfer = 0;

    static GasSchedule evm_like() {
        return GasSchedule{21000, 20000, 5000, 30, 375, 9000};
    }
    static GasSchedule zero() { return GasSchedule{}; }

    bool is_zero() const {
        return base_call == 0 && storage_new == 0 && storage_update == 0 && hash_op == 0 &&
               event_emit == 0 && coin_transfer == 0;
    }

    void validate() const {
        if (is_zero()) return;
        if (storage_new <= storage_update)
            throw SimError("gas schedule requires storage_new > storage_update");
    }

    json to_json() const;
    static GasSchedule from_json(const json& j);
};

// Per-transaction meter. The trace lists every metered primitive so a receipt
// can be re-verified by summation.
struct GasMeter {
    const GasSchedule* schedule = nullptr;
    std::uint64_t used = 0;
    std::vector<std::pair<std::string, std::uint64_t>> trace;

    void charge(std::string_view op, std::uint64_t units) {
        used += units;
        trace.emplace_back(std::string(op), units);
    }
};

}  // namespace xchain
