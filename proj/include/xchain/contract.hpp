#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "xchain/common.hpp"
#include "xchain/gas.hpp"

namespace xchain {

class World;
class KeyStore;
class VdrStore;
class EventLog;

struct JournalEntry {
    std::uint64_t index = 0;
    std::int64_t timestamp = 0;
    AccountId contract;
    std::string event;
    json payload;
    std::uint64_t tx_id = 0;

    json to_json() const;
};

// Read-only context for view calls. Views never charge gas and never mutate.
struct ViewContext {
    const World& world;
    ChainId chain;
};

// Execution context for one transaction frame. Nested frames (cross-contract
// calls on the same chain) share the meter, the event buffer and the rollback
// scope of the outer transaction.
class CallContext {
public:
    CallContext(World& world, ChainId chain, AccountId origin, AccountId caller, AccountId self,
                std::int64_t time, std::uint64_t tx_id, GasMeter& gas,
                std::vector<JournalEntry>* event_buf)
        : world_(world), chain_(chain), origin_(origin), caller_(caller), self_(self),
          time_(time), tx_id_(tx_id), gas_(gas), events_(event_buf) {}

    ChainId chain() const { return chain_; }
    const AccountId& origin() const { return origin_; }
    const AccountId& caller() const { return caller_; }
    const AccountId& self() const { return self_; }
    std::int64_t time() const { return time_; }
    std::uint64_t tx_id() const { return tx_id_; }
    GasMeter& gas() { return gas_; }

    void emit(std::string_view event, json payload);
    // Charges storage_new on the first write to a slot of the current
    // contract, storage_update afterwards.
    void storage_write(std::string_view slot);
    void charge_hash();

    // Nested call into another contract on the same chain; caller becomes the
    // current contract. A Revert propagates and aborts the whole transaction.
    json call_contract(const AccountId& target, std::string_view method, const json& args);
    // Nested call executed with the transaction origin as caller. Used by the
    // market contract to pull escrow from the bidder who sent the transaction;
    // only legal while the current caller IS the origin.
    json call_contract_as_origin(const AccountId& target, std::string_view method,
                                 const json& args);
    json view_contract(const AccountId& target, std::string_view method, const json& args) const;

    const KeyStore& keys() const;
    // Global read views. Only governance adjudication and the RSC revocation
    // check use these; app contracts stay chain-local.
    const VdrStore* vdr() const;
    const EventLog* event_log() const;
    const World& world_view() const { return world_; }

    [[noreturn]] void revert(std::string reason) const { throw Revert{std::move(reason)}; }

private:
    World& world_;
    ChainId chain_;
    AccountId origin_;
    AccountId caller_;
    AccountId self_;
    std::int64_t time_;
    std::uint64_t tx_id_;
    GasMeter& gas_;
    std::vector<JournalEntry>* events_;
};

class Contract {
public:
    virtual ~Contract() = default;
    virtual std::string kind() const = 0;
    virtual std::unique_ptr<Contract> clone() const = 0;
    virtual json call(CallContext& ctx, std::string_view method, const json& args) = 0;
    virtual json view(const ViewContext& ctx, std::string_view method, const json& args) const = 0;
    // Canonical state snapshot; feeds world serialization, digests and the
    // sealed-value leak scan.
    virtual json state_json() const = 0;

    // Slots ever written, for storage_new/storage_update metering. Cloned and
    // rolled back together with contract state.
    std::set<std::string, std::less<>> slots_written;
};

}  // namespace xchain
