#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "xchain/contract.hpp"
#include "xchain/gas.hpp"
#include "xchain/rng.hpp"
#include "xchain/sig.hpp"

namespace xchain {

class VdrStore;
class EventLog;

struct TxReceipt {
    std::uint64_t tx_id = 0;
    std::uint64_t gas_used = 0;
    bool ok = false;
    std::string revert_reason;
    std::vector<JournalEntry> events;
    std::vector<std::pair<std::string, std::uint64_t>> gas_trace;
    json ret;

    bool reverted() const { return !ok; }
};

struct UniversalClock {
    std::int64_t now = 0;
    std::int64_t delta = 0;
    std::map<ChainId, std::int64_t> skew;
};

struct GasLogEntry {
    std::uint64_t tx_id = 0;
    std::uint64_t gas = 0;
};

struct ChainState {
    ChainId id;
    GasSchedule schedule;
    std::map<AccountId, Amount> native_balances;  // test-only native units
    std::map<AccountId, std::uint64_t> nonces;
    std::map<AccountId, std::unique_ptr<Contract>> contracts;
    std::vector<JournalEntry> journal;
    std::vector<GasLogEntry> gas_log;
};

// One simulated multi-chain universe. Single-writer: every mutation runs
// under the world mutex in submission order, so identical call sequences
// yield byte-identical snapshots. Reads are safe from any thread.
class World {
public:
    World(std::uint32_t chain_count, std::int64_t delta, const GasSchedule& schedule,
          std::uint64_t seed);

    // --- time ---
    void advance_time(std::int64_t dt);
    std::int64_t now() const;
    std::int64_t delta() const { return clock_.delta; }
    std::int64_t skew(ChainId chain) const;
    std::int64_t chain_time(ChainId chain) const;

    // --- chains & contracts ---
    std::uint32_t chain_count() const { return static_cast<std::uint32_t>(chains_.size()); }
    void set_chain_schedule(ChainId chain, const GasSchedule& schedule);
    const GasSchedule& chain_schedule(ChainId chain) const;

    AccountId deploy_contract(ChainId chain, const AccountId& deployer, std::string_view kind,
                              const json& init_args);
    TxReceipt call(ChainId chain, const AccountId& caller, const AccountId& contract,
                   std::string_view method, const json& args);
    json view(ChainId chain, const AccountId& contract, std::string_view method,
              const json& args) const;
    bool has_contract(ChainId chain, const AccountId& contract) const;

    // --- journal ---
    std::vector<JournalEntry> read_journal(ChainId chain, std::uint64_t from_index) const;
    std::uint64_t journal_size(ChainId chain) const;

    // --- native balances (test fixture only) ---
    void mint_native(ChainId chain, const AccountId& to, Amount amount);
    Amount native_balance(ChainId chain, const AccountId& account) const;

    // --- snapshots & exports ---
    json serialize() const;
    Hash32 digest() const;
    // Line format: chain|index|timestamp|contract|event|payload-hash
    std::vector<std::string> export_journal_lines() const;

    // --- services ---
    KeyStore& keys() { return keys_; }
    const KeyStore& keys() const { return keys_; }
    const AccountId& authority() const { return authority_; }
    DetRng& rng() { return rng_; }

    void attach_vdr(const VdrStore* vdr) { vdr_ = vdr; }
    const VdrStore* vdr() const { return vdr_; }
    void attach_event_log(const EventLog* log) { event_log_ = log; }
    const EventLog* event_log() const { return event_log_; }

    // Wall-clock microseconds spent executing a transaction. Kept outside the
    // snapshot so digests stay deterministic.
    double tx_wall_micros(std::uint64_t tx_id) const;

private:
    friend class CallContext;

    ChainState& chain_at(ChainId id);
    const ChainState& chain_at(ChainId id) const;
    json dispatch(ChainId chain, const AccountId& caller, const AccountId& contract,
                  std::string_view method, const json& args, std::uint64_t tx_id, GasMeter& gas,
                  std::vector<JournalEntry>* event_buf);

    mutable std::mutex mu_;
    UniversalClock clock_;
    std::vector<ChainState> chains_;
    KeyStore keys_;
    DetRng rng_;
    AccountId authority_;
    std::uint64_t next_tx_id_ = 1;
    std::map<std::uint64_t, double> tx_wall_micros_;
    const VdrStore* vdr_ = nullptr;
    const EventLog* event_log_ = nullptr;
};

std::unique_ptr<World> create_world(std::uint32_t chain_count, std::int64_t delta,
                                    const GasSchedule& schedule, std::uint64_t seed);

}  // namespace xchain
