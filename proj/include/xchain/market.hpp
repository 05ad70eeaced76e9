#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xchain/contract.hpp"

namespace xchain {

enum class ListingType { Fixed, OpenIncreasing, OpenDecreasing, SealedFirst, SealedSecond };

enum class Phase { Created, Bidding, Reveal, Concluding, Finalized, Aborted };

std::string to_string(ListingType t);
ListingType listing_type_from_string(std::string_view s);
std::string to_string(Phase p);

bool is_sealed(ListingType t);
bool is_open(ListingType t);

// Listing parameters as agreed at creation; identical on the asset chain and
// on every coin chain the CC-SVCs open the listing on.
struct ListingParams {
    std::uint64_t id = 0;
    AccountId vendor;
    std::uint32_t asset_chain = 0;
    std::uint64_t asset_id = 0;
    std::vector<std::uint32_t> coin_chains;
    std::vector<AccountId> trusted_svcs;
    std::vector<std::pair<std::uint32_t, AccountId>> trusted_registries;
    ListingType type = ListingType::Fixed;
    std::int64_t start_time = 0;
    std::int64_t reveal_time = 0;
    std::int64_t conclude_time = 0;
    std::int64_t feedback_time = 0;
    Amount initial_price = 0;
    Amount abort_penalty = 0;
    std::uint32_t num_winners = 1;
    bool require_did = false;
    // Dutch schedule: stepwise linear decrease to the reserve over the bidding
    // window.
    Amount dutch_reserve = 0;
    std::uint32_t dutch_steps = 10;

    json to_json() const;
    static ListingParams from_json(const json& j);
    // Throws SimError with the spec error name (BadTimers, EmptySvcSet, ...)
    // on violation; callers inside contracts translate to reverts.
    void validate() const;
    bool trusts_svc(const AccountId& svc) const;
};

// Scheduled Dutch price at chain time t.
Amount dutch_price(const ListingParams& params, std::int64_t t);

// One bid as seen across chains; the input to winner determination.
struct GlobalBid {
    std::uint32_t chain = 0;
    std::uint64_t bid_index = 0;
    AccountId bidder;
    std::int64_t placed_at = 0;
    bool revealed = false;   // sealed types only; open/fixed bids count as revealed
    bool has_value = false;
    Amount value = 0;
    Amount escrowed = 0;
};

struct WinnerEntry {
    std::uint32_t chain = 0;
    std::uint64_t bid_index = 0;
    AccountId bidder;
    Amount clearing = 0;
};

struct Outcome {
    std::uint64_t listing_id = 0;
    std::vector<WinnerEntry> winners;  // empty -> listing aborts, escrows refunded

    json to_json() const;
    static Outcome from_json(const json& j);
};

// Pure winner determination over all chains' bid books. Ties break by
// (placed_at, chain, bid_index) ascending. For sealed types the initial price
// acts as the reserve; a revealed value below it cannot win.
Outcome compute_winner(const ListingParams& params, const std::vector<GlobalBid>& bids);

// Cross-chain comparison key for bid ordering.
struct BidOrderKey {
    std::int64_t placed_at;
    std::uint32_t chain;
    std::uint64_t bid_index;
    auto operator<=>(const BidOrderKey&) const = default;
};

struct FeedbackEntry {
    std::uint64_t listing_id = 0;
    std::uint64_t bid_index = 0;
    AccountId rater;
    int score = 0;
    Hash32 comment_hash;
    bool did_backed = false;
};

struct ReputationAggregate {
    std::uint64_t count = 0;
    double mean_score = 0.0;
};

// Aggregate over DID-backed feedback only (Sybil-resistant reputation).
ReputationAggregate aggregate_feedback(const std::vector<FeedbackEntry>& entries);

// The app contract on each coin chain: per-listing bid books, escrow,
// commit/abort settlement and feedback.
//
// Methods:
//   openListing  {listing}                                  trusted svc
//   bidFixed     {listing}
//   bidOpen      {listing, value}
//   bidSealed    {listing, commitment}
//   startReveal  {listing}                                  trusted svc or vendor
//   revealBid    {listing, bidIndex, value, salt}
//   closeAuction {listing, outcome, by}                     trusted svc
//   commitResult {listing, vote, sig}                       local winner
//   settle       {listing, cert}                            anyone, needs full commit cert
//   abortDeal    {listing, reason, cert?}                   svc relay or timer
//   touchListing {listing}                                  anyone; applies timers
//   withdraw     {listing} -> {amount}
//   feedback     {listing, bidIndex, score, commentHash, didProof?}
// Views:
//   listing {listing}, escrowLiability {}, feedbackEntries {listing}
class MarketContract final : public Contract {
public:
    MarketContract(AccountId coin, AccountId governance_treasury, Amount svc_fee, Amount gov_fee,
                   std::int64_t settle_grace)
        : coin_(coin), governance_treasury_(governance_treasury), svc_fee_(svc_fee),
          gov_fee_(gov_fee), settle_grace_(settle_grace) {}

    std::string kind() const override { return "market"; }
    std::unique_ptr<Contract> clone() const override {
        return std::make_unique<MarketContract>(*this);
    }
    json call(CallContext& ctx, std::string_view method, const json& args) override;
    json view(const ViewContext& ctx, std::string_view method, const json& args) const override;
    json state_json() const override;

private:
    struct BidRec {
        std::uint64_t index = 0;
        AccountId bidder;
        std::int64_t placed_at = 0;
        Amount escrowed = 0;
        bool has_commitment = false;
        Hash32 commitment;
        bool revealed = false;
        bool has_value = false;
        Amount value = 0;
    };

    struct VoteRec {
        std::string vote;  // "commit" | "abort"
        Hash32 sig;
    };

    struct Listing {
        ListingParams params;
        Phase phase = Phase::Created;
        std::vector<BidRec> bids;
        std::map<AccountId, std::uint64_t> open_bid_of;  // open types: bidder -> index
        bool reveal_started = false;
        bool ending = false;
        std::int64_t ending_at = 0;
        json declared;  // local outcome: winners on this chain, required voters, global hash
        std::map<AccountId, VoteRec> votes;
        bool settled = false;
        bool aborted = false;
        std::string abort_reason;
        std::map<AccountId, Amount> claimable;
        std::set<AccountId> withdrawn;
        std::map<std::uint64_t, FeedbackEntry> feedback;  // by winning bid index
    };

    Listing& listing_at(CallContext& ctx, std::uint64_t id);
    void touch(CallContext& ctx, Listing& l);
    void advance_phase_by_time(CallContext& ctx, Listing& l);
    void require_window(CallContext& ctx, std::int64_t from, std::int64_t to_exclusive) const;
    void require_did_if_needed(CallContext& ctx, const Listing& l) const;
    BidRec& new_bid(CallContext& ctx, Listing& l, const AccountId& bidder);
    void escrow_in(CallContext& ctx, const AccountId& from, Amount amount);
    void pay_out(CallContext& ctx, const AccountId& to, Amount amount);
    void finalize_settle(CallContext& ctx, Listing& l, const json& cert, const AccountId& caller);
    void finalize_abort(CallContext& ctx, Listing& l, const std::string& reason,
                        bool concluded_locally);
    std::vector<GlobalBid> local_book(const Listing& l, std::uint32_t chain) const;
    json do_call(CallContext& ctx, std::string_view method, const json& args);

    AccountId coin_;
    AccountId governance_treasury_;
    Amount svc_fee_ = 0;
    Amount gov_fee_ = 0;
    std::int64_t settle_grace_ = 0;
    std::map<std::uint64_t, Listing> listings_;
};

}  // namespace xchain
