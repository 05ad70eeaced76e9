#include <algorithm>

#include "xchain/market.hpp"

namespace xchain {

std::string to_string(ListingType t) {
    switch (t) {
        case ListingType::Fixed: return "fixed";
        case ListingType::OpenIncreasing: return "open_increasing";
        case ListingType::OpenDecreasing: return "open_decreasing";
        case ListingType::SealedFirst: return "sealed_first";
        case ListingType::SealedSecond: return "sealed_second";
    }
    throw SimError("bad listing type");
}

ListingType listing_type_from_string(std::string_view s) {
    if (s == "fixed") return ListingType::Fixed;
    if (s == "open_increasing") return ListingType::OpenIncreasing;
    if (s == "open_decreasing") return ListingType::OpenDecreasing;
    if (s == "sealed_first") return ListingType::SealedFirst;
    if (s == "sealed_second") return ListingType::SealedSecond;
    throw SimError("unknown listing type: " + std::string(s));
}

std::string to_string(Phase p) {
    switch (p) {
        case Phase::Created: return "created";
        case Phase::Bidding: return "bidding";
        case Phase::Reveal: return "reveal";
        case Phase::Concluding: return "concluding";
        case Phase::Finalized: return "finalized";
        case Phase::Aborted: return "aborted";
    }
    throw SimError("bad phase");
}

bool is_sealed(ListingType t) {
    return t == ListingType::SealedFirst || t == ListingType::SealedSecond;
}

bool is_open(ListingType t) {
    return t == ListingType::OpenIncreasing || t == ListingType::OpenDecreasing;
}

json ListingParams::to_json() const {
    json svcs = json::array();
    for (const auto& s : trusted_svcs) svcs.push_back(s.hex());
    json regs = json::array();
    for (const auto& [c, a] : trusted_registries) regs.push_back(json{{"chain", c}, {"addr", a.hex()}});
    json chains = json::array();
    for (auto c : coin_chains) chains.push_back(c);
    return json{{"id", id},
                {"vendor", vendor.hex()},
                {"assetChain", asset_chain},
                {"assetId", asset_id},
                {"coinChains", chains},
                {"trustedSvcs", svcs},
                {"trustedRegistries", regs},
                {"type", to_string(type)},
                {"startTime", start_time},
                {"revealTime", reveal_time},
                {"concludeTime", conclude_time},
                {"feedbackTime", feedback_time},
                {"initialPrice", initial_price},
                {"abortPenalty", abort_penalty},
                {"numWinners", num_winners},
                {"requireDid", require_did},
                {"dutchReserve", dutch_reserve},
                {"dutchSteps", dutch_steps}};
}

ListingParams ListingParams::from_json(const json& j) {
    ListingParams p;
    p.id = j.at("id").get<std::uint64_t>();
    p.vendor = AccountId::from_hex(j.at("vendor").get<std::string>());
    p.asset_chain = j.at("assetChain").get<std::uint32_t>();
    p.asset_id = j.at("assetId").get<std::uint64_t>();
    for (const auto& c : j.at("coinChains")) p.coin_chains.push_back(c.get<std::uint32_t>());
    for (const auto& s : j.at("trustedSvcs"))
        p.trusted_svcs.push_back(AccountId::from_hex(s.get<std::string>()));
    for (const auto& r : j.at("trustedRegistries"))
        p.trusted_registries.emplace_back(r.at("chain").get<std::uint32_t>(),
                                          AccountId::from_hex(r.at("addr").get<std::string>()));
    p.type = listing_type_from_string(j.at("type").get<std::string>());
    p.start_time = j.at("startTime").get<std::int64_t>();
    p.reveal_time = j.at("revealTime").get<std::int64_t>();
    p.conclude_time = j.at("concludeTime").get<std::int64_t>();
    p.feedback_time = j.at("feedbackTime").get<std::int64_t>();
    p.initial_price = j.at("initialPrice").get<Amount>();
    p.abort_penalty = j.at("abortPenalty").get<Amount>();
    p.num_winners = j.at("numWinners").get<std::uint32_t>();
    p.require_did = j.at("requireDid").get<bool>();
    p.dutch_reserve = j.at("dutchReserve").get<Amount>();
    p.dutch_steps = j.at("dutchSteps").get<std::uint32_t>();
    return p;
}

void ListingParams::validate() const {
    if (!(start_time <= reveal_time && reveal_time <= conclude_time &&
          conclude_time <= feedback_time))
        throw SimError("BadTimers");
    if (is_sealed(type)) {
        if (reveal_time <= start_time) throw SimError("BadTimers");
    } else {
        if (reveal_time != start_time) throw SimError("BadTimers");
    }
    if (abort_penalty > initial_price) throw SimError("BadPenalty");
    if (num_winners < 1) throw SimError("BadWinnerCount");
    if (num_winners > 1 && type != ListingType::Fixed) throw SimError("BadWinnerCount");
    if (trusted_svcs.empty()) throw SimError("EmptySvcSet");
    if (coin_chains.empty()) throw SimError("NoCoinChains");
    if (type == ListingType::OpenDecreasing) {
        if (dutch_steps == 0) throw SimError("BadDutchSchedule");
        if (dutch_reserve > initial_price) throw SimError("BadDutchSchedule");
    }
}

bool ListingParams::trusts_svc(const AccountId& svc) const {
    return std::find(trusted_svcs.begin(), trusted_svcs.end(), svc) != trusted_svcs.end();
}

Amount dutch_price(const ListingParams& params, std::int64_t t) {
    if (t <= params.start_time) return params.initial_price;
    std::int64_t window = params.conclude_time - params.start_time;
    if (window <= 0) return params.initial_price;
    std::int64_t steps = params.dutch_steps;
    std::int64_t k = (t - params.start_time) * steps / window;
    k = std::min<std::int64_t>(k, steps - 1);
    Amount drop = params.initial_price - params.dutch_reserve;
    return params.initial_price - drop * static_cast<Amount>(k) / static_cast<Amount>(steps);
}

json Outcome::to_json() const {
    json w = json::array();
    for (const auto& e : winners)
        w.push_back(json{{"chain", e.chain},
                         {"bidIndex", e.bid_index},
                         {"bidder", e.bidder.hex()},
                         {"clearing", e.clearing}});
    return json{{"listing", listing_id}, {"winners", w}};
}

Outcome Outcome::from_json(const json& j) {
    Outcome o;
    o.listing_id = j.at("listing").get<std::uint64_t>();
    for (const auto& w : j.at("winners")) {
        WinnerEntry e;
        e.chain = w.at("chain").get<std::uint32_t>();
        e.bid_index = w.at("bidIndex").get<std::uint64_t>();
        e.bidder = AccountId::from_hex(w.at("bidder").get<std::string>());
        e.clearing = w.at("clearing").get<Amount>();
        o.winners.push_back(e);
    }
    return o;
}

namespace {

BidOrderKey key_of(const GlobalBid& b) { return BidOrderKey{b.placed_at, b.chain, b.bid_index}; }

// value descending, then (placed_at, chain, bid_index) ascending
bool better_value(const GlobalBid& a, const GlobalBid& b) {
    if (a.value != b.value) return a.value > b.value;
    return key_of(a) < key_of(b);
}

}  // namespace

Outcome compute_winner(const ListingParams& params, const std::vector<GlobalBid>& bids) {
    Outcome out;
    out.listing_id = params.id;

    switch (params.type) {
        case ListingType::Fixed: {
            std::vector<GlobalBid> intents = bids;
            std::sort(intents.begin(), intents.end(),
                      [](const GlobalBid& a, const GlobalBid& b) { return key_of(a) < key_of(b); });
            std::size_t take = std::min<std::size_t>(params.num_winners, intents.size());
            for (std::size_t i = 0; i < take; ++i) {
                out.winners.push_back(WinnerEntry{intents[i].chain, intents[i].bid_index,
                                                  intents[i].bidder, params.initial_price});
            }
            return out;
        }
        case ListingType::OpenDecreasing: {
            const GlobalBid* first = nullptr;
            for (const auto& b : bids) {
                if (!b.has_value) continue;
                if (first == nullptr || key_of(b) < key_of(*first)) first = &b;
            }
            if (first != nullptr)
                out.winners.push_back(
                    WinnerEntry{first->chain, first->bid_index, first->bidder, first->value});
            return out;
        }
        case ListingType::OpenIncreasing:
        case ListingType::SealedFirst:
        case ListingType::SealedSecond: {
            bool sealed = is_sealed(params.type);
            const GlobalBid* best = nullptr;
            for (const auto& b : bids) {
                if (!b.has_value) continue;
                if (sealed && !b.revealed) continue;
                if (b.value < params.initial_price) continue;  // reserve
                if (best == nullptr || better_value(b, *best)) best = &b;
            }
            if (best == nullptr) return out;
            Amount clearing = best->value;
            if (params.type == ListingType::SealedSecond) {
                const GlobalBid* second = nullptr;
                for (const auto& b : bids) {
                    if (&b == best || !b.has_value || !b.revealed) continue;
                    if (b.value < params.initial_price) continue;
                    if (second == nullptr || b.value > second->value) second = &b;
                }
                clearing = second != nullptr ? second->value : params.initial_price;
            }
            out.winners.push_back(
                WinnerEntry{best->chain, best->bid_index, best->bidder, clearing});
            return out;
        }
    }
    throw SimError("bad listing type");
}

ReputationAggregate aggregate_feedback(const std::vector<FeedbackEntry>& entries) {
    ReputationAggregate agg;
    std::uint64_t sum = 0;
    for (const auto& e : entries) {
        if (!e.did_backed) continue;
        ++agg.count;
        sum += static_cast<std::uint64_t>(e.score);
    }
    agg.mean_score = agg.count == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(agg.count);
    return agg;
}

}  // namespace xchain
