#include "xchain/market.hpp"

#include <algorithm>

namespace xchain {

namespace {

std::string bid_slot(std::uint64_t listing, std::uint64_t index) {
    return "bid:" + std::to_string(listing) + ":" + std::to_string(index);
}

std::string escrow_slot(std::uint64_t listing, const AccountId& bidder) {
    return "esc:" + std::to_string(listing) + ":" + bidder.hex();
}

}  // namespace

MarketContract::Listing& MarketContract::listing_at(CallContext& ctx, std::uint64_t id) {
    auto it = listings_.find(id);
    if (it == listings_.end()) ctx.revert("NoSuchListing");
    return it->second;
}

void MarketContract::advance_phase_by_time(CallContext&, Listing& l) {
    if (l.phase == Phase::Created && ctx_time_ >= l.params.start_time) l.phase = Phase::Bidding;
    if (l.phase == Phase::Bidding && is_sealed(l.params.type) &&
        ctx_time_ >= l.params.reveal_time)
        l.phase = Phase::Reveal;
}

void MarketContract::touch(CallContext& ctx, Listing& l) {
    ctx_time_ = ctx.time();
    if (l.settled || l.aborted) return;
    advance_phase_by_time(ctx, l);
    if (!l.ending && ctx.time() >= l.params.feedback_time) {
        finalize_abort(ctx, l, "unconcluded-timeout", false);
    } else if (l.ending && ctx.time() >= l.params.feedback_time + settle_grace_) {
        finalize_abort(ctx, l, "vote-timeout", true);
    }
}

void MarketContract::require_window(CallContext& ctx, std::int64_t from,
                                    std::int64_t to_exclusive) const {
    if (ctx.time() < from || ctx.time() >= to_exclusive) ctx.revert("OutsideWindow");
}

void MarketContract::require_did_if_needed(CallContext& ctx, const Listing& l) const {
    if (!l.params.require_did) return;
    json verifiers = json::array();
    for (const auto& s : l.params.trusted_svcs) verifiers.push_back(s.hex());
    for (const auto& [chain, addr] : l.params.trusted_registries) {
        if (chain != ctx.chain().value) continue;
        json ok = ctx.view_contract(addr, "isVerified",
                                    json{{"holder", ctx.caller().hex()},
                                         {"trustedVerifiers", verifiers}});
        if (ok.get<bool>()) return;
    }
    ctx.revert("DidRequired");
}

MarketContract::BidRec& MarketContract::new_bid(CallContext& ctx, Listing& l,
                                                const AccountId& bidder) {
    BidRec rec;
    rec.index = l.bids.size();
    rec.bidder = bidder;
    rec.placed_at = ctx.time();
    ctx.storage_write(bid_slot(l.params.id, rec.index));
    l.bids.push_back(rec);
    return l.bids.back();
}

void MarketContract::escrow_in(CallContext& ctx, const AccountId& from, Amount amount) {
    if (from != ctx.origin()) ctx.revert("EscrowFromNonOrigin");
    if (amount == 0) return;
    ctx.call_contract_as_origin(coin_, "transfer",
                                json{{"to", ctx.self().hex()}, {"amount", amount}});
}

void MarketContract::pay_out(CallContext& ctx, const AccountId& to, Amount amount) {
    if (amount == 0) return;
    ctx.call_contract(coin_, "transfer", json{{"to", to.hex()}, {"amount", amount}});
}

std::vector<GlobalBid> MarketContract::local_book(const Listing& l, std::uint32_t chain) const {
    std::vector<GlobalBid> book;
    book.reserve(l.bids.size());
    for (const auto& b : l.bids) {
        GlobalBid g;
        g.chain = chain;
        g.bid_index = b.index;
        g.bidder = b.bidder;
        g.placed_at = b.placed_at;
        g.revealed = is_sealed(l.params.type) ? b.revealed : true;
        g.has_value = b.has_value;
        g.value = b.value;
        g.escrowed = b.escrowed;
        book.push_back(g);
    }
    return book;
}

json MarketContract::call(CallContext& ctx, std::string_view method, const json& args) {
    ctx_time_ = ctx.time();
    return do_call(ctx, method, args);
}

json MarketContract::do_call(CallContext& ctx, std::string_view method, const json& args) {
    if (method == "openListing") {
        ListingParams params = ListingParams::from_json(args.at("listing"));
        try {
            params.validate();
        } catch (const SimError& e) {
            ctx.revert(e.what());
        }
        if (!params.trusts_svc(ctx.caller())) ctx.revert("Unauthorized");
        if (listings_.count(params.id)) ctx.revert("AlreadyOpen");
        Listing l;
        l.params = params;
        ctx.storage_write("listing:" + std::to_string(params.id));
        listings_.emplace(params.id, std::move(l));
        ctx.emit("ListingOpened", json{{"listing", params.id}, {"by", ctx.caller().hex()},
                                       {"params", params.to_json()}});
        return json{};
    }

    std::uint64_t id = args.at("listing").get<std::uint64_t>();
    Listing& l = listing_at(ctx, id);
    touch(ctx, l);

    if (method == "touchListing") {
        return json{{"phase", to_string(l.phase)}};
    }

    if (method == "bidFixed") {
        if (l.params.type != ListingType::Fixed) ctx.revert("WrongType");
        if (l.settled || l.aborted || l.ending) ctx.revert("OutsideWindow");
        require_window(ctx, l.params.start_time, l.params.conclude_time);
        require_did_if_needed(ctx, l);
        escrow_in(ctx, ctx.caller(), l.params.initial_price);
        BidRec& rec = new_bid(ctx, l, ctx.caller());
        rec.escrowed = l.params.initial_price;
        rec.has_value = true;
        rec.value = l.params.initial_price;
        ctx.storage_write(escrow_slot(id, ctx.caller()));
        ctx.storage_write("book:" + std::to_string(id));
        ctx.emit("BidPlaced", json{{"listing", id},
                                   {"bidIndex", rec.index},
                                   {"bidder", ctx.caller().hex()},
                                   {"kind", "fixed"},
                                   {"escrow", rec.escrowed}});
        return json{{"bidIndex", rec.index}};
    }

    if (method == "bidOpen") {
        if (!is_open(l.params.type)) ctx.revert("WrongType");
        if (l.settled || l.aborted || l.ending) ctx.revert("OutsideWindow");
        require_window(ctx, l.params.start_time, l.params.conclude_time);
        require_did_if_needed(ctx, l);
        Amount value = args.at("value").get<Amount>();

        if (l.params.type == ListingType::OpenIncreasing) {
            Amount floor = l.params.initial_price == 0 ? 0 : l.params.initial_price - 1;
            for (const auto& b : l.bids) floor = std::max(floor, b.value);
            if (value <= floor) ctx.revert("BidTooLow");
            auto it = l.open_bid_of.find(ctx.caller());
            if (it != l.open_bid_of.end()) {
                // Re-bid: the standing record is updated and escrow topped up.
                BidRec& rec = l.bids[it->second];
                escrow_in(ctx, ctx.caller(), value - rec.escrowed);
                rec.value = value;
                rec.escrowed = value;
                rec.placed_at = ctx.time();
                ctx.storage_write(bid_slot(id, rec.index));
                ctx.storage_write(escrow_slot(id, ctx.caller()));
                ctx.storage_write("book:" + std::to_string(id));
                ctx.emit("BidPlaced", json{{"listing", id},
                                           {"bidIndex", rec.index},
                                           {"bidder", ctx.caller().hex()},
                                           {"kind", "open"},
                                           {"value", value},
                                           {"escrow", rec.escrowed}});
                return json{{"bidIndex", rec.index}};
            }
        } else {
            if (!l.bids.empty()) ctx.revert("AlreadyHasFirstBid");
            if (value < dutch_price(l.params, ctx.time())) ctx.revert("BidTooLow");
        }

        escrow_in(ctx, ctx.caller(), value);
        BidRec& rec = new_bid(ctx, l, ctx.caller());
        rec.escrowed = value;
        rec.has_value = true;
        rec.value = value;
        l.open_bid_of[ctx.caller()] = rec.index;
        ctx.storage_write(escrow_slot(id, ctx.caller()));
        ctx.storage_write("book:" + std::to_string(id));
        ctx.emit("BidPlaced", json{{"listing", id},
                                   {"bidIndex", rec.index},
                                   {"bidder", ctx.caller().hex()},
                                   {"kind", "open"},
                                   {"value", value},
                                   {"escrow", rec.escrowed}});
        return json{{"bidIndex", rec.index}};
    }

    if (method == "bidSealed") {
        if (!is_sealed(l.params.type)) ctx.revert("WrongType");
        if (l.settled || l.aborted || l.ending) ctx.revert("OutsideWindow");
        require_window(ctx, l.params.start_time, l.params.reveal_time);
        require_did_if_needed(ctx, l);
        Hash32 commitment = Hash32::from_hex(args.at("commitment").get<std::string>());
        escrow_in(ctx, ctx.caller(), l.params.abort_penalty);
        BidRec& rec = new_bid(ctx, l, ctx.caller());
        rec.escrowed = l.params.abort_penalty;
        rec.has_commitment = true;
        rec.commitment = commitment;
        ctx.storage_write(escrow_slot(id, ctx.caller()));
        ctx.storage_write("book:" + std::to_string(id));
        ctx.emit("BidPlaced", json{{"listing", id},
                                   {"bidIndex", rec.index},
                                   {"bidder", ctx.caller().hex()},
                                   {"kind", "sealed"},
                                   {"commitment", commitment.hex()},
                                   {"escrow", rec.escrowed}});
        return json{{"bidIndex", rec.index}};
    }

    if (method == "startReveal") {
        if (!is_sealed(l.params.type)) ctx.revert("WrongType");
        if (!l.params.trusts_svc(ctx.caller()) && ctx.caller() != l.params.vendor)
            ctx.revert("Unauthorized");
        if (ctx.time() < l.params.reveal_time) ctx.revert("OutsideWindow");
        if (l.reveal_started) ctx.revert("AlreadyInReveal");
        l.reveal_started = true;
        if (l.phase == Phase::Bidding || l.phase == Phase::Created) l.phase = Phase::Reveal;
        ctx.storage_write("listing:" + std::to_string(id));
        ctx.emit("RevealStarted", json{{"listing", id}, {"by", ctx.caller().hex()}});
        return json{};
    }

    if (method == "revealBid") {
        if (!is_sealed(l.params.type)) ctx.revert("WrongType");
        if (l.settled || l.aborted || l.ending) ctx.revert("OutsideWindow");
        require_window(ctx, l.params.reveal_time, l.params.conclude_time);
        std::uint64_t index = args.at("bidIndex").get<std::uint64_t>();
        if (index >= l.bids.size()) ctx.revert("NoSuchBid");
        BidRec& rec = l.bids[index];
        if (rec.bidder != ctx.caller()) ctx.revert("NotBidder");
        if (rec.revealed) ctx.revert("AlreadyRevealed");
        Amount value = args.at("value").get<Amount>();
        Hash32 salt = Hash32::from_hex(args.at("salt").get<std::string>());
        ctx.charge_hash();
        if (commit_hash(value, salt) != rec.commitment) ctx.revert("HashMismatch");
        if (value < l.params.abort_penalty) ctx.revert("ValueBelowPenalty");
        escrow_in(ctx, ctx.caller(), value - l.params.abort_penalty);
        rec.revealed = true;
        rec.has_value = true;
        rec.value = value;
        rec.escrowed = value;
        ctx.storage_write(bid_slot(id, index));
        ctx.storage_write(escrow_slot(id, ctx.caller()));
        ctx.storage_write("reveals:" + std::to_string(id));
        ctx.emit("BidRevealed", json{{"listing", id},
                                     {"bidIndex", index},
                                     {"bidder", ctx.caller().hex()},
                                     {"value", value}});
        return json{};
    }

    if (method == "closeAuction") {
        if (!l.params.trusts_svc(ctx.caller())) ctx.revert("Unauthorized");
        if (l.settled || l.aborted) ctx.revert("NotActive");
        if (l.ending) ctx.revert("AlreadyEnding");
        require_window(ctx, l.params.conclude_time, l.params.feedback_time);
        json outcome = args.at("outcome");
        Outcome declared = Outcome::from_json(outcome.at("outcome"));

        // Local consistency: declared winners on this chain must be exactly
        // the local top picks per the listing's rule. Global fairness is the
        // auditor's job.
        std::vector<WinnerEntry> declared_local;
        for (const auto& w : declared.winners)
            if (w.chain == ctx.chain().value) declared_local.push_back(w);
        ListingParams local_params = l.params;
        local_params.num_winners = std::max<std::uint32_t>(
            1, static_cast<std::uint32_t>(declared_local.size()));
        Outcome local_best = compute_winner(local_params, local_book(l, ctx.chain().value));
        if (declared_local.size() >
            (l.params.type == ListingType::Fixed ? local_best.winners.size()
                                                 : std::min<std::size_t>(1, local_best.winners.size())))
            ctx.revert("LocalOutcomeMismatch");
        for (std::size_t i = 0; i < declared_local.size(); ++i) {
            const auto& d = declared_local[i];
            const auto& e = local_best.winners[i];
            if (d.bid_index != e.bid_index || d.bidder != e.bidder)
                ctx.revert("LocalOutcomeMismatch");
            if (d.bid_index >= l.bids.size() || d.clearing > l.bids[d.bid_index].escrowed)
                ctx.revert("LocalOutcomeMismatch");
        }

        l.ending = true;
        l.ending_at = ctx.time();
        l.declared = outcome;
        l.phase = Phase::Concluding;
        ctx.storage_write("listing:" + std::to_string(id));
        json wl = json::array();
        for (const auto& w : declared_local)
            wl.push_back(json{{"bidIndex", w.bid_index},
                              {"bidder", w.bidder.hex()},
                              {"clearing", w.clearing}});
        ctx.emit("ListingEnding", json{{"listing", id},
                                       {"by", ctx.caller().hex()},
                                       {"localWinners", wl},
                                       {"outcomeHash", sha256(outcome.dump()).hex()}});
        return json{};
    }

    if (method == "commitResult") {
        if (!l.ending || l.settled || l.aborted) ctx.revert("NotEnding");
        std::string vote = args.at("vote").get<std::string>();
        if (vote != "commit" && vote != "abort") ctx.revert("BadVote");
        Outcome declared = Outcome::from_json(l.declared.at("outcome"));
        bool is_local_winner = false;
        for (const auto& w : declared.winners)
            if (w.chain == ctx.chain().value && w.bidder == ctx.caller()) is_local_winner = true;
        if (!is_local_winner) ctx.revert("NotParticipant");
        if (l.votes.count(ctx.caller())) ctx.revert("AlreadyVoted");
        Hash32 sig = Hash32::from_hex(args.at("sig").get<std::string>());
        ctx.charge_hash();
        if (!ctx.keys().verify(ctx.caller(), vote_message(id, ctx.caller(), vote), sig))
            ctx.revert("BadSignature");
        l.votes[ctx.caller()] = VoteRec{vote, sig};
        ctx.storage_write("vote:" + std::to_string(id) + ":" + ctx.caller().hex());
        ctx.emit("VoteCast", json{{"listing", id},
                                  {"participant", ctx.caller().hex()},
                                  {"vote", vote},
                                  {"sig", sig.hex()}});
        return json{};
    }

    if (method == "settle") {
        if (!l.ending) ctx.revert("NotEnding");
        if (l.settled || l.aborted) ctx.revert("NotActive");
        finalize_settle(ctx, l, args.at("cert"), ctx.caller());
        return json{};
    }

    if (method == "abortDeal") {
        if (l.settled || l.aborted) ctx.revert("NotActive");
        std::string reason = args.value("reason", "relayed-abort");
        if (args.contains("cert")) {
            // Relayed abort: requires a valid abort vote by a required voter.
            const json& cert = args.at("cert");
            bool ok = false;
            json required = l.ending ? l.declared.at("requiredVoters") : json::array();
            for (const auto& v : cert) {
                if (v.at("vote").get<std::string>() != "abort") continue;
                AccountId p = AccountId::from_hex(v.at("participant").get<std::string>());
                Hash32 sig = Hash32::from_hex(v.at("sig").get<std::string>());
                bool is_required = false;
                for (const auto& r : required)
                    if (r.get<std::string>() == p.hex()) is_required = true;
                if (!is_required) continue;
                ctx.charge_hash();
                if (ctx.keys().verify(p, vote_message(id, p, "abort"), sig)) ok = true;
            }
            if (!ok) ctx.revert("BadAbortCert");
            finalize_abort(ctx, l, reason, l.ending);
            return json{};
        }
        // Timer path, permissionless.
        if (!l.ending && ctx.time() >= l.params.feedback_time) {
            finalize_abort(ctx, l, "unconcluded-timeout", false);
        } else if (l.ending && ctx.time() >= l.params.feedback_time + settle_grace_) {
            finalize_abort(ctx, l, "vote-timeout", true);
        } else {
            ctx.revert("TooEarly");
        }
        return json{};
    }

    if (method == "withdraw") {
        if (l.phase != Phase::Finalized && l.phase != Phase::Aborted) ctx.revert("ListingActive");
        Amount amount = 0;
        auto it = l.claimable.find(ctx.caller());
        if (it != l.claimable.end()) {
            amount = it->second;
            l.claimable.erase(it);
        }
        bool has_bid = false;
        for (const auto& b : l.bids)
            if (b.bidder == ctx.caller()) has_bid = true;
        if (amount > 0) {
            ctx.storage_write(escrow_slot(id, ctx.caller()));
            pay_out(ctx, ctx.caller(), amount);
        }
        if (has_bid && !l.withdrawn.count(ctx.caller())) {
            l.withdrawn.insert(ctx.caller());
            ctx.emit("Withdrawn",
                     json{{"listing", id}, {"account", ctx.caller().hex()}, {"amount", amount}});
        }
        return json{{"amount", amount}};
    }

    if (method == "feedback") {
        std::uint64_t index = args.at("bidIndex").get<std::uint64_t>();
        if (l.phase != Phase::Finalized) ctx.revert("OutsideWindow");
        require_window(ctx, l.params.conclude_time, l.params.feedback_time);
        Outcome declared = Outcome::from_json(l.declared.at("outcome"));
        bool winner = false;
        for (const auto& w : declared.winners)
            if (w.chain == ctx.chain().value && w.bid_index == index &&
                w.bidder == ctx.caller())
                winner = true;
        if (!winner) ctx.revert("NotWinner");
        if (l.feedback.count(index)) ctx.revert("DuplicateFeedback");
        int score = args.at("score").get<int>();
        if (score < 1 || score > 5) ctx.revert("BadScore");
        FeedbackEntry e;
        e.listing_id = id;
        e.bid_index = index;
        e.rater = ctx.caller();
        e.score = score;
        e.comment_hash = Hash32::from_hex(args.at("commentHash").get<std::string>());
        json registry = json();
        if (args.contains("didProof") && !args.at("didProof").is_null()) {
            const json& proof = args.at("didProof");
            std::uint32_t reg_chain = proof.at("registryChain").get<std::uint32_t>();
            AccountId reg_addr = AccountId::from_hex(proof.at("registryAddr").get<std::string>());
            bool trusted = false;
            for (const auto& [c, a] : l.params.trusted_registries)
                if (c == reg_chain && a == reg_addr) trusted = true;
            if (trusted && reg_chain == ctx.chain().value) {
                json verifiers = json::array();
                for (const auto& s : l.params.trusted_svcs) verifiers.push_back(s.hex());
                json ok = ctx.view_contract(reg_addr, "isVerified",
                                            json{{"holder", ctx.caller().hex()},
                                                 {"trustedVerifiers", verifiers}});
                if (ok.get<bool>()) {
                    e.did_backed = true;
                    registry = json{{"chain", reg_chain}, {"addr", reg_addr.hex()}};
                }
            }
        }
        ctx.storage_write("feedback:" + std::to_string(id) + ":" + std::to_string(index));
        l.feedback[index] = e;
        ctx.emit("FeedbackStored", json{{"listing", id},
                                        {"bidIndex", index},
                                        {"rater", ctx.caller().hex()},
                                        {"score", score},
                                        {"commentHash", e.comment_hash.hex()},
                                        {"didBacked", e.did_backed},
                                        {"registry", registry}});
        return json{};
    }

    throw SimError("market: no such method: " + std::string(method));
}

void MarketContract::finalize_settle(CallContext& ctx, Listing& l, const json& cert,
                                     const AccountId& caller) {
    std::uint64_t id = l.params.id;
    const json& required = l.declared.at("requiredVoters");
    for (const auto& r : required) {
        AccountId participant = AccountId::from_hex(r.get<std::string>());
        bool ok = false;
        for (const auto& v : cert) {
            if (AccountId::from_hex(v.at("participant").get<std::string>()) != participant)
                continue;
            if (v.at("vote").get<std::string>() != "commit") continue;
            Hash32 sig = Hash32::from_hex(v.at("sig").get<std::string>());
            ctx.charge_hash();
            if (ctx.keys().verify(participant, vote_message(id, participant, "commit"), sig))
                ok = true;
        }
        if (!ok) ctx.revert("IncompleteCommitCert");
    }

    Outcome declared = Outcome::from_json(l.declared.at("outcome"));
    std::map<std::uint64_t, Amount> clearing_of;  // local winning bid -> price
    for (const auto& w : declared.winners)
        if (w.chain == ctx.chain().value) clearing_of[w.bid_index] = w.clearing;

    Amount penalties = 0;
    for (auto& b : l.bids) {
        Amount keep = 0;
        auto cw = clearing_of.find(b.index);
        if (cw != clearing_of.end()) {
            keep = cw->second;
            Amount fee_svc = std::min(svc_fee_, keep);
            Amount fee_gov = std::min(gov_fee_, keep - fee_svc);
            pay_out(ctx, l.params.vendor, keep - fee_svc - fee_gov);
            AccountId fee_to =
                l.params.trusts_svc(caller) ? caller : governance_treasury_;
            pay_out(ctx, fee_to, fee_svc);
            pay_out(ctx, governance_treasury_, fee_gov);
        } else if (is_sealed(l.params.type) && !b.revealed) {
            Amount forfeit = std::min(l.params.abort_penalty, b.escrowed);
            keep = forfeit;
            penalties = checked_add(penalties, forfeit);
        }
        Amount refund = checked_sub(b.escrowed, keep);
        if (refund > 0) l.claimable[b.bidder] = checked_add(l.claimable[b.bidder], refund);
        ctx.storage_write(escrow_slot(id, b.bidder));
    }
    pay_out(ctx, l.params.vendor, penalties);

    l.settled = true;
    l.phase = Phase::Finalized;
    ctx.storage_write("listing:" + std::to_string(id));
    json wl = json::array();
    for (const auto& [idx, price] : clearing_of)
        wl.push_back(json{{"bidIndex", idx}, {"clearing", price}});
    ctx.emit("Settled",
             json{{"listing", id}, {"localWinners", wl}, {"by", caller.hex()}});
}

void MarketContract::finalize_abort(CallContext& ctx, Listing& l, const std::string& reason,
                                    bool concluded_locally) {
    std::uint64_t id = l.params.id;
    std::set<AccountId> committed;
    std::set<AccountId> required_local;
    if (concluded_locally && l.declared.contains("outcome")) {
        Outcome declared = Outcome::from_json(l.declared.at("outcome"));
        for (const auto& w : declared.winners)
            if (w.chain == ctx.chain().value) required_local.insert(w.bidder);
        for (const auto& [acct, v] : l.votes)
            if (v.vote == "commit") committed.insert(acct);
    }

    Amount penalties = 0;
    for (auto& b : l.bids) {
        Amount keep = 0;
        if (concluded_locally) {
            bool neglected_reveal = is_sealed(l.params.type) && !b.revealed;
            bool neglected_commit = required_local.count(b.bidder) && !committed.count(b.bidder);
            if (neglected_reveal || neglected_commit) {
                keep = std::min(l.params.abort_penalty, b.escrowed);
                penalties = checked_add(penalties, keep);
            }
        }
        Amount refund = checked_sub(b.escrowed, keep);
        if (refund > 0) l.claimable[b.bidder] = checked_add(l.claimable[b.bidder], refund);
        ctx.storage_write(escrow_slot(id, b.bidder));
    }
    pay_out(ctx, l.params.vendor, penalties);

    l.aborted = true;
    l.abort_reason = reason;
    l.phase = Phase::Aborted;
    ctx.storage_write("listing:" + std::to_string(id));
    ctx.emit("AbortedEvent", json{{"listing", id},
                                  {"reason", reason},
                                  {"concluded", concluded_locally},
                                  {"penalties", penalties}});
}

json MarketContract::view(const ViewContext& ctx, std::string_view method,
                          const json& args) const {
    if (method == "escrowLiability") {
        Amount total = 0;
        for (const auto& [id, l] : listings_) {
            if (l.settled || l.aborted) {
                for (const auto& [acct, amt] : l.claimable) total = checked_add(total, amt);
            } else {
                for (const auto& b : l.bids) total = checked_add(total, b.escrowed);
            }
        }
        return json(total);
    }
    std::uint64_t id = args.at("listing").get<std::uint64_t>();
    auto it = listings_.find(id);
    if (method == "hasListing") return json(it != listings_.end());
    if (it == listings_.end()) throw SimError("market: no such listing");
    const Listing& l = it->second;
    if (method == "listing") {
        json bids = json::array();
        for (const auto& b : l.bids) {
            json jb{{"index", b.index},
                    {"bidder", b.bidder.hex()},
                    {"placedAt", b.placed_at},
                    {"escrowed", b.escrowed},
                    {"revealed", b.revealed}};
            if (b.has_commitment) jb["commitment"] = b.commitment.hex();
            if (b.has_value) jb["value"] = b.value;
            bids.push_back(jb);
        }
        json claims = json::object();
        for (const auto& [acct, amt] : l.claimable) claims[acct.hex()] = amt;
        json votes = json::object();
        for (const auto& [acct, v] : l.votes)
            votes[acct.hex()] = json{{"vote", v.vote}, {"sig", v.sig.hex()}};
        return json{{"params", l.params.to_json()},
                    {"phase", to_string(l.phase)},
                    {"ending", l.ending},
                    {"endingAt", l.ending_at},
                    {"revealStarted", l.reveal_started},
                    {"declared", l.declared},
                    {"votes", votes},
                    {"settled", l.settled},
                    {"aborted", l.aborted},
                    {"abortReason", l.abort_reason},
                    {"bids", bids},
                    {"claimable", claims}};
    }
    if (method == "feedbackEntries") {
        json out = json::array();
        for (const auto& [idx, e] : l.feedback)
            out.push_back(json{{"listing", e.listing_id},
                               {"bidIndex", e.bid_index},
                               {"rater", e.rater.hex()},
                               {"score", e.score},
                               {"commentHash", e.comment_hash.hex()},
                               {"didBacked", e.did_backed}});
        return out;
    }
    (void)ctx;
    throw SimError("market: no such view: " + std::string(method));
}

json MarketContract::state_json() const {
    json out = json::object();
    out["coin"] = coin_.hex();
    out["governanceTreasury"] = governance_treasury_.hex();
    out["svcFee"] = svc_fee_;
    out["govFee"] = gov_fee_;
    out["settleGrace"] = settle_grace_;
    json ls = json::object();
    for (const auto& [id, l] : listings_) {
        json bids = json::array();
        for (const auto& b : l.bids) {
            json jb{{"index", b.index},
                    {"bidder", b.bidder.hex()},
                    {"placedAt", b.placed_at},
                    {"escrowed", b.escrowed},
                    {"revealed", b.revealed}};
            // Sealed values stay hidden until revealed: only the commitment is
            // part of serialized state.
            if (b.has_commitment) jb["commitment"] = b.commitment.hex();
            if (b.has_value) jb["value"] = b.value;
            bids.push_back(jb);
        }
        json claims = json::object();
        for (const auto& [acct, amt] : l.claimable) claims[acct.hex()] = amt;
        json votes = json::object();
        for (const auto& [acct, v] : l.votes)
            votes[acct.hex()] = json{{"vote", v.vote}, {"sig", v.sig.hex()}};
        json fb = json::array();
        for (const auto& [idx, e] : l.feedback)
            fb.push_back(json{{"bidIndex", e.bid_index},
                              {"rater", e.rater.hex()},
                              {"score", e.score},
                              {"commentHash", e.comment_hash.hex()},
                              {"didBacked", e.did_backed}});
        ls[std::to_string(id)] = json{{"params", l.params.to_json()},
                                      {"phase", to_string(l.phase)},
                                      {"ending", l.ending},
                                      {"declared", l.declared},
                                      {"votes", votes},
                                      {"settled", l.settled},
                                      {"aborted", l.aborted},
                                      {"bids", bids},
                                      {"claimable", claims},
                                      {"feedback", fb}};
    }
    out["listings"] = ls;
    return out;
}

}  // namespace xchain
