#include "xchain/coin.hpp"

namespace xchain {

Amount CoinContract::balance_of(const AccountId& account) const {
    auto it = balances_.find(account);
    return it == balances_.end() ? 0 : it->second;
}

void CoinContract::credit(CallContext& ctx, const AccountId& to, Amount amount) {
    ctx.storage_write("bal:" + to.hex());
    balances_[to] = checked_add(balance_of(to), amount);
}

void CoinContract::debit(CallContext& ctx, const AccountId& from, Amount amount) {
    Amount have = balance_of(from);
    if (have < amount) ctx.revert("InsufficientFunds");
    ctx.storage_write("bal:" + from.hex());
    balances_[from] = have - amount;
}

json CoinContract::call(CallContext& ctx, std::string_view method, const json& args) {
    if (method == "mint") {
        if (ctx.caller() != authority_) ctx.revert("Unauthorized");
        AccountId to = AccountId::from_hex(args.at("to").get<std::string>());
        Amount amount = args.at("amount").get<Amount>();
        credit(ctx, to, amount);
        total_supply_ = checked_add(total_supply_, amount);
        ctx.emit("CoinMint", json{{"to", to.hex()}, {"amount", amount}});
        return json{};
    }
    if (method == "burn") {
        if (ctx.caller() != authority_) ctx.revert("Unauthorized");
        AccountId from = AccountId::from_hex(args.at("from").get<std::string>());
        Amount amount = args.at("amount").get<Amount>();
        debit(ctx, from, amount);
        total_supply_ = checked_sub(total_supply_, amount);
        ctx.emit("CoinBurn", json{{"from", from.hex()}, {"amount", amount}});
        return json{};
    }
    if (method == "transfer") {
        AccountId to = AccountId::from_hex(args.at("to").get<std::string>());
        Amount amount = args.at("amount").get<Amount>();
        ctx.gas().charge("coin_transfer", ctx.gas().schedule->coin_transfer);
        debit(ctx, ctx.caller(), amount);
        credit(ctx, to, amount);
        ctx.emit("CoinTransfer",
                 json{{"from", ctx.caller().hex()}, {"to", to.hex()}, {"amount", amount}});
        return json{};
    }
    throw SimError("coin: no such method: " + std::string(method));
}

json CoinContract::view(const ViewContext&, std::string_view method, const json& args) const {
    if (method == "balanceOf") {
        return json(balance_of(AccountId::from_hex(args.at("account").get<std::string>())));
    }
    if (method == "totalSupply") return json(total_supply_);
    throw SimError("coin: no such view: " + std::string(method));
}

json CoinContract::state_json() const {
    json balances = json::object();
    for (const auto& [acct, amount] : balances_) balances[acct.hex()] = amount;
    return json{{"authority", authority_.hex()},
                {"balances", balances},
                {"totalSupply", total_supply_}};
}

}  // namespace xchain
