#pragma once

#include <map>
#include <memory>

#include "xchain/contract.hpp"

namespace xchain {

// Native stablecoin contract: balances, transfers and fixture mint/burn.
// Escrow is plain coins held at the market contract's own account.
//
// Methods (wire names / args):
//   mint     {to, amount}        authority only
//   burn     {from, amount}      authority only (cross-chain transfer stub)
//   transfer {to, amount}        caller pays
// Views:
//   balanceOf {account} -> amount
//   totalSupply {}      -> amount
class CoinContract final : public Contract {
public:
    explicit CoinContract(AccountId authority) : authority_(authority) {}

    std::string kind() const override { return "coin"; }
    std::unique_ptr<Contract> clone() const override {
        return std::make_unique<CoinContract>(*this);
    }
    json call(CallContext& ctx, std::string_view method, const json& args) override;
    json view(const ViewContext& ctx, std::string_view method, const json& args) const override;
    json state_json() const override;

    Amount balance_of(const AccountId& account) const;
    Amount total_supply() const { return total_supply_; }

private:
    void credit(CallContext& ctx, const AccountId& to, Amount amount);
    void debit(CallContext& ctx, const AccountId& from, Amount amount);

    AccountId authority_;
    std::map<AccountId, Amount> balances_;
    Amount total_supply_ = 0;
};

}  // namespace xchain
