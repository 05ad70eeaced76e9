#pragma once

#include <map>
#include <string>
#include <string_view>

#include "xchain/common.hpp"

namespace xchain {

// Deterministic keyed-hash signature stand-in. Real ECDSA is out of scope;
// only the verify/forge semantics matter: a signature over a message verifies
// iff it was produced with the account's secret, and nobody without the
// secret can produce it. The store doubles as the verification oracle that a
// public-key scheme would provide.
class KeyStore {
public:
    struct KeyPair {
        Hash32 pub;
        Hash32 secret;
    };

    explicit KeyStore(std::uint64_t seed) : seed_(seed) {}

    // Creates (or returns) the key pair bound to an account.
    const KeyPair& ensure_key(const AccountId& account);
    bool has_key(const AccountId& account) const { return keys_.count(account) != 0; }
    const KeyPair& key_of(const AccountId& account) const;

    static Hash32 sign_with(const Hash32& secret, std::string_view msg);
    Hash32 sign_as(const AccountId& account, std::string_view msg) const;
    bool verify(const AccountId& account, std::string_view msg, const Hash32& sig) const;

private:
    std::uint64_t seed_;
    std::map<AccountId, KeyPair> keys_;
};

// Canonical message for a commit/abort vote, signed by the participant and
// relayed across chains.
std::string vote_message(std::uint64_t listing_id, const AccountId& participant,
                         std::string_view vote);

}  // namespace xchain
