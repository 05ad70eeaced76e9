#include "xchain/sig.hpp"

namespace xchain {

const KeyStore::KeyPair& KeyStore::ensure_key(const AccountId& account) {
    auto it = keys_.find(account);
    if (it != keys_.end()) return it->second;
    KeyPair kp;
    kp.secret = sha256("secret:" + std::to_string(seed_) + ":" + account.hex());
    kp.pub = sha256("pub:" + kp.secret.hex());
    return keys_.emplace(account, kp).first->second;
}

const KeyStore::KeyPair& KeyStore::key_of(const AccountId& account) const {
    auto it = keys_.find(account);
    if (it == keys_.end()) throw SimError("no key registered for account " + account.hex());
    return it->second;
}

Hash32 KeyStore::sign_with(const Hash32& secret, std::string_view msg) {
    return sha256("sig:" + secret.hex() + ":" + std::string(msg));
}

Hash32 KeyStore::sign_as(const AccountId& account, std::string_view msg) const {
    return sign_with(key_of(account).secret, msg);
}

bool KeyStore::verify(const AccountId& account, std::string_view msg, const Hash32& sig) const {
    auto it = keys_.find(account);
    if (it == keys_.end()) return false;
    return sign_with(it->second.secret, msg) == sig;
}

std::string vote_message(std::uint64_t listing_id, const AccountId& participant,
                         std::string_view vote) {
    return "vote:" + std::to_string(listing_id) + ":" + participant.hex() + ":" +
           std::string(vote);
}

}  // namespace xchain
