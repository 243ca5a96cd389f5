#include "amp/package.hpp"

namespace amp {

bool Cid::valid_format(std::string_view s) {
    if (s.size() != 64) return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    return true;
}

void Cid::check() const {
    if (!valid_format(value)) fail(Errc::validation_failed, "cid must be 64 lowercase hex characters");
}

Cid compute_cid(std::string_view code) { return Cid{sha256_hex(code)}; }

void AgentPackage::check() const {
    cid.check();
    if (cid != compute_cid(code)) fail(Errc::cid_mismatch, "package cid does not match code digest");
    if (data.empty()) fail(Errc::validation_failed, "package data must be non-empty");
}

}  // namespace amp
