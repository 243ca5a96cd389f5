#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "amp/digest.hpp"
#include "amp/errors.hpp"

namespace amp {

/// Content-addressed code identifier: SHA-256 of the code bytes,
/// 64 lowercase hex characters.
struct Cid {
    std::string value;

    static bool valid_format(std::string_view s);
    void check() const;

    bool operator==(const Cid&) const = default;
};

Cid compute_cid(std::string_view code);

/// Everything needed to rebuild an agent elsewhere: code, data and the
/// optional execution state.
struct AgentPackage {
    std::string code;
    std::string data;
    std::optional<std::string> state;
    Cid cid;

    void check() const;  // cid = compute_cid(code), data non-empty

    bool operator==(const AgentPackage&) const = default;
};

}  // namespace amp
