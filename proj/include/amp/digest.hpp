#pragma once

#include <string>
#include <string_view>

namespace amp {

/// SHA-256 of the input, as 64 lowercase hex characters.
std::string sha256_hex(std::string_view bytes);

}  // namespace amp
