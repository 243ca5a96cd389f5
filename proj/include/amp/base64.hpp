#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace amp {

// Decoded byte-streams are capped; guards the transfer frame.
inline constexpr std::size_t kMaxByteStream = 64ull * 1024 * 1024;

std::string base64_encode(std::string_view bytes);

// Strict decode: canonical alphabet, padding required, no whitespace.
// Throws Error(malformed_encoding) on bad input or when the decoded
// size exceeds kMaxByteStream.
std::string base64_decode(std::string_view text);

}  // namespace amp
