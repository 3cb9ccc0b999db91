#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace oat {

// Hex-encoded SHA-256 of the input bytes.
std::string sha256_hex(std::string_view data);

// First eight digest bytes as a big-endian integer, masked to 53 bits so the
// value survives a round trip through JSON readers that store numbers as
// IEEE doubles.
std::uint64_t sha256_seed(std::string_view data);

} // namespace oat
