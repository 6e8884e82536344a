#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lfs {

// Minimal SHA-256 (FIPS 180-4), enough for prompt fingerprints and config
// hashes. Not intended for cryptographic use beyond integrity checks.
std::string sha256_hex(std::string_view data);

} // namespace lfs
