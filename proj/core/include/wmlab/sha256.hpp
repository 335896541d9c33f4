#pragma once

#include <string>

namespace wmlab {

// Hex digest of the SHA-256 of the input bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace wmlab
