#pragma once

#include <string>

#include "ahatc/ahat.hpp"

namespace ahatc {

// Model files are a single JSON document with canonical "num/den" rationals.
// Serialization is deterministic (sorted keys, canonical fractions), so equal
// models produce byte-identical files. The loader rejects non-canonical
// fractions, unknown fields, and anything but a single constant vector as
// positional encoding.
std::string save_model(const AhatModel& model);
AhatModel load_model(const std::string& json_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Stable FNV-1a hash of the canonical serialization; used in provenance headers.
std::string model_hash(const AhatModel& model);

}  // namespace ahatc
