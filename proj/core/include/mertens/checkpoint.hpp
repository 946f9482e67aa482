#pragma once

#include <optional>
#include <string>

#include "mertens/scan.hpp"

namespace mertens {

// Binary scan checkpoint. Layout (all integers little-endian, fixed width):
//   magic "MRTS1", u32 config_hash, u64 limit, u64 next_block,
//   running {u64 n, i64 M, i64 max, i64 min},
//   u64 counts[3], then the extrema/zero/sample arrays,
//   u32 crc32 of everything after the magic.
struct Checkpoint {
    u32 config_hash = 0;
    u64 limit = 0;
    u64 next_block = 0;
    MertensStats stats;
};

void save_checkpoint(const std::string& path, const Checkpoint& cp);

/// Throws data_error on bad magic, truncation, or CRC mismatch.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace mertens
