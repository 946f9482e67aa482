#pragma once

#include <iosfwd>
#include <vector>

#include "mertens/scan.hpp"

namespace mertens {

/// Emit scan stats as JSON lines, one object per event:
///   {"kind":"zero"|"extremum"|"sample","n":...,"M":...}
/// Events are ordered by n; at equal n an extremum precedes a zero precedes
/// a sample.
void write_stats_jsonl(std::ostream& os, const MertensStats& stats);

/// Zeros from a stats JSONL stream (kind == "zero") or from a plain
/// whitespace-separated integer list. Throws data_error on malformed input
/// or a non-increasing sequence.
std::vector<u64> read_zero_list(std::istream& is);

}  // namespace mertens
