#include "mertens/stats_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "mertens/errors.hpp"

namespace mertens {

void write_stats_jsonl(std::ostream& os, const MertensStats& stats) {
    std::size_t ie = 0, iz = 0, is = 0;
    char buf[96];
    auto emit = [&](const char* kind, u64 n, i64 M) {
        const int len =
            std::snprintf(buf, sizeof buf, "{\"kind\":\"%s\",\"n\":%llu,\"M\":%lld}\n", kind,
                          static_cast<unsigned long long>(n), static_cast<long long>(M));
        os.write(buf, len);
    };
    while (ie < stats.extrema.size() || iz < stats.zeros.size() || is < stats.samples.size()) {
        const u64 ne = ie < stats.extrema.size() ? stats.extrema[ie].first : ~u64{0};
        const u64 nz = iz < stats.zeros.size() ? stats.zeros[iz] : ~u64{0};
        const u64 ns = is < stats.samples.size() ? stats.samples[is].first : ~u64{0};
        if (ne <= nz && ne <= ns) {
            emit("extremum", ne, stats.extrema[ie].second);
            ++ie;
        } else if (nz <= ns) {
            emit("zero", nz, 0);
            ++iz;
        } else {
            emit("sample", ns, stats.samples[is].second);
            ++is;
        }
    }
}

std::vector<u64> read_zero_list(std::istream& is) {
    std::vector<u64> zeros;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line.front() == '{') {
            if (line.find("\"kind\":\"zero\"") == std::string::npos) continue;
            const auto pos = line.find("\"n\":");
            if (pos == std::string::npos)
                throw data_error("zero list: missing n field on line " + std::to_string(lineno));
            u64 n = 0;
            const char* first = line.data() + pos + 4;
            const auto [ptr, ec] = std::from_chars(first, line.data() + line.size(), n);
            if (ec != std::errc{} || ptr == first)
                throw data_error("zero list: bad n value on line " + std::to_string(lineno));
            zeros.push_back(n);
        } else {
            // Plain integers, any whitespace separation.
            const char* p = line.data();
            const char* end = line.data() + line.size();
            while (p < end) {
                while (p < end && (*p == ' ' || *p == '\t' || *p == ',')) ++p;
                if (p >= end) break;
                u64 n = 0;
                const auto [ptr, ec] = std::from_chars(p, end, n);
                if (ec != std::errc{} || ptr == p)
                    throw data_error("zero list: bad integer on line " + std::to_string(lineno));
                zeros.push_back(n);
                p = ptr;
            }
        }
    }
    for (std::size_t i = 1; i < zeros.size(); ++i)
        if (zeros[i] <= zeros[i - 1])
            throw data_error("zero list: sequence is not strictly increasing");
    return zeros;
}

}  // namespace mertens
