#include "mertens/checkpoint.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "mertens/errors.hpp"

namespace mertens {

namespace {

constexpr char kMagic[5] = {'M', 'R', 'T', 'S', '1'};

void put_u32(std::string& out, u32 v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_i64(std::string& out, i64 v) {
    put_u64(out, static_cast<u64>(v));
}

struct Reader {
    const unsigned char* p;
    std::size_t left;
    void need(std::size_t n) const {
        if (left < n) throw data_error("checkpoint: truncated file");
    }
    u32 get_u32() {
        need(4);
        u32 v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<u32>(p[i]) << (8 * i);
        p += 4;
        left -= 4;
        return v;
    }
    u64 get_u64() {
        need(8);
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<u64>(p[i]) << (8 * i);
        p += 8;
        left -= 8;
        return v;
    }
    i64 get_i64() { return static_cast<i64>(get_u64()); }
};

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
    std::string payload;
    payload.reserve(64 + 16 * (cp.stats.extrema.size() + cp.stats.samples.size()) +
                    8 * cp.stats.zeros.size());
    put_u32(payload, cp.config_hash);
    put_u64(payload, cp.limit);
    put_u64(payload, cp.next_block);
    put_u64(payload, cp.stats.running.n);
    put_i64(payload, cp.stats.running.M);
    put_i64(payload, cp.stats.running.max);
    put_i64(payload, cp.stats.running.min);
    put_u64(payload, cp.stats.extrema.size());
    put_u64(payload, cp.stats.zeros.size());
    put_u64(payload, cp.stats.samples.size());
    for (auto [n, m] : cp.stats.extrema) {
        put_u64(payload, n);
        put_i64(payload, m);
    }
    for (u64 n : cp.stats.zeros) put_u64(payload, n);
    for (auto [n, m] : cp.stats.samples) {
        put_u64(payload, n);
        put_i64(payload, m);
    }
    const u32 crc = static_cast<u32>(
        crc32(0, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size())));

    std::string blob(kMagic, sizeof kMagic);
    blob += payload;
    put_u32(blob, crc);

    // Atomic replace: write a sibling temp file, then rename.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw data_error("checkpoint: cannot write " + tmp);
        out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
        if (!out) throw data_error("checkpoint: short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("checkpoint: cannot open " + path);
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (blob.size() < sizeof kMagic + 4 || std::memcmp(blob.data(), kMagic, sizeof kMagic) != 0)
        throw data_error("checkpoint: bad magic in " + path);

    const std::size_t payload_len = blob.size() - sizeof kMagic - 4;
    const unsigned char* payload = reinterpret_cast<const unsigned char*>(blob.data()) + sizeof kMagic;
    Reader tail{payload + payload_len, 4};
    const u32 stored_crc = tail.get_u32();
    const u32 crc =
        static_cast<u32>(crc32(0, reinterpret_cast<const Bytef*>(payload), static_cast<uInt>(payload_len)));
    if (crc != stored_crc) throw data_error("checkpoint: CRC mismatch in " + path);

    Reader r{payload, payload_len};
    Checkpoint cp;
    cp.config_hash = r.get_u32();
    cp.limit = r.get_u64();
    cp.next_block = r.get_u64();
    cp.stats.running.n = r.get_u64();
    cp.stats.running.M = r.get_i64();
    cp.stats.running.max = r.get_i64();
    cp.stats.running.min = r.get_i64();
    const u64 n_ext = r.get_u64();
    const u64 n_zero = r.get_u64();
    const u64 n_sample = r.get_u64();
    cp.stats.extrema.reserve(n_ext);
    for (u64 i = 0; i < n_ext; ++i) {
        const u64 n = r.get_u64();
        cp.stats.extrema.emplace_back(n, r.get_i64());
    }
    cp.stats.zeros.reserve(n_zero);
    for (u64 i = 0; i < n_zero; ++i) cp.stats.zeros.push_back(r.get_u64());
    cp.stats.samples.reserve(n_sample);
    for (u64 i = 0; i < n_sample; ++i) {
        const u64 n = r.get_u64();
        cp.stats.samples.emplace_back(n, r.get_i64());
    }
    if (r.left != 0) throw data_error("checkpoint: trailing bytes in " + path);
    return cp;
}

}  // namespace mertens
