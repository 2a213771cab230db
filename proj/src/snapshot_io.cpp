// SPDX-License-Identifier: Apache-2.0
#include "srstap/snapshot_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace srstap {

namespace {

constexpr char kMagic[9] = {'S', 'T', 'A', 'P', 'S', 'N', 'A', 'P', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}

void put_f32(std::vector<std::uint8_t>& out, double v) { put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v))); }

double get_f32(const std::vector<std::uint8_t>& in, std::size_t at) {
    return static_cast<double>(std::bit_cast<float>(get_u32(in, at)));
}

[[noreturn]] void bad(std::size_t offset, const std::string& what) {
    throw DataError("snapshot file: " + what + " at byte offset " + std::to_string(offset));
}

// On-disk element position of in-memory element (pulse m, sensor n).
std::size_t disk_index(SnapshotLayout layout, std::size_t n, std::size_t m, std::size_t n_sensors, std::size_t n_pulses) {
    return layout == SnapshotLayout::PulseMajor ? m * n_sensors + n : n * n_pulses + m;
}

}  // namespace

std::vector<std::uint8_t> encode_snapshots(const SnapshotSet& xs, std::uint32_t n_sensors, std::uint32_t n_pulses,
                                           SnapshotLayout layout) {
    const std::size_t nm = static_cast<std::size_t>(n_sensors) * n_pulses;
    if (nm == 0 || xs.dof() != nm) throw DataError("encode_snapshots: snapshot length does not match N*M");
    if (xs.count() > std::numeric_limits<std::uint32_t>::max())
        throw DataError("encode_snapshots: too many snapshots for the file format");

    std::vector<std::uint8_t> out;
    out.reserve(kSnapshotHeaderBytes + 8 * nm * xs.count());
    for (char c : kMagic) out.push_back(static_cast<std::uint8_t>(c));
    out.resize(12, 0);
    put_u32(out, kSnapshotVersion);
    put_u32(out, n_sensors);
    put_u32(out, n_pulses);
    put_u32(out, static_cast<std::uint32_t>(xs.count()));
    put_u32(out, static_cast<std::uint32_t>(layout));

    std::vector<Complex> disk(nm);
    for (Eigen::Index k = 0; k < xs.data.cols(); ++k) {
        for (std::size_t m = 0; m < n_pulses; ++m)
            for (std::size_t n = 0; n < n_sensors; ++n)
                disk[disk_index(layout, n, m, n_sensors, n_pulses)] =
                    xs.data(static_cast<Eigen::Index>(m * n_sensors + n), k);
        for (const Complex& z : disk) {
            put_f32(out, z.real());
            put_f32(out, z.imag());
        }
    }
    return out;
}

SnapshotFile decode_snapshots(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kSnapshotHeaderBytes) bad(bytes.size(), "truncated header");
    for (std::size_t i = 0; i < sizeof kMagic; ++i)
        if (bytes[i] != static_cast<std::uint8_t>(kMagic[i])) bad(i, "bad magic");
    for (std::size_t i = sizeof kMagic; i < 12; ++i)
        if (bytes[i] != 0) bad(i, "nonzero header padding");
    if (const auto v = get_u32(bytes, 12); v != kSnapshotVersion) bad(12, "unsupported version " + std::to_string(v));

    SnapshotFile f;
    f.n_sensors = get_u32(bytes, 16);
    f.n_pulses = get_u32(bytes, 20);
    const std::uint32_t l = get_u32(bytes, 24);
    const std::uint32_t layout = get_u32(bytes, 28);
    if (f.n_sensors == 0) bad(16, "zero sensor count");
    if (f.n_pulses == 0) bad(20, "zero pulse count");
    if (layout > 1) bad(28, "unknown layout flag " + std::to_string(layout));
    f.layout = static_cast<SnapshotLayout>(layout);

    const std::size_t nm = static_cast<std::size_t>(f.n_sensors) * f.n_pulses;
    const std::size_t expected = kSnapshotHeaderBytes + 8 * nm * l;
    if (bytes.size() < expected) bad(bytes.size(), "truncated payload (expected " + std::to_string(expected) + " bytes)");
    if (bytes.size() > expected) bad(expected, "trailing bytes after payload");

    f.snapshots.data.resize(static_cast<Eigen::Index>(nm), static_cast<Eigen::Index>(l));
    std::size_t at = kSnapshotHeaderBytes;
    for (std::size_t k = 0; k < l; ++k) {
        for (std::size_t i = 0; i < nm; ++i, at += 8) {
            const std::size_t n = f.layout == SnapshotLayout::PulseMajor ? i % f.n_sensors : i / f.n_pulses;
            const std::size_t m = f.layout == SnapshotLayout::PulseMajor ? i / f.n_sensors : i % f.n_pulses;
            f.snapshots.data(static_cast<Eigen::Index>(m * f.n_sensors + n), static_cast<Eigen::Index>(k)) =
                Complex(get_f32(bytes, at), get_f32(bytes, at + 4));
        }
    }
    return f;
}

void write_snapshot_file(const std::string& path, const SnapshotSet& xs, std::uint32_t n_sensors,
                         std::uint32_t n_pulses, SnapshotLayout layout) {
    const auto bytes = encode_snapshots(xs, n_sensors, n_pulses, layout);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path + ": cannot open for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError(path + ": write failed");
}

SnapshotFile read_snapshot_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open snapshot file");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        auto f = decode_snapshots(bytes);
        f.snapshots.tag = path;
        return f;
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

}  // namespace srstap
