// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace srstap {

/// Element order inside one snapshot on disk.
enum class SnapshotLayout : std::uint32_t {
    PulseMajor = 0,   // index m*N + n, the in-memory order
    SensorMajor = 1,  // index n*M + m
};

/// Binary snapshot file, all fields little-endian:
///   0  char[9]  "STAPSNAP1"
///   9  u8[3]    zero
///  12  u32      version (1)
///  16  u32      N sensors
///  20  u32      M pulses
///  24  u32      L snapshots
///  28  u32      layout
///  32  payload  float32 re, im per element, one snapshot after another
inline constexpr std::size_t kSnapshotHeaderBytes = 32;
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct SnapshotFile {
    std::uint32_t n_sensors = 0;
    std::uint32_t n_pulses = 0;
    SnapshotLayout layout = SnapshotLayout::PulseMajor;
    SnapshotSet snapshots;  // always pulse-major in memory
};

std::vector<std::uint8_t> encode_snapshots(const SnapshotSet& xs, std::uint32_t n_sensors, std::uint32_t n_pulses,
                                           SnapshotLayout layout = SnapshotLayout::PulseMajor);
/// Throws DataError naming the byte offset of the first problem.
SnapshotFile decode_snapshots(const std::vector<std::uint8_t>& bytes);

void write_snapshot_file(const std::string& path, const SnapshotSet& xs, std::uint32_t n_sensors,
                         std::uint32_t n_pulses, SnapshotLayout layout = SnapshotLayout::PulseMajor);
SnapshotFile read_snapshot_file(const std::string& path);

}  // namespace srstap
