#pragma once

#include <cstdint>
#include <string>

#include "wkbflow/loop_field.hpp"

namespace wkbflow {

// Field snapshot file: magic "WKBF", version u16, dim u16, per-axis length
// f64, per-axis sample count u32, angle sample count u32 (1 for fields with
// no angle dependence), then the payload as little-endian f64 collocation
// values in row-major order, spatial axes outer, angle innermost.

struct SnapshotHeader {
    uint16_t version = 1;
    uint16_t dim = 1;
    std::array<double, 2> length{0.0, 0.0};
    std::array<uint32_t, 2> n_x{0, 0};
    uint32_t n_theta = 1;
};

struct Snapshot {
    SnapshotHeader header;
    std::vector<double> payload;
};

void write_snapshot(const std::string& path, const ScalarField& f);
void write_snapshot(const std::string& path, const LoopField& f);

Snapshot read_snapshot(const std::string& path);

/// Reassemble fields from a snapshot read back in; the grid's n_theta comes
/// from the file for loop fields and defaults to 8 for plain spatial fields.
ScalarField snapshot_scalar(const Snapshot& snap);
LoopField snapshot_loop(const Snapshot& snap);

} // namespace wkbflow
