#include "wkbflow/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace wkbflow {

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

namespace {

void write_header(std::ofstream& out, const SnapshotHeader& h) {
    out.write("WKBF", 4);
    out.write(reinterpret_cast<const char*>(&h.version), 2);
    out.write(reinterpret_cast<const char*>(&h.dim), 2);
    for (int a = 0; a < h.dim; ++a)
        out.write(reinterpret_cast<const char*>(&h.length[a]), 8);
    for (int a = 0; a < h.dim; ++a)
        out.write(reinterpret_cast<const char*>(&h.n_x[a]), 4);
    out.write(reinterpret_cast<const char*>(&h.n_theta), 4);
}

SnapshotHeader header_for(const TorusGrid& g, uint32_t n_theta) {
    SnapshotHeader h;
    h.dim = static_cast<uint16_t>(g.dim);
    for (int a = 0; a < g.dim; ++a) {
        h.length[a] = g.length[a];
        h.n_x[a] = static_cast<uint32_t>(g.n[a]);
    }
    h.n_theta = n_theta;
    return h;
}

} // namespace

void write_snapshot(const std::string& path, const ScalarField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open snapshot file for writing: " + path);
    write_header(out, header_for(f.grid(), 1));
    out.write(reinterpret_cast<const char*>(f.data().data()),
              static_cast<std::streamsize>(f.data().size() * 8));
}

void write_snapshot(const std::string& path, const LoopField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open snapshot file for writing: " + path);
    write_header(out, header_for(f.grid(), static_cast<uint32_t>(f.grid().n_theta)));
    std::vector<double> vals = f.values();
    out.write(reinterpret_cast<const char*>(vals.data()),
              static_cast<std::streamsize>(vals.size() * 8));
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open snapshot file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "WKBF", 4) != 0)
        throw ConfigError("not a field snapshot file: " + path);
    Snapshot snap;
    SnapshotHeader& h = snap.header;
    in.read(reinterpret_cast<char*>(&h.version), 2);
    in.read(reinterpret_cast<char*>(&h.dim), 2);
    if (h.version != 1) throw ConfigError("unsupported snapshot version");
    if (h.dim != 1 && h.dim != 2) throw ConfigError("corrupt snapshot: bad dim");
    for (int a = 0; a < h.dim; ++a) in.read(reinterpret_cast<char*>(&h.length[a]), 8);
    for (int a = 0; a < h.dim; ++a) in.read(reinterpret_cast<char*>(&h.n_x[a]), 4);
    in.read(reinterpret_cast<char*>(&h.n_theta), 4);
    if (!in) throw ConfigError("truncated snapshot header: " + path);

    size_t count = h.n_theta;
    for (int a = 0; a < h.dim; ++a) count *= h.n_x[a];
    snap.payload.resize(count);
    in.read(reinterpret_cast<char*>(snap.payload.data()),
            static_cast<std::streamsize>(count * 8));
    if (!in) throw ConfigError("truncated snapshot payload: " + path);
    return snap;
}

namespace {

TorusGrid grid_from_header(const SnapshotHeader& h, int n_theta) {
    if (h.dim == 1)
        return TorusGrid::line(h.length[0], static_cast<int>(h.n_x[0]), n_theta);
    return TorusGrid::plane(h.length[0], h.length[1], static_cast<int>(h.n_x[0]),
                            static_cast<int>(h.n_x[1]), n_theta);
}

} // namespace

ScalarField snapshot_scalar(const Snapshot& snap) {
    if (snap.header.n_theta != 1)
        throw ConfigError("snapshot holds an angle-dependent field");
    TorusGrid g = grid_from_header(snap.header, 8);
    ScalarField f(g);
    for (int k = 0; k < f.size(); ++k) f[k] = snap.payload[k];
    return f;
}

LoopField snapshot_loop(const Snapshot& snap) {
    if (snap.header.n_theta < 8)
        throw ConfigError("snapshot does not hold an angle-resolved field");
    TorusGrid g = grid_from_header(snap.header, static_cast<int>(snap.header.n_theta));
    return LoopField::from_values(g, snap.payload);
}

} // namespace wkbflow
